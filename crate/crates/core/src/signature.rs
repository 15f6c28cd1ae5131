use std::fmt;

use crate::error::{EfbError, Result};
use crate::scalar::ScalarMode;

/// Largest supported number of Witt pairs.
pub const MAX_PAIRS: u32 = 16;

/// Number of Witt pairs `m` of `Cl(m,m)` together with the scalar field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraConfig {
    m: u32,
    scalar_mode: ScalarMode,
}

impl AlgebraConfig {
    pub fn new(m: u32, scalar_mode: ScalarMode) -> Result<Self> {
        if !(1..=MAX_PAIRS).contains(&m) {
            return Err(EfbError::InvalidPairCount { m, max: MAX_PAIRS });
        }
        Ok(Self { m, scalar_mode })
    }

    pub fn exact(m: u32) -> Result<Self> {
        Self::new(m, ScalarMode::ExactRational)
    }

    pub fn float(m: u32) -> Result<Self> {
        Self::new(m, ScalarMode::Float64)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn scalar_mode(&self) -> ScalarMode {
        self.scalar_mode
    }

    /// Bit mask covering one signature (`m` low bits set).
    pub fn mask(&self) -> u32 {
        if self.m == 32 {
            u32::MAX
        } else {
            (1u32 << self.m) - 1
        }
    }

    /// `2^m`: number of signatures, spinor dimension, matrix size.
    pub fn spinor_dim(&self) -> usize {
        1usize << self.m
    }

    /// `2^{2m}`: dimension of the whole algebra.
    pub fn algebra_dim(&self) -> usize {
        1usize << (2 * self.m)
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(EfbError::ConfigMismatch {
                left: self.to_string(),
                right: other.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for AlgebraConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({m},{m})/{}", self.scalar_mode, m = self.m)
    }
}

/// A vector in `{±1}^m`, one entry per Witt pair.
///
/// Bit `i - 1` stores the entry of pair `i`: a clear bit is `+1`, a set bit
/// is `-1`. With this encoding the Hadamard product is XOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    bits: u32,
    len: u8,
}

impl Signature {
    pub fn from_bits(bits: u32, len: u32) -> Self {
        debug_assert!(len <= 32);
        let mask = if len == 32 {
            u32::MAX
        } else {
            (1u32 << len) - 1
        };
        Self {
            bits: bits & mask,
            len: len as u8,
        }
    }

    /// All entries `+1`.
    pub fn plus(len: u32) -> Self {
        Self::from_bits(0, len)
    }

    /// All entries `-1`.
    pub fn minus(len: u32) -> Self {
        Self::from_bits(u32::MAX, len)
    }

    pub fn from_values(values: &[i8]) -> Result<Self> {
        let mut bits = 0;
        for (i, &v) in values.iter().enumerate() {
            match v {
                1 => {}
                -1 => bits |= 1 << i,
                _ => {
                    return Err(EfbError::InvalidArgument(format!(
                        "signature entries must be ±1, got {v}"
                    )))
                }
            }
        }
        Ok(Self::from_bits(bits, values.len() as u32))
    }

    /// Parses a string such as `"+-+"`; the first character is pair 1.
    pub fn parse(src: &str) -> Result<Self> {
        let values = src
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(EfbError::InvalidArgument(format!(
                    "signature `{src}` must contain only '+' and '-'"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        if values.is_empty() || values.len() > 32 {
            return Err(EfbError::InvalidArgument(format!(
                "signature `{src}` has invalid length"
            )));
        }
        Self::from_values(&values)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.len as u32
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Entry of pair `i` (1-based) as `±1`.
    pub fn value(&self, i: u32) -> i8 {
        assert!(i >= 1 && i <= self.len(), "pair index {i} out of range");
        if self.bits >> (i - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn values(&self) -> Vec<i8> {
        (1..=self.len()).map(|i| self.value(i)).collect()
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(EfbError::SignatureLength {
                left: self.len,
                right: other.len,
            });
        }
        Ok(Self {
            bits: self.bits ^ other.bits,
            len: self.len,
        })
    }

    /// Product of all entries.
    pub fn product(&self) -> i8 {
        if self.bits.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Flips the entry of pair `i` (1-based).
    pub fn flipped(&self, i: u32) -> Self {
        assert!(i >= 1 && i <= self.len(), "pair index {i} out of range");
        Self {
            bits: self.bits ^ (1 << (i - 1)),
            len: self.len,
        }
    }

    /// Euclidean scalar product of the two `±1` vectors.
    pub fn dot(&self, other: &Self) -> i32 {
        let differ = (self.bits ^ other.bits).count_ones() as i32;
        self.len as i32 - 2 * differ
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            f.write_str(if self.value(i) == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}
