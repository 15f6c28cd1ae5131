//! Scalar fields the algebra is defined over.
//!
//! Two fields are supported: exact rationals (the default, used for every
//! identity check) and `f64` (used by the benchmark harness).

use std::fmt::Debug;
use std::ops::{AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Arbitrary precision fraction.
pub type Rational = BigRational;

/// Termwise relative tolerance for float-mode comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarMode {
    ExactRational,
    Float64,
}

impl std::fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarMode::ExactRational => f.write_str("exact"),
            ScalarMode::Float64 => f.write_str("float"),
        }
    }
}

/// A field element usable as a multivector coefficient.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + AddAssign
    + 'static
{
    const MODE: ScalarMode;

    fn mul_ref(&self, rhs: &Self) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Exact equality for rationals, relative tolerance for floats.
    fn approx_eq(&self, other: &Self) -> bool;

    fn is_negative(&self) -> bool;

    /// Parses a decimal (`-1.25`) or fraction (`3/4`) literal.
    fn parse_literal(src: &str) -> Option<Self>;

    /// Renders the value so that [`Scalar::parse_literal`] recovers it.
    fn to_literal(&self) -> String;

    /// Draws a nonzero random coefficient.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn to_f64(&self) -> f64;

    /// `acc += ±(a·b)`.
    #[inline]
    fn mul_add_signed(acc: &mut Self, a: &Self, b: &Self, negative: bool) {
        let t = a.mul_ref(b);
        if negative {
            *acc += -t;
        } else {
            *acc += t;
        }
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::ExactRational;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn parse_literal(src: &str) -> Option<Self> {
        parse_rational(src)
    }

    fn to_literal(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let numer: i64 = rng.gen_range(1..=9);
        let denom: i64 = rng.gen_range(1..=4);
        let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
        Self::from_ratio(sign * numer, denom)
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float64;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= FLOAT_TOLERANCE * scale
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn parse_literal(src: &str) -> Option<Self> {
        if let Some((n, d)) = src.split_once('/') {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            if d == 0.0 {
                return None;
            }
            Some(n / d)
        } else {
            let v: f64 = src.trim().parse().ok()?;
            v.is_finite().then_some(v)
        }
    }

    fn to_literal(&self) -> String {
        format!("{self}")
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: f64 = rng.gen_range(-1.0..1.0);
            if v != 0.0 {
                return v;
            }
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    #[inline]
    fn mul_add_signed(acc: &mut Self, a: &Self, b: &Self, negative: bool) {
        let t = f64::from_bits((a * b).to_bits() ^ ((negative as u64) << 63));
        *acc += t;
    }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Accepts `[-]int`, `[-]int.frac`, `[-].frac` and `[-]int/int`.
fn parse_rational(src: &str) -> Option<Rational> {
    let src = src.trim();
    let (negative, body) = match src.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, src.strip_prefix('+').unwrap_or(src)),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n = parse_digits(n)?;
        let d = parse_digits(d)?;
        if d.is_zero() {
            return None;
        }
        Rational::new(n, d)
    } else if let Some((int, frac)) = body.split_once('.') {
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        let int = if int.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(int)?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = if frac.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(frac)?
        };
        Rational::new(int * &scale + frac, scale)
    } else {
        Rational::from_integer(parse_digits(body)?)
    };
    Some(if negative { -value } else { value })
}
