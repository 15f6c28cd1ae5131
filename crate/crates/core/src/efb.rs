//! EFB representation of `Cl(m,m)`.
//!
//! Every basis element is a product `ψ_1 ψ_2 ⋯ ψ_m` with one factor per Witt
//! pair, `ψ_i ∈ {q_i p_i, p_i q_i, p_i, q_i}`. A factor is identified by two
//! bits: the h-bit records the first null vector (`q` → `+1`, `p` → `-1`) and
//! the g-bit its parity (even → `+1`, odd → `-1`). A whole element is thus a
//! pair of m-bit signatures, and a [`Multivector`] is a sparse map from those
//! pairs to coefficients.
//!
//! The product of two elements is nonzero only when `h_a ∘ g_a = h_b`, which
//! lets [`Multivector::product`] bucket the right operand by h-signature and
//! visit `2^{3m}` candidate pairs on dense inputs instead of `2^{4m}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{EfbError, Result};
use crate::scalar::Scalar;
use crate::signature::{AlgebraConfig, Signature};

/// One factor `ψ_i` of an EFB element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `q_i p_i`: h = +1, g = +1.
    QP,
    /// `p_i q_i`: h = -1, g = +1.
    PQ,
    /// `p_i`: h = -1, g = -1.
    P,
    /// `q_i`: h = +1, g = -1.
    Q,
}

impl Factor {
    pub const ALL: [Factor; 4] = [Factor::QP, Factor::PQ, Factor::P, Factor::Q];

    /// Bits use the signature convention: `true` means `-1`.
    pub fn from_bits(h: bool, g: bool) -> Self {
        match (h, g) {
            (false, false) => Factor::QP,
            (true, false) => Factor::PQ,
            (true, true) => Factor::P,
            (false, true) => Factor::Q,
        }
    }

    pub fn h_bit(self) -> bool {
        matches!(self, Factor::PQ | Factor::P)
    }

    pub fn g_bit(self) -> bool {
        matches!(self, Factor::P | Factor::Q)
    }

    /// Text form for pair `i`, e.g. `q2p2`.
    pub fn label(self, i: u32) -> String {
        match self {
            Factor::QP => format!("q{i}p{i}"),
            Factor::PQ => format!("p{i}q{i}"),
            Factor::P => format!("p{i}"),
            Factor::Q => format!("q{i}"),
        }
    }
}

/// Single-pair product `ψ_i φ_i` in `Cl(1,1)`; `None` is zero.
///
/// Every nonzero cell has coefficient `+1`.
pub fn factor_product(psi: Factor, phi: Factor) -> Option<Factor> {
    use Factor::*;
    match (psi, phi) {
        (QP, QP) => Some(QP),
        (QP, Q) => Some(Q),
        (PQ, PQ) => Some(PQ),
        (PQ, P) => Some(P),
        (P, QP) => Some(P),
        (P, Q) => Some(PQ),
        (Q, PQ) => Some(Q),
        (Q, P) => Some(QP),
        _ => None,
    }
}

/// Bit `i` of the result is the parity of the bits of `x` strictly below `i`.
#[inline]
pub(crate) fn parity_below(x: u32) -> u32 {
    let mut p = x << 1;
    p ^= p << 1;
    p ^= p << 2;
    p ^= p << 4;
    p ^= p << 8;
    p ^= p << 16;
    p
}

/// Sign picked up moving every `φ_j` left past the `ψ_i` with `i > j`.
///
/// Factors on different pairs commute up to the product of their parities,
/// so the sign is `(-1)^{#{(i, j) : j < i, ψ_i odd, φ_j odd}}`.
#[inline]
pub(crate) fn reorder_parity(g_psi: u32, g_phi: u32) -> u32 {
    (g_psi & parity_below(g_phi)).count_ones() & 1
}

pub fn reorder_sign(g_psi: Signature, g_phi: Signature) -> Result<i8> {
    if g_psi.len() != g_phi.len() {
        return Err(EfbError::SignatureLength {
            left: g_psi.len() as u8,
            right: g_phi.len() as u8,
        });
    }
    Ok(if reorder_parity(g_psi.bits(), g_phi.bits()) == 0 {
        1
    } else {
        -1
    })
}

/// Raw `(h, g)` bit pair identifying an EFB basis element.
///
/// Ordered by h first, then g; this is the canonical term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EfbKey {
    pub h: u32,
    pub g: u32,
}

impl EfbKey {
    pub fn new(h: u32, g: u32) -> Self {
        Self { h, g }
    }

    pub fn from_factors(factors: &[Factor]) -> Self {
        let mut key = EfbKey::new(0, 0);
        for (i, f) in factors.iter().enumerate() {
            key.h |= (f.h_bit() as u32) << i;
            key.g |= (f.g_bit() as u32) << i;
        }
        key
    }

    /// The h∘g label of the spinor space (matrix column) holding this element.
    pub fn hg(self) -> u32 {
        self.h ^ self.g
    }

    /// Factor of pair `i` (1-based).
    pub fn factor(self, i: u32) -> Factor {
        let b = i - 1;
        Factor::from_bits(self.h >> b & 1 == 1, self.g >> b & 1 == 1)
    }

    pub fn factors(self, m: u32) -> Vec<Factor> {
        (1..=m).map(|i| self.factor(i)).collect()
    }

    /// Text form such as `q1p1 p2`.
    pub fn label(self, m: u32) -> String {
        (1..=m)
            .map(|i| self.factor(i).label(i))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Product of basis elements: `None` when zero, otherwise the key and sign.
    #[inline]
    pub fn product(self, rhs: EfbKey) -> Option<(EfbKey, bool)> {
        if self.h ^ self.g != rhs.h {
            return None;
        }
        let negative = reorder_parity(self.g, rhs.g) == 1;
        Some((EfbKey::new(self.h, self.g ^ rhs.g), negative))
    }
}

/// Which null vector of a Witt pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NullKind {
    P,
    Q,
}

/// The unique term of `p_i` or `q_i` that survives left multiplication onto
/// `target`; returns the product key and sign, or `None` when it vanishes.
pub fn left_null_product(kind: NullKind, pair: u32, target: EfbKey) -> Option<(EfbKey, bool)> {
    let bit = 1u32 << (pair - 1);
    // The vector's factors off pair i are q_l p_l + p_l q_l; only the one whose
    // h matches the target's h survives. On pair i the factor is fixed.
    let h_i = match kind {
        NullKind::P => bit,
        NullKind::Q => 0,
    };
    let term = EfbKey::new((target.h & !bit) | h_i, bit);
    term.product(target)
}

/// As [`left_null_product`], multiplying from the right.
pub fn right_null_product(target: EfbKey, kind: NullKind, pair: u32) -> Option<(EfbKey, bool)> {
    let bit = 1u32 << (pair - 1);
    let h_i = match kind {
        NullKind::P => bit,
        NullKind::Q => 0,
    };
    let term = EfbKey::new((target.hg() & !bit) | h_i, bit);
    target.product(term)
}

/// A single EFB element `Ψ = ψ_1 ⋯ ψ_m` with a coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct EfbElement<S> {
    pub h: Signature,
    pub g: Signature,
    pub coeff: S,
}

impl<S: Scalar> EfbElement<S> {
    pub fn new(h: Signature, g: Signature, coeff: S) -> Result<Self> {
        if h.len() != g.len() {
            return Err(EfbError::SignatureLength {
                left: h.len() as u8,
                right: g.len() as u8,
            });
        }
        Ok(Self { h, g, coeff })
    }

    pub fn from_factors(factors: &[Factor], coeff: S) -> Self {
        let key = EfbKey::from_factors(factors);
        Self::from_key(key, factors.len() as u32, coeff)
    }

    pub fn from_key(key: EfbKey, m: u32, coeff: S) -> Self {
        Self {
            h: Signature::from_bits(key.h, m),
            g: Signature::from_bits(key.g, m),
            coeff,
        }
    }

    pub fn m(&self) -> u32 {
        self.h.len()
    }

    pub fn key(&self) -> EfbKey {
        EfbKey::new(self.h.bits(), self.g.bits())
    }

    pub fn factor(&self, i: u32) -> Factor {
        self.key().factor(i)
    }

    pub fn hg(&self) -> Signature {
        Signature::from_bits(self.h.bits() ^ self.g.bits(), self.m())
    }

    /// `ħ = ∏ h_i`, the eigenvalue of `Γ` acting from the left.
    pub fn helicity(&self) -> i8 {
        self.h.product()
    }

    /// `θ = ∏ g_i`, the parity under `γ → -γ`.
    pub fn parity(&self) -> i8 {
        self.g.product()
    }

    /// Product `self · rhs`; `Ok(None)` when it vanishes.
    pub fn product(&self, rhs: &Self) -> Result<Option<Self>> {
        if self.m() != rhs.m() {
            return Err(EfbError::SignatureLength {
                left: self.m() as u8,
                right: rhs.m() as u8,
            });
        }
        Ok(self.key().product(rhs.key()).map(|(key, negative)| {
            let mut coeff = self.coeff.mul_ref(&rhs.coeff);
            if negative {
                coeff = -coeff;
            }
            Self::from_key(key, self.m(), coeff)
        }))
    }
}

impl<S: Scalar> fmt::Display for EfbElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * {}",
            self.coeff.to_literal(),
            self.key().label(self.m())
        )
    }
}

/// Free-function form of [`EfbElement::product`].
pub fn efb_product<S: Scalar>(
    a: &EfbElement<S>,
    b: &EfbElement<S>,
) -> Result<Option<EfbElement<S>>> {
    a.product(b)
}

/// Eigenvalues of the volume element acting on a multivector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaEigen {
    /// `ħ` with `Γ a = ħ a`.
    pub right: Option<i8>,
    /// `ħθ` with `a Γ = ħθ a`.
    pub left: Option<i8>,
}

/// A general element of `Cl(m,m)` in EFB coordinates.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    config: AlgebraConfig,
    terms: BTreeMap<EfbKey, S>,
}

impl<S: Scalar> Multivector<S> {
    /// # Panics
    /// If the config's scalar mode is not the mode of `S`.
    pub fn zero(config: AlgebraConfig) -> Self {
        assert_eq!(
            config.scalar_mode(),
            S::MODE,
            "scalar type does not match the algebra's scalar mode"
        );
        Self {
            config,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms; repeated keys accumulate.
    pub fn from_terms<I>(config: AlgebraConfig, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EfbKey, S)>,
    {
        let mut mv = Self::zero(config);
        for (key, coeff) in terms {
            mv.check_key(key)?;
            mv.add_term(key, coeff);
        }
        Ok(mv)
    }

    pub fn from_element(config: AlgebraConfig, element: &EfbElement<S>) -> Result<Self> {
        if element.m() != config.m() {
            return Err(EfbError::SignatureLength {
                left: config.m() as u8,
                right: element.m() as u8,
            });
        }
        Self::from_terms(config, [(element.key(), element.coeff.clone())])
    }

    pub fn basis_element(config: AlgebraConfig, key: EfbKey) -> Result<Self> {
        Self::from_terms(config, [(key, S::one())])
    }

    /// `1 = ∏ (q_i p_i + p_i q_i)`: all `2^m` elements with even factors.
    pub fn identity(config: AlgebraConfig) -> Self {
        let mut mv = Self::zero(config);
        for h in 0..config.spinor_dim() as u32 {
            mv.terms.insert(EfbKey::new(h, 0), S::one());
        }
        mv
    }

    /// `Γ = γ_1 ⋯ γ_{2m} = ∏ (q_i p_i - p_i q_i)`.
    pub fn volume_element(config: AlgebraConfig) -> Self {
        let mut mv = Self::zero(config);
        for h in 0..config.spinor_dim() as u32 {
            let c = if h.count_ones() % 2 == 0 {
                S::one()
            } else {
                -S::one()
            };
            mv.terms.insert(EfbKey::new(h, 0), c);
        }
        mv
    }

    /// The null vector `p_i` or `q_i` as an algebra element.
    pub fn null_vector(config: AlgebraConfig, kind: NullKind, pair: u32) -> Result<Self> {
        check_pair(config, pair)?;
        let bit = 1u32 << (pair - 1);
        let h_i = if kind == NullKind::P { bit } else { 0 };
        let mut mv = Self::zero(config);
        for h in 0..config.spinor_dim() as u32 {
            if h & bit == 0 {
                mv.terms.insert(EfbKey::new(h | h_i, bit), S::one());
            }
        }
        Ok(mv)
    }

    /// Generator `γ_k` (1-based, `k ≤ 2m`): `p_i + q_i` for odd `k = 2i-1`,
    /// `p_i - q_i` for even `k = 2i`.
    pub fn generator(config: AlgebraConfig, k: u32) -> Result<Self> {
        if k == 0 || k > 2 * config.m() {
            return Err(EfbError::OutOfRange {
                what: "generator index",
                index: k as usize,
                range: format!("1..={}", 2 * config.m()),
            });
        }
        let pair = k.div_ceil(2);
        let p = Self::null_vector(config, NullKind::P, pair)?;
        let q = Self::null_vector(config, NullKind::Q, pair)?;
        Ok(if k % 2 == 1 { &p + &q } else { &p - &q })
    }

    pub fn config(&self) -> AlgebraConfig {
        self.config
    }

    pub fn m(&self) -> u32 {
        self.config.m()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(h, g)` order.
    pub fn terms(&self) -> impl Iterator<Item = (EfbKey, &S)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn elements(&self) -> impl Iterator<Item = EfbElement<S>> + '_ {
        let m = self.m();
        self.terms
            .iter()
            .map(move |(k, c)| EfbElement::from_key(*k, m, c.clone()))
    }

    pub fn coeff(&self, key: EfbKey) -> S {
        self.terms.get(&key).cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn check_key(&self, key: EfbKey) -> Result<()> {
        let mask = self.config.mask();
        if key.h & !mask != 0 || key.g & !mask != 0 {
            return Err(EfbError::OutOfRange {
                what: "signature bits",
                index: (key.h | key.g) as usize,
                range: format!("0..{}", self.config.spinor_dim()),
            });
        }
        Ok(())
    }

    /// Adds `coeff` to the coefficient of `key`, removing it if it cancels.
    pub(crate) fn add_term(&mut self, key: EfbKey, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.config);
        if factor.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.add_term(*k, c.mul_ref(factor));
        }
        out
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.config.ensure_same(&rhs.config)?;
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&-rhs)
    }

    /// Clifford product `self · rhs`.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        self.product_counted(rhs).map(|(mv, _)| mv)
    }

    /// Clifford product, also returning the number of candidate term pairs
    /// visited (pairs satisfying the nonzero condition on signatures).
    pub fn product_counted(&self, rhs: &Self) -> Result<(Self, u64)> {
        self.config.ensure_same(&rhs.config)?;
        let dim = self.config.spinor_dim();
        if S::MODE == crate::scalar::ScalarMode::Float64 && 2 * rhs.terms.len() >= dim * dim {
            return Ok(self.product_by_columns(rhs));
        }

        // Right operand in (h, g) order is already grouped by h; keep it as
        // flat arrays plus the start of each h-group.
        let n = rhs.terms.len();
        let mut start = vec![0usize; dim + 1];
        let mut gs = Vec::with_capacity(n);
        let mut below = Vec::with_capacity(n);
        let mut coeffs = Vec::with_capacity(n);
        for (k, c) in &rhs.terms {
            start[k.h as usize + 1] += 1;
            gs.push(k.g);
            below.push(parity_below(k.g));
            coeffs.push(c.clone());
        }
        for h in 0..dim {
            start[h + 1] += start[h];
        }

        // Every product of a left term lands in row h_a, so a dense
        // accumulator indexed by g serves one row at a time.
        let mut out = Vec::new();
        let mut acc: Vec<S> = vec![S::zero(); dim];
        let mut visited = 0u64;
        let mut row: Option<u32> = None;
        for (ka, ca) in &self.terms {
            if row != Some(ka.h) {
                if let Some(h) = row {
                    flush_row(&mut out, h, &mut acc);
                }
                row = Some(ka.h);
            }
            let inner = (ka.h ^ ka.g) as usize;
            let range = start[inner]..start[inner + 1];
            visited += range.len() as u64;
            for ((&gb, &bl), cb) in gs[range.clone()]
                .iter()
                .zip(&below[range.clone()])
                .zip(&coeffs[range])
            {
                let negative = (ka.g & bl).count_ones() & 1 == 1;
                S::mul_add_signed(&mut acc[(ka.g ^ gb) as usize], ca, cb, negative);
            }
        }
        if let Some(h) = row {
            flush_row(&mut out, h, &mut acc);
        }
        Ok((
            Self {
                config: self.config,
                terms: out.into_iter().collect(),
            },
            visited,
        ))
    }

    /// Same product with the right operand stored densely by h∘g (its
    /// matrix column `c`); the result lands in the same column. With
    /// `g_a = h ^ k` and `g_b = k ^ c` the reorder sign splits into factors
    /// depending on `(g_a, k)`, `(k, c)` and `(h, c)`: the second is folded
    /// into the stored operand and the third applied when a row is flushed,
    /// leaving a plain scaled row addition in the inner loop.
    fn product_by_columns(&self, rhs: &Self) -> (Self, u64) {
        let dim = self.config.spinor_dim();
        let below: Vec<u32> = (0..dim as u32).map(parity_below).collect();
        let odd = |x: u32, y: u32| (x & y).count_ones() & 1 == 1;
        let mut dense: Vec<S> = vec![S::zero(); dim * dim];
        let mut count = vec![0u64; dim];
        for (key, v) in &rhs.terms {
            let (k, c) = (key.h, key.hg());
            dense[k as usize * dim + c as usize] = if odd(k, below[c as usize]) {
                -v.clone()
            } else {
                v.clone()
            };
            count[k as usize] += 1;
        }

        let mut out = Vec::new();
        let mut acc: Vec<S> = vec![S::zero(); dim];
        let mut visited = 0u64;
        let mut row: Option<u32> = None;
        let flush = |out: &mut Vec<(EfbKey, S)>, h: u32, acc: &mut [S]| {
            for (c, slot) in acc.iter_mut().enumerate() {
                if !slot.is_zero() {
                    let v = std::mem::replace(slot, S::zero());
                    out.push((
                        EfbKey::new(h, h ^ c as u32),
                        if odd(h, below[c]) { -v } else { v },
                    ));
                }
            }
        };
        for (ka, ca) in &self.terms {
            if row != Some(ka.h) {
                if let Some(h) = row {
                    flush(&mut out, h, &mut acc);
                }
                row = Some(ka.h);
            }
            let k = (ka.h ^ ka.g) as usize;
            visited += count[k];
            if count[k] == 0 {
                continue;
            }
            let lead = if odd(ka.g, below[k]) {
                -ca.clone()
            } else {
                ca.clone()
            };
            for (slot, b) in acc.iter_mut().zip(&dense[k * dim..(k + 1) * dim]) {
                *slot += lead.mul_ref(b);
            }
        }
        if let Some(h) = row {
            flush(&mut out, h, &mut acc);
        }
        (
            Self {
                config: self.config,
                terms: out.into_iter().collect(),
            },
            visited,
        )
    }

    /// Reference product visiting all `|a|·|b|` pairs; used as a check on the
    /// bucketed loop.
    pub fn product_all_pairs(&self, rhs: &Self) -> Result<Self> {
        self.config.ensure_same(&rhs.config)?;
        let mut out = Self::zero(self.config);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                if let Some((k, negative)) = ka.product(*kb) {
                    let c = ca.mul_ref(cb);
                    out.add_term(k, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Right (`Γa = ħa`) and left (`aΓ = ħθ a`) eigenvalues of the volume
    /// element, when they exist.
    pub fn gamma_eigen(&self) -> Result<GammaEigen> {
        if self.is_zero() {
            return Err(EfbError::ZeroInput("multivector"));
        }
        let gamma = Self::volume_element(self.config);
        let neg = -self;
        let classify = |image: Self| {
            if image.approx_eq(self) {
                Some(1)
            } else if image.approx_eq(&neg) {
                Some(-1)
            } else {
                None
            }
        };
        Ok(GammaEigen {
            right: classify(gamma.product(self)?),
            left: classify(self.product(&gamma)?),
        })
    }

    /// Exact equality for rationals; termwise tolerance for floats.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.config != other.config {
            return false;
        }
        let zero = S::zero();
        let all_match = |a: &BTreeMap<EfbKey, S>, b: &BTreeMap<EfbKey, S>| {
            a.iter()
                .all(|(k, c)| c.approx_eq(b.get(k).unwrap_or(&zero)))
        };
        all_match(&self.terms, &other.terms) && all_match(&other.terms, &self.terms)
    }

    /// Keeps only terms whose key satisfies the predicate.
    pub fn filter(&self, mut keep: impl FnMut(EfbKey) -> bool) -> Self {
        Self {
            config: self.config,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }
}

fn flush_row<S: Scalar>(out: &mut Vec<(EfbKey, S)>, h: u32, acc: &mut [S]) {
    for (g, slot) in acc.iter_mut().enumerate() {
        if !slot.is_zero() {
            out.push((EfbKey::new(h, g as u32), std::mem::replace(slot, S::zero())));
        }
    }
}

pub(crate) fn check_pair(config: AlgebraConfig, pair: u32) -> Result<()> {
    if pair == 0 || pair > config.m() {
        return Err(EfbError::OutOfRange {
            what: "pair index",
            index: pair as usize,
            range: format!("1..={}", config.m()),
        });
    }
    Ok(())
}

/// Free-function form of [`Multivector::product`].
pub fn mv_product<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> Result<Multivector<S>> {
    a.product(b)
}

pub fn volume_element<S: Scalar>(config: AlgebraConfig) -> Multivector<S> {
    Multivector::volume_element(config)
}

pub fn gamma_eigen<S: Scalar>(a: &Multivector<S>) -> Result<GammaEigen> {
    a.gamma_eigen()
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;

    fn neg(self) -> Multivector<S> {
        Multivector {
            config: self.config,
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

/// # Panics
/// If the operands belong to different algebras.
impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;

    fn add(self, rhs: Self) -> Multivector<S> {
        self.try_add(rhs)
            .expect("operands of + must share an algebra")
    }
}

/// # Panics
/// If the operands belong to different algebras.
impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;

    fn sub(self, rhs: Self) -> Multivector<S> {
        self.try_sub(rhs)
            .expect("operands of - must share an algebra")
    }
}

/// # Panics
/// If the operands belong to different algebras.
impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;

    fn mul(self, rhs: Self) -> Multivector<S> {
        self.product(rhs)
            .expect("operands of * must share an algebra")
    }
}
