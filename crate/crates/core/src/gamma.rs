//! Standard gamma-blade basis and exact conversion to and from the EFB.
//!
//! A blade `γ_{i1} γ_{i2} ⋯ γ_{ik}` with ascending indices is a bit mask over
//! the `2m` generators (bit `k - 1` for `γ_k`). Odd-index generators square to
//! `+1`, even-index ones to `-1`. The blade product here shares no code with
//! the EFB product and serves as its oracle.

use std::collections::BTreeMap;

use crate::efb::{parity_below, EfbKey, Factor, Multivector};
use crate::error::{EfbError, Result};
use crate::scalar::Scalar;
use crate::signature::AlgebraConfig;

/// Bits of the even-index generators `γ_2, γ_4, …` (squares `-1`).
const NEGATIVE_SQUARES: u32 = 0xAAAA_AAAA;

/// A single blade with coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaBlade<S> {
    pub mask: u32,
    pub coeff: S,
}

impl<S: Scalar> GammaBlade<S> {
    pub fn new(mask: u32, coeff: S) -> Self {
        Self { mask, coeff }
    }

    /// Builds a blade from 1-based generator indices in any order; the sign
    /// of sorting them (and of any repeated squares) goes into the coefficient.
    pub fn from_indices(indices: &[u32], coeff: S) -> Self {
        indices.iter().fold(Self::new(0, coeff), |acc, &k| {
            acc.product(&Self::new(1 << (k - 1), S::one()))
        })
    }

    pub fn grade(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn product(&self, rhs: &Self) -> Self {
        let mut coeff = self.coeff.mul_ref(&rhs.coeff);
        if blade_sign_negative(self.mask, rhs.mask) {
            coeff = -coeff;
        }
        Self::new(self.mask ^ rhs.mask, coeff)
    }
}

/// Whether the canonical product of two unit blades carries a minus sign.
pub(crate) fn blade_sign_negative(a: u32, b: u32) -> bool {
    let swaps = (a & parity_below(b)).count_ones();
    (swaps + (a & b & NEGATIVE_SQUARES).count_ones()) & 1 == 1
}

pub fn blade_product<S: Scalar>(a: &GammaBlade<S>, b: &GammaBlade<S>) -> GammaBlade<S> {
    a.product(b)
}

/// Sparse element of `Cl(m,m)` in the gamma-blade basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMultivector<S> {
    config: AlgebraConfig,
    terms: BTreeMap<u32, S>,
}

impl<S: Scalar> GammaMultivector<S> {
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

    pub fn from_terms<I>(config: AlgebraConfig, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, S)>,
    {
        let mut out = Self::zero(config);
        let limit = generator_mask(config);
        for (mask, c) in terms {
            if mask & !limit != 0 {
                return Err(EfbError::OutOfRange {
                    what: "blade mask",
                    index: mask as usize,
                    range: format!("generators 1..={}", 2 * config.m()),
                });
            }
            out.add_term(mask, c);
        }
        Ok(out)
    }

    pub fn from_blade(config: AlgebraConfig, blade: &GammaBlade<S>) -> Result<Self> {
        Self::from_terms(config, [(blade.mask, blade.coeff.clone())])
    }

    pub fn config(&self) -> AlgebraConfig {
        self.config
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

    pub fn terms(&self) -> impl Iterator<Item = (u32, &S)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, mask: u32) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn add_term(&mut self, mask: u32, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Blade-by-blade product; returns the product and the number of term
    /// pairs visited (always `|a|·|b|`).
    pub fn product_counted(&self, rhs: &Self) -> Result<(Self, u64)> {
        self.config.ensure_same(&rhs.config)?;
        let mut acc: Vec<S> = vec![S::zero(); self.config.algebra_dim()];
        let mut visited = 0u64;
        for (&ma, ca) in &self.terms {
            visited += rhs.terms.len() as u64;
            for (&mb, cb) in &rhs.terms {
                let c = ca.mul_ref(cb);
                let slot = &mut acc[(ma ^ mb) as usize];
                if blade_sign_negative(ma, mb) {
                    *slot += -c;
                } else {
                    *slot += c;
                }
            }
        }
        let mut out = Self::zero(self.config);
        for (mask, c) in acc.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(mask as u32, c);
            }
        }
        Ok((out, visited))
    }

    pub fn product(&self, rhs: &Self) -> Result<Self> {
        self.product_counted(rhs).map(|(p, _)| p)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.config.ensure_same(&rhs.config)?;
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.config);
        for (k, c) in &self.terms {
            out.add_term(*k, c.mul_ref(factor));
        }
        out
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.config != other.config {
            return false;
        }
        let zero = S::zero();
        let covered = |a: &BTreeMap<u32, S>, b: &BTreeMap<u32, S>| {
            a.iter()
                .all(|(k, c)| c.approx_eq(b.get(k).unwrap_or(&zero)))
        };
        covered(&self.terms, &other.terms) && covered(&other.terms, &self.terms)
    }
}

fn generator_mask(config: AlgebraConfig) -> u32 {
    let n = 2 * config.m();
    if n >= 32 {
        u32::MAX
    } else {
        (1 << n) - 1
    }
}

/// EFB expansion of the pair-`l` part of a blade, as `(factor, negative)`:
/// nothing → `q p + p q`, `γ_{2l-1}` → `p + q`, `γ_{2l}` → `p - q`,
/// both → `q p - p q`.
fn pair_to_efb(odd: bool, even: bool) -> [(Factor, bool); 2] {
    match (odd, even) {
        (false, false) => [(Factor::QP, false), (Factor::PQ, false)],
        (true, false) => [(Factor::P, false), (Factor::Q, false)],
        (false, true) => [(Factor::P, false), (Factor::Q, true)],
        (true, true) => [(Factor::QP, false), (Factor::PQ, true)],
    }
}

/// Gamma expansion of one factor, up to the overall `1/2`, as
/// `(pair-local blade bits, negative)` with bit 0 for `γ_{2l-1}` and bit 1
/// for `γ_{2l}`.
fn factor_to_gamma(f: Factor) -> [(u32, bool); 2] {
    match f {
        Factor::QP => [(0b00, false), (0b11, false)],
        Factor::PQ => [(0b00, false), (0b11, true)],
        Factor::P => [(0b01, false), (0b10, false)],
        Factor::Q => [(0b01, false), (0b10, true)],
    }
}

/// Converts blade coordinates to EFB coordinates.
///
/// Ascending blade order already groups generators by Witt pair, so each
/// blade is the ordered product of its pair-local parts and expands into
/// exactly `2^m` EFB elements.
pub fn gamma_to_efb<S: Scalar>(a: &GammaMultivector<S>) -> Multivector<S> {
    let config = a.config;
    let m = config.m();
    let mut out = Multivector::zero(config);
    for (mask, coeff) in &a.terms {
        let mut partial: Vec<(EfbKey, bool)> = vec![(EfbKey::new(0, 0), false)];
        for l in 0..m {
            let odd = mask >> (2 * l) & 1 == 1;
            let even = mask >> (2 * l + 1) & 1 == 1;
            let choices = pair_to_efb(odd, even);
            partial = partial
                .into_iter()
                .flat_map(|(key, neg)| {
                    choices.iter().map(move |&(f, fneg)| {
                        let k = EfbKey::new(
                            key.h | (f.h_bit() as u32) << l,
                            key.g | (f.g_bit() as u32) << l,
                        );
                        (k, neg ^ fneg)
                    })
                })
                .collect();
        }
        for (key, neg) in partial {
            out.add_term(key, if neg { -coeff.clone() } else { coeff.clone() });
        }
    }
    out
}

/// Converts EFB coordinates to blade coordinates via
/// `p_i = (γ_{2i-1} + γ_{2i})/2`, `q_i = (γ_{2i-1} - γ_{2i})/2`.
pub fn efb_to_gamma<S: Scalar>(a: &Multivector<S>) -> GammaMultivector<S> {
    let config = a.config();
    let m = config.m();
    let mut scale = S::one();
    let half = S::from_ratio(1, 2);
    for _ in 0..m {
        scale = scale.mul_ref(&half);
    }
    let mut out = GammaMultivector::zero(config);
    for (key, coeff) in a.terms() {
        let base = coeff.mul_ref(&scale);
        let mut partial: Vec<(u32, bool)> = vec![(0, false)];
        for l in 1..=m {
            let choices = factor_to_gamma(key.factor(l));
            let shift = 2 * (l - 1);
            partial = partial
                .into_iter()
                .flat_map(|(mask, neg)| {
                    choices
                        .iter()
                        .map(move |&(bits, fneg)| (mask | bits << shift, neg ^ fneg))
                })
                .collect();
        }
        for (mask, neg) in partial {
            out.add_term(mask, if neg { -base.clone() } else { base.clone() });
        }
    }
    out
}

/// Blade text form such as `g1 g4`; the empty blade is `1`.
pub fn blade_label(mask: u32) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    (0..32)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| format!("g{}", k + 1))
        .collect::<Vec<_>>()
        .join(" ")
}
