//! Spinor spaces, totally null planes and simple spinors.
//!
//! A spinor space is the span of the `2^m` EFB elements sharing one h∘g
//! signature (a column of the matrix representation, and a minimal left
//! ideal). Inside a space an element is fixed by its h-signature, so spinor
//! coordinates are indexed by h bits. Vectors act on spinors by left Clifford
//! multiplication, which permutes coordinates with signs.
//!
//! All routines here are exact: simplicity is a rank question.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::efb::{
    left_null_product, right_null_product, EfbElement, EfbKey, Multivector, NullKind,
};
use crate::error::{EfbError, Result};
use crate::linalg;
use crate::scalar::{Rational, Scalar};
use crate::signature::{AlgebraConfig, Signature};

/// Grade-1 element `Σ a_i p_i + b_i q_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    config: AlgebraConfig,
    p: Vec<Rational>,
    q: Vec<Rational>,
}

impl WittVector {
    pub fn new(config: AlgebraConfig, p: Vec<Rational>, q: Vec<Rational>) -> Result<Self> {
        let m = config.m() as usize;
        if p.len() != m || q.len() != m {
            return Err(EfbError::InvalidArgument(format!(
                "Witt vector for m = {m} needs {m} p and {m} q coefficients"
            )));
        }
        Ok(Self { config, p, q })
    }

    pub fn zero(config: AlgebraConfig) -> Self {
        let m = config.m() as usize;
        Self {
            config,
            p: vec![Rational::zero(); m],
            q: vec![Rational::zero(); m],
        }
    }

    /// The basis vector `p_i` or `q_i`.
    pub fn basis(config: AlgebraConfig, kind: NullKind, pair: u32) -> Result<Self> {
        crate::efb::check_pair(config, pair)?;
        let mut v = Self::zero(config);
        let slot = match kind {
            NullKind::P => &mut v.p,
            NullKind::Q => &mut v.q,
        };
        slot[pair as usize - 1] = Rational::one();
        Ok(v)
    }

    pub fn p(config: AlgebraConfig, pair: u32) -> Self {
        Self::basis(config, NullKind::P, pair).expect("pair index in range")
    }

    pub fn q(config: AlgebraConfig, pair: u32) -> Self {
        Self::basis(config, NullKind::Q, pair).expect("pair index in range")
    }

    /// Coordinates `(a_1..a_m, b_1..b_m)`.
    pub fn from_coords(config: AlgebraConfig, coords: &[Rational]) -> Result<Self> {
        let m = config.m() as usize;
        if coords.len() != 2 * m {
            return Err(EfbError::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                2 * m,
                coords.len()
            )));
        }
        Self::new(config, coords[..m].to_vec(), coords[m..].to_vec())
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.p.iter().chain(&self.q).cloned().collect()
    }

    pub fn config(&self) -> AlgebraConfig {
        self.config
    }

    pub fn p_coeffs(&self) -> &[Rational] {
        &self.p
    }

    pub fn q_coeffs(&self) -> &[Rational] {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().chain(&self.q).all(Zero::is_zero)
    }

    /// `⟨v, w⟩` with `vw + wv = ⟨v, w⟩ · 1`.
    pub fn pairing(&self, other: &Self) -> Rational {
        self.p
            .iter()
            .zip(&other.q)
            .chain(self.q.iter().zip(&other.p))
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_null(&self) -> bool {
        self.pairing(self).is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            config: self.config,
            p: self.p.iter().zip(&other.p).map(|(a, b)| a + b).collect(),
            q: self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            config: self.config,
            p: self.p.iter().map(|a| a * factor).collect(),
            q: self.q.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn to_multivector(&self) -> Multivector<Rational> {
        let mut out = Multivector::zero(self.config);
        for (i, (a, b)) in self.p.iter().zip(&self.q).enumerate() {
            let pair = i as u32 + 1;
            for (coeff, kind) in [(a, NullKind::P), (b, NullKind::Q)] {
                if !coeff.is_zero() {
                    let v = Multivector::null_vector(self.config, kind, pair)
                        .expect("pair index in range");
                    out = &out + &v.scale(coeff);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p.iter().map(Scalar::to_literal).collect::<Vec<_>>(),
            "q": self.q.iter().map(Scalar::to_literal).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WittVector {
    /// Lists q terms before p terms, e.g. `q1 - p2 - p3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .q
            .iter()
            .enumerate()
            .map(|(i, c)| (c, 'q', i + 1))
            .chain(self.p.iter().enumerate().map(|(i, c)| (c, 'p', i + 1)))
            .filter(|(c, _, _)| !c.is_zero());
        let mut first = true;
        for (c, name, i) in terms {
            let mag = c.abs();
            let body = if mag.is_one() {
                format!("{name}{i}")
            } else {
                format!("{}*{name}{i}", mag.to_literal())
            };
            match (first, Signed::is_negative(c)) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A totally null subspace of `V`, stored as a reduced row echelon basis
/// over `(a_1..a_m, b_1..b_m)`; equal planes have equal bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NullPlane {
    config: AlgebraConfig,
    basis: Vec<WittVector>,
}

impl NullPlane {
    pub fn from_spanning(config: AlgebraConfig, vectors: &[WittVector]) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            config.ensure_same(&v.config)?;
            for w in &vectors[i..] {
                if !v.pairing(w).is_zero() {
                    return Err(EfbError::InvalidArgument(format!(
                        "vectors {v} and {w} are not mutually null"
                    )));
                }
            }
        }
        let rows: Vec<Vec<Rational>> = vectors.iter().map(WittVector::coords).collect();
        Ok(Self::from_rows(config, &rows))
    }

    fn from_rows(config: AlgebraConfig, rows: &[Vec<Rational>]) -> Self {
        let (reduced, _) = linalg::rref(rows);
        let basis = reduced
            .iter()
            .map(|r| WittVector::from_coords(config, r).expect("row length is 2m"))
            .collect();
        Self { config, basis }
    }

    pub fn config(&self) -> AlgebraConfig {
        self.config
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[WittVector] {
        &self.basis
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(WittVector::coords).collect()
    }

    pub fn contains(&self, v: &WittVector) -> bool {
        let mut rows = self.rows();
        rows.push(v.coords());
        linalg::rank(&rows) == self.dim()
    }

    pub fn intersection_dim(&self, other: &Self) -> usize {
        linalg::intersection_dim(&self.rows(), &other.rows())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.basis.iter().map(WittVector::to_json).collect())
    }
}

impl fmt::Display for NullPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

/// The minimal left ideal spanned by the EFB elements with a given h∘g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinorSpace {
    config: AlgebraConfig,
    hg: Signature,
}

impl SpinorSpace {
    pub fn new(config: AlgebraConfig, hg: Signature) -> Result<Self> {
        if hg.len() != config.m() {
            return Err(EfbError::SignatureLength {
                left: config.m() as u8,
                right: hg.len() as u8,
            });
        }
        Ok(Self { config, hg })
    }

    /// The space of the standard Fock basis: h∘g all `-1`.
    pub fn standard_fock(config: AlgebraConfig) -> Self {
        Self {
            config,
            hg: Signature::minus(config.m()),
        }
    }

    pub fn config(&self) -> AlgebraConfig {
        self.config
    }

    pub fn hg(&self) -> Signature {
        self.hg
    }

    pub fn dim(&self) -> usize {
        self.config.spinor_dim()
    }

    /// The basis element with h-signature bits `h`.
    pub fn key(&self, h: u32) -> EfbKey {
        EfbKey::new(h, h ^ self.hg.bits())
    }

    pub fn contains(&self, key: EfbKey) -> bool {
        key.hg() == self.hg.bits()
    }
}

impl fmt::Display for SpinorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S[{}]", self.hg)
    }
}

/// An element of one spinor space, by coordinates over its EFB basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spinor {
    space: SpinorSpace,
    coords: Vec<Rational>,
}

impl Spinor {
    pub fn zero(space: SpinorSpace) -> Self {
        Self {
            space,
            coords: vec![Rational::zero(); space.dim()],
        }
    }

    /// Coordinates indexed by h-signature bits.
    pub fn new(space: SpinorSpace, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(EfbError::InvalidArgument(format!(
                "spinor in {space} needs {} coordinates",
                space.dim()
            )));
        }
        Ok(Self { space, coords })
    }

    /// Unit spinor on the basis element with h-signature bits `h`.
    pub fn basis(space: SpinorSpace, h: u32) -> Result<Self> {
        if h as usize >= space.dim() {
            return Err(EfbError::OutOfRange {
                what: "h-signature",
                index: h as usize,
                range: format!("0..{}", space.dim()),
            });
        }
        let mut s = Self::zero(space);
        s.coords[h as usize] = Rational::one();
        Ok(s)
    }

    pub fn from_element(space: SpinorSpace, element: &EfbElement<Rational>) -> Result<Self> {
        let key = element.key();
        if element.m() != space.config.m() || !space.contains(key) {
            return Err(EfbError::NotInSpace {
                element: key.label(element.m()),
                space: space.to_string(),
            });
        }
        let mut s = Self::zero(space);
        s.coords[key.h as usize] = element.coeff.clone();
        Ok(s)
    }

    pub fn from_multivector(space: SpinorSpace, mv: &Multivector<Rational>) -> Result<Self> {
        space.config.ensure_same(&mv.config())?;
        let mut s = Self::zero(space);
        for (key, c) in mv.terms() {
            if !space.contains(key) {
                return Err(EfbError::NotInSpace {
                    element: key.label(mv.m()),
                    space: space.to_string(),
                });
            }
            s.coords[key.h as usize] = c.clone();
        }
        Ok(s)
    }

    /// Places a multivector in the spinor space its terms share.
    pub fn infer_from_multivector(mv: &Multivector<Rational>) -> Result<Self> {
        let (first, _) = mv.terms().next().ok_or(EfbError::ZeroInput("spinor"))?;
        let space = SpinorSpace::new(mv.config(), Signature::from_bits(first.hg(), mv.m()))?;
        if mv.terms().any(|(k, _)| !space.contains(k)) {
            return Err(EfbError::MixedSpaces);
        }
        Self::from_multivector(space, mv)
    }

    pub fn space(&self) -> SpinorSpace {
        self.space
    }

    pub fn config(&self) -> AlgebraConfig {
        self.space.config
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coeff(&self, h: u32) -> &Rational {
        &self.coords[h as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_multivector(&self) -> Multivector<Rational> {
        Multivector::from_terms(
            self.space.config,
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(h, c)| (self.space.key(h as u32), c.clone())),
        )
        .expect("keys lie in the algebra")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(EfbError::MixedSpaces);
        }
        Ok(Self {
            space: self.space,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            space: self.space,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn linear_combination(terms: &[(Rational, Spinor)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| EfbError::InvalidArgument("empty linear combination".into()))?;
        terms
            .iter()
            .try_fold(Self::zero(first.space), |acc, (c, s)| acc.add(&s.scale(c)))
    }

    /// Common helicity of the nonzero coordinates, i.e. the eigenvalue of
    /// `Γ` acting from the left, if the spinor is a Weyl spinor.
    pub fn helicity(&self) -> Option<i8> {
        let mut found = None;
        for (h, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let hel = if h.count_ones() % 2 == 0 { 1 } else { -1 };
            match found {
                None => found = Some(hel),
                Some(x) if x != hel => return None,
                _ => {}
            }
        }
        found
    }

    fn ensure_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(EfbError::ZeroInput("spinor"))
        } else {
            Ok(())
        }
    }
}

/// Left Clifford action `v · s`; the result stays in the same space.
pub fn vector_action(v: &WittVector, s: &Spinor) -> Result<Spinor> {
    v.config.ensure_same(&s.config())?;
    let space = s.space;
    let mut out = Spinor::zero(space);
    for (i, (a, b)) in v.p.iter().zip(&v.q).enumerate() {
        let pair = i as u32 + 1;
        for (coeff, kind) in [(a, NullKind::P), (b, NullKind::Q)] {
            if coeff.is_zero() {
                continue;
            }
            for (h, c) in s.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some((key, negative)) = left_null_product(kind, pair, space.key(h as u32)) {
                    debug_assert!(space.contains(key));
                    let term = coeff * c;
                    let slot = &mut out.coords[key.h as usize];
                    if negative {
                        *slot -= term;
                    } else {
                        *slot += term;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `M(s) = {v ∈ V : v s = 0}`, which is automatically totally null.
pub fn annihilator(s: &Spinor) -> Result<NullPlane> {
    s.ensure_nonzero()?;
    let config = s.config();
    let m = config.m();
    let images: Vec<Spinor> = [NullKind::P, NullKind::Q]
        .into_iter()
        .flat_map(|kind| (1..=m).map(move |pair| (kind, pair)))
        .map(|(kind, pair)| vector_action(&WittVector::basis(config, kind, pair)?, s))
        .collect::<Result<_>>()?;
    // Row h of the system: coefficient of basis element h in each image.
    let rows: Vec<Vec<Rational>> = (0..s.space.dim())
        .map(|h| images.iter().map(|img| img.coords[h].clone()).collect())
        .filter(|row: &Vec<Rational>| row.iter().any(|c| !c.is_zero()))
        .collect();
    let null = linalg::nullspace(&rows, 2 * m as usize);
    Ok(NullPlane::from_rows(config, &null))
}

/// Simple iff the annihilating plane is maximal (dimension `m`).
pub fn is_simple(s: &Spinor) -> Result<bool> {
    Ok(annihilator(s)?.dim() == s.config().m() as usize)
}

/// Whether `aΩ + bΦ` is simple for nonzero `a, b`: the signatures must agree
/// on `m - 2` pairs and be opposite on the remaining two.
pub fn two_term_simplicity(
    omega: &EfbElement<Rational>,
    phi: &EfbElement<Rational>,
    space: SpinorSpace,
) -> Result<bool> {
    let m = space.config.m();
    for e in [omega, phi] {
        if e.m() != m || !space.contains(e.key()) {
            return Err(EfbError::NotInSpace {
                element: e.key().label(e.m()),
                space: space.to_string(),
            });
        }
        if e.coeff.is_zero() {
            return Err(EfbError::ZeroInput("coefficient"));
        }
    }
    let (a, b) = (omega.key(), phi.key());
    if a == b {
        return Err(EfbError::InvalidArgument(
            "two-term rule needs distinct EFB elements".into(),
        ));
    }
    let h_diff = a.h ^ b.h;
    let g_diff = a.g ^ b.g;
    let verdict = h_diff.count_ones() == 2 && g_diff == h_diff;
    #[cfg(test)]
    {
        let sum = Spinor::from_element(space, omega)?.add(&Spinor::from_element(space, phi)?)?;
        assert_eq!(
            is_simple(&sum)?,
            verdict,
            "two-term rule disagrees with the annihilator"
        );
    }
    Ok(verdict)
}

/// Largest family of simple spinors with pairwise `(m-2)`-dimensional TNP
/// intersections.
pub fn family_size_bound(m: u32) -> usize {
    if m == 3 {
        4
    } else {
        m as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    /// Every pair of planes meets in dimension `m - 2`.
    Valid,
    IntersectionMismatch {
        first: usize,
        second: usize,
        dim: usize,
    },
    ExceedsBound {
        size: usize,
        bound: usize,
    },
}

impl FamilyVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, FamilyVerdict::Valid)
    }
}

/// Checks that simple spinors of one space pairwise meet in `(m-2)`-planes,
/// which makes all their linear combinations simple.
pub fn mutual_intersection_family_check(spinors: &[Spinor]) -> Result<FamilyVerdict> {
    let first = spinors
        .first()
        .ok_or_else(|| EfbError::InvalidArgument("empty family".into()))?;
    if spinors.iter().any(|s| s.space != first.space) {
        return Err(EfbError::MixedSpaces);
    }
    let m = first.config().m() as usize;
    let mut planes = Vec::with_capacity(spinors.len());
    for (i, s) in spinors.iter().enumerate() {
        let plane = annihilator(s)?;
        if plane.dim() != m {
            return Err(EfbError::NotSimple(i));
        }
        planes.push(plane);
    }
    for i in 0..spinors.len() {
        for j in i + 1..spinors.len() {
            if linalg::rank(&[spinors[i].coords.clone(), spinors[j].coords.clone()]) < 2 {
                return Err(EfbError::LinearlyDependent(i, j));
            }
        }
    }
    let bound = family_size_bound(m as u32);
    if spinors.len() > bound {
        return Ok(FamilyVerdict::ExceedsBound {
            size: spinors.len(),
            bound,
        });
    }
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            let dim = planes[i].intersection_dim(&planes[j]);
            if dim + 2 != m {
                return Ok(FamilyVerdict::IntersectionMismatch {
                    first: i,
                    second: j,
                    dim,
                });
            }
        }
    }
    Ok(FamilyVerdict::Valid)
}

/// Rank of the `±1` h-signature vectors in `Q^m`.
pub fn h_vectors_rank(signatures: &[Signature]) -> usize {
    let rows: Vec<Vec<Rational>> = signatures
        .iter()
        .map(|s| {
            s.values()
                .into_iter()
                .map(|v| Rational::from_ratio(v as i64, 1))
                .collect()
        })
        .collect();
    linalg::rank(&rows)
}

/// Rank of the Gram matrix `4I + (m-4)J` that `r` h-signature vectors with
/// pairwise scalar product `m - 4` would have.
///
/// Real vectors in `R^m` have a Gram matrix of rank at most `m`, so a rank
/// above `m` shows that no such family of size `r` exists.
pub fn family_gram_rank(m: u32, r: usize) -> usize {
    let off = Rational::from_ratio(m as i64 - 4, 1);
    let diag = Rational::from_ratio(m as i64, 1);
    let rows: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { diag.clone() } else { off.clone() })
                .collect()
        })
        .collect();
    linalg::rank(&rows)
}

/// Whether the Gram rank argument rules out any family of size `r`.
pub fn family_size_impossible(m: u32, r: usize) -> bool {
    family_gram_rank(m, r) > m as usize
}

/// A family of EFB elements spanning a plane of simple spinors, with the
/// annihilator of one distinguished member of that plane.
#[derive(Debug, Clone, PartialEq)]
pub struct TotallySimplePlane {
    pub spinors: Vec<EfbElement<Rational>>,
    /// Coefficients of the distinguished combination, one per spinor.
    pub combination_coeffs: Vec<Rational>,
    /// Spanning vectors in constructed (not reduced) form.
    pub generators: Vec<WittVector>,
    pub witness_tnp: NullPlane,
}

impl TotallySimplePlane {
    pub fn space(&self) -> SpinorSpace {
        SpinorSpace::standard_fock(self.witness_tnp.config())
    }

    /// The distinguished combination `Σ c_i Ψ_i`.
    pub fn combination(&self) -> Spinor {
        let space = self.space();
        let terms: Vec<(Rational, Spinor)> = self
            .combination_coeffs
            .iter()
            .zip(&self.spinors)
            .map(|(c, e)| {
                (
                    c.clone(),
                    Spinor::from_element(space, e).expect("family lies in S_F"),
                )
            })
            .collect();
        Spinor::linear_combination(&terms).expect("family is nonempty")
    }
}

/// The standard sequence of `k` S_F elements whose every combination is
/// simple: `q1 q2 ⋯ qm`, then for `j = 2..k` the element with `p1q1` in
/// slot 1 and `pjqj` in slot `j`. Their alternating sum is
/// `(1 + p1 v) q1 ⋯ qm` with `v = p2 + ⋯ + pk`, annihilated by
/// `span{q1 - v, q2 + p1, …, qk + p1, q(k+1), …, qm}`.
///
/// For `m = 3` the exceptional size `k = 4` is also accepted.
pub fn totally_simple_plane(config: AlgebraConfig, k: usize) -> Result<TotallySimplePlane> {
    let m = config.m();
    let max = family_size_bound(m);
    if m < 2 || k < 2 || k > max {
        return Err(EfbError::OutOfRange {
            what: "plane size k",
            index: k,
            range: if m < 2 {
                "none for m < 2".into()
            } else {
                format!("2..={max}")
            },
        });
    }
    let all_q = EfbKey::new(0, config.mask());
    let mut keys = vec![all_q];
    if k <= m as usize {
        for j in 2..=k as u32 {
            let flip = 1 | 1 << (j - 1);
            keys.push(EfbKey::new(all_q.h ^ flip, all_q.g ^ flip));
        }
    } else {
        // m = 3, k = 4: h-signatures (+++), (+--), (-+-), (--+).
        for h in [0b110, 0b101, 0b011] {
            keys.push(EfbKey::new(h, h ^ config.mask()));
        }
    }
    let spinors: Vec<EfbElement<Rational>> = keys
        .iter()
        .map(|&key| EfbElement::from_key(key, m, Rational::one()))
        .collect();
    let combination_coeffs: Vec<Rational> = (0..k)
        .map(|j| {
            if j % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            }
        })
        .collect();

    let (generators, witness_tnp) = if k <= m as usize {
        let v = (2..=k as u32).fold(WittVector::zero(config), |acc, i| {
            acc.add(&WittVector::p(config, i))
        });
        let p1 = WittVector::p(config, 1);
        let mut gens = vec![WittVector::q(config, 1).sub(&v)];
        for j in 2..=m {
            let qj = WittVector::q(config, j);
            gens.push(if j as usize <= k { qj.add(&p1) } else { qj });
        }
        let plane = NullPlane::from_spanning(config, &gens)?;
        (gens, plane)
    } else {
        let plane = TotallySimplePlane {
            spinors: spinors.clone(),
            combination_coeffs: combination_coeffs.clone(),
            generators: Vec::new(),
            witness_tnp: NullPlane {
                config,
                basis: Vec::new(),
            },
        };
        let tnp = annihilator(&plane.combination())?;
        (tnp.basis().to_vec(), tnp)
    };
    Ok(TotallySimplePlane {
        spinors,
        combination_coeffs,
        generators,
        witness_tnp,
    })
}

/// Right multiplication by the unit vector `p_i + q_i`, which flips `g_i` of
/// every term and moves the spinor to the space with h∘g bit `i` flipped.
pub fn g_flip(s: &Spinor, pair: u32) -> Result<Spinor> {
    let config = s.config();
    crate::efb::check_pair(config, pair)?;
    let space = SpinorSpace::new(config, s.space.hg.flipped(pair))?;
    let mut out = Spinor::zero(space);
    for (h, c) in s.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let key = s.space.key(h as u32);
        let image = right_null_product(key, NullKind::P, pair)
            .or_else(|| right_null_product(key, NullKind::Q, pair))
            .expect("exactly one of p_i, q_i survives");
        debug_assert_eq!(image.0.h, key.h);
        out.coords[h] = if image.1 { -c.clone() } else { c.clone() };
    }
    Ok(out)
}

/// Unit spinors of S_F with helicity `sign`, ordered by h bits.
pub fn weyl_subspace_basis(config: AlgebraConfig, sign: i8) -> Result<Vec<Spinor>> {
    if sign != 1 && sign != -1 {
        return Err(EfbError::InvalidArgument(format!(
            "helicity must be ±1, got {sign}"
        )));
    }
    let space = SpinorSpace::standard_fock(config);
    (0..config.spinor_dim() as u32)
        .filter(|h| (if h.count_ones() % 2 == 0 { 1 } else { -1 }) == sign)
        .map(|h| Spinor::basis(space, h))
        .collect()
}
