//! The isomorphism `Cl(m,m) ≅ F(2^m)` in EFB coordinates.
//!
//! Each EFB element owns exactly one cell of a `2^m × 2^m` matrix: the row is
//! its h-signature and the column its h∘g-signature. Indices are big-endian
//! in the pair number (pair 1 selects the top/left half), and a `+1` entry is
//! index bit 0. Cell signs follow the recursion
//!
//! ```text
//! A_m = | q1p1 A_{m-1}        q1 Γ_{m-1} A_{m-1} |
//!       | p1 Γ_{m-1} A_{m-1}  p1q1 A_{m-1}       |
//! ```

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde_json::{json, Value};

use crate::efb::{EfbKey, Factor, Multivector};
use crate::error::{EfbError, Result};
use crate::random::random_multivector;
use crate::scalar::Scalar;
use crate::signature::{AlgebraConfig, Signature};

/// Largest `m` for which dense matrices are built by default.
pub const DEFAULT_MATRIX_CAP: u32 = 8;

/// Converts between a row/column index and the signature bits it labels.
pub fn index_to_bits(index: usize, m: u32) -> u32 {
    (0..m).fold(0, |bits, i| bits | ((index >> (m - 1 - i)) as u32 & 1) << i)
}

pub fn bits_to_index(bits: u32, m: u32) -> usize {
    (0..m).fold(0, |idx, i| idx | ((bits >> i) as usize & 1) << (m - 1 - i))
}

/// One labelled cell: the EFB element and the sign it carries in `A_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub key: EfbKey,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfbMatrixLayout {
    m: u32,
    row_h: Vec<Signature>,
    col_hg: Vec<Signature>,
    cells: Vec<Cell>,
    /// Cell sign indexed by `h << m | g`.
    sign_by_key: Vec<i8>,
}

impl EfbMatrixLayout {
    fn build(m: u32) -> Self {
        // Grow A from the last pair towards the first; at each step the
        // previous block covers pairs l+1..m.
        let mut cells: Vec<Cell> = Vec::new();
        let mut n = 1usize;
        let mut block_gamma: Vec<i8> = vec![1];
        cells.push(Cell {
            key: EfbKey::new(0, 0),
            sign: 1,
        });
        for l in (0..m).rev() {
            let mut next = vec![
                Cell {
                    key: EfbKey::new(0, 0),
                    sign: 1
                };
                4 * n * n
            ];
            for (block_r, block_c, factor) in [
                (0, 0, Factor::QP),
                (0, 1, Factor::Q),
                (1, 0, Factor::P),
                (1, 1, Factor::PQ),
            ] {
                let twisted = block_r != block_c;
                for r in 0..n {
                    for c in 0..n {
                        let inner = cells[r * n + c];
                        let sign = if twisted {
                            inner.sign * block_gamma[r]
                        } else {
                            inner.sign
                        };
                        let key = EfbKey::new(
                            inner.key.h | (factor.h_bit() as u32) << l,
                            inner.key.g | (factor.g_bit() as u32) << l,
                        );
                        next[(block_r * n + r) * 2 * n + block_c * n + c] = Cell { key, sign };
                    }
                }
            }
            block_gamma = kron_diag(&[1, -1], &block_gamma);
            cells = next;
            n *= 2;
        }

        let mut sign_by_key = vec![0i8; n * n];
        for cell in &cells {
            sign_by_key[(cell.key.h as usize) << m | cell.key.g as usize] = cell.sign;
        }
        let row_h = (0..n)
            .map(|r| Signature::from_bits(index_to_bits(r, m), m))
            .collect();
        let col_hg = (0..n)
            .map(|c| Signature::from_bits(index_to_bits(c, m), m))
            .collect();
        Self {
            m,
            row_h,
            col_hg,
            cells,
            sign_by_key,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn row_h(&self) -> &[Signature] {
        &self.row_h
    }

    pub fn col_hg(&self) -> &[Signature] {
        &self.col_hg
    }

    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.dim() + col]
    }

    pub fn sign(&self, key: EfbKey) -> i8 {
        self.sign_by_key[(key.h as usize) << self.m | key.g as usize]
    }

    /// Row and column holding an EFB element.
    pub fn position(&self, key: EfbKey) -> (usize, usize) {
        (
            bits_to_index(key.h, self.m),
            bits_to_index(key.hg(), self.m),
        )
    }

    /// Text rendering of one cell, e.g. `-q1 p2`.
    pub fn cell_label(&self, row: usize, col: usize) -> String {
        let cell = self.cell(row, col);
        let body = cell.key.label(self.m);
        if cell.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn kron_diag(a: &[i8], b: &[i8]) -> Vec<i8> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// The memoized layout of `A_m`.
pub fn layout(config: AlgebraConfig) -> Result<Arc<EfbMatrixLayout>> {
    layout_with_cap(config, DEFAULT_MATRIX_CAP)
}

pub fn layout_with_cap(config: AlgebraConfig, cap: u32) -> Result<Arc<EfbMatrixLayout>> {
    let m = config.m();
    if m > cap {
        return Err(EfbError::SizeCap {
            what: "matrix layout",
            m,
            cap,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<EfbMatrixLayout>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(guard
        .entry(m)
        .or_insert_with(|| Arc::new(EfbMatrixLayout::build(m)))
        .clone())
}

/// Dense `2^m × 2^m` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrix<S> {
    config: AlgebraConfig,
    entries: Vec<S>,
}

impl<S: Scalar> RepMatrix<S> {
    pub fn zeros(config: AlgebraConfig) -> Self {
        let n = config.spinor_dim();
        Self {
            config,
            entries: vec![S::zero(); n * n],
        }
    }

    pub fn identity(config: AlgebraConfig) -> Self {
        let mut out = Self::zeros(config);
        for i in 0..out.dim() {
            out.set(i, i, S::one());
        }
        out
    }

    pub fn from_rows(config: AlgebraConfig, rows: Vec<Vec<S>>) -> Result<Self> {
        let n = config.spinor_dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(EfbError::InvalidArgument(format!(
                "matrix for m = {} must be {n} x {n}",
                config.m()
            )));
        }
        Ok(Self {
            config,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn config(&self) -> AlgebraConfig {
        self.config
    }

    pub fn dim(&self) -> usize {
        self.config.spinor_dim()
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        let n = self.dim();
        self.entries[row * n + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> + '_ {
        self.entries.chunks(self.dim())
    }

    /// Schoolbook `O(n³)` product.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.config.ensure_same(&rhs.config)?;
        let n = self.dim();
        let mut out = Self::zeros(self.config);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a.mul_ref(&rhs.entries[k * n + j]);
                }
            }
        }
        Ok(out)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.config == other.config
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b))
    }

    /// `{"m": m, "entries": [[...], ...]}` with scalar strings.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(Scalar::to_literal).collect())
            .collect();
        json!({ "m": self.config.m(), "entries": rows })
    }

    pub fn from_json(value: &Value, config: AlgebraConfig) -> Result<Self> {
        let bad = |msg: &str| EfbError::InvalidArgument(format!("matrix JSON: {msg}"));
        let m = value["m"].as_u64().ok_or_else(|| bad("missing m"))?;
        if m != config.m() as u64 {
            return Err(bad("m does not match the algebra"));
        }
        let rows = value["entries"]
            .as_array()
            .ok_or_else(|| bad("missing entries"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(|v| {
                        v.as_str()
                            .and_then(S::parse_literal)
                            .ok_or_else(|| bad("entry is not a scalar string"))
                    })
                    .collect::<Result<Vec<S>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(config, rows)
    }
}

/// Image of a multivector under the isomorphism.
pub fn to_matrix<S: Scalar>(a: &Multivector<S>) -> Result<RepMatrix<S>> {
    to_matrix_with_cap(a, DEFAULT_MATRIX_CAP)
}

pub fn to_matrix_with_cap<S: Scalar>(a: &Multivector<S>, cap: u32) -> Result<RepMatrix<S>> {
    let config = a.config();
    let lay = layout_with_cap(config, cap)?;
    let mut out = RepMatrix::zeros(config);
    for (key, c) in a.terms() {
        let (r, col) = lay.position(key);
        let v = if lay.sign(key) < 0 {
            -c.clone()
        } else {
            c.clone()
        };
        out.set(r, col, v);
    }
    Ok(out)
}

pub fn from_matrix<S: Scalar>(mat: &RepMatrix<S>) -> Result<Multivector<S>> {
    from_matrix_with_cap(mat, DEFAULT_MATRIX_CAP)
}

pub fn from_matrix_with_cap<S: Scalar>(mat: &RepMatrix<S>, cap: u32) -> Result<Multivector<S>> {
    let config = mat.config();
    let lay = layout_with_cap(config, cap)?;
    let n = mat.dim();
    let mut terms = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let v = mat.get(r, c);
            if v.is_zero() {
                continue;
            }
            let cell = lay.cell(r, c);
            terms.push((cell.key, if cell.sign < 0 { -v.clone() } else { v.clone() }));
        }
    }
    Multivector::from_terms(config, terms)
}

/// `Γ_m = diag(1, -1) ⊗ Γ_{m-1}`.
pub fn gamma_matrix<S: Scalar>(config: AlgebraConfig) -> Result<RepMatrix<S>> {
    if config.m() > DEFAULT_MATRIX_CAP {
        return Err(EfbError::SizeCap {
            what: "gamma matrix",
            m: config.m(),
            cap: DEFAULT_MATRIX_CAP,
        });
    }
    let diag = (0..config.m()).fold(vec![1i8], |acc, _| kron_diag(&[1, -1], &acc));
    let mut out = RepMatrix::zeros(config);
    for (i, d) in diag.into_iter().enumerate() {
        out.set(i, i, if d > 0 { S::one() } else { -S::one() });
    }
    Ok(out)
}

/// Evidence that a left multiple escaped the tested subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealWitness<S> {
    pub multiplier: Multivector<S>,
    pub element: EfbKey,
    pub product: Multivector<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdealCheck<S> {
    Holds,
    Fails(Box<IdealWitness<S>>),
}

impl<S> IdealCheck<S> {
    pub fn holds(&self) -> bool {
        matches!(self, IdealCheck::Holds)
    }
}

fn left_ideal_check<S, R>(
    config: AlgebraConfig,
    members: &[EfbKey],
    contains: impl Fn(EfbKey) -> bool,
    trials: usize,
    rng: &mut R,
) -> Result<IdealCheck<S>>
where
    S: Scalar,
    R: Rng + ?Sized,
{
    for _ in 0..trials {
        let omega = random_multivector::<S, R>(config, 0.5, rng);
        for &phi in members {
            let product = omega.product(&Multivector::basis_element(config, phi)?)?;
            if product.terms().any(|(k, _)| !contains(k)) {
                return Ok(IdealCheck::Fails(Box::new(IdealWitness {
                    multiplier: omega,
                    element: phi,
                    product,
                })));
            }
        }
    }
    Ok(IdealCheck::Holds)
}

/// Checks that left multiples of the elements of column `col` stay in the
/// column's span, using `trials` random multipliers.
pub fn column_ideal_check<S, R>(
    config: AlgebraConfig,
    col: usize,
    trials: usize,
    rng: &mut R,
) -> Result<IdealCheck<S>>
where
    S: Scalar,
    R: Rng + ?Sized,
{
    let n = config.spinor_dim();
    if col >= n {
        return Err(EfbError::OutOfRange {
            what: "column",
            index: col,
            range: format!("0..{n}"),
        });
    }
    let hg = index_to_bits(col, config.m());
    let members: Vec<EfbKey> = (0..n as u32).map(|h| EfbKey::new(h, h ^ hg)).collect();
    left_ideal_check(config, &members, |k| k.hg() == hg, trials, rng)
}

/// The same test applied to the elements of row `row`.
pub fn row_ideal_check<S, R>(
    config: AlgebraConfig,
    row: usize,
    trials: usize,
    rng: &mut R,
) -> Result<IdealCheck<S>>
where
    S: Scalar,
    R: Rng + ?Sized,
{
    let n = config.spinor_dim();
    if row >= n {
        return Err(EfbError::OutOfRange {
            what: "row",
            index: row,
            range: format!("0..{n}"),
        });
    }
    let h = index_to_bits(row, config.m());
    let members: Vec<EfbKey> = (0..n as u32).map(|g| EfbKey::new(h, g)).collect();
    left_ideal_check(config, &members, |k| k.h == h, trials, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(m: u32) -> AlgebraConfig {
        AlgebraConfig::exact(m).unwrap()
    }

    #[test]
    fn index_mapping_is_big_endian() {
        // Row 1 of A_2 is "+-": pair 2 negative.
        assert_eq!(index_to_bits(1, 2), 0b10);
        assert_eq!(index_to_bits(2, 2), 0b01);
        for m in 1..=5 {
            for i in 0..1usize << m {
                assert_eq!(bits_to_index(index_to_bits(i, m), m), i);
            }
        }
    }

    #[test]
    fn a1_layout() {
        let lay = layout(cfg(1)).unwrap();
        let labels: Vec<String> = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| lay.cell_label(r, c))
            .collect();
        assert_eq!(labels, ["q1p1", "q1", "p1", "p1q1"]);
    }

    #[test]
    fn signs_match_closed_form() {
        // sign = (-1)^{sum over odd pairs i of #{j > i : h_j = -1}}
        for m in 1..=5 {
            let lay = layout(cfg(m)).unwrap();
            for h in 0..1u32 << m {
                for g in 0..1u32 << m {
                    let mut count = 0;
                    for i in 0..m {
                        if g >> i & 1 == 1 {
                            count += (h >> (i + 1)).count_ones();
                        }
                    }
                    let expect = if count % 2 == 0 { 1 } else { -1 };
                    assert_eq!(lay.sign(EfbKey::new(h, g)), expect);
                }
            }
        }
    }

    #[test]
    fn every_element_in_exactly_one_cell() {
        for m in 1..=4 {
            let lay = layout(cfg(m)).unwrap();
            let n = lay.dim();
            let mut seen = std::collections::HashSet::new();
            for r in 0..n {
                for c in 0..n {
                    let cell = lay.cell(r, c);
                    assert!(seen.insert(cell.key));
                    assert_eq!(cell.key.h, lay.row_h()[r].bits());
                    assert_eq!(cell.key.hg(), lay.col_hg()[c].bits());
                    assert_eq!(lay.position(cell.key), (r, c));
                }
            }
            assert_eq!(seen.len(), n * n);
        }
    }

    #[test]
    fn gamma_matrix_values() {
        let g1 = gamma_matrix::<Rational>(cfg(1)).unwrap();
        assert_eq!(*g1.get(0, 0), Rational::from_ratio(1, 1));
        assert_eq!(*g1.get(1, 1), Rational::from_ratio(-1, 1));
        let g2 = gamma_matrix::<Rational>(cfg(2)).unwrap();
        let diag: Vec<_> = (0..4).map(|i| g2.get(i, i).clone()).collect();
        let expect: Vec<_> = [1, -1, -1, 1]
            .iter()
            .map(|&v| Rational::from_ratio(v, 1))
            .collect();
        assert_eq!(diag, expect);
        for m in 1..=4 {
            let g = gamma_matrix::<Rational>(cfg(m)).unwrap();
            assert_eq!(g.matmul(&g).unwrap(), RepMatrix::identity(cfg(m)));
            let vol = Multivector::<Rational>::volume_element(cfg(m));
            assert_eq!(to_matrix(&vol).unwrap(), g);
        }
    }

    #[test]
    fn identity_maps_to_identity() {
        for m in 1..=4 {
            let one = Multivector::<Rational>::identity(cfg(m));
            assert_eq!(to_matrix(&one).unwrap(), RepMatrix::identity(cfg(m)));
            assert_eq!(from_matrix(&RepMatrix::identity(cfg(m))).unwrap(), one);
        }
    }

    #[test]
    fn top_right_is_all_q() {
        for m in 1..=4 {
            let c = cfg(m);
            let mut e = RepMatrix::<Rational>::zeros(c);
            e.set(0, c.spinor_dim() - 1, Rational::from_ratio(1, 1));
            let mv = from_matrix(&e).unwrap();
            let all_q = EfbKey::new(0, c.mask());
            assert_eq!(mv, Multivector::basis_element(c, all_q).unwrap());
        }
    }

    #[test]
    fn json_roundtrip() {
        let c = cfg(2);
        let m = to_matrix(&Multivector::<Rational>::volume_element(c)).unwrap();
        let v = m.to_json();
        assert_eq!(v["entries"][1][1], "-1");
        assert_eq!(RepMatrix::from_json(&v, c).unwrap(), m);
    }

    #[test]
    fn size_cap() {
        let c = AlgebraConfig::exact(9).unwrap();
        let one = Multivector::<Rational>::identity(c);
        assert!(matches!(to_matrix(&one), Err(EfbError::SizeCap { .. })));
        assert!(layout_with_cap(c, 9).is_ok());
    }

    #[test]
    fn column_check_out_of_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(column_ideal_check::<Rational, _>(cfg(2), 4, 1, &mut rng).is_err());
    }

    #[test]
    fn rightmost_column_is_left_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(column_ideal_check::<Rational, _>(cfg(2), 3, 20, &mut rng)
            .unwrap()
            .holds());
    }

    #[test]
    fn a_row_is_not_a_left_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let check = row_ideal_check::<Rational, _>(cfg(1), 0, 5, &mut rng).unwrap();
        match check {
            IdealCheck::Fails(w) => {
                assert!(w.product.terms().any(|(k, _)| k.h != 0));
            }
            IdealCheck::Holds => panic!("row 0 of A_1 should not be a left ideal"),
        }
    }
}
