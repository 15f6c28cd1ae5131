//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.
//!
//! Products are checked against a blade algebra built here from scratch:
//! generator words are bubble-sorted and squared by hand, and each EFB
//! element is expanded as an ordered product of null vectors.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use efb_core::bench::{run_bench, BenchAlgo, BenchConfig, BenchReport};
use efb_core::efb::volume_element;
use efb_core::gamma::{efb_to_gamma, gamma_to_efb};
use efb_core::matrix::{
    column_ideal_check, from_matrix, layout, row_ideal_check, to_matrix, IdealCheck,
};
use efb_core::random::{random_gamma_multivector, random_multivector};
use efb_core::spinor::{
    annihilator, family_gram_rank, family_size_bound, family_size_impossible, is_simple,
    mutual_intersection_family_check, totally_simple_plane, two_term_simplicity, vector_action,
    FamilyVerdict, Spinor, SpinorSpace, WittVector,
};
use efb_core::text::format_efb;
use efb_core::{
    AlgebraConfig, EfbElement, EfbKey, GammaMultivector, Multivector, NullKind, Rational,
    RepMatrix, Scalar, Signature,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn exact(m: u32) -> AlgebraConfig {
    AlgebraConfig::exact(m).unwrap()
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

// ---------------------------------------------------------------------------
// Blade oracle

type Blades = BTreeMap<u32, Rational>;

/// Product of two generator words, by sorting the concatenated word with
/// adjacent swaps and cancelling repeated generators. Generator `k` (from 0)
/// squares to `+1` when `k` is even and `-1` when odd.
fn naive_blade_product(a: u32, b: u32) -> (u32, bool) {
    let mut word: Vec<u32> = (0..32).filter(|k| a >> k & 1 == 1).collect();
    word.extend((0..32).filter(|k| b >> k & 1 == 1));
    let mut negative = false;
    loop {
        let mut swapped = false;
        for i in 1..word.len() {
            if word[i - 1] > word[i] {
                word.swap(i - 1, i);
                negative = !negative;
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let mut kept: Vec<u32> = Vec::new();
    for k in word {
        if kept.last() == Some(&k) {
            kept.pop();
            if k % 2 == 1 {
                negative = !negative;
            }
        } else {
            kept.push(k);
        }
    }
    (kept.iter().map(|k| 1 << k).sum(), negative)
}

struct Oracle {
    m: u32,
    table: Vec<(u32, bool)>,
    elements: Vec<Blades>,
}

impl Oracle {
    fn new(m: u32) -> Self {
        let n = 1usize << (2 * m);
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                table.push(naive_blade_product(a, b));
            }
        }
        let mut oracle = Oracle {
            m,
            table,
            elements: Vec::new(),
        };
        let s = 1u32 << m;
        for h in 0..s {
            for g in 0..s {
                let mut e = Blades::from([(0, Rational::one())]);
                for i in 1..=m {
                    let (hb, gb) = (h >> (i - 1) & 1, g >> (i - 1) & 1);
                    let (p, q) = (oracle.p(i), oracle.q(i));
                    let factor = match (hb, gb) {
                        (0, 0) => oracle.mul(&q, &p),
                        (1, 0) => oracle.mul(&p, &q),
                        (0, 1) => q,
                        _ => p,
                    };
                    e = oracle.mul(&e, &factor);
                }
                oracle.elements.push(e);
            }
        }
        oracle
    }

    fn generator(&self, k: u32) -> Blades {
        Blades::from([(1 << (k - 1), Rational::one())])
    }

    fn p(&self, i: u32) -> Blades {
        Blades::from([(1 << (2 * i - 2), r(1, 2)), (1 << (2 * i - 1), r(1, 2))])
    }

    fn q(&self, i: u32) -> Blades {
        Blades::from([(1 << (2 * i - 2), r(1, 2)), (1 << (2 * i - 1), r(-1, 2))])
    }

    fn mul(&self, a: &Blades, b: &Blades) -> Blades {
        let n = 1usize << (2 * self.m);
        let mut acc = vec![Rational::zero(); n];
        for (&x, cx) in a {
            for (&y, cy) in b {
                let (z, neg) = self.table[x as usize * n + y as usize];
                let t = cx * cy;
                if neg {
                    acc[z as usize] -= t;
                } else {
                    acc[z as usize] += t;
                }
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(z, c)| (z as u32, c))
            .collect()
    }

    fn element(&self, key: EfbKey) -> &Blades {
        &self.elements[((key.h << self.m) | key.g) as usize]
    }

    fn expand(&self, a: &Multivector<Rational>) -> Blades {
        let mut out = Blades::new();
        for (key, c) in a.terms() {
            for (&z, v) in self.element(key) {
                *out.entry(z).or_insert_with(Rational::zero) += c * v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Dimension of `{v ∈ V : v x = 0}` over the span `V` of the generators.
    fn annihilator_dim(&self, x: &Blades) -> usize {
        let rows: Vec<Vec<Rational>> = (1..=2 * self.m)
            .map(|k| {
                let y = self.mul(&self.generator(k), x);
                let mut row = vec![Rational::zero(); 1 << (2 * self.m)];
                for (z, c) in y {
                    row[z as usize] = c;
                }
                row
            })
            .collect();
        2 * self.m as usize - rank(rows)
    }
}

fn scaled(a: &Blades, s: &Rational) -> Blades {
    a.iter()
        .map(|(&k, c)| (k, c * s))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn gamma_blades(a: &GammaMultivector<Rational>) -> Blades {
    a.terms().map(|(k, c)| (k, c.clone())).collect()
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = r(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        if !c.is_zero() {
            return c;
        }
    }
}

// ---------------------------------------------------------------------------
// Criteria

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    for m in 1..=4 {
        let config = exact(m);
        let oracle = Oracle::new(m);
        let mut rng = rng(m as u64);
        for t in 0..200 {
            let a = random_multivector::<Rational, _>(config, 0.5, &mut rng);
            let b = random_multivector::<Rational, _>(config, 0.5, &mut rng);
            let ab = a.product(&b).map_err(|e| e.to_string())?;

            let (ga, gb) = (efb_to_gamma(&a), efb_to_gamma(&b));
            ensure!(
                gamma_blades(&ga) == oracle.expand(&a),
                "m={m} pair {t}: blade expansion differs"
            );
            ensure!(
                oracle.expand(&ab) == oracle.mul(&oracle.expand(&a), &oracle.expand(&b)),
                "m={m} pair {t}: product disagrees with the blade oracle"
            );
            let via_gamma = gamma_to_efb(&ga.product(&gb).map_err(|e| e.to_string())?);
            ensure!(
                via_gamma == ab,
                "m={m} pair {t}: product disagrees with the blade product"
            );
            let mat = to_matrix(&a)
                .unwrap()
                .matmul(&to_matrix(&b).unwrap())
                .unwrap();
            ensure!(
                mat == to_matrix(&ab).unwrap(),
                "m={m} pair {t}: product disagrees with matmul"
            );
            pairs += 1;
        }
    }
    Ok(format!("{pairs} exact pairs, m = 1..4"))
}

fn nonzero_pair_census() -> Outcome {
    let mut detail = Vec::new();
    for m in 1..=3u32 {
        let oracle = Oracle::new(m);
        let s = 1u32 << m;
        let keys: Vec<EfbKey> = (0..s)
            .flat_map(|h| (0..s).map(move |g| EfbKey::new(h, g)))
            .collect();
        let mut nonzero = 0u64;
        for &a in &keys {
            for &b in &keys {
                let product = oracle.mul(oracle.element(a), oracle.element(b));
                let library = a.product(b);
                if product.is_empty() {
                    ensure!(library.is_none(), "m={m}: {a:?}·{b:?} should vanish");
                    continue;
                }
                nonzero += 1;
                let expect_key = EfbKey::new(a.h, a.g ^ b.g);
                let target = oracle.element(expect_key);
                let sign = if product == *target {
                    false
                } else if product == scaled(target, &r(-1, 1)) {
                    true
                } else {
                    return Err(format!("m={m}: {a:?}·{b:?} is not ±(h_a, g_a∘g_b)"));
                };
                ensure!(
                    library == Some((expect_key, sign)),
                    "m={m}: library product of {a:?}·{b:?} is {library:?}"
                );
            }
        }
        ensure!(
            nonzero == 1 << (3 * m),
            "m={m}: {nonzero} nonzero products, expected {}",
            1u64 << (3 * m)
        );
        detail.push(format!("m={m}: {nonzero}/{}", 1u64 << (4 * m)));
    }
    Ok(detail.join(", "))
}

fn volume_eigenstructure() -> Outcome {
    let mut count = 0;
    for m in 1..=4u32 {
        let config = exact(m);
        let oracle = Oracle::new(m);
        let full = (1u32 << (2 * m)) - 1;
        let gamma = Blades::from([(full, Rational::one())]);
        ensure!(
            oracle.expand(&volume_element::<Rational>(config)) == gamma,
            "m={m}: volume element expansion"
        );
        let s = 1u32 << m;
        for h in 0..s {
            for g in 0..s {
                let key = EfbKey::new(h, g);
                let e = oracle.element(key);
                let hbar = if h.count_ones() % 2 == 0 { 1 } else { -1 };
                let theta = if (h ^ g).count_ones() % 2 == 0 { 1 } else { -1 };
                ensure!(
                    oracle.mul(&gamma, e) == scaled(e, &r(hbar, 1)),
                    "m={m} {key:?}: ΓΨ ≠ ħΨ"
                );
                ensure!(
                    oracle.mul(e, &gamma) == scaled(e, &r(theta, 1)),
                    "m={m} {key:?}: ΨΓ ≠ ħθΨ"
                );
                let eigen = Multivector::<Rational>::basis_element(config, key)
                    .unwrap()
                    .gamma_eigen()
                    .unwrap();
                ensure!(
                    eigen.right == Some(hbar as i8) && eigen.left == Some(theta as i8),
                    "m={m} {key:?}: library eigenvalues {eigen:?}"
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} elements, m = 1..4"))
}

fn m2_layout_golden() -> Outcome {
    let border = ["++", "+-", "-+", "--"];
    let golden = [
        ["q1p1 q2p2", "q1p1 q2", "q1 q2p2", "q1 q2"],
        ["q1p1 p2", "q1p1 p2q2", "-q1 p2", "-q1 p2q2"],
        ["p1 q2p2", "p1 q2", "p1q1 q2p2", "p1q1 q2"],
        ["-p1 p2", "-p1 p2q2", "p1q1 p2", "p1q1 p2q2"],
    ];
    let table = layout(exact(2)).map_err(|e| e.to_string())?;
    for (i, want) in border.iter().enumerate() {
        ensure!(
            table.row_h()[i].to_string() == *want,
            "row {i} border {}",
            table.row_h()[i]
        );
        ensure!(
            table.col_hg()[i].to_string() == *want,
            "column {i} border {}",
            table.col_hg()[i]
        );
    }
    let mut minus = 0;
    for (row, cells) in golden.iter().enumerate() {
        for (col, want) in cells.iter().enumerate() {
            let got = table.cell_label(row, col);
            ensure!(
                got == *want,
                "cell ({row},{col}): got {got:?}, want {want:?}"
            );
            minus += got.starts_with('-') as usize;
        }
    }
    ensure!(minus == 4, "{minus} negative cells");
    Ok(format!(
        "16 cells and borders match; {minus} negative cells"
    ))
}

fn column_left_ideals() -> Outcome {
    let mut lines = Vec::new();
    for m in 1..=3u32 {
        let config = exact(m);
        let n = config.spinor_dim();
        let mut rng = rng(100 + m as u64);
        for col in 0..n {
            let check = column_ideal_check::<Rational, _>(config, col, 50, &mut rng)
                .map_err(|e| e.to_string())?;
            ensure!(check.holds(), "m={m}: column {col} is not a left ideal");
        }
        let mut failing = None;
        for row in 0..n {
            if let IdealCheck::Fails(w) = row_ideal_check::<Rational, _>(config, row, 50, &mut rng)
                .map_err(|e| e.to_string())?
            {
                let h = w.element.h;
                let recomputed = w
                    .multiplier
                    .product(&Multivector::basis_element(config, w.element).unwrap())
                    .unwrap();
                ensure!(
                    recomputed == w.product,
                    "m={m}: witness product does not recompute"
                );
                ensure!(
                    w.product.terms().any(|(k, _)| k.h != h),
                    "m={m}: witness stays in its row"
                );
                failing.get_or_insert_with(|| {
                    format!(
                        "m={m} row {row}: ({}) · {} = {}",
                        format_efb(&w.multiplier),
                        w.element.label(m),
                        format_efb(&w.product)
                    )
                });
            }
        }
        let Some(witness) = failing else {
            return Err(format!("m={m}: every row passed the left-ideal test"));
        };
        lines.push(witness);
    }
    for line in &lines {
        println!("      row witness {}", truncate(line, 160));
    }
    Ok("all columns are left ideals for m = 1..3; row witnesses above".into())
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        s.chars().take(n).collect::<String>() + " ..."
    }
}

fn annihilator_dimension() -> Outcome {
    let mut count = 0;
    for m in 1..=4u32 {
        let config = exact(m);
        let oracle = Oracle::new(m);
        let s = 1u32 << m;
        for h in 0..s {
            for g in 0..s {
                let key = EfbKey::new(h, g);
                let dim = oracle.annihilator_dim(oracle.element(key));
                ensure!(
                    dim == m as usize,
                    "m={m} {key:?}: oracle annihilator dimension {dim}"
                );
                let space = SpinorSpace::new(config, Signature::from_bits(key.hg(), m)).unwrap();
                let spinor =
                    Spinor::from_element(space, &EfbElement::from_key(key, m, Rational::one()))
                        .unwrap();
                let lib = annihilator(&spinor).unwrap().dim();
                ensure!(
                    lib == m as usize,
                    "m={m} {key:?}: library annihilator dimension {lib}"
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} elements, m = 1..4"))
}

fn two_term_rule() -> Outcome {
    let mut detail = Vec::new();
    for m in 2..=4u32 {
        let config = exact(m);
        let oracle = Oracle::new(m);
        let space = SpinorSpace::standard_fock(config);
        let n = space.dim() as u32;
        let (mut total, mut simple) = (0, 0);
        for a in 0..n {
            for b in a + 1..n {
                let (ka, kb) = (space.key(a), space.key(b));
                let ea = EfbElement::from_key(ka, m, Rational::one());
                let eb = EfbElement::from_key(kb, m, Rational::one());
                let (sa, sb) = (
                    Spinor::basis(space, a).unwrap(),
                    Spinor::basis(space, b).unwrap(),
                );
                let sum = sa.add(&sb).unwrap();
                let by_library = is_simple(&sum).unwrap();
                let by_rule = two_term_simplicity(&ea, &eb, space).unwrap();
                let meet = annihilator(&sa)
                    .unwrap()
                    .intersection_dim(&annihilator(&sb).unwrap());
                let by_oracle =
                    oracle.annihilator_dim(&oracle.expand(&sum.to_multivector())) == m as usize;
                let by_meet = meet + 2 == m as usize;
                ensure!(
                    by_library == by_rule && by_rule == by_meet && by_meet == by_oracle,
                    "m={m} pair ({a},{b}): simple={by_library} rule={by_rule} meet={meet} oracle={by_oracle}"
                );
                total += 1;
                simple += by_library as usize;
            }
        }
        detail.push(format!("m={m}: {simple}/{total} simple"));
    }
    Ok(detail.join(", "))
}

/// Largest set of `m`-bit words at pairwise Hamming distance exactly two.
fn max_distance_two_clique(m: u32) -> usize {
    fn grow(members: &mut Vec<u32>, candidates: &[u32], best: &mut usize) {
        *best = (*best).max(members.len());
        for (i, &c) in candidates.iter().enumerate() {
            if members.len() + candidates.len() - i <= *best {
                return;
            }
            let next: Vec<u32> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&d| (c ^ d).count_ones() == 2)
                .collect();
            members.push(c);
            grow(members, &next, best);
            members.pop();
        }
    }
    // Translating a clique keeps distances, so it may be taken to contain 0.
    let candidates: Vec<u32> = (1..1u32 << m).filter(|w| w.count_ones() == 2).collect();
    let mut best = 0;
    grow(&mut vec![0], &candidates, &mut best);
    best
}

fn simple_families() -> Outcome {
    let mut detail = Vec::new();

    let config = exact(3);
    let oracle = Oracle::new(3);
    let space = SpinorSpace::standard_fock(config);
    let family: Vec<Spinor> = [0b000, 0b110, 0b101, 0b011]
        .iter()
        .map(|&h| Spinor::basis(space, h).unwrap())
        .collect();
    let verdict = mutual_intersection_family_check(&family).map_err(|e| e.to_string())?;
    ensure!(
        verdict.is_valid(),
        "m=3 four-element family rejected: {verdict:?}"
    );
    let mut rng = rng(300);
    for t in 0..10 {
        let terms: Vec<(Rational, Spinor)> = family
            .iter()
            .map(|s| (random_rational(&mut rng), s.clone()))
            .collect();
        let x = Spinor::linear_combination(&terms).unwrap();
        ensure!(is_simple(&x).unwrap(), "m=3 combination {t} is not simple");
        ensure!(
            oracle.annihilator_dim(&oracle.expand(&x.to_multivector())) == 3,
            "m=3 combination {t}: oracle disagrees"
        );
    }
    detail.push("m=3: family of 4 valid, 10/10 combinations simple".to_string());

    for m in 4..=5u32 {
        let config = exact(m);
        let space = SpinorSpace::standard_fock(config);
        let hs: Vec<u32> = std::iter::once(0)
            .chain((2..=m).map(|j| 1 | 1 << (j - 1)))
            .collect();
        let family: Vec<Spinor> = hs
            .iter()
            .map(|&h| Spinor::basis(space, h).unwrap())
            .collect();
        let verdict = mutual_intersection_family_check(&family).map_err(|e| e.to_string())?;
        ensure!(
            verdict.is_valid(),
            "m={m}: chain family rejected: {verdict:?}"
        );
        ensure!(
            family_size_bound(m) == m as usize,
            "m={m}: bound {}",
            family_size_bound(m)
        );

        let gram = family_gram_rank(m, m as usize + 1);
        ensure!(
            gram > m as usize,
            "m={m}: Gram rank {gram} does not exceed m"
        );
        ensure!(
            family_size_impossible(m, m as usize + 1),
            "m={m}: size m+1 not ruled out"
        );
        let clique = max_distance_two_clique(m);
        ensure!(
            clique == m as usize,
            "m={m}: exhaustive search found a family of {clique}"
        );

        let mut larger = family.clone();
        larger.push(Spinor::basis(space, 0b110).unwrap());
        let verdict = mutual_intersection_family_check(&larger).map_err(|e| e.to_string())?;
        ensure!(
            matches!(verdict, FamilyVerdict::ExceedsBound { .. }),
            "m={m}: family of m+1 accepted: {verdict:?}"
        );
        detail.push(format!(
            "m={m}: family of {m} valid, Gram rank {gram} > {m}, max clique {clique}"
        ));
    }
    ensure!(max_distance_two_clique(3) == 4, "m=3 exhaustive search");
    Ok(detail.join("; "))
}

fn plane_identities() -> Outcome {
    let mut checked = 0;
    for m in 3..=6u32 {
        let config = exact(m);
        let space = SpinorSpace::standard_fock(config);
        let oracle = (m <= 4).then(|| Oracle::new(m));
        let omega = Spinor::basis(space, 0).unwrap().to_multivector();
        ensure!(
            format_efb(&omega)
                == (1..=m)
                    .map(|i| format!("q{i}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            "Ω"
        );
        let p1 = Multivector::<Rational>::null_vector(config, NullKind::P, 1).unwrap();
        for k in 2..=m {
            let mut v = Multivector::zero(config);
            let mut v_vec = WittVector::zero(config);
            for i in 2..=k {
                v = v
                    .try_add(&Multivector::null_vector(config, NullKind::P, i).unwrap())
                    .unwrap();
                v_vec = v_vec.add(&WittVector::p(config, i));
            }
            let lifted = Multivector::identity(config)
                .try_add(&p1.product(&v).unwrap())
                .unwrap()
                .product(&omega)
                .unwrap();
            let x = Spinor::from_multivector(space, &lifted).map_err(|e| e.to_string())?;
            ensure!(!x.is_zero(), "m={m} k={k}: (1 + p1 v)Ω vanished");
            let plane = totally_simple_plane(config, k as usize).map_err(|e| e.to_string())?;
            let combo = plane.combination();
            ensure!(
                combo == x || combo == x.scale(&r(-1, 1)),
                "m={m} k={k}: alternating sum differs from (1 + p1 v)Ω"
            );

            let mut vectors = vec![WittVector::q(config, 1).sub(&v_vec)];
            vectors
                .extend((2..=k).map(|j| WittVector::q(config, j).add(&WittVector::p(config, 1))));
            for w in &vectors {
                ensure!(
                    vector_action(w, &x).unwrap().is_zero(),
                    "m={m} k={k}: ({w})(1 + p1 v)Ω ≠ 0"
                );
                ensure!(
                    plane.witness_tnp.contains(w),
                    "m={m} k={k}: {w} not in the reported plane"
                );
                if let Some(oracle) = &oracle {
                    let product =
                        oracle.mul(&oracle.expand(&w.to_multivector()), &oracle.expand(&lifted));
                    ensure!(
                        product.is_empty(),
                        "m={m} k={k}: oracle finds ({w})(1 + p1 v)Ω ≠ 0"
                    );
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} identities, m = 3..6"))
}

fn operation_count_and_speedup() -> Outcome {
    let start = Instant::now();
    let cfg = BenchConfig {
        m_values: (1..=8).collect(),
        density: 1.0,
        rounds: 9,
        gamma_timing_cap: 3,
        gamma_run_cap: 8,
        ..BenchConfig::default()
    };
    let reports = run_bench(&cfg).map_err(|e| e.to_string())?;
    let find = |m: u32, algo: BenchAlgo| -> Result<&BenchReport, String> {
        reports
            .iter()
            .find(|r| r.m == m && r.algorithm == algo)
            .ok_or_else(|| format!("no {algo} report for m={m}"))
    };
    for m in 1..=8u32 {
        let efb = find(m, BenchAlgo::EfbSparse)?.pairs_visited;
        let blade = find(m, BenchAlgo::GammaBlade)?.pairs_visited;
        ensure!(efb == 1 << (3 * m), "m={m}: EFB visited {efb}");
        ensure!(
            blade == 1 << (4 * m),
            "m={m}: blade product visited {blade}"
        );
        ensure!(efb << m == blade, "m={m}: ratio is not 2^-{m}");
    }
    let speedups: Vec<f64> = (4..=8)
        .map(|m| find(m, BenchAlgo::EfbSparse).map(|r| r.speedup_vs_baseline.unwrap_or(f64::NAN)))
        .collect::<Result<_, _>>()?;
    let shown: Vec<String> = speedups.iter().map(|s| format!("{s:.3}")).collect();
    let elapsed = start.elapsed();
    ensure!(
        speedups.windows(2).all(|w| w[0] <= w[1]),
        "pair ratio 2^-m holds for m = 1..8, but speedup over dense for m = 4..8 is not monotone: [{}]",
        shown.join(", ")
    );
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "pair ratio 2^-m for m = 1..8; speedup over dense m = 4..8: [{}]",
        shown.join(", ")
    ))
}

fn round_trips() -> Outcome {
    let mut count = 0;
    for m in 1..=4u32 {
        let config = exact(m);
        let n = config.spinor_dim();
        let mut rng = rng(1100 + m as u64);
        for t in 0..200 {
            let density = [0.1, 0.5, 1.0][t % 3];
            let a = random_multivector::<Rational, _>(config, density, &mut rng);
            ensure!(
                gamma_to_efb(&efb_to_gamma(&a)) == a,
                "m={m} input {t}: efb → gamma → efb"
            );
            ensure!(
                from_matrix(&to_matrix(&a).unwrap()).unwrap() == a,
                "m={m} input {t}: efb → matrix → efb"
            );

            let g = random_gamma_multivector::<Rational, _>(config, density, &mut rng);
            ensure!(
                efb_to_gamma(&gamma_to_efb(&g)) == g,
                "m={m} input {t}: gamma → efb → gamma"
            );

            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            if rng.gen_bool(density) {
                                Rational::sample(&mut rng)
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            let mat = RepMatrix::from_rows(config, rows).unwrap();
            ensure!(
                to_matrix(&from_matrix(&mat).unwrap()).unwrap() == mat,
                "m={m} input {t}: matrix → efb → matrix"
            );
            count += 1;
        }
    }
    Ok(format!("{count} inputs per direction, m = 1..4"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "oracle_equivalence",
            oracle_equivalence,
            Some(Duration::from_secs(60)),
        ),
        ("nonzero_pair_census", nonzero_pair_census, None),
        ("volume_eigenstructure", volume_eigenstructure, None),
        ("m2_layout_golden", m2_layout_golden, None),
        ("column_left_ideals", column_left_ideals, None),
        ("annihilator_dimension", annihilator_dimension, None),
        ("two_term_rule", two_term_rule, None),
        ("simple_families", simple_families, None),
        ("plane_identities", plane_identities, None),
        (
            "operation_count_and_speedup",
            operation_count_and_speedup,
            Some(Duration::from_secs(300)),
        ),
        ("round_trips", round_trips, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > *b => Err(format!("exceeded {b:?}")),
            (o, _) => o,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
