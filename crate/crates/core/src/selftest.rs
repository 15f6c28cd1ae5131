//! Invariant suite behind `efb selftest`, run exactly at small `m`.

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::efb::{EfbElement, EfbKey, Factor, Multivector, NullKind};
use crate::error::Result;
use crate::gamma::{efb_to_gamma, gamma_to_efb};
use crate::matrix::{column_ideal_check, from_matrix, gamma_matrix, to_matrix};
use crate::random::{random_gamma_multivector, random_multivector};
use crate::scalar::Rational;
use crate::signature::AlgebraConfig;
use crate::spinor::{
    annihilator, g_flip, is_simple, totally_simple_plane, two_term_simplicity, vector_action,
    Spinor, SpinorSpace, WittVector,
};
use crate::text::{format_efb, format_gamma, parse_efb, parse_gamma};

pub const SELFTEST_MAX_M: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

type Check = fn(&mut ChaCha8Rng) -> Result<std::result::Result<(), String>>;

fn exact(m: u32) -> AlgebraConfig {
    AlgebraConfig::exact(m).expect("small m")
}

fn sample(config: AlgebraConfig, rng: &mut ChaCha8Rng) -> Multivector<Rational> {
    random_multivector(config, 0.4, rng)
}

fn fail(msg: String) -> Result<std::result::Result<(), String>> {
    Ok(Err(msg))
}

fn gamma_oracle(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=SELFTEST_MAX_M {
        for _ in 0..10 {
            let c = exact(m);
            let (a, b) = (sample(c, rng), sample(c, rng));
            let via_gamma = gamma_to_efb(&efb_to_gamma(&a).product(&efb_to_gamma(&b))?);
            if a.product(&b)? != via_gamma {
                return fail(format!("m = {m}: efb and blade products differ"));
            }
        }
    }
    Ok(Ok(()))
}

fn matrix_oracle(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=SELFTEST_MAX_M {
        for _ in 0..10 {
            let c = exact(m);
            let (a, b) = (sample(c, rng), sample(c, rng));
            if to_matrix(&a.product(&b)?)? != to_matrix(&a)?.matmul(&to_matrix(&b)?)? {
                return fail(format!("m = {m}: matrix map is not multiplicative"));
            }
        }
    }
    Ok(Ok(()))
}

fn associativity(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=SELFTEST_MAX_M {
        let c = exact(m);
        let (a, b, d) = (sample(c, rng), sample(c, rng), sample(c, rng));
        if a.product(&b)?.product(&d)? != a.product(&b.product(&d)?)? {
            return fail(format!("m = {m}: product is not associative"));
        }
    }
    Ok(Ok(()))
}

fn nonzero_census(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=3u32 {
        let n = 1u32 << m;
        let mut count = 0u64;
        for (ha, ga, hb, gb) in
            (0..n * n * n * n).map(|x| (x % n, x / n % n, x / n / n % n, x / n / n / n))
        {
            if let Some((k, _)) = EfbKey::new(ha, ga).product(EfbKey::new(hb, gb)) {
                if k.h != ha || k.g != ga ^ gb {
                    return fail(format!("m = {m}: product signatures wrong"));
                }
                count += 1;
            }
        }
        if count != 1 << (3 * m) {
            return fail(format!("m = {m}: {count} nonzero products"));
        }
    }
    Ok(Ok(()))
}

fn eigenstructure(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=3u32 {
        let c = exact(m);
        let n = 1u32 << m;
        for key in (0..n * n).map(|x| EfbKey::new(x % n, x / n)) {
            let e = EfbElement::from_key(key, m, Rational::one());
            let eig = Multivector::from_element(c, &e)?.gamma_eigen()?;
            let left = e.helicity() * e.parity();
            if eig.right != Some(e.helicity()) || eig.left != Some(left) {
                return fail(format!("m = {m}: {} has eigenvalues {eig:?}", key.label(m)));
            }
        }
    }
    Ok(Ok(()))
}

fn generator_relations(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=3u32 {
        let c = exact(m);
        let gens: Vec<Multivector<Rational>> = (1..=2 * m)
            .map(|k| Multivector::generator(c, k))
            .collect::<Result<_>>()?;
        for (i, gi) in gens.iter().enumerate() {
            for (j, gj) in gens.iter().enumerate() {
                let anti = &(gi * gj) + &(gj * gi);
                let expect = if i != j {
                    Multivector::zero(c)
                } else if i % 2 == 0 {
                    Multivector::identity(c).scale(&Rational::from_integer(2.into()))
                } else {
                    Multivector::identity(c).scale(&Rational::from_integer((-2).into()))
                };
                if anti != expect {
                    return fail(format!("m = {m}: generators {} and {} fail", i + 1, j + 1));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn gamma_round_trip(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=SELFTEST_MAX_M {
        let c = exact(m);
        let a = sample(c, rng);
        let g = random_gamma_multivector::<Rational, _>(c, 0.4, rng);
        if gamma_to_efb(&efb_to_gamma(&a)) != a || efb_to_gamma(&gamma_to_efb(&g)) != g {
            return fail(format!("m = {m}: basis conversion does not round-trip"));
        }
    }
    Ok(Ok(()))
}

fn matrix_round_trip(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=SELFTEST_MAX_M {
        let c = exact(m);
        let a = sample(c, rng);
        if from_matrix(&to_matrix(&a)?)? != a {
            return fail(format!("m = {m}: matrix conversion does not round-trip"));
        }
        if to_matrix(&Multivector::<Rational>::volume_element(c))? != gamma_matrix(c)? {
            return fail(format!(
                "m = {m}: volume element is not the diagonal sign matrix"
            ));
        }
    }
    Ok(Ok(()))
}

fn column_ideals(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=3u32 {
        let c = exact(m);
        for col in 0..c.spinor_dim() {
            if !column_ideal_check::<Rational, _>(c, col, 10, rng)?.holds() {
                return fail(format!("m = {m}: column {col} is not a left ideal"));
            }
        }
    }
    Ok(Ok(()))
}

fn annihilator_dims(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=3u32 {
        let c = exact(m);
        let n = 1u32 << m;
        for key in (0..n * n).map(|x| EfbKey::new(x % n, x / n)) {
            let space = SpinorSpace::new(c, crate::Signature::from_bits(key.hg(), m))?;
            let s = Spinor::basis(space, key.h)?;
            if annihilator(&s)?.dim() != m as usize {
                return fail(format!("m = {m}: {} is not simple", key.label(m)));
            }
        }
    }
    Ok(Ok(()))
}

fn two_term_rule(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 2..=SELFTEST_MAX_M {
        let c = exact(m);
        let space = SpinorSpace::standard_fock(c);
        let n = 1u32 << m;
        for a in 0..n {
            for b in a + 1..n {
                let (ka, kb) = (space.key(a), space.key(b));
                let ea = EfbElement::from_key(ka, m, Rational::one());
                let eb = EfbElement::from_key(kb, m, Rational::one());
                let predicted = two_term_simplicity(&ea, &eb, space)?;
                let sum = Spinor::basis(space, a)?.add(&Spinor::basis(space, b)?)?;
                if is_simple(&sum)? != predicted {
                    return fail(format!(
                        "m = {m}: rule wrong for {} + {}",
                        ka.label(m),
                        kb.label(m)
                    ));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn plane_identities(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 2..=SELFTEST_MAX_M {
        let c = exact(m);
        for k in 2..=crate::spinor::family_size_bound(m) {
            let plane = totally_simple_plane(c, k)?;
            let s = plane.combination();
            for v in &plane.generators {
                if !vector_action(v, &s)?.is_zero() {
                    return fail(format!("m = {m}, k = {k}: {v} does not annihilate"));
                }
            }
            if !is_simple(&s)? {
                return fail(format!("m = {m}, k = {k}: combination is not simple"));
            }
        }
    }
    Ok(Ok(()))
}

fn g_flip_orbit(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=SELFTEST_MAX_M {
        let c = exact(m);
        let s = Spinor::basis(SpinorSpace::standard_fock(c), 0)?;
        let mut seen = std::collections::BTreeSet::new();
        for subset in 0..1u32 << m {
            let mut t = s.clone();
            for i in 1..=m {
                if subset >> (i - 1) & 1 == 1 {
                    t = g_flip(&t, i)?;
                }
            }
            let (key, _) = t
                .to_multivector()
                .terms()
                .next()
                .map(|(k, v)| (k, v.clone()))
                .expect("nonzero");
            if key.h != 0 {
                return fail(format!("m = {m}: flip changed h"));
            }
            seen.insert(key.g);
        }
        if seen.len() != 1 << m {
            return fail(format!("m = {m}: flips reach {} elements", seen.len()));
        }
    }
    Ok(Ok(()))
}

fn null_action(_: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=3u32 {
        let c = exact(m);
        let s = Spinor::basis(SpinorSpace::standard_fock(c), 0)?;
        for i in 1..=m {
            for kind in [NullKind::P, NullKind::Q] {
                let v = WittVector::basis(c, kind, i)?;
                let direct = vector_action(&v, &s)?.to_multivector();
                if direct != &v.to_multivector() * &s.to_multivector() {
                    return fail(format!("m = {m}: action of pair {i} disagrees"));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn text_round_trip(rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    for m in 1..=SELFTEST_MAX_M {
        let c = exact(m);
        let a = sample(c, rng);
        if parse_efb::<Rational>(&format_efb(&a), c)? != a {
            return fail(format!("m = {m}: EFB text does not round-trip"));
        }
        let g = random_gamma_multivector::<Rational, _>(c, 0.4, rng);
        if parse_gamma::<Rational>(&format_gamma(&g), c)? != g {
            return fail(format!("m = {m}: gamma text does not round-trip"));
        }
    }
    let q = EfbKey::from_factors(&[Factor::Q]);
    if parse_efb::<Rational>("q1", exact(1))?
        .terms()
        .next()
        .map(|(k, _)| k)
        != Some(q)
    {
        return fail("m = 1: 'q1' misparsed".into());
    }
    Ok(Ok(()))
}

const CHECKS: &[(&str, Check)] = &[
    ("product_vs_blade_oracle", gamma_oracle),
    ("product_vs_matrix", matrix_oracle),
    ("associativity", associativity),
    ("nonzero_pair_census", nonzero_census),
    ("gamma_eigenstructure", eigenstructure),
    ("generator_relations", generator_relations),
    ("gamma_round_trip", gamma_round_trip),
    ("matrix_round_trip", matrix_round_trip),
    ("column_left_ideals", column_ideals),
    ("efb_elements_simple", annihilator_dims),
    ("two_term_rule", two_term_rule),
    ("plane_identities", plane_identities),
    ("g_flip_orbit", g_flip_orbit),
    ("null_vector_action", null_action),
    ("text_round_trip", text_round_trip),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

pub fn run_selftest(seed: u64) -> SelftestReport {
    let mut report = SelftestReport::default();
    for (name, check) in CHECKS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (passed, detail) = match check(&mut rng) {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(msg)) => (false, msg),
            Err(e) => (false, e.to_string()),
        };
        report.checks.push(CheckResult {
            name,
            passed,
            detail,
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let report = run_selftest(7);
        for c in &report.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(report.passed(), check_names().len());
    }
}
