//! Seeded random inputs for tests and benchmarks.

use rand::Rng;

use crate::efb::{EfbKey, Multivector};
use crate::gamma::GammaMultivector;
use crate::scalar::Scalar;
use crate::signature::AlgebraConfig;

/// Each of the `4^m` basis elements is present independently with
/// probability `density`, with a random nonzero coefficient.
pub fn random_multivector<S, R>(config: AlgebraConfig, density: f64, rng: &mut R) -> Multivector<S>
where
    S: Scalar,
    R: Rng + ?Sized,
{
    let n = config.spinor_dim() as u32;
    let density = density.clamp(0.0, 1.0);
    let mut terms = Vec::new();
    for h in 0..n {
        for g in 0..n {
            if density >= 1.0 || rng.gen_bool(density) {
                terms.push((EfbKey::new(h, g), S::sample(rng)));
            }
        }
    }
    Multivector::from_terms(config, terms).expect("keys are within the algebra")
}

pub fn random_gamma_multivector<S, R>(
    config: AlgebraConfig,
    density: f64,
    rng: &mut R,
) -> GammaMultivector<S>
where
    S: Scalar,
    R: Rng + ?Sized,
{
    let n = config.algebra_dim() as u32;
    let density = density.clamp(0.0, 1.0);
    let mut terms = Vec::new();
    for mask in 0..n {
        if density >= 1.0 || rng.gen_bool(density) {
            terms.push((mask, S::sample(rng)));
        }
    }
    GammaMultivector::from_terms(config, terms).expect("masks are within the algebra")
}
