//! Product benchmarks: EFB sparse product against the gamma-blade and dense
//! matrix products, on identical (converted) float inputs.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::efb::Multivector;
use crate::error::{EfbError, Result};
use crate::gamma::{efb_to_gamma, gamma_to_efb, GammaMultivector};
use crate::matrix::{from_matrix_with_cap, to_matrix_with_cap, RepMatrix};
use crate::random::random_multivector;
use crate::signature::AlgebraConfig;

/// Largest `m` for any algorithm.
pub const MAX_BENCH_M: u32 = 12;
/// Largest `m` for the dense matrix baseline.
pub const MAX_DENSE_M: u32 = 10;
pub const MIN_TRIALS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchAlgo {
    EfbSparse,
    GammaBlade,
    DenseMatrix,
}

impl fmt::Display for BenchAlgo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchAlgo::EfbSparse => "efb_sparse",
            BenchAlgo::GammaBlade => "gamma_blade",
            BenchAlgo::DenseMatrix => "dense_matrix",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub m_values: Vec<u32>,
    /// Probability that each basis element is present in an input.
    pub density: f64,
    pub trials: usize,
    pub warmup: usize,
    /// Timing rounds; the fastest round's mean is reported.
    pub rounds: usize,
    pub min_round: Duration,
    pub seed: u64,
    /// Distinct input pairs, cycled through during timing.
    pub pool: usize,
    /// Input pairs cross-checked between algorithms.
    pub verify: usize,
    /// Above this `m` the blade product is run once, for its pair count.
    pub gamma_timing_cap: u32,
    /// Above this `m` the blade product is skipped entirely.
    pub gamma_run_cap: u32,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            m_values: (1..=6).collect(),
            density: 1.0,
            trials: MIN_TRIALS,
            warmup: 5,
            rounds: 5,
            min_round: Duration::from_millis(20),
            seed: 0x5eed,
            pool: 4,
            verify: 2,
            gamma_timing_cap: 6,
            gamma_run_cap: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub m: u32,
    pub algorithm: BenchAlgo,
    pub density: f64,
    /// Mean wall-clock time per product; `None` when not timed.
    pub mean_ns: Option<f64>,
    pub pairs_visited: u64,
    pub seed: u64,
    /// Dense-matrix time over this algorithm's time.
    pub speedup_vs_baseline: Option<f64>,
}

impl BenchReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "algo": self.algorithm,
            "density": self.density,
            "ns": self.mean_ns,
            "pairs_visited": self.pairs_visited,
            "seed": self.seed,
            "speedup": self.speedup_vs_baseline,
        })
    }

    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}

struct Inputs {
    efb: Vec<(Multivector<f64>, Multivector<f64>)>,
    gamma: Vec<(GammaMultivector<f64>, GammaMultivector<f64>)>,
    dense: Vec<(RepMatrix<f64>, RepMatrix<f64>)>,
}

fn warm_up<A, R>(pairs: &[(A, A)], cfg: &BenchConfig, mut f: impl FnMut(&A, &A) -> R) {
    for k in 0..cfg.warmup {
        let (a, b) = &pairs[k % pairs.len()];
        black_box(f(a, b));
    }
}

/// Mean time per product over one round of at least `trials` products
/// lasting at least `min_round`.
fn time_round<A, R>(pairs: &[(A, A)], cfg: &BenchConfig, mut f: impl FnMut(&A, &A) -> R) -> f64 {
    let mut total = Duration::ZERO;
    let mut done = 0usize;
    while done < cfg.trials || total < cfg.min_round {
        let (a, b) = &pairs[done % pairs.len()];
        let start = Instant::now();
        let out = black_box(f(black_box(a), black_box(b)));
        total += start.elapsed();
        drop(out);
        done += 1;
    }
    total.as_nanos() as f64 / done as f64
}

/// One round alternating the two products input by input, so a slow period
/// of the host lands on both. Returns the mean time per product of each.
fn time_paired_round<A, B, R, T>(
    first: &[(A, A)],
    second: &[(B, B)],
    cfg: &BenchConfig,
    mut f: impl FnMut(&A, &A) -> R,
    mut g: impl FnMut(&B, &B) -> T,
) -> (f64, f64) {
    let (mut total_f, mut total_g) = (Duration::ZERO, Duration::ZERO);
    let mut done = 0usize;
    while done < cfg.trials || total_f + total_g < cfg.min_round {
        let (a, b) = &first[done % first.len()];
        let start = Instant::now();
        let out = black_box(f(black_box(a), black_box(b)));
        total_f += start.elapsed();
        drop(out);
        let (a, b) = &second[done % second.len()];
        let start = Instant::now();
        let out = black_box(g(black_box(a), black_box(b)));
        total_g += start.elapsed();
        drop(out);
        done += 1;
    }
    (
        total_f.as_nanos() as f64 / done as f64,
        total_g.as_nanos() as f64 / done as f64,
    )
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn mismatch(m: u32, algo: BenchAlgo) -> EfbError {
    EfbError::Invariant(format!(
        "{algo} product disagrees with efb_sparse at m = {m}"
    ))
}

fn validate(cfg: &BenchConfig) -> Result<()> {
    if cfg.m_values.is_empty() {
        return Err(EfbError::InvalidArgument("no m values to benchmark".into()));
    }
    if let Some(&m) = cfg.m_values.iter().find(|&&m| m > MAX_BENCH_M) {
        return Err(EfbError::SizeCap {
            what: "benchmark",
            m,
            cap: MAX_BENCH_M,
        });
    }
    if !(cfg.density > 0.0 && cfg.density <= 1.0) {
        return Err(EfbError::InvalidArgument(format!(
            "density must be in (0, 1], got {}",
            cfg.density
        )));
    }
    if cfg.trials < MIN_TRIALS {
        return Err(EfbError::InvalidArgument(format!(
            "at least {MIN_TRIALS} trials are required, got {}",
            cfg.trials
        )));
    }
    if cfg.pool == 0 {
        return Err(EfbError::InvalidArgument(
            "input pool must be nonempty".into(),
        ));
    }
    Ok(())
}

/// Benchmarks every `m` in turn, single-threaded. Products are cross-checked
/// on `verify` input pairs before timing.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchReport>> {
    validate(cfg)?;
    let mut reports = Vec::new();
    for &m in &cfg.m_values {
        let config = AlgebraConfig::float(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(m as u64));
        let efb: Vec<_> = (0..cfg.pool)
            .map(|_| {
                (
                    random_multivector::<f64, _>(config, cfg.density, &mut rng),
                    random_multivector::<f64, _>(config, cfg.density, &mut rng),
                )
            })
            .collect();
        let run_gamma = m <= cfg.gamma_run_cap;
        let run_dense = m <= MAX_DENSE_M;
        let time_gamma = run_gamma && m <= cfg.gamma_timing_cap;
        // Untimed blade products only ever use the first pair.
        let gamma_needed = match (run_gamma, time_gamma) {
            (true, true) => efb.len(),
            (true, false) => 1,
            (false, _) => 0,
        };
        let inputs = Inputs {
            gamma: efb[..gamma_needed]
                .iter()
                .map(|(a, b)| (efb_to_gamma(a), efb_to_gamma(b)))
                .collect(),
            dense: if run_dense {
                efb.iter()
                    .map(|(a, b)| {
                        Ok((
                            to_matrix_with_cap(a, MAX_DENSE_M)?,
                            to_matrix_with_cap(b, MAX_DENSE_M)?,
                        ))
                    })
                    .collect::<Result<_>>()?
            } else {
                Vec::new()
            },
            efb,
        };
        let verify = cfg.verify.min(cfg.pool);

        let (reference, efb_pairs) = inputs.efb[0].0.product_counted(&inputs.efb[0].1)?;
        for k in 0..verify {
            let (a, b) = &inputs.efb[k];
            let expect = if k == 0 {
                reference.clone()
            } else {
                a.product(b)?
            };
            if run_dense {
                let (ma, mb) = &inputs.dense[k];
                let got = from_matrix_with_cap(&ma.matmul(mb)?, MAX_DENSE_M)?;
                if !got.approx_eq(&expect) {
                    return Err(mismatch(m, BenchAlgo::DenseMatrix));
                }
            }
            if time_gamma {
                let (ga, gb) = &inputs.gamma[k];
                if !gamma_to_efb(&ga.product(gb)?).approx_eq(&expect) {
                    return Err(mismatch(m, BenchAlgo::GammaBlade));
                }
            }
        }

        // The sparse and dense products are timed input by input in
        // alternation. Each reported time is the fastest round; the speedup
        // is the median of the per-round ratios.
        warm_up(&inputs.efb, cfg, |a, b| a.product(b));
        let mut efb_ns = f64::INFINITY;
        let mut dense_ns = None;
        let mut efb_speedup = None;
        if run_dense {
            warm_up(&inputs.dense, cfg, |a, b| a.matmul(b));
            let mut best_dense = f64::INFINITY;
            let mut ratios = Vec::new();
            for _ in 0..cfg.rounds.max(1) {
                let (e, d) = time_paired_round(
                    &inputs.efb,
                    &inputs.dense,
                    cfg,
                    |a, b| a.product(b),
                    |a, b| a.matmul(b),
                );
                efb_ns = efb_ns.min(e);
                best_dense = best_dense.min(d);
                if e > 0.0 {
                    ratios.push(d / e);
                }
            }
            dense_ns = Some(best_dense);
            efb_speedup = (!ratios.is_empty()).then(|| median(ratios));
        } else {
            for _ in 0..cfg.rounds.max(1) {
                efb_ns = efb_ns.min(time_round(&inputs.efb, cfg, |a, b| a.product(b)));
            }
        }
        let gamma = if time_gamma {
            let (_, pairs) = inputs.gamma[0].0.product_counted(&inputs.gamma[0].1)?;
            warm_up(&inputs.gamma, cfg, |a, b| a.product(b));
            let ns = (0..cfg.rounds.max(1))
                .map(|_| time_round(&inputs.gamma, cfg, |a, b| a.product(b)))
                .fold(f64::INFINITY, f64::min);
            Some((Some(ns), pairs))
        } else if run_gamma {
            let (ga, gb) = &inputs.gamma[0];
            let (product, pairs) = ga.product_counted(gb)?;
            if !gamma_to_efb(&product).approx_eq(&reference) {
                return Err(mismatch(m, BenchAlgo::GammaBlade));
            }
            Some((None, pairs))
        } else {
            None
        };
        let dense_pairs = inputs.dense.first().map(|(a, _)| {
            let nonzero = a.rows().flatten().filter(|v| **v != 0.0).count() as u64;
            nonzero * a.dim() as u64
        });

        let speedup = |ns: Option<f64>| match (dense_ns, ns) {
            (Some(d), Some(x)) if x > 0.0 => Some(d / x),
            _ => None,
        };
        let report = |algorithm, mean_ns: Option<f64>, pairs_visited| BenchReport {
            m,
            algorithm,
            density: cfg.density,
            mean_ns,
            pairs_visited,
            seed: cfg.seed,
            speedup_vs_baseline: speedup(mean_ns),
        };
        reports.push(BenchReport {
            speedup_vs_baseline: efb_speedup,
            ..report(BenchAlgo::EfbSparse, Some(efb_ns), efb_pairs)
        });
        if let Some((ns, pairs)) = gamma {
            reports.push(report(BenchAlgo::GammaBlade, ns, pairs));
        }
        if let Some(pairs) = dense_pairs {
            reports.push(report(BenchAlgo::DenseMatrix, dense_ns, pairs));
        }
    }
    Ok(reports)
}
