//! The `efb` command line.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{run_bench, BenchConfig};
use crate::efb::Multivector;
use crate::error::EfbError;
use crate::gamma::{efb_to_gamma, gamma_to_efb};
use crate::matrix::{layout, to_matrix};
use crate::scalar::{Rational, Scalar, ScalarMode};
use crate::selftest::{run_selftest, SELFTEST_MAX_M};
use crate::signature::{AlgebraConfig, MAX_PAIRS};
use crate::spinor::{annihilator, totally_simple_plane, NullPlane, Spinor, SpinorSpace};
use crate::text::{
    self, format_efb, format_gamma, format_spinor, parse_expression, parse_spinor, Basis,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ModeArg {
    #[default]
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum BasisArg {
    #[default]
    Efb,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum FormatArg {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "efb",
    version,
    about = "Clifford algebra Cl(m,m) in EFB coordinates"
)]
pub struct Cli {
    /// Number of Witt pairs.
    #[arg(short = 'm', global = true, value_parser = clap::value_parser!(u32).range(1..=MAX_PAIRS as i64))]
    pub m: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub basis: BasisArg,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: FormatArg,
    /// Seed for random inputs.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply expressions left to right.
    Mul {
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<String>,
    },
    /// Rewrite an expression in the other basis.
    Convert { input: String },
    /// Matrix image of an expression as JSON, or the cell layout when no expression is given.
    Matrix { input: Option<String> },
    /// Eigenvalues of the volume element acting from the right and left.
    Eigen { input: String },
    /// Simplicity verdict and annihilating plane of a spinor.
    Simple { input: String },
    /// Totally null plane annihilating a spinor.
    Tnp { input: String },
    /// Plane of simple spinors built from k elements of the Fock space.
    Plane {
        #[arg(short = 'k')]
        k: usize,
    },
    /// Time products against the blade and matrix baselines (JSON lines).
    Bench {
        /// Smallest m; -m gives the largest.
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = crate::bench::MIN_TRIALS)]
        trials: usize,
        /// Timing rounds per m.
        #[arg(long, default_value_t = 5)]
        rounds: usize,
        /// Distinct input pairs cycled through while timing.
        #[arg(long, default_value_t = 4)]
        pool: usize,
        /// Largest m at which the blade product is timed.
        #[arg(long, default_value_t = 6)]
        gamma_timing_cap: u32,
    },
    /// Run the invariant suite.
    Selftest,
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<EfbError> for Failure {
    fn from(e: EfbError) -> Self {
        let (code, kind) = match e {
            EfbError::Parse { .. } => (EXIT_PARSE, "parse"),
            EfbError::Invariant(_) => (EXIT_INVARIANT, "invariant"),
            _ => (EXIT_USAGE, "usage"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        kind: "usage",
        message: message.into(),
    }
}

type Output = std::result::Result<(i32, String), Failure>;

fn basis(b: BasisArg) -> Basis {
    match b {
        BasisArg::Efb => Basis::Efb,
        BasisArg::Gamma => Basis::Gamma,
    }
}

fn render<S: Scalar>(a: &Multivector<S>, b: Basis) -> String {
    match b {
        Basis::Efb => format_efb(a),
        Basis::Gamma => format_gamma(&efb_to_gamma(a)),
    }
}

fn sign_label(v: Option<i8>) -> Value {
    match v {
        Some(1) => json!("+1"),
        Some(_) => json!("-1"),
        None => Value::Null,
    }
}

fn lines(out: Vec<String>) -> String {
    let mut s = out.join("\n");
    s.push('\n');
    s
}

fn json_out(v: Value) -> String {
    format!("{v}\n")
}

struct Ctx {
    config: AlgebraConfig,
    basis: Basis,
    json: bool,
}

fn mul<S: Scalar>(ctx: &Ctx, inputs: &[String]) -> Output {
    let mut acc: Option<Multivector<S>> = None;
    for src in inputs {
        let x = parse_expression::<S>(src, ctx.basis, ctx.config)?;
        acc = Some(match acc {
            None => x,
            Some(a) => a.product(&x)?,
        });
    }
    let out = render(&acc.expect("at least one input"), ctx.basis);
    Ok((
        EXIT_OK,
        if ctx.json {
            json_out(json!({"basis": ctx.basis.to_string(), "result": out}))
        } else {
            lines(vec![out])
        },
    ))
}

fn convert<S: Scalar>(ctx: &Ctx, input: &str) -> Output {
    let (out, target) = match ctx.basis {
        Basis::Efb => {
            let a = text::parse_efb::<S>(input, ctx.config)?;
            (format_gamma(&efb_to_gamma(&a)), Basis::Gamma)
        }
        Basis::Gamma => {
            let g = text::parse_gamma::<S>(input, ctx.config)?;
            (format_efb(&gamma_to_efb(&g)), Basis::Efb)
        }
    };
    Ok((
        EXIT_OK,
        if ctx.json {
            json_out(json!({"basis": target.to_string(), "result": out}))
        } else {
            lines(vec![out])
        },
    ))
}

fn matrix<S: Scalar>(ctx: &Ctx, input: Option<&str>) -> Output {
    match input {
        Some(src) => {
            let a = parse_expression::<S>(src, ctx.basis, ctx.config)?;
            Ok((EXIT_OK, json_out(to_matrix(&a)?.to_json())))
        }
        None => {
            let lay = layout(ctx.config)?;
            let n = lay.dim();
            let labels: Vec<Vec<String>> = (0..n)
                .map(|r| (0..n).map(|c| lay.cell_label(r, c)).collect())
                .collect();
            if ctx.json {
                let rows: Vec<String> = lay.row_h().iter().map(ToString::to_string).collect();
                let cols: Vec<String> = lay.col_hg().iter().map(ToString::to_string).collect();
                return Ok((
                    EXIT_OK,
                    json_out(
                        json!({"m": ctx.config.m(), "row_h": rows, "col_hg": cols, "cells": labels}),
                    ),
                ));
            }
            let width = labels.iter().flatten().map(String::len).max().unwrap_or(1);
            let mut out = vec![format!(
                "{:>w$}  {}",
                "",
                lay.col_hg()
                    .iter()
                    .map(|s| format!("{:<width$}", s.to_string()))
                    .collect::<Vec<_>>()
                    .join("  "),
                w = ctx.config.m() as usize
            )];
            for (r, row) in labels.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|l| format!("{l:<width$}")).collect();
                out.push(format!(
                    "{}  {}",
                    lay.row_h()[r],
                    cells.join("  ").trim_end()
                ));
            }
            Ok((EXIT_OK, lines(out)))
        }
    }
}

fn eigen<S: Scalar>(ctx: &Ctx, input: &str) -> Output {
    let a = parse_expression::<S>(input, ctx.basis, ctx.config)?;
    let eig = a.gamma_eigen()?;
    if ctx.json {
        return Ok((
            EXIT_OK,
            json_out(json!({"right": sign_label(eig.right), "left": sign_label(eig.left)})),
        ));
    }
    let side = |v: Option<i8>| match v {
        Some(1) => "+1".to_string(),
        Some(_) => "-1".to_string(),
        None => "not an eigenvector".to_string(),
    };
    let out = if eig.right.is_none() && eig.left.is_none() {
        "not an eigenvector".to_string()
    } else {
        format!("right={} left={}", side(eig.right), side(eig.left))
    };
    Ok((EXIT_OK, lines(vec![out])))
}

fn read_spinor(ctx: &Ctx, input: &str) -> std::result::Result<Spinor, Failure> {
    if input.trim_start().starts_with("space=") {
        return Ok(parse_spinor(input, ctx.config)?);
    }
    let mv = parse_expression::<Rational>(input, ctx.basis, ctx.config)?;
    if mv.is_zero() {
        return Ok(Spinor::zero(SpinorSpace::standard_fock(ctx.config)));
    }
    Ok(Spinor::infer_from_multivector(&mv)?)
}

fn simple(ctx: &Ctx, input: &str) -> Output {
    let s = read_spinor(ctx, input)?;
    let tnp = annihilator(&s)?;
    let is_simple = tnp.dim() == ctx.config.m() as usize;
    if ctx.json {
        return Ok((
            EXIT_OK,
            json_out(json!({
                "spinor": format_spinor(&s),
                "simple": is_simple,
                "tnp_dim": tnp.dim(),
                "tnp": tnp.to_json(),
            })),
        ));
    }
    Ok((
        EXIT_OK,
        lines(vec![
            format!("simple: {}", if is_simple { "yes" } else { "no" }),
            format!("tnp (dim {}): {tnp}", tnp.dim()),
        ]),
    ))
}

fn tnp(ctx: &Ctx, input: &str) -> Output {
    let s = read_spinor(ctx, input)?;
    let plane: NullPlane = annihilator(&s)?;
    if ctx.json {
        return Ok((
            EXIT_OK,
            json_out(json!({"dim": plane.dim(), "basis": plane.to_json()})),
        ));
    }
    Ok((EXIT_OK, lines(vec![plane.to_string()])))
}

fn plane(ctx: &Ctx, k: usize) -> Output {
    let p = totally_simple_plane(ctx.config, k)?;
    let m = ctx.config.m();
    let spinors: Vec<String> = p.spinors.iter().map(|e| e.key().label(m)).collect();
    let generators: Vec<String> = p.generators.iter().map(ToString::to_string).collect();
    let combination = format_efb(&p.combination().to_multivector());
    if ctx.json {
        return Ok((
            EXIT_OK,
            json_out(json!({
                "spinors": spinors,
                "combination": combination,
                "generators": generators,
                "tnp": p.witness_tnp.to_json(),
            })),
        ));
    }
    let mut out: Vec<String> = spinors
        .iter()
        .enumerate()
        .map(|(i, s)| format!("spinor {}: {s}", i + 1))
        .collect();
    out.push(format!("combination: {combination}"));
    out.push(format!("tnp: span{{{}}}", generators.join(", ")));
    Ok((EXIT_OK, lines(out)))
}

fn bench(m: u32, from: u32, cfg: BenchConfig) -> Output {
    if from == 0 || from > m {
        return Err(usage(format!("--from must be in 1..={m}")));
    }
    let cfg = BenchConfig {
        m_values: (from..=m).collect(),
        ..cfg
    };
    let reports = run_bench(&cfg)?;
    Ok((
        EXIT_OK,
        reports.iter().map(|r| r.to_json_line() + "\n").collect(),
    ))
}

fn selftest(json: bool, seed: u64) -> Output {
    let report = run_selftest(seed);
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    };
    if json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        return Ok((
            code,
            json_out(
                json!({"max_m": SELFTEST_MAX_M, "passed": report.passed(), "failed": report.failed(), "checks": checks}),
            ),
        ));
    }
    let mut out: Vec<String> = report
        .checks
        .iter()
        .map(|c| {
            if c.passed {
                format!("PASS {}", c.name)
            } else {
                format!("FAIL {}: {}", c.name, c.detail)
            }
        })
        .collect();
    out.push(format!(
        "passed {} failed {}",
        report.passed(),
        report.failed()
    ));
    Ok((code, lines(out)))
}

fn dispatch(cli: &Cli) -> Output {
    let json = cli.format == FormatArg::Json;
    let mode = match cli.mode {
        ModeArg::Exact => ScalarMode::ExactRational,
        ModeArg::Float => ScalarMode::Float64,
    };
    if let Command::Selftest = cli.command {
        return selftest(json, cli.seed);
    }
    let m = cli.m.ok_or_else(|| usage("-m <pairs> is required"))?;
    if let Command::Bench {
        from,
        density,
        trials,
        rounds,
        pool,
        gamma_timing_cap,
    } = cli.command
    {
        let cfg = BenchConfig {
            density,
            trials,
            rounds,
            pool,
            gamma_timing_cap,
            seed: cli.seed,
            ..BenchConfig::default()
        };
        return bench(m, from, cfg);
    }
    let ctx = Ctx {
        config: AlgebraConfig::new(m, mode)?,
        basis: basis(cli.basis),
        json,
    };
    let float = mode == ScalarMode::Float64;
    let exact_only = |name: &str| usage(format!("{name} requires --mode exact"));
    match &cli.command {
        Command::Mul { inputs } if float => mul::<f64>(&ctx, inputs),
        Command::Mul { inputs } => mul::<Rational>(&ctx, inputs),
        Command::Convert { input } if float => convert::<f64>(&ctx, input),
        Command::Convert { input } => convert::<Rational>(&ctx, input),
        Command::Matrix { input } if float => matrix::<f64>(&ctx, input.as_deref()),
        Command::Matrix { input } => matrix::<Rational>(&ctx, input.as_deref()),
        Command::Eigen { input } if float => eigen::<f64>(&ctx, input),
        Command::Eigen { input } => eigen::<Rational>(&ctx, input),
        Command::Simple { .. } | Command::Tnp { .. } | Command::Plane { .. } if float => {
            Err(exact_only("spinor analysis"))
        }
        Command::Simple { input } => simple(&ctx, input),
        Command::Tnp { input } => tnp(&ctx, input),
        Command::Plane { k } => plane(&ctx, *k),
        Command::Bench { .. } | Command::Selftest => unreachable!("handled above"),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(f) if cli.format == FormatArg::Json => Outcome {
            code: f.code,
            stdout: json_out(json!({"error": f.message, "kind": f.kind})),
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
