//! `hcint`: closed-form orbit integrals over U, SU, SO, O and USp, with a
//! Haar Monte Carlo cross-check.
//!
//! Every invocation prints one JSON object on stdout. Exit codes: 0 on
//! success, 1 when `verify` finds a disagreement, 2 on invalid input.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcint::closedform::{integral_capped, DEFAULT_MAX_RANK};
use hcint::haarmc::mc_integral_with;
use hcint::symalg::{discriminant, discriminant_norm};
use hcint::{CartanVector, Family, GroupSpec, McConfig, Method};

use report::{ConstantsReport, RunReport};

/// Environment variable overriding the Weyl-sum rank cap.
const MAX_RANK_VAR: &str = "HC_MAX_RANK";

#[derive(Parser)]
#[command(
    name = "hcint",
    version,
    about = "Harish-Chandra orbit integrals over compact classical groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ∫_G exp(tr(A g B g⁻¹)) dg in closed form.
    Eval(EvalArgs),
    /// Print Weyl group order, positive root count and [[Π, Π]].
    Constants(ConstantsArgs),
    /// Compare the closed form against a Monte Carlo estimate.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupName {
    U,
    Su,
    So,
    O,
    #[value(alias = "sp")]
    Usp,
    Spin,
}

#[derive(Args)]
struct GroupArgs {
    /// Group: U, SU, SO, O, USp (or Sp), Spin. Case-insensitive.
    #[arg(long, value_enum, ignore_case = true)]
    group: GroupName,
    /// Rank N. SO, O and Spin mean SO(2N), O(2N), Spin(2N) unless --odd is given.
    #[arg(long)]
    rank: usize,
    /// Use the odd-dimensional orthogonal groups SO(2N+1), O(2N+1), Spin(2N+1).
    #[arg(long)]
    odd: bool,
}

#[derive(Clone, Debug)]
struct Coords(Vec<f64>);

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Weyl,
    Det,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Cartan coordinates of A, comma separated (e.g. 0,1 or -1.5e-1,2).
    #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
    a: Coords,
    /// Cartan coordinates of B, comma separated.
    #[arg(long, value_parser = parse_coords, allow_hyphen_values = true)]
    b: Coords,
    /// Closed-form route: the Weyl-group sum or the determinant formula.
    #[arg(long, value_enum, default_value = "weyl")]
    method: MethodArg,
    /// Report elapsed_ms as 0 so repeated runs are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    eval: EvalArgs,
    /// Number of Haar samples.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// RNG seed; runs with the same seed are reproducible.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest accepted |closed_form - mc_mean| / mc_stderr.
    #[arg(long, default_value_t = 4.0)]
    z_max: f64,
    /// Independent RNG sub-streams, evaluated in parallel.
    #[arg(long, default_value_t = 1)]
    shards: u32,
}

#[derive(Args)]
struct ConstantsArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Also print the expanded discriminant Π.
    #[arg(long)]
    with_polynomial: bool,
}

fn parse_coords(s: &str) -> Result<Coords, String> {
    let coords = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            let x: f64 = t.parse().map_err(|_| format!("`{t}` is not a number"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("`{t}` is not finite"))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Coords(coords))
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<hcint::Error> for Failure {
    fn from(e: hcint::Error) -> Self {
        Failure::input(e)
    }
}

/// The group to evaluate on, plus the name to report it under.
struct Target {
    spec: GroupSpec,
    name: String,
    covering: bool,
}

fn resolve(args: &GroupArgs) -> Result<Target, Failure> {
    let family = match (args.group, args.odd) {
        (GroupName::U, false) => Family::UnitaryA,
        (GroupName::Su, false) => Family::SpecialUnitaryA,
        (GroupName::So | GroupName::Spin, false) => Family::SpecialOrthogonalEvenD,
        (GroupName::So | GroupName::Spin, true) => Family::SpecialOrthogonalOddB,
        (GroupName::O, false) => Family::OrthogonalEvenD,
        (GroupName::O, true) => Family::OrthogonalOddB,
        (GroupName::Usp, false) => Family::SymplecticC,
        (_, true) => return Err(Failure::input("--odd applies only to SO, O and Spin")),
    };
    let spec = GroupSpec::new(family, args.rank)?;
    let covering = matches!(args.group, GroupName::Spin);
    let name = if covering {
        format!("Spin({})", spec.matrix_dim())
    } else {
        spec.to_string()
    };
    Ok(Target {
        spec,
        name,
        covering,
    })
}

fn max_rank() -> Result<usize, Failure> {
    match std::env::var(MAX_RANK_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::input(format!(
                "{MAX_RANK_VAR}={v:?} is not a non-negative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_RANK),
    }
}

fn method_label(method: Method, target: &Target) -> String {
    let base = match method {
        Method::WeylSum => "weyl-sum",
        Method::Determinant => "determinant",
    };
    if target.covering {
        format!("{base} (evaluated on {}; normalized Haar measure makes the covering map integral-preserving)", target.spec)
    } else {
        base.to_string()
    }
}

fn closed_form(args: &EvalArgs, start: Instant) -> Result<(Target, RunReport), Failure> {
    let target = resolve(&args.group)?;
    let a = CartanVector::new(args.a.0.clone());
    let b = CartanVector::new(args.b.0.clone());
    let method = match args.method {
        MethodArg::Weyl => Method::WeylSum,
        MethodArg::Det => Method::Determinant,
    };
    let result = integral_capped(&target.spec, &a, &b, method, max_rank()?)?;
    let report = RunReport {
        group: target.name.clone(),
        rank: target.spec.rank(),
        a: args.a.0.clone(),
        b: args.b.0.clone(),
        closed_form: result.value,
        method: method_label(result.method, &target),
        condition_estimate: result.condition_estimate,
        mc_mean: None,
        mc_stderr: None,
        z_score: None,
        seed: None,
        n_samples: None,
        elapsed_ms: elapsed_ms(start, args.no_timing),
    };
    Ok((target, report))
}

fn elapsed_ms(start: Instant, disabled: bool) -> u64 {
    if disabled {
        0
    } else {
        u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX)
    }
}

fn run_eval(args: &EvalArgs) -> Result<(String, u8), Failure> {
    let (_, report) = closed_form(args, Instant::now())?;
    Ok((report.to_json(), 0))
}

fn run_verify(args: &VerifyArgs) -> Result<(String, u8), Failure> {
    if args.z_max.is_nan() || args.z_max < 0.0 {
        return Err(Failure::input("--z-max must be a non-negative number"));
    }
    let start = Instant::now();
    let (target, mut report) = closed_form(&args.eval, start)?;
    let a = CartanVector::new(args.eval.a.0.clone());
    let b = CartanVector::new(args.eval.b.0.clone());
    let config = McConfig::new(args.samples, args.seed).with_shards(args.shards);
    let est = mc_integral_with(&target.spec, &a, &b, &config)?;
    let z = est.z_score(report.closed_form);
    report.mc_mean = Some(est.mean);
    report.mc_stderr = Some(est.stderr);
    report.z_score = z.is_finite().then_some(z);
    report.seed = Some(est.seed);
    report.n_samples = Some(est.n_samples);
    report.elapsed_ms = elapsed_ms(start, args.eval.no_timing);
    let code = if z <= args.z_max { 0 } else { 1 };
    Ok((report.to_json(), code))
}

fn run_constants(args: &ConstantsArgs) -> Result<(String, u8), Failure> {
    let target = resolve(&args.group)?;
    let spec = &target.spec;
    let pi = discriminant(spec);
    let report = ConstantsReport {
        group: target.name.clone(),
        rank: spec.rank(),
        root_system: format!("{:?}", spec.root_system()),
        components: spec.components(),
        weyl_order: spec.weyl_order(),
        positive_roots: spec.num_positive_roots(),
        pi_pi: discriminant_norm(spec).to_string(),
        pi_terms: pi.num_terms(),
        pi_polynomial: args.with_polynomial.then(|| pi.to_string()),
    };
    Ok((report.to_json(), 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Constants(args) => run_constants(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok((json, code)) => {
            println!("{json}");
            if code != 0 {
                eprintln!("hcint: verification failed");
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("hcint: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
