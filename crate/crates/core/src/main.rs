//! `orbitsum`: batch front end for the verification pipelines, the root
//! census of the period-five eliminant and the brute-force orbit oracle.
//!
//! Reports are JSON on stdout or in `--out`; tables go to a CSV sidecar.
//! Exit codes: 0 pass, 1 internal error, 2 usage, 3 numeric failure,
//! 4 invariant violation, 5 resource budget.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use orbitsum::groebner::{buchberger, certify, is_reduced, BuchbergerConfig, IdealBasis};
use orbitsum::numeric::{
    census_orbits_csv, census_polynomial, census_sweep, cycle_count, find_roots, orbit_oracle, orbits_csv,
    parse_complex, parse_complex_exact, roots_csv, ComplexPoly,
};
use orbitsum::ring::{MonomialOrder, MultiPoly, VarSet};
use orbitsum::verify::{verify, Status, SCHEMA};
use orbitsum::Error;

const BUDGET_VAR: &str = "ORBITSUM_PAIR_BUDGET";

#[derive(Parser)]
#[command(name = "orbitsum", version, about = "Orbit-sum verification for x^2 + c")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Groebner elimination pipeline for period 3, 4 or 5.
    Verify {
        #[arg(value_parser = clap::value_parser!(u32).range(3..=5))]
        period: u32,
        #[arg(long, default_value = "u", value_parser = ["u", "v"])]
        eliminate: String,
        #[command(flatten)]
        output: Output,
    },
    /// Roots of the period-five eliminant at a fixed cycle sum.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        s5: String,
        #[command(flatten)]
        output: Output,
    },
    /// Lift eliminant roots at a cycle sum, or enumerate cycles at a parameter.
    Oracle {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "c", required_unless_present = "c")]
        s5: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        period: u32,
        /// Additional cycle sums drawn from [-2, 2] x [-2, 2]i.
        #[arg(long, default_value_t = 0, requires = "s5")]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Reduced Groebner basis of the polynomials in a file, one per line.
    Groebner {
        #[arg(long = "in")]
        input: PathBuf,
        /// `lex`, `grlex` or `grevlex`, then `:` and the variables, largest first.
        #[arg(long)]
        order: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV sidecar path; defaults to `--out` with a `.csv` extension.
    #[arg(long)]
    csv: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Library(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 1,
            Failure::Library(e) => match e.root() {
                Error::InvalidArgument(_)
                | Error::Parse { .. }
                | Error::UnknownVariable(_)
                | Error::InvalidVarSet(_) => 2,
                Error::Convergence { .. } | Error::Pole(_) | Error::LiftFailure(_) => 3,
                Error::DataIntegrity(_) => 4,
                Error::BudgetExceeded { .. } => 5,
                _ => 1,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            period,
            eliminate,
            output,
        } => cmd_verify(period, &eliminate, &output),
        Command::Roots { s5, output } => cmd_roots(&s5, &output),
        Command::Oracle {
            s5,
            c,
            period,
            samples,
            seed,
            output,
        } => match (s5, c) {
            (Some(s5), None) => cmd_oracle_sum(&s5, period, samples, seed, &output),
            (None, Some(c)) => cmd_oracle_parameter(&c, period, &output),
            _ => Err(Failure::Usage("give exactly one of --s5 and --c".into())),
        },
        Command::Groebner { input, order, output } => cmd_groebner(&input, &order, &output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn config() -> std::result::Result<BuchbergerConfig, Failure> {
    let mut config = BuchbergerConfig::default();
    if let Ok(text) = std::env::var(BUDGET_VAR) {
        config.max_reductions = text
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BUDGET_VAR} must be a nonnegative integer, got `{text}`")))?;
    }
    Ok(config)
}

fn emit(output: &Output, report: &impl Serialize, csv: Option<String>) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(report).map_err(|e| Failure::Io(e.to_string()))?;
    match &output.out {
        Some(path) => write(path, &(text + "\n"))?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(Failure::Io(e.to_string()));
                }
            }
        }
    }
    let sidecar = output
        .csv
        .clone()
        .or_else(|| output.out.as_ref().map(|p| p.with_extension("csv")));
    if let (Some(path), Some(table)) = (sidecar, csv) {
        write(&path, &table)?;
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn cmd_verify(period: u32, var: &str, output: &Output) -> Outcome {
    let report = verify(period, var, &config()?)?;
    emit(output, &report, None)?;
    Ok(if report.status == Status::Fail { 4 } else { 0 })
}

fn cmd_roots(s5_text: &str, output: &Output) -> Outcome {
    let (re, im) = parse_complex_exact(s5_text)?;
    let s5 = parse_complex(s5_text)?;
    let cpoly = census_polynomial()?;
    let eliminant = ComplexPoly::from_multipoly(&cpoly, "v", &[Complex64::zero(), s5])?;
    let exact = if im.is_zero() {
        let p = cpoly.specialize("S5", &re)?;
        let v_ring = VarSet::new(["v"])?;
        Some(p.to_ring(&v_ring)?.to_string())
    } else {
        None
    };
    let census = find_roots(&eliminant)?;
    let report = json!({
        "schema": SCHEMA,
        "name": format!("roots --s5 {s5_text}"),
        "s5": s5,
        "polynomial": exact,
        "coefficients": eliminant.coeffs().iter().rev().collect::<Vec<_>>(),
        "root_count": census.roots.len(),
        "real_count": census.real_count,
        "min_gap": census.min_gap,
        "max_residual": census.max_residual(),
        "converged": census.converged,
        "sweeps": census.sweeps,
        "roots": census.roots,
        "residuals": census.residuals,
    });
    emit(output, &report, Some(roots_csv(&census)?))?;
    Ok(0)
}

fn cmd_oracle_sum(s5_text: &str, period: u32, samples: usize, seed: u64, output: &Output) -> Outcome {
    if period != 5 {
        return Err(Failure::Usage("--s5 needs --period 5".into()));
    }
    let s5 = parse_complex(s5_text)?;
    let (censuses, summary) = census_sweep(&[s5], samples, seed)?;
    let samples_json: Vec<Value> = censuses
        .iter()
        .map(|c| {
            json!({
                "s5": c.s5,
                "root_count": c.roots.roots.len(),
                "excluded": c.excluded.len(),
                "lifted": c.lifted.len(),
                "distinct_orbits": c.distinct_orbits,
                "degenerate": c.degenerate,
                "max_sum_error": c.max_sum_error,
                "max_uv_sum_error": c.max_uv_sum_error,
                "max_cycle_residual": c.max_cycle_residual,
                "invariants_hold": c.invariants_hold(),
                "orbits": c.orbits.iter().map(|o| json!({
                    "c": o.c,
                    "sum": o.sum,
                    "points": o.points,
                    "cycle_residual": o.cycle_residual,
                    "lifted_roots": o.members.len(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let report = json!({
        "schema": SCHEMA,
        "name": format!("oracle --s5 {s5_text} --period 5"),
        "seed": seed,
        "summary": summary,
        "samples": samples_json,
    });
    emit(output, &report, Some(census_orbits_csv(&censuses)?))?;
    Ok(if summary.all_invariants_hold { 0 } else { 4 })
}

fn cmd_oracle_parameter(c_text: &str, period: u32, output: &Output) -> Outcome {
    let c = parse_complex(c_text)?;
    let orbits = orbit_oracle(c, period)?;
    let tol = 1e-9 * (1.0 + c.norm());
    let expected = cycle_count(period);
    let degenerate = orbits.iter().any(|o| o.degenerate);
    let residual_ok = orbits.iter().all(|o| o.residual < tol);
    let period_ok = orbits.iter().all(|o| o.period() == period as usize);
    let count_ok = orbits.len() <= expected && (degenerate || orbits.len() == expected);
    let holds = residual_ok && period_ok && count_ok;
    let report = json!({
        "schema": SCHEMA,
        "name": format!("oracle --c {c_text} --period {period}"),
        "c": c,
        "period": period,
        "orbit_count": orbits.len(),
        "generic_orbit_count": expected,
        "degenerate": degenerate,
        "residual_tol": tol,
        "invariants": {
            "residual": residual_ok,
            "exact_period": period_ok,
            "count": count_ok,
        },
        "invariants_hold": holds,
        "orbits": orbits,
    });
    emit(output, &report, Some(orbits_csv(&orbits)?))?;
    Ok(if holds { 0 } else { 4 })
}

fn parse_order(spec: &str) -> std::result::Result<(MonomialOrder, VarSet), Failure> {
    let (kind, vars) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("order must look like lex:x,y,z, got `{spec}`")))?;
    let order = match kind {
        "lex" => MonomialOrder::Lex,
        "grlex" => MonomialOrder::Grlex,
        "grevlex" => MonomialOrder::Grevlex,
        _ => return Err(Failure::Usage(format!("unknown order `{kind}`"))),
    };
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    Ok((order, VarSet::new(names)?))
}

fn cmd_groebner(input: &Path, order_spec: &str, output: &Output) -> Outcome {
    let (ord, ring) = parse_order(order_spec)?;
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Io(format!("{}: {e}", input.display())))?;
    let gens = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| MultiPoly::parse(l, &ring))
        .collect::<orbitsum::Result<Vec<_>>>()?;
    let ideal = IdealBasis::new(gens)?;
    let result = buchberger(&ideal, &ord, &config()?)?;
    let cert = certify(&result.basis, &ord)?;
    let print = |p: &MultiPoly| p.to_string_with(&ord);
    let report = json!({
        "schema": SCHEMA,
        "name": format!("groebner --order {order_spec}"),
        "order": { "kind": order_spec.split(':').next(), "variables": ring.names() },
        "inputs": ideal.generators().iter().map(print).collect::<Vec<_>>(),
        "basis": result.basis.iter().map(print).collect::<Vec<_>>(),
        "stats": result.stats,
        "reduced": is_reduced(&result.basis, &ord),
        "certificate": cert,
    });
    emit(output, &report, None)?;
    Ok(if cert.holds() { 0 } else { 4 })
}
