//! Command-line front end: exact mixed volumes and discriminants, relative
//! inradii, seeded inequality suites and BKK bounds.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bezout_core::discriminant::io::parse_matrix;
use bezout_core::discriminant::{mixed_discriminant, mixed_discriminant_by_interpolation, SymMatrix};
use bezout_core::geometry::io::parse_polytope;
use bezout_core::geometry::VPolytope;
use bezout_core::harness::{
    run_suite_into, tightness_survey, Registry, ResultsStore, SuiteConfig,
};
use bezout_core::inradius::inradius;
use bezout_core::mixed_volume::{MethodRegistry, MixedVolumeQuery};
use bezout_core::newton::{compare_bounds, parse_system};
use bezout_core::rational::format_rational;
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bezout", version, about = "Exact Bézout-type inequalities for mixed volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mixed volumes and mixed discriminants.
    #[command(subcommand)]
    Compute(Compute),
    /// Largest lambda with a translate of lambda L inside K.
    Inradius {
        #[arg(long = "k", value_name = "FILE")]
        k: PathBuf,
        #[arg(long = "l", value_name = "FILE")]
        l: PathBuf,
    },
    /// Run a seeded random suite and append its records to an NDJSON store.
    Verify {
        #[arg(long)]
        inequality: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Skip the known equality cases.
        #[arg(long)]
        no_sharp: bool,
    },
    /// Minimum and median ratios per dimension, with extremal instances.
    Survey {
        #[arg(long)]
        inequality: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append the extremal records here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// List the registered inequality ids.
    List,
    /// BKK count, classical Bézout bound and the grouped bound of a system.
    Bkk {
        #[arg(long, value_name = "FILE")]
        system: PathBuf,
        /// Group sizes a1,...,ar; the remaining polynomials form the D group.
        #[arg(long, value_delimiter = ',')]
        group: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum Compute {
    /// V(K_1^a_1, ..., K_r^a_r) from polytope files given as FILE[:MULT].
    MixedVolume {
        #[arg(required = true, value_name = "FILE[:MULT]")]
        bodies: Vec<String>,
        #[arg(long, default_value = "polarization")]
        method: String,
    },
    /// D(M_1^a_1, ..., M_r^a_r) from matrix files given as FILE[:MULT].
    MixedDiscriminant {
        #[arg(required = true, value_name = "FILE[:MULT]")]
        matrices: Vec<String>,
        #[arg(long, default_value = "polarization")]
        method: String,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// `path[:mult]`; a suffix that is not a positive integer stays part of the path.
fn split_multiplicity(arg: &str) -> (PathBuf, usize) {
    if let Some((path, m)) = arg.rsplit_once(':') {
        if let Ok(m) = m.parse::<usize>() {
            if m > 0 && !path.is_empty() {
                return (PathBuf::from(path), m);
            }
        }
    }
    (PathBuf::from(arg), 1)
}

fn load_polytope(path: &Path) -> Result<VPolytope> {
    parse_polytope(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<SymMatrix> {
    parse_matrix(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn print(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("plain data"));
}

fn compute(cmd: Compute) -> Result<ExitCode> {
    match cmd {
        Compute::MixedVolume { bodies, method } => {
            let entries = bodies
                .iter()
                .map(|b| {
                    let (path, m) = split_multiplicity(b);
                    Ok((load_polytope(&path)?, m))
                })
                .collect::<Result<Vec<_>>>()?;
            let query = MixedVolumeQuery::new(entries)?;
            let methods = MethodRegistry::default();
            let value = methods.get(&method)?.compute(&query)?;
            print(json!({ "mixed_volume": format_rational(&value), "method": method }));
        }
        Compute::MixedDiscriminant { matrices, method } => {
            let entries = matrices
                .iter()
                .map(|b| {
                    let (path, m) = split_multiplicity(b);
                    Ok((load_matrix(&path)?, m))
                })
                .collect::<Result<Vec<_>>>()?;
            let value = match method.as_str() {
                "polarization" => mixed_discriminant(&entries)?,
                "interpolation" => mixed_discriminant_by_interpolation(&entries)?,
                other => bail!("unknown method {other:?} (expected polarization or interpolation)"),
            };
            print(json!({ "mixed_discriminant": format_rational(&value), "method": method }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute(cmd) => compute(cmd),
        Command::Inradius { k, l } => {
            let (k, l) = (load_polytope(&k)?, load_polytope(&l)?);
            let r = inradius(&k, &l)?;
            let verified = r.verify(&k, &l)?;
            let translate: Vec<String> = r.translate.coords().iter().map(format_rational).collect();
            print(json!({
                "inradius": format_rational(&r.lambda_star),
                "translate": translate,
                "certified": verified,
            }));
            Ok(if verified { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Verify { inequality, trials, dim, seed, out, threads, no_sharp } => {
            let registry = Registry::default();
            let mut config = SuiteConfig::new(inequality, dim, trials, seed);
            config.threads = threads;
            config.include_sharp = !no_sharp;
            let store = ResultsStore::create(&out)?;
            let result = run_suite_into(&registry, &config, &store)?;
            let violations = result.violations();
            for v in &violations {
                eprintln!("violation: {} lhs={} rhs={} ({})", v.inequality_id, v.lhs, v.rhs, v.digest);
            }
            for e in &result.errors {
                eprintln!("error: trial {}: {} ({})", e.trial, e.message, e.digest);
            }
            let failed_checks = if result.asserts { 0 } else { result.records.iter().filter(|r| !r.holds).count() };
            print(json!({
                "inequality_id": result.inequality_id,
                "dim": dim,
                "seed": seed,
                "records": result.records.len(),
                "violations": violations.len(),
                "errors": result.errors.len(),
                "asserted": result.asserts,
                "not_holding": failed_checks,
                "min_ratio": result.min_ratio().map(format_rational),
                "out": out.display().to_string(),
            }));
            Ok(if result.is_success() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Survey { inequality, trials, dims, seed, out } => {
            let registry = Registry::default();
            let store = out.as_ref().map(ResultsStore::open_append).transpose()?;
            let survey = tightness_survey(&registry, &inequality, trials, &dims, seed, store.as_ref())?;
            println!("{}", survey.to_json());
            let bad = survey.dims.iter().any(|d| d.violations > 0 || d.errors > 0);
            Ok(if bad { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Command::List => {
            let registry = Registry::default();
            for id in registry.ids() {
                let check = registry.get(id)?;
                let tag = if check.asserts() { "" } else { " (not asserted)" };
                println!("{id:<28} {}{tag}", check.summary());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bkk { system, group } => {
            let polys = parse_system(&read(&system)?).with_context(|| format!("parsing {}", system.display()))?;
            let report = compare_bounds(&polys, group.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("plain data"));
            if !report.bkk_within_classical() {
                eprintln!("violation: bkk {} exceeds classical {}", report.bkk, report.classical);
            }
            if !report.remark_holds() {
                eprintln!("violation: grouped bound inequality fails");
            }
            let ok = report.bkk_within_classical() && report.remark_holds();
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
