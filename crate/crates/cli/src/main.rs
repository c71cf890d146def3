use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kgamma::compute::compute;
use kgamma::kmodel::{Config, QuadricConfig};
use kgamma::scenarios::{
    four_conics_classify, four_conics_configs, keysb_check, keysb_sweep, regression_suite, three_quadric_configs,
    two_quadric_configs, two_quadric_flag, KeySbInstance, KeySbResult,
};

#[derive(Parser)]
#[command(name = "kgamma", version, about = "Gamma filtration torsion for products of Severi-Brauer varieties and quadric surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the torsion report of a configuration file.
    Compute {
        config: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the regression suite; exits 1 if any item fails.
    Verify {
        /// Glob over item ids, e.g. `sb/*` or `four-conics`.
        #[arg(long)]
        filter: Option<String>,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Divisibility by p^2 of the alternating coefficient sum.
    Keysb(KeysbArgs),
    /// Classify every configuration of a family, one JSON row per line.
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop after this many admissible configurations.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Args)]
struct KeysbArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
    /// Comma-separated exponents, one per factor.
    #[arg(long, value_delimiter = ',', required_unless_present = "sweep", conflicts_with = "sweep")]
    m: Option<Vec<u32>>,
    /// Every exponent vector in `[1, p-1]^n`.
    #[arg(long)]
    sweep: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    FourConics,
    TwoQuadrics,
    ThreeQuadrics,
}

/// Input problems exit with 2, failed checks with 1.
enum Failure {
    Input(String),
    Check(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn run_compute(path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let config = Config::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let c = compute(&config).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut w = sink(out)?;
    writeln!(w, "{}", pretty(&c.to_json()))?;
    w.flush()?;
    Ok(())
}

fn run_verify(filter: Option<&str>, as_json: bool) -> Result<(), Failure> {
    let report = regression_suite(filter).map_err(|e| Failure::Input(e.to_string()))?;
    let mut w = sink(None)?;
    if as_json {
        writeln!(w, "{}", pretty(&report.to_json()))?;
    } else {
        write!(w, "{}", report.to_table())?;
    }
    w.flush()?;
    if report.items.is_empty() {
        return Err(Failure::Input(format!("no suite items match {:?}", filter.unwrap_or("*"))));
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} suite items failed", report.count(kgamma::scenarios::ItemStatus::Fail))))
    }
}

fn keysb_row(inst: &KeySbInstance, r: &KeySbResult) -> String {
    let m: Vec<String> = inst.m().iter().map(u32::to_string).collect();
    format!("m=({})\tsum={}\t{}", m.join(","), r.sum, if r.divisible { "divisible" } else { "NOT divisible" })
}

fn run_keysb(args: &KeysbArgs) -> Result<(), Failure> {
    let input = |e: kgamma::scenarios::ScenarioError| Failure::Input(e.to_string());
    let rows = match &args.m {
        Some(m) => {
            if m.len() != args.n {
                return Err(Failure::Input(format!("--m has {} entries but --n is {}", m.len(), args.n)));
            }
            let inst = KeySbInstance::new(args.p, m.clone()).map_err(input)?;
            let r = keysb_check(&inst);
            vec![(inst, r)]
        }
        None => {
            KeySbInstance::new(args.p, vec![1; args.n]).map_err(input)?;
            keysb_sweep(args.p, args.n).map_err(input)?
        }
    };
    let mut w = sink(None)?;
    writeln!(w, "p={} n={} p^2={}", args.p, args.n, args.p * args.p)?;
    for (inst, r) in &rows {
        writeln!(w, "{}", keysb_row(inst, r))?;
    }
    let bad = rows.iter().filter(|(_, r)| !r.divisible).count();
    writeln!(w, "{} rows, {} not divisible", rows.len(), bad)?;
    w.flush()?;
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{bad} rows not divisible by p^2")))
    }
}

fn torsion_json(t: &kgamma::intlattice::ElementaryDivisors) -> Value {
    json!(t.divisors_u64())
}

fn quadric_row(cfg: &QuadricConfig) -> Value {
    let mut row = json!({"config": Config::Quadric(cfg.clone()).to_json()});
    if cfg.case.is_two() {
        let (flag, rule) = two_quadric_flag(cfg);
        row["flag"] = json!(flag.to_string());
        row["rule"] = json!(rule);
    }
    match compute(&Config::Quadric(cfg.clone())) {
        Ok(c) => {
            row["torsion_2"] = torsion_json(&c.report.torsion_only(2));
            row["torsion_3"] = torsion_json(&c.report.torsion_only(3));
        }
        Err(e) => row["error"] = json!(e.to_string()),
    }
    row
}

fn run_enumerate(family: Family, out: Option<&Path>, limit: Option<usize>) -> Result<(), Failure> {
    let mut w = sink(out)?;
    let limit = limit.unwrap_or(usize::MAX);
    let mut errors = 0usize;
    let mut emit = |w: &mut Box<dyn Write>, row: Value| -> Result<(), Failure> {
        if row.get("error").is_some() {
            errors += 1;
        }
        writeln!(w, "{}", serde_json::to_string(&row).expect("values serialize"))?;
        w.flush()?;
        Ok(())
    };
    match family {
        Family::FourConics => {
            let (ok, rejected) = four_conics_configs();
            for cfg in ok.iter().take(limit) {
                let idx = cfg.index_function().map_err(|e| Failure::Input(e.to_string()))?;
                let row = match four_conics_classify(&idx) {
                    Ok(v) => json!({
                        "config": cfg.to_string(),
                        "verdict": v.table.to_string(),
                        "rule": v.rule,
                        "torsion_2": torsion_json(&v.torsion),
                        "torsion_3": torsion_json(&v.torsion_three),
                        "consistent": v.consistent,
                    }),
                    Err(e) => json!({"config": cfg.to_string(), "error": e.to_string()}),
                };
                emit(&mut w, row)?;
            }
            for (cfg, reason) in &rejected {
                emit(&mut w, json!({"config": cfg.to_string(), "inadmissible": reason}))?;
            }
        }
        Family::TwoQuadrics | Family::ThreeQuadrics => {
            let (ok, rejected) =
                if matches!(family, Family::TwoQuadrics) { two_quadric_configs() } else { three_quadric_configs() };
            for cfg in ok.iter().take(limit) {
                emit(&mut w, quadric_row(cfg))?;
            }
            for (cfg, reason) in &rejected {
                emit(&mut w, json!({"config": Config::Quadric(cfg.clone()).to_json(), "inadmissible": reason}))?;
            }
        }
    }
    if errors > 0 {
        return Err(Failure::Check(format!("{errors} configurations failed to compute")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { config, out } => run_compute(config, out.as_deref()),
        Command::Verify { filter, json } => run_verify(filter.as_deref(), *json),
        Command::Keysb(args) => run_keysb(args),
        Command::Enumerate { family, out, limit } => run_enumerate(*family, out.as_deref(), *limit),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("kgamma: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("kgamma: {msg}");
            ExitCode::from(2)
        }
    }
}
