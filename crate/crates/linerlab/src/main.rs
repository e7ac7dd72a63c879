//! Command-line workbench for finite point-line geometries: build the
//! example gallery, validate liner files, check axioms, compute hulls and
//! ranks, and emit structural reports.
//!
//! Exit codes: 0 success (and, for `check`, every axiom holds), 1 some
//! checked axiom fails, 2 invalid input, unknown name, or exceeded budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use liner_core::axioms::{AxiomId, CheckConfig, VerdictStatus};
use liner_core::gallery::{gallery_catalog, gallery_entry};
use liner_core::hull::{flat_hull, rank, RankBudget};
use liner_core::model::{liner_from_json, liner_to_json, Liner};
use liner_core::pointset::PointSet;
use liner_core::report::{check_axiom, generate_report, ReportOptions};
use liner_core::LinerError;

#[derive(Parser)]
#[command(
    name = "linerlab",
    version,
    about = "Inspect finite point-line geometries: build examples, check axioms, report structure"
)]
struct Cli {
    #[command(flatten)]
    budgets: BudgetArgs,
    /// Worker threads for internal checker parallelism (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Flat-enumeration bound for seed-driven searches. Overrides the
    /// LINERLAB_BUDGET environment variable.
    #[arg(long, global = true)]
    max_seed: Option<usize>,
    /// Exact-search bound for rank computations. Overrides the
    /// LINERLAB_BUDGET environment variable.
    #[arg(long, global = true)]
    rank_budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in example geometries or emit one as liner JSON.
    #[command(subcommand)]
    Gallery(GalleryCmd),
    /// Run axiom checks against a liner file.
    Check {
        file: PathBuf,
        /// Axiom id, repeatable (e.g. --axiom projective --axiom ranked:3).
        #[arg(long = "axiom", required = true)]
        axioms: Vec<String>,
        /// Print the verdicts as a JSON array instead of text lines.
        #[arg(long)]
        json: bool,
    },
    /// Full structural report for a liner file.
    Report {
        file: PathBuf,
        /// Machine-readable JSON.
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Human-readable text (the default).
        #[arg(long)]
        text: bool,
        /// Zero all timings so the output is byte-identical across runs and
        /// thread counts.
        #[arg(long)]
        deterministic: bool,
    },
    /// Print the hull (smallest flat) of a point set.
    Hull {
        file: PathBuf,
        /// Comma-separated point indices, e.g. --points 0,1,4.
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<usize>,
    },
    /// Print the exact rank of a point set (whole space when --points is
    /// omitted).
    Rank {
        file: PathBuf,
        /// Comma-separated point indices.
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// One line per geometry: name and summary.
    List,
    /// Emit a geometry as liner JSON, to stdout or --out FILE.
    Build {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Budgets from LINERLAB_BUDGET: either a bare integer (applied to both
/// bounds) or a comma list of `max_seed=N` / `rank_budget=N`.
fn env_budgets() -> (Option<usize>, Option<usize>) {
    let Ok(raw) = std::env::var("LINERLAB_BUDGET") else {
        return (None, None);
    };
    if let Ok(n) = raw.trim().parse::<usize>() {
        return (Some(n), Some(n));
    }
    let mut max_seed = None;
    let mut rank_budget = None;
    for part in raw.split(',') {
        match part.trim().split_once('=') {
            Some(("max_seed", v)) => max_seed = v.trim().parse().ok(),
            Some(("rank_budget", v)) => rank_budget = v.trim().parse().ok(),
            _ => {}
        }
    }
    (max_seed, rank_budget)
}

fn check_config(args: &BudgetArgs) -> CheckConfig {
    let (env_seed, env_rank) = env_budgets();
    let mut cfg = CheckConfig::default();
    if let Some(s) = args.max_seed.or(env_seed) {
        cfg.max_seed = s;
    }
    let mut rank_budget = RankBudget::default();
    if let Some(r) = args.rank_budget.or(env_rank) {
        rank_budget.max_exact_seed = r;
    }
    cfg.rank_budget = rank_budget;
    cfg
}

fn load(path: &Path) -> Result<Liner, LinerError> {
    let text = fs::read_to_string(path).map_err(|e| LinerError::InvalidFormat {
        reason: format!("{}: {e}", path.display()),
    })?;
    liner_from_json(&text)
}

fn parse_points(liner: &Liner, points: &[usize]) -> Result<PointSet, LinerError> {
    let n = liner.point_count();
    for &p in points {
        if p >= n {
            return Err(LinerError::PreconditionViolated {
                reason: format!("point {p} is out of range (the liner has {n} points)"),
            });
        }
    }
    Ok(PointSet::from_points(n, points.iter().copied()))
}

fn dispatch(command: Command, cfg: &CheckConfig) -> Result<u8, LinerError> {
    match command {
        Command::Gallery(GalleryCmd::List) => {
            for entry in gallery_catalog() {
                println!("{:<14} {}", entry.name, entry.summary);
            }
            Ok(0)
        }
        Command::Gallery(GalleryCmd::Build { name, out }) => {
            let Some(entry) = gallery_entry(&name) else {
                eprintln!("error: unknown gallery name {name:?} (see `linerlab gallery list`)");
                return Ok(2);
            };
            let liner = (entry.build)()?;
            let json = liner_to_json(&liner);
            match out {
                Some(path) => fs::write(&path, json).map_err(|e| LinerError::InvalidFormat {
                    reason: format!("{}: {e}", path.display()),
                })?,
                None => println!("{json}"),
            }
            Ok(0)
        }
        Command::Check { file, axioms, json } => {
            let liner = load(&file)?;
            let mut any_fails = false;
            let mut values = Vec::new();
            for raw in &axioms {
                let id = AxiomId::from_str(raw)?;
                let verdict = check_axiom(&liner, &id, cfg)?;
                any_fails |= verdict.status == VerdictStatus::Fails;
                if json {
                    values.push(verdict.to_json());
                } else {
                    let status = match verdict.status {
                        VerdictStatus::Holds => "holds",
                        VerdictStatus::Fails => "fails",
                        VerdictStatus::NotApplicable => "n/a",
                    };
                    let mut line = format!("{id}: {status} (scanned {})", verdict.scanned);
                    if let Some(witness) = verdict.to_json().get("witness") {
                        line.push_str(&format!(" witness {witness}"));
                    }
                    if verdict.skipped_by_budget {
                        line.push_str(" [partial scan]");
                    }
                    println!("{line}");
                }
            }
            if json {
                println!("{}", serde_json::Value::Array(values));
            }
            Ok(if any_fails { 1 } else { 0 })
        }
        Command::Report {
            file,
            json,
            text: _,
            deterministic,
        } => {
            let liner = load(&file)?;
            let options = ReportOptions {
                check: cfg.clone(),
                deterministic,
            };
            let report = generate_report(&liner, &options);
            if json {
                let value = report.to_json();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("report JSON serializes")
                );
            } else {
                print!("{}", report.to_text());
            }
            Ok(0)
        }
        Command::Hull { file, points } => {
            let liner = load(&file)?;
            let set = parse_points(&liner, &points)?;
            let hull = flat_hull(&liner, &set);
            let members: Vec<String> = hull.iter().map(|p| p.to_string()).collect();
            println!("{}", members.join(" "));
            Ok(0)
        }
        Command::Rank { file, points } => {
            let liner = load(&file)?;
            let set = match points {
                Some(points) => parse_points(&liner, &points)?,
                None => PointSet::full(liner.point_count()),
            };
            let value = rank(&liner, &set, &cfg.rank_budget)?;
            println!("{value}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = check_config(&cli.budgets);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| dispatch(cli.command, &cfg)),
        Err(e) => {
            eprintln!("error: could not build the thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
