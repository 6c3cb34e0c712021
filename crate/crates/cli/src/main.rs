use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use replen::commands::{self, SolveOptions, SolverKind};
use replen::format::{read_instance, to_json, CotDump, InstanceFile, PlanFile};
use replen::report::{compare, parse_configs, CompareOptions};
use replen::CliError;
use replen_core::drm::DrmParams;
use replen_core::gen::{corpus, GenConfig};
use replen_core::rational::to_string;
use replen_core::reduction::{build_cot, trim_shelf_capacity, Variant};

#[derive(Parser)]
#[command(name = "replen", version, about = "Warehouse-to-store allocation planning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic instance.
    Gen {
        #[arg(long, default_value = "expD")]
        preset: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Generator settings as JSON; replaces the preset.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the effective generator settings here.
        #[arg(long)]
        dump_config: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Plan trailers and allocations for an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "greedy-exact")]
        solver: SolverKind,
        #[command(flatten)]
        planner: PlannerArgs,
        /// Construction used while probing gains.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Evaluate candidates on worker threads.
        #[arg(long)]
        parallel: bool,
        #[arg(long, default_value_t = 1_000_000)]
        node_budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Append a metrics CSV row to this file.
        #[arg(long)]
        metrics: Option<PathBuf>,
        /// Write the final transport instance of the chosen assignment.
        #[arg(long)]
        dump_cot: Option<PathBuf>,
    },
    /// Verify a plan against an instance.
    Check { instance: PathBuf, plan: PathBuf },
    /// Run experiment configurations and emit a CSV report.
    Compare {
        instance: PathBuf,
        #[arg(long, default_value = "A,B,C,Da,Db,Dc,Dd")]
        configs: String,
        #[command(flatten)]
        planner: PlannerArgs,
        #[arg(long, default_value_t = 1_000_000)]
        node_budget: u64,
        /// Leave the wall-time column empty.
        #[arg(long)]
        no_timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample (X, Y, k) triplets and report diminishing-returns differences.
    AuditSubmodularity {
        /// Instances to audit; a generated corpus is used when none is given.
        instances: Vec<PathBuf>,
        #[arg(long, default_value_t = 100)]
        triplets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "small-corpus")]
        preset: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time exact against entropic oracle calls.
    Bench {
        #[arg(long, default_value = "20x5,80x10,200x20")]
        sizes: String,
        #[arg(long, default_value_t = 10)]
        calls: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PlannerArgs {
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Re-evaluate only the most promising candidate (requires rho = 1).
    #[arg(long)]
    lazy: bool,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long, default_value_t = 1e-6)]
    drm_eps: f64,
    #[arg(long, default_value_t = 10_000)]
    drm_max_iter: usize,
}

impl PlannerArgs {
    fn drm(&self) -> DrmParams {
        DrmParams {
            mu: self.mu,
            eps: self.drm_eps,
            max_iter: self.drm_max_iter,
            ..DrmParams::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Probe,
    Final,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn append_csv_row<T: serde::Serialize>(path: &Path, row: &T) -> Result<(), CliError> {
    let exists = path.exists() && std::fs::metadata(path).map(|m| m.len() > 0).unwrap_or(false);
    let file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(path, e))?;
    let mut w = csv::WriterBuilder::new().has_headers(!exists).from_writer(file);
    w.serialize(row)?;
    w.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}

#[derive(serde::Serialize)]
struct MetricsRow {
    solver: String,
    seed: u64,
    instance_digest: String,
    objective: String,
    trailers: u64,
    labour_utilization: f64,
    trailer_utilization: f64,
    total_allocation: f64,
    ltmc_breach_count: usize,
    total_breach: f64,
    integrality_fraction: f64,
    mean_pf_dos: Option<f64>,
    oracle_calls: usize,
    nonconverged: usize,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            preset,
            seed,
            config,
            dump_config,
            output,
        } => {
            let overrides = match config {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
                    Some(serde_json::from_str::<GenConfig>(&text)?)
                }
                None => None,
            };
            let cfg = commands::gen_config(&preset, seed, overrides)?;
            if let Some(p) = dump_config {
                write_out(Some(&p), &to_json(&cfg)?)?;
            }
            let inst = commands::gen(&cfg)?;
            write_out(output.as_deref(), &to_json(&InstanceFile::from_instance(&inst))?)
        }
        Command::Solve {
            instance,
            solver,
            planner,
            variant,
            parallel,
            node_budget,
            output,
            metrics,
            dump_cot,
        } => {
            let inst = read_instance(&instance)?;
            let opts = SolveOptions {
                solver,
                rho: planner.rho,
                seed: planner.seed,
                lazy: planner.lazy,
                parallel,
                variant: variant.map(|v| match v {
                    VariantArg::Probe => Variant::Probe,
                    VariantArg::Final => Variant::Final,
                }),
                drm: planner.drm(),
                node_budget,
            };
            let out = commands::solve(&inst, &opts)?;
            write_out(output.as_deref(), &to_json(&out.plan_file(&inst))?)?;
            let s = &out.solution;
            if let Some(p) = dump_cot {
                let trimmed = trim_shelf_capacity(&inst);
                if s.x.is_zero() {
                    eprintln!("no trailers assigned; no transport instance to dump");
                } else {
                    let cot = build_cot(&trimmed, &s.x, Variant::Final)?;
                    write_out(Some(&p), &to_json(&CotDump::new(&trimmed, &cot))?)?;
                }
            }
            if let Some(p) = metrics {
                let m = &s.metrics;
                append_csv_row(
                    &p,
                    &MetricsRow {
                        solver: format!("{solver:?}"),
                        seed: planner.seed,
                        instance_digest: replen::format::instance_digest(&inst),
                        objective: to_string(&s.objective),
                        trailers: m.trailer_count,
                        labour_utilization: m.overall_labour_utilization,
                        trailer_utilization: m.trailer_utilization,
                        total_allocation: m.total_allocation,
                        ltmc_breach_count: m.ltmc_breach_count,
                        total_breach: m.total_breach,
                        integrality_fraction: m.integrality_fraction,
                        mean_pf_dos: m.mean_pf_dos,
                        oracle_calls: s.stats.oracle_calls,
                        nonconverged: s.stats.nonconverged,
                    },
                )?;
            }
            eprintln!(
                "objective {} trailers {} oracle calls {}",
                to_string(&s.objective),
                s.x.total(),
                s.stats.oracle_calls
            );
            out.status()
        }
        Command::Check { instance, plan } => {
            let inst = read_instance(&instance)?;
            let text = std::fs::read_to_string(&plan).map_err(|e| CliError::io(&plan, e))?;
            let file: PlanFile = serde_json::from_str(&text)?;
            let report = commands::check(&inst, &file)?;
            for v in &report.violations {
                println!(
                    "violation {:?} index {} period {:?}: {} vs {}",
                    v.kind,
                    v.index,
                    v.period,
                    to_string(&v.lhs),
                    to_string(&v.rhs)
                );
            }
            if report.objective != report.stated_objective {
                println!(
                    "objective mismatch: stated {} recomputed {}",
                    to_string(&report.stated_objective),
                    to_string(&report.objective)
                );
            }
            if report.is_ok() {
                println!("ok objective {}", to_string(&report.objective));
                Ok(())
            } else {
                Err(CliError::Infeasible(format!("{} violations", report.violations.len())))
            }
        }
        Command::Compare {
            instance,
            configs,
            planner,
            node_budget,
            no_timing,
            output,
        } => {
            let inst = read_instance(&instance)?;
            commands::ensure_valid(&inst)?;
            let opts = CompareOptions {
                rho: planner.rho,
                seed: planner.seed,
                drm: planner.drm(),
                node_budget,
                timing: !no_timing,
            };
            let report = compare(&inst, &parse_configs(&configs)?, &opts)?;
            write_out(output.as_deref(), &report.to_csv()?)?;
            if report.nonconverged_calls() > 0 {
                return Err(CliError::NonConvergence(format!("{} oracle calls", report.nonconverged_calls())));
            }
            if report.budget_exhausted() {
                return Err(CliError::Budget("branch and bound node budget".into()));
            }
            Ok(())
        }
        Command::AuditSubmodularity {
            instances,
            triplets,
            seed,
            preset,
            count,
            output,
        } => {
            let insts = if instances.is_empty() {
                corpus(&replen_core::gen::preset(&preset)?, seed, count)?
            } else {
                instances.iter().map(|p| read_instance(p)).collect::<Result<_, _>>()?
            };
            let (rows, min) = commands::audit(&insts, triplets, seed)?;
            write_out(output.as_deref(), &commands::csv_string(&rows)?)?;
            let min = min.map_or("none".to_string(), |m| to_string(&m));
            eprintln!("triplets {} min difference {min}", rows.len());
            Ok(())
        }
        Command::Bench {
            sizes,
            calls,
            seed,
            mu,
            output,
        } => {
            let sizes = sizes
                .split(',')
                .map(commands::parse_size)
                .collect::<Result<Vec<_>, _>>()?;
            let params = DrmParams { mu, ..DrmParams::default() };
            let rows = commands::bench(&sizes, calls, seed, params)?;
            write_out(output.as_deref(), &commands::csv_string(&rows)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
