//! Experiment configurations and the CSV run report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use replen_core::drm::DrmParams;
use replen_core::global::solve_global;
use replen_core::greedy::{full_solve_with, OracleKind, PlannerConfig, Solution};
use replen_core::model::Instance;
use replen_core::oracle::CandidateExecutor;
use replen_core::rational::{to_f64, to_string};
use replen_core::reduction::Variant;
use serde::Serialize;

use crate::error::CliError;
use crate::exec::Threaded;
use crate::format::instance_digest;

/// Experiment configurations, ordered as they appear in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Config {
    /// No pull-forward, free breach.
    A,
    /// Pull-forward, free breach.
    B,
    /// Pull-forward, unit item priorities.
    C,
    /// Branch and bound.
    Da,
    /// Greedy, exact oracle on the final construction.
    Db,
    /// Greedy, exact oracle on the probe construction.
    Dc,
    /// Greedy, entropic oracle on the probe construction.
    Dd,
}

impl Config {
    pub const ALL: [Config; 7] = [Config::A, Config::B, Config::C, Config::Da, Config::Db, Config::Dc, Config::Dd];

    pub fn solver(self) -> &'static str {
        match self {
            Config::Da => "bnb",
            Config::Dd => "greedy-drm",
            _ => "greedy-exact",
        }
    }

    /// The instance this configuration runs on.
    pub fn rewrite(self, inst: &Instance) -> Instance {
        let mut out = inst.clone();
        match self {
            Config::A => {
                for lane in &mut out.lanes {
                    lane.demand.truncate(1);
                    lane.priority.truncate(1);
                }
                out.gamma = Zero::zero();
            }
            Config::B => out.gamma = Zero::zero(),
            Config::C => {
                for lane in &mut out.lanes {
                    lane.priority.iter_mut().for_each(|q| *q = One::one());
                }
            }
            _ => {}
        }
        out
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Config {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Config::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CliError::Invalid(format!("unknown config `{s}`")))
    }
}

/// Parses a comma-separated list into a sorted, deduplicated set.
pub fn parse_configs(list: &str) -> Result<Vec<Config>, CliError> {
    let mut out = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Config>, _>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(CliError::Invalid("no configurations given".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CompareOptions {
    pub rho: f64,
    pub seed: u64,
    pub drm: DrmParams,
    pub node_budget: u64,
    /// Leave the wall-time column empty so reports compare byte for byte.
    pub timing: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            rho: 1.0,
            seed: 0,
            drm: DrmParams::default(),
            node_budget: 1_000_000,
            timing: true,
        }
    }
}

/// Outcome of one configuration.
#[derive(Debug, Clone)]
pub struct ConfigRun {
    pub config: Config,
    pub solution: Solution,
    /// `Some(false)` when branch and bound ran out of nodes.
    pub optimal: Option<bool>,
    pub seconds: f64,
}

pub fn run_config(inst: &Instance, config: Config, opts: &CompareOptions) -> Result<ConfigRun, CliError> {
    let inst = config.rewrite(inst);
    let start = Instant::now();
    let (solution, optimal) = match config {
        Config::Da => {
            let g = solve_global(&inst, opts.node_budget)?;
            (g.solution, Some(g.optimal))
        }
        _ => {
            let (oracle, variant) = match config {
                Config::Dc => (OracleKind::Exact, Variant::Probe),
                Config::Dd => (OracleKind::Drm, Variant::Probe),
                _ => (OracleKind::Exact, Variant::Final),
            };
            let cfg = PlannerConfig {
                rho: opts.rho,
                oracle,
                variant,
                seed: opts.seed,
                drm: opts.drm,
                ..PlannerConfig::default()
            };
            (full_solve_with(&inst, &cfg, &replen_core::oracle::Sequential)?, None)
        }
    };
    Ok(ConfigRun {
        config,
        solution,
        optimal,
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRow {
    pub config: String,
    pub solver: String,
    pub seed: u64,
    pub instance_digest: String,
    pub labour_utilization: f64,
    pub trailer_utilization: f64,
    pub normalized_allocation: f64,
    pub normalized_trailers: f64,
    pub mean_pf_dos: Option<f64>,
    pub ltmc_breach_count: usize,
    pub total_breach: f64,
    pub objective: f64,
    pub objective_exact: String,
    pub optimal: Option<bool>,
    pub wall_time_s: Option<f64>,
    pub oracle_calls: usize,
    pub nonconverged: usize,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub rows: Vec<RunRow>,
    pub runs: Vec<ConfigRun>,
}

impl RunReport {
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Invalid(e.to_string()))
    }

    pub fn nonconverged_calls(&self) -> usize {
        self.runs.iter().map(|r| r.solution.stats.nonconverged).sum()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.runs.iter().any(|r| r.optimal == Some(false))
    }
}

fn relative(value: f64, reference: f64) -> f64 {
    if reference > 0.0 {
        value / reference
    } else if value > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Runs each configuration on `inst` and normalizes allocation and trailer
/// counts by the branch-and-bound run, or the final-greedy run without one.
pub fn compare(inst: &Instance, configs: &[Config], opts: &CompareOptions) -> Result<RunReport, CliError> {
    let mut todo: Vec<Config> = configs.to_vec();
    todo.sort();
    todo.dedup();
    let reference = if todo.contains(&Config::Da) { Config::Da } else { Config::Db };
    let extra = !todo.contains(&reference);
    if extra {
        todo.push(reference);
    }
    let results = Threaded::available().map(todo.clone(), |c| run_config(inst, c, opts));
    let mut runs = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let ref_run = runs.iter().find(|r| r.config == reference).cloned();
    if extra {
        runs.retain(|r| r.config != reference);
    }
    runs.sort_by_key(|r| r.config);
    let (ref_alloc, ref_trailers) = ref_run
        .map(|r| (r.solution.metrics.total_allocation, r.solution.metrics.trailer_count as f64))
        .unwrap_or((0.0, 0.0));
    let digest = instance_digest(inst);
    let rows = runs
        .iter()
        .map(|r| {
            let m = &r.solution.metrics;
            RunRow {
                config: r.config.to_string(),
                solver: r.config.solver().to_string(),
                seed: opts.seed,
                instance_digest: digest.clone(),
                labour_utilization: m.overall_labour_utilization,
                trailer_utilization: m.trailer_utilization,
                normalized_allocation: relative(m.total_allocation, ref_alloc),
                normalized_trailers: relative(m.trailer_count as f64, ref_trailers),
                mean_pf_dos: m.mean_pf_dos,
                ltmc_breach_count: m.ltmc_breach_count,
                total_breach: m.total_breach,
                objective: to_f64(&r.solution.objective),
                objective_exact: to_string(&r.solution.objective),
                optimal: r.optimal,
                wall_time_s: opts.timing.then_some(r.seconds),
                oracle_calls: r.solution.stats.oracle_calls,
                nonconverged: r.solution.stats.nonconverged,
            }
        })
        .collect();
    Ok(RunReport { rows, runs })
}
