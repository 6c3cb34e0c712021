//! Command bodies, kept free of argument parsing and file handling.

use std::time::Instant;

use replen_core::drm::{DrmOracle, DrmParams};
use replen_core::exact::ExactOracle;
use replen_core::gen::{generate, preset, GenConfig};
use replen_core::global::solve_global;
use replen_core::greedy::{audit_submodularity, full_solve_with, plan_trailers, AuditReport, OracleKind, PlannerConfig, Solution};
use replen_core::model::{
    check_feasibility, evaluate_objective, validate_instance, ConstraintViolation, Instance, TrailerAssignment,
};
use replen_core::oracle::{Sequential, ValueOracle};
use replen_core::rational::{to_f64, to_string};
use replen_core::reduction::Variant;
use replen_core::Rational;
use serde::Serialize;

use crate::error::CliError;
use crate::exec::Threaded;
use crate::format::PlanFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SolverKind {
    GreedyExact,
    GreedyDrm,
    Bnb,
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub solver: SolverKind,
    pub rho: f64,
    pub seed: u64,
    pub lazy: bool,
    pub parallel: bool,
    /// Construction used while probing gains; `None` picks the solver default.
    pub variant: Option<Variant>,
    pub drm: DrmParams,
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            solver: SolverKind::GreedyExact,
            rho: 1.0,
            seed: 0,
            lazy: false,
            parallel: false,
            variant: None,
            drm: DrmParams::default(),
            node_budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: Solution,
    /// Set by branch and bound only.
    pub optimal: Option<bool>,
}

impl SolveOutcome {
    pub fn plan_file(&self, inst: &Instance) -> PlanFile {
        let s = &self.solution;
        PlanFile::new(inst, &s.x, &s.plan, s.objective)
    }

    /// Exit condition after a successful solve: non-convergence or an
    /// exhausted node budget.
    pub fn status(&self) -> Result<(), CliError> {
        let stats = &self.solution.stats;
        if stats.nonconverged > 0 {
            return Err(CliError::NonConvergence(format!(
                "{} of {} oracle calls stopped before tolerance",
                stats.nonconverged, stats.oracle_calls
            )));
        }
        if self.optimal == Some(false) {
            return Err(CliError::Budget("node budget exhausted; plan is the best found".into()));
        }
        Ok(())
    }
}

pub fn ensure_valid(inst: &Instance) -> Result<(), CliError> {
    let report = validate_instance(inst);
    if report.is_valid() {
        return Ok(());
    }
    let lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    Err(CliError::Invalid(lines.join("; ")))
}

/// Validates, solves and re-checks the plan against every constraint.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveOutcome, CliError> {
    ensure_valid(inst)?;
    let outcome = match opts.solver {
        SolverKind::Bnb => {
            let g = solve_global(inst, opts.node_budget)?;
            SolveOutcome {
                solution: g.solution,
                optimal: Some(g.optimal),
            }
        }
        SolverKind::GreedyExact | SolverKind::GreedyDrm => {
            let (oracle, default_variant) = match opts.solver {
                SolverKind::GreedyDrm => (OracleKind::Drm, Variant::Probe),
                _ => (OracleKind::Exact, Variant::Final),
            };
            let cfg = PlannerConfig {
                rho: opts.rho,
                oracle,
                variant: opts.variant.unwrap_or(default_variant),
                seed: opts.seed,
                parallel_candidates: opts.parallel,
                lazy: opts.lazy,
                drm: opts.drm,
            };
            let solution = if opts.parallel {
                full_solve_with(inst, &cfg, &Threaded::available())?
            } else {
                full_solve_with(inst, &cfg, &Sequential)?
            };
            SolveOutcome { solution, optimal: None }
        }
    };
    let violations = check_feasibility(inst, &outcome.solution.x, &outcome.solution.plan)?;
    if let Some(v) = violations.first() {
        return Err(CliError::Infeasible(format!("solver produced an invalid plan: {v:?}")));
    }
    Ok(outcome)
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub violations: Vec<ConstraintViolation>,
    pub objective: Rational,
    pub stated_objective: Rational,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.objective == self.stated_objective
    }
}

pub fn check(inst: &Instance, plan: &PlanFile) -> Result<CheckReport, CliError> {
    ensure_valid(inst)?;
    let (x, alloc) = plan.decode(inst)?;
    let violations = check_feasibility(inst, &x, &alloc)?;
    let objective = evaluate_objective(inst, &x, &alloc)?;
    Ok(CheckReport {
        violations,
        objective,
        stated_objective: plan.objective,
    })
}

pub fn gen_config(preset_name: &str, seed: Option<u64>, overrides: Option<GenConfig>) -> Result<GenConfig, CliError> {
    let mut cfg = match overrides {
        Some(cfg) => cfg,
        None => preset(preset_name)?,
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

pub fn gen(cfg: &GenConfig) -> Result<Instance, CliError> {
    Ok(generate(cfg)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub instance: usize,
    pub x: String,
    pub y: String,
    pub k: usize,
    pub gain_x: String,
    pub gain_y: String,
    pub difference: String,
}

fn vector(x: &TrailerAssignment) -> String {
    x.0.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Audits each instance with `triplets` samples; rows keep instance order.
pub fn audit(instances: &[Instance], triplets: usize, seed: u64) -> Result<(Vec<AuditRow>, Option<Rational>), CliError> {
    let mut rows = Vec::new();
    let mut min: Option<Rational> = None;
    for (n, inst) in instances.iter().enumerate() {
        ensure_valid(inst)?;
        let AuditReport { triplets: found, min_difference } = audit_submodularity(inst, triplets, seed.wrapping_add(n as u64))?;
        for t in found {
            rows.push(AuditRow {
                instance: n,
                x: vector(&t.x),
                y: vector(&t.y),
                k: t.k,
                gain_x: to_string(&t.gain_x),
                gain_y: to_string(&t.gain_y),
                difference: to_string(&t.difference),
            });
        }
        if let Some(m) = min_difference {
            min = Some(min.map_or(m, |v| v.min(m)));
        }
    }
    Ok((rows, min))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub size: String,
    pub items: usize,
    pub stores: usize,
    pub lanes: usize,
    pub calls: usize,
    pub exact_ms_per_call: f64,
    pub drm_ms_per_call: f64,
    pub drm_to_exact: f64,
    pub max_relative_gap: f64,
    pub nonconverged: usize,
}

/// Parses `ITEMSxSTORES`.
pub fn parse_size(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Invalid(format!("size `{s}` is not of the form ITEMSxSTORES"));
    let (a, b) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
    let items = a.parse().map_err(|_| bad())?;
    let stores = b.parse().map_err(|_| bad())?;
    if items == 0 || stores == 0 {
        return Err(bad());
    }
    Ok((items, stores))
}

/// Times cold exact and entropic oracle calls on the assignments visited by a
/// lazy entropic greedy run over a generated instance of each size.
pub fn bench(sizes: &[(usize, usize)], calls: usize, seed: u64, params: DrmParams) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for &(items, stores) in sizes {
        let cfg = GenConfig {
            items: [items, items],
            stores: [stores, stores],
            seed,
            ..preset("expD")?
        };
        let inst = generate(&cfg)?;
        let drm = DrmOracle::new(&inst, Variant::Probe, params)?;
        let exact = ExactOracle::new(&inst, Variant::Probe);
        let planner = PlannerConfig {
            oracle: OracleKind::Drm,
            variant: Variant::Probe,
            lazy: true,
            drm: params,
            ..PlannerConfig::default()
        };
        let path = plan_trailers(&drm, &planner, &Sequential)?;
        let mut x = TrailerAssignment::zeros(inst.stores.len());
        let mut points = Vec::new();
        for rec in path.accepted.iter().take(calls) {
            x = x.incremented(rec.store);
            points.push(x.clone());
        }
        let (mut t_exact, mut t_drm, mut gap, mut nonconverged) = (0.0, 0.0, 0.0f64, 0);
        for x in &points {
            let start = Instant::now();
            let e = exact.evaluate(x, None)?;
            t_exact += start.elapsed().as_secs_f64();
            let start = Instant::now();
            let d = drm.evaluate(x, None)?;
            t_drm += start.elapsed().as_secs_f64();
            if !d.converged {
                nonconverged += 1;
            }
            if let (Some(ev), Some(dv)) = (e.value, d.value) {
                let ev = to_f64(&ev);
                gap = gap.max((ev - dv).abs() / ev.abs().max(1.0));
            }
        }
        let n = points.len().max(1) as f64;
        rows.push(BenchRow {
            size: format!("{items}x{stores}"),
            items,
            stores,
            lanes: inst.lanes.len(),
            calls: points.len(),
            exact_ms_per_call: 1e3 * t_exact / n,
            drm_ms_per_call: 1e3 * t_drm / n,
            drm_to_exact: if t_exact > 0.0 { t_drm / t_exact } else { 0.0 },
            max_relative_gap: gap,
            nonconverged,
        });
    }
    Ok(rows)
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invalid(e.to_string()))
}
