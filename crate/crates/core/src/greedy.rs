//! Batched stochastic greedy trailer assignment and the diminishing-returns
//! audit.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drm::{DrmOracle, DrmParams};
use crate::error::{Error, Result};
use crate::exact::{final_allocate, ExactOracle};
use crate::model::{compute_metrics, evaluate_objective, AllocationPlan, Instance, PlanMetrics, TrailerAssignment};
use crate::oracle::{CandidateExecutor, Evaluation, Score, Sequential, ValueOracle};
use crate::rational::{int, Rational};
use crate::reduction::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum OracleKind {
    #[default]
    Exact,
    Drm,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlannerConfig {
    /// Probability of sampling each candidate store per step.
    pub rho: f64,
    pub oracle: OracleKind,
    pub variant: Variant,
    pub seed: u64,
    pub parallel_candidates: bool,
    /// Re-evaluate only the candidate with the largest stale gain bound.
    pub lazy: bool,
    pub drm: DrmParams,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            rho: 1.0,
            oracle: OracleKind::Exact,
            variant: Variant::Final,
            seed: 0,
            parallel_candidates: false,
            lazy: false,
            drm: DrmParams::default(),
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(Error::InvalidConfig(alloc::format!("rho must lie in (0, 1], got {}", self.rho)));
        }
        if self.lazy && self.rho < 1.0 {
            return Err(Error::InvalidConfig("lazy evaluation requires rho = 1".into()));
        }
        self.drm.validate()
    }
}

/// Incremental gain of one more trailer at `store`.
#[derive(Debug, Clone, PartialEq)]
pub struct GainRecord<V> {
    pub store: usize,
    /// Oracle value at the incremented assignment; `None` if infeasible.
    pub value: Option<V>,
    pub g_gain: Option<V>,
    /// `g_gain + beta * p_k`.
    pub total_gain: Option<V>,
}

/// Counters accumulated over a planning run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlanStats {
    pub oracle_calls: usize,
    pub nonconverged: usize,
    pub max_residual: f64,
    pub steps: usize,
}

impl PlanStats {
    fn record<V, W>(&mut self, e: &Evaluation<V, W>) {
        self.oracle_calls += 1;
        if !e.converged {
            self.nonconverged += 1;
        }
        self.max_residual = self.max_residual.max(e.residual);
    }
}

/// Current point of the greedy walk.
#[derive(Debug, Clone)]
pub struct GreedyState<V, W> {
    pub x: TrailerAssignment,
    pub value: V,
    pub warm: Option<W>,
}

#[derive(Debug, Clone)]
pub struct NextBest<V, W> {
    pub best: Option<usize>,
    pub pruned: Vec<usize>,
    pub records: Vec<GainRecord<V>>,
    best_eval: Option<Evaluation<V, W>>,
}

fn modular_gain<V: Score>(inst: &Instance, k: usize) -> V {
    V::from_rational(&(inst.beta * int(inst.store_priority[k] as i128)))
}

fn gain_record<V: Score, W>(inst: &Instance, base: V, k: usize, e: &Evaluation<V, W>) -> GainRecord<V> {
    let g_gain = e.value.map(|v| v - base);
    GainRecord {
        store: k,
        value: e.value,
        g_gain,
        total_gain: g_gain.map(|g| g + modular_gain(inst, k)),
    }
}

fn positive<V: Score>(gain: Option<V>) -> bool {
    gain.is_some_and(|g| g > V::zero())
}

/// Draws the candidates examined in one step: each store independently with
/// probability `rho`, or one uniform store if the draw comes back empty.
pub fn sample_candidates<R: Rng>(candidates: &[usize], rho: f64, rng: &mut R) -> Vec<usize> {
    if rho >= 1.0 || candidates.is_empty() {
        return candidates.to_vec();
    }
    let picked: Vec<usize> = candidates.iter().copied().filter(|_| rng.random_bool(rho)).collect();
    if picked.is_empty() {
        vec![candidates[rng.random_range(0..candidates.len())]]
    } else {
        picked
    }
}

/// Picks the candidate with the largest positive incremental gain among
/// `sampled` (smallest store id on ties) and lists the sampled stores whose
/// gain is not positive.
pub fn next_best_store<O: ValueOracle, E: CandidateExecutor>(
    oracle: &O,
    state: &GreedyState<O::Value, O::Warm>,
    sampled: &[usize],
    exec: &E,
    stats: &mut PlanStats,
) -> Result<NextBest<O::Value, O::Warm>> {
    let inst = oracle.instance();
    let warm = state.warm.as_ref();
    let evals = exec.map(sampled.to_vec(), |k| oracle.evaluate(&state.x.incremented(k), warm));
    let mut records = Vec::with_capacity(sampled.len());
    let mut pruned = Vec::new();
    let mut best: Option<(usize, O::Value)> = None;
    let mut best_eval = None;
    let mut order: Vec<usize> = (0..sampled.len()).collect();
    order.sort_by_key(|&i| sampled[i]);
    let mut evals: Vec<Option<Evaluation<O::Value, O::Warm>>> =
        evals.into_iter().map(|e| e.map(Some)).collect::<Result<_>>()?;
    for &i in &order {
        let k = sampled[i];
        let e = evals[i].take().expect("each evaluation is consumed once");
        stats.record(&e);
        let rec = gain_record(inst, state.value, k, &e);
        match rec.total_gain {
            Some(g) if g > O::Value::zero() => {
                if best.is_none_or(|(_, b)| g > b) {
                    best = Some((k, g));
                    best_eval = Some(e);
                }
            }
            _ => pruned.push(k),
        }
        records.push(rec);
    }
    Ok(NextBest {
        best: best.map(|(k, _)| k),
        pruned,
        records,
        best_eval,
    })
}

/// Stores grouped by priority, highest priority first, ids ascending.
pub fn priority_batches(inst: &Instance) -> Vec<Vec<usize>> {
    let mut by_p: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (j, &p) in inst.store_priority.iter().enumerate() {
        if inst.max_trailers[j] > 0 {
            by_p.entry(p).or_default().push(j);
        }
    }
    by_p.into_values().rev().collect()
}

/// Outcome of [`plan_trailers`].
#[derive(Debug, Clone)]
pub struct PlanOutcome<V> {
    pub x: TrailerAssignment,
    /// Oracle value at the returned assignment.
    pub value: V,
    /// Gain record of every accepted trailer, in order.
    pub accepted: Vec<GainRecord<V>>,
    pub stats: PlanStats,
}

/// Greedy trailer assignment over any value oracle.
pub fn plan_trailers<O: ValueOracle, E: CandidateExecutor>(
    oracle: &O,
    cfg: &PlannerConfig,
    exec: &E,
) -> Result<PlanOutcome<O::Value>> {
    cfg.validate()?;
    let inst = oracle.instance();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state = GreedyState {
        x: TrailerAssignment::zeros(inst.stores.len()),
        value: O::Value::zero(),
        warm: None,
    };
    let mut stats = PlanStats::default();
    let mut accepted = Vec::new();
    for mut batch in priority_batches(inst) {
        if cfg.lazy {
            lazy_batch(oracle, &mut state, batch, exec, &mut stats, &mut accepted)?;
            continue;
        }
        while !batch.is_empty() {
            let sampled = sample_candidates(&batch, cfg.rho, &mut rng);
            let step = next_best_store(oracle, &state, &sampled, exec, &mut stats)?;
            batch.retain(|j| !step.pruned.contains(j));
            let Some(k) = step.best else { continue };
            let e = step.best_eval.expect("a chosen store has an evaluation");
            let rec = step.records.into_iter().find(|r| r.store == k).expect("chosen store was sampled");
            advance(inst, &mut state, k, e, &mut stats);
            accepted.push(rec);
            if state.x.get(k) >= inst.max_trailers[k] {
                batch.retain(|&j| j != k);
            }
        }
    }
    Ok(PlanOutcome {
        x: state.x,
        value: state.value,
        accepted,
        stats,
    })
}

fn advance<V: Score, W>(
    _inst: &Instance,
    state: &mut GreedyState<V, W>,
    k: usize,
    e: Evaluation<V, W>,
    stats: &mut PlanStats,
) {
    state.x.0[k] += 1;
    state.value = e.value.expect("accepted candidates are feasible");
    state.warm = e.warm;
    stats.steps += 1;
}

/// Lazy variant of one batch with `rho = 1`: gains only shrink as `x` grows,
/// so a candidate whose fresh gain beats every other stale bound is the
/// argmax.
fn lazy_batch<O: ValueOracle, E: CandidateExecutor>(
    oracle: &O,
    state: &mut GreedyState<O::Value, O::Warm>,
    batch: Vec<usize>,
    exec: &E,
    stats: &mut PlanStats,
    accepted: &mut Vec<GainRecord<O::Value>>,
) -> Result<()> {
    let inst = oracle.instance();
    // stale bound per store; `None` means never evaluated (unbounded)
    let mut bound: BTreeMap<usize, Option<O::Value>> = batch.into_iter().map(|j| (j, None)).collect();
    loop {
        let mut fresh: BTreeMap<usize, (GainRecord<O::Value>, Evaluation<O::Value, O::Warm>)> = BTreeMap::new();
        let chosen = loop {
            let Some(top) = lazy_top(&bound) else { break None };
            if let Some((rec, _)) = fresh.get(&top) {
                let g = rec.total_gain.expect("fresh entries in the bound map are feasible");
                if g > O::Value::zero() {
                    break Some(top);
                }
                break None;
            }
            let step = next_best_store(oracle, state, &[top], exec, stats)?;
            let rec = step.records.into_iter().next().expect("one candidate evaluated");
            if !positive(rec.total_gain) {
                bound.remove(&top);
                continue;
            }
            bound.insert(top, rec.total_gain);
            let e = step.best_eval.expect("positive gain has an evaluation");
            fresh.insert(top, (rec, e));
        };
        let Some(k) = chosen else { return Ok(()) };
        let (rec, e) = fresh.remove(&k).expect("chosen store is fresh");
        advance(inst, state, k, e, stats);
        accepted.push(rec);
        if state.x.get(k) >= inst.max_trailers[k] {
            bound.remove(&k);
        }
        if bound.is_empty() {
            return Ok(());
        }
    }
}

/// Store with the largest bound, smallest id on ties. Unevaluated stores
/// rank above everything. A stale bound tied with a fresh gain is evaluated
/// first when its id is smaller, matching the eager tie rule.
fn lazy_top<V: Score>(bound: &BTreeMap<usize, Option<V>>) -> Option<usize> {
    let mut top: Option<(usize, Option<V>)> = None;
    for (&j, &b) in bound {
        let better = match (top, b) {
            (None, _) => true,
            (Some((_, None)), _) => false,
            (Some((_, Some(_))), None) => true,
            (Some((_, Some(tb))), Some(v)) => v > tb,
        };
        if better {
            top = Some((j, b));
        }
    }
    top.map(|(j, _)| j)
}

/// Assignment, exact plan and metrics of a full planning run.
#[derive(Debug, Clone)]
pub struct Solution {
    pub x: TrailerAssignment,
    pub plan: AllocationPlan,
    pub metrics: PlanMetrics,
    pub objective: Rational,
    pub stats: PlanStats,
}

/// Greedy planning with the configured oracle, then the exact final
/// allocation.
pub fn full_solve(inst: &Instance, cfg: &PlannerConfig) -> Result<Solution> {
    full_solve_with(inst, cfg, &Sequential)
}

pub fn full_solve_with<E: CandidateExecutor>(inst: &Instance, cfg: &PlannerConfig, exec: &E) -> Result<Solution> {
    let (x, stats) = match cfg.oracle {
        OracleKind::Exact => {
            let oracle = ExactOracle::new(inst, cfg.variant);
            let out = plan_trailers(&oracle, cfg, exec)?;
            (out.x, out.stats)
        }
        OracleKind::Drm => {
            let oracle = DrmOracle::new(inst, cfg.variant, cfg.drm)?;
            let out = plan_trailers(&oracle, cfg, exec)?;
            (out.x, out.stats)
        }
    };
    finish(inst, x, stats)
}

/// Final allocation, objective and metrics for a chosen assignment.
pub fn finish(inst: &Instance, x: TrailerAssignment, stats: PlanStats) -> Result<Solution> {
    let plan = final_allocate(inst, &x)?;
    let objective = evaluate_objective(inst, &x, &plan)?;
    let metrics = compute_metrics(inst, &x, &plan);
    Ok(Solution {
        x,
        plan,
        metrics,
        objective,
        stats,
    })
}

/// One sampled `(X, Y, k)` triplet with `X <= Y` componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditTriplet {
    pub x: TrailerAssignment,
    pub y: TrailerAssignment,
    pub k: usize,
    pub gain_x: Rational,
    pub gain_y: Rational,
    /// `gain_x - gain_y`; non-negative under diminishing returns.
    pub difference: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub triplets: Vec<AuditTriplet>,
    pub min_difference: Option<Rational>,
}

/// Memoized exact oracle on the final construction.
pub struct AuditOracle {
    oracle: ExactOracle,
    cache: BTreeMap<Vec<u64>, Option<Rational>>,
}

impl AuditOracle {
    pub fn new(inst: &Instance) -> Self {
        Self {
            oracle: ExactOracle::new(inst, Variant::Final),
            cache: BTreeMap::new(),
        }
    }

    pub fn value(&mut self, x: &TrailerAssignment) -> Result<Option<Rational>> {
        if let Some(v) = self.cache.get(&x.0) {
            return Ok(*v);
        }
        let v = self.oracle.evaluate(x, None)?.value;
        self.cache.insert(x.0.clone(), v);
        Ok(v)
    }

    /// `g(x + k) - g(x)`, or `None` if either side is infeasible.
    pub fn gain(&mut self, x: &TrailerAssignment, k: usize) -> Result<Option<Rational>> {
        let base = self.value(x)?;
        let next = self.value(&x.incremented(k))?;
        Ok(base.zip(next).map(|(b, n)| n - b))
    }

    /// Diminishing-returns gap `(g(x + k) - g(x)) - (g(y + k) - g(y))`.
    pub fn triplet(&mut self, x: &TrailerAssignment, y: &TrailerAssignment, k: usize) -> Result<Option<AuditTriplet>> {
        let (Some(gain_x), Some(gain_y)) = (self.gain(x, k)?, self.gain(y, k)?) else {
            return Ok(None);
        };
        Ok(Some(AuditTriplet {
            x: x.clone(),
            y: y.clone(),
            k,
            gain_x,
            gain_y,
            difference: gain_x - gain_y,
        }))
    }
}

/// Samples `n_triplets` nested pairs `X <= Y` with `Y + k` feasible and
/// reports the exact diminishing-returns gaps.
///
/// `Y` is a random feasible walk from zero, `k` a random store that can still
/// take a trailer, and `X` a uniform sub-vector of `Y`. Feasibility is
/// downward closed, so `X + k` is feasible too.
pub fn audit_submodularity(inst: &Instance, n_triplets: usize, seed: u64) -> Result<AuditReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = AuditOracle::new(inst);
    let stores = inst.stores.len();
    let cap: u64 = inst.max_trailers.iter().sum();
    let mut triplets = Vec::with_capacity(n_triplets);
    let max_attempts = 50 * n_triplets.max(1);
    let mut attempts = 0;
    while triplets.len() < n_triplets && attempts < max_attempts {
        attempts += 1;
        let len = rng.random_range(0..cap.max(1));
        let mut y = TrailerAssignment::zeros(stores);
        for _ in 0..len {
            let options = feasible_steps(&mut oracle, inst, &y)?;
            if options.is_empty() {
                break;
            }
            y.0[options[rng.random_range(0..options.len())]] += 1;
        }
        let options = feasible_steps(&mut oracle, inst, &y)?;
        if options.is_empty() {
            continue;
        }
        let k = options[rng.random_range(0..options.len())];
        let x = TrailerAssignment(y.0.iter().map(|&yj| rng.random_range(0..=yj)).collect());
        if let Some(t) = oracle.triplet(&x, &y, k)? {
            triplets.push(t);
        }
    }
    if triplets.len() < n_triplets {
        return Err(Error::SamplingExhausted {
            found: triplets.len(),
            requested: n_triplets,
        });
    }
    let min_difference = triplets.iter().map(|t| t.difference).min();
    Ok(AuditReport { triplets, min_difference })
}

fn feasible_steps(oracle: &mut AuditOracle, inst: &Instance, y: &TrailerAssignment) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for j in 0..inst.stores.len() {
        if y.get(j) < inst.max_trailers[j] && oracle.value(&y.incremented(j))?.is_some() {
            out.push(j);
        }
    }
    Ok(out)
}
