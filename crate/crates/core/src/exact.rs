//! Exact value oracle: the transport problem solved as an integral
//! min-cost flow, plus a brute-force enumerator used as a test reference.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{AllocationPlan, Instance, TrailerAssignment};
use crate::oracle::{Evaluation, ValueOracle};
use crate::rational::{common_denominator, int, Rational};
use crate::reduction::{build_cot, extract_plan, trim_shelf_capacity, CotInstance, Variant};

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    cost: i128,
}

/// Residual network with integer capacities and costs. Arcs are stored in
/// forward/backward pairs, so arc `e ^ 1` is the reverse of arc `e`.
#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    /// Adds an arc and returns its id. Costs must be non-negative.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64, cost: i128) -> usize {
        debug_assert!(cost >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently carried by arc `id`.
    pub fn flow(&self, id: usize) -> u64 {
        self.arcs[id ^ 1].cap
    }

    /// Total cost of the current flow.
    pub fn cost(&self) -> i128 {
        self.arcs
            .iter()
            .step_by(2)
            .enumerate()
            .map(|(k, a)| a.cost * self.flow(2 * k) as i128)
            .sum()
    }

    /// Sends up to `limit` units from `s` to `t` at minimum cost and returns
    /// the amount sent.
    ///
    /// Each phase computes shortest distances under reduced costs, lifts the
    /// potentials and then saturates every zero-reduced-cost path with a
    /// blocking flow.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let n = self.num_nodes();
        let mut pot = vec![0i128; n];
        let mut sent = 0u64;
        while sent < limit {
            let dist = self.dijkstra(s, &pot);
            let Some(dt) = dist[t] else { break };
            for v in 0..n {
                pot[v] += dist[v].map_or(dt, |d| d.min(dt));
            }
            sent += self.blocking_flows(s, t, limit - sent, Some(&pot));
        }
        sent
    }

    /// Maximum flow from `s` to `t`, capped at `limit`, ignoring costs.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        self.blocking_flows(s, t, limit, None)
    }

    fn reduced(&self, u: usize, e: usize, pot: &[i128]) -> i128 {
        let a = &self.arcs[e];
        a.cost + pot[u] - pot[a.to]
    }

    fn dijkstra(&self, s: usize, pot: &[i128]) -> Vec<Option<i128>> {
        let mut dist: Vec<Option<i128>> = vec![None; self.num_nodes()];
        let mut heap = BinaryHeap::new();
        dist[s] = Some(0);
        heap.push(Reverse((0i128, s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u].is_some_and(|best| d > best) {
                continue;
            }
            for &e in &self.adj[u] {
                let a = &self.arcs[e];
                if a.cap == 0 {
                    continue;
                }
                let nd = d + self.reduced(u, e, pot);
                if dist[a.to].is_none_or(|cur| nd < cur) {
                    dist[a.to] = Some(nd);
                    heap.push(Reverse((nd, a.to)));
                }
            }
        }
        dist
    }

    fn admissible(&self, u: usize, e: usize, pot: Option<&[i128]>) -> bool {
        self.arcs[e].cap > 0 && pot.is_none_or(|p| self.reduced(u, e, p) == 0)
    }

    fn blocking_flows(&mut self, s: usize, t: usize, limit: u64, pot: Option<&[i128]>) -> u64 {
        let n = self.num_nodes();
        let mut sent = 0u64;
        let mut level = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        while sent < limit {
            level.fill(usize::MAX);
            level[s] = 0;
            queue.clear();
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &e in &self.adj[u] {
                    let v = self.arcs[e].to;
                    if level[v] == usize::MAX && self.admissible(u, e, pot) {
                        level[v] = level[u] + 1;
                        queue.push(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                break;
            }
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, limit - sent, &level, &mut iter, pot);
                if pushed == 0 {
                    break;
                }
                sent += pushed;
                if sent == limit {
                    break;
                }
            }
        }
        sent
    }

    fn augment(
        &mut self,
        u: usize,
        t: usize,
        f: u64,
        level: &[usize],
        iter: &mut [usize],
        pot: Option<&[i128]>,
    ) -> u64 {
        if u == t {
            return f;
        }
        while iter[u] < self.adj[u].len() {
            let e = self.adj[u][iter[u]];
            let v = self.arcs[e].to;
            if level[v] == level[u] + 1 && self.admissible(u, e, pot) {
                let d = self.augment(v, t, f.min(self.arcs[e].cap), level, iter, pot);
                if d > 0 {
                    self.arcs[e].cap -= d;
                    self.arcs[e ^ 1].cap += d;
                    return d;
                }
            }
            iter[u] += 1;
        }
        0
    }
}

/// Optimal integral flow of a transport problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotSolution {
    pub flow: Vec<u64>,
    pub profit: Rational,
}

struct CotNetwork {
    net: FlowNetwork,
    cell_arcs: Vec<usize>,
    s: usize,
    t: usize,
}

fn cot_network(cot: &CotInstance, costs: Option<&[i128]>) -> CotNetwork {
    let ns = cot.sources.len();
    let s = 0;
    let t = ns + cot.sinks.len() + 1;
    let mut net = FlowNetwork::new(t + 1);
    for (i, &supply) in cot.supplies.iter().enumerate() {
        net.add_arc(s, 1 + i, supply, 0);
    }
    let cell_arcs = cot
        .cells
        .iter()
        .enumerate()
        .map(|(c, cell)| {
            let cost = costs.map_or(0, |k| k[c]);
            net.add_arc(1 + cell.source, 1 + ns + cell.sink, cell.cap, cost)
        })
        .collect();
    for (j, &need) in cot.needs.iter().enumerate() {
        net.add_arc(1 + ns + j, t, need, 0);
    }
    CotNetwork { net, cell_arcs, s, t }
}

/// Integer arc costs `(p_max - p) * L`, with `L` the common denominator of
/// all cell profits. Every unit crosses exactly one cell, so the shift by
/// `p_max` does not change the optimal flow.
fn scaled_costs(cot: &CotInstance) -> Result<Vec<i128>> {
    let scale = common_denominator(cot.cells.iter().map(|c| &c.profit)).ok_or(Error::CostOverflow)?;
    let top = cot
        .cells
        .iter()
        .map(|c| c.profit)
        .max()
        .unwrap_or_else(Rational::zero);
    cot.cells
        .iter()
        .map(|c| {
            let gap = top - c.profit;
            gap.numer()
                .checked_mul(scale / gap.denom())
                .ok_or(Error::CostOverflow)
        })
        .collect()
}

/// Maximum-profit flow that meets every supply and need; `None` when the
/// network cannot route the total mass.
pub fn solve_mcmf(cot: &CotInstance) -> Result<Option<CotSolution>> {
    let costs = scaled_costs(cot)?;
    let mut g = cot_network(cot, Some(&costs));
    let sent = g.net.min_cost_flow(g.s, g.t, cot.total);
    if sent < cot.total {
        return Ok(None);
    }
    let flow: Vec<u64> = g.cell_arcs.iter().map(|&a| g.net.flow(a)).collect();
    let profit = cot.profit(&flow);
    Ok(Some(CotSolution { flow, profit }))
}

/// Whether some flow meets every supply and need, ignoring profits.
pub fn is_cot_feasible(cot: &CotInstance) -> bool {
    let mut g = cot_network(cot, None);
    g.net.max_flow(g.s, g.t, cot.total) == cot.total
}

/// Exact optimum and plan for assignment `x` on an already trimmed instance.
/// The all-zero assignment yields value 0 and the empty plan.
pub fn solve_exact(
    inst: &Instance,
    x: &TrailerAssignment,
    variant: Variant,
) -> Result<Option<(Rational, AllocationPlan)>> {
    if x.len() == inst.stores.len() && x.is_zero() {
        return Ok(Some((Rational::zero(), AllocationPlan::empty(inst))));
    }
    let cot = build_cot(inst, x, variant)?;
    match solve_mcmf(&cot)? {
        Some(sol) => {
            let mut plan = extract_plan(inst, &cot, &sol.flow)?;
            tighten_breach(inst, x, &mut plan);
            Ok(Some((sol.profit, plan)))
        }
        None => Ok(None),
    }
}

/// Lowers every breach slack to the smallest value the minimum-load
/// constraint allows. Optimal flows already do this whenever `gamma > 0`.
fn tighten_breach(inst: &Instance, x: &TrailerAssignment, plan: &mut AllocationPlan) {
    let loads = plan.store_totals(inst);
    for (j, b) in plan.breach.iter_mut().enumerate() {
        let floor = int(x.min_load(j, inst.trailer_max, inst.trailer_min) as i128);
        let need = floor - loads[j];
        *b = if need > Rational::zero() { need.min(*b) } else { Rational::zero() };
    }
}

/// `g(x)`: optimal allocation utility minus breach penalty, or `None` when
/// `x` admits no feasible allocation.
pub fn value_oracle_exact(inst: &Instance, x: &TrailerAssignment, variant: Variant) -> Result<Option<Rational>> {
    Ok(solve_exact(&trim_shelf_capacity(inst), x, variant)?.map(|(v, _)| v))
}

/// Exact final allocation for `x` under the true per-store breach bound.
/// The returned plan refers to the untrimmed lanes of `inst`.
pub fn final_allocate(inst: &Instance, x: &TrailerAssignment) -> Result<AllocationPlan> {
    let trimmed = trim_shelf_capacity(inst);
    match solve_exact(&trimmed, x, Variant::Final)? {
        Some((_, plan)) => Ok(plan),
        None => Err(Error::Infeasible),
    }
}

/// Exact oracle bound to one instance, trimmed once at construction.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    inst: Instance,
    variant: Variant,
}

impl ExactOracle {
    pub fn new(inst: &Instance, variant: Variant) -> Self {
        Self {
            inst: trim_shelf_capacity(inst),
            variant,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn solve(&self, x: &TrailerAssignment) -> Result<Option<(Rational, AllocationPlan)>> {
        solve_exact(&self.inst, x, self.variant)
    }
}

impl ValueOracle for ExactOracle {
    type Value = Rational;
    type Warm = ();

    fn instance(&self) -> &Instance {
        &self.inst
    }

    fn evaluate(&self, x: &TrailerAssignment, _warm: Option<&()>) -> Result<Evaluation<Rational, ()>> {
        Ok(Evaluation::exact(self.solve(x)?.map(|(v, _)| v)))
    }
}

/// Limit on breach slack used by [`brute_force_optimum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreachBound {
    /// `b_j <= m` at every store.
    PerStore(u64),
    /// `sum_j b_j <= B`.
    Total(u64),
}

/// Default enumeration budget of the brute-force reference.
pub const BRUTE_FORCE_BUDGET: u128 = 10_000_000;

/// Number of integral allocation vectors the brute force would visit for `x`:
/// the product of `D + 1` over all cells of stores that receive trailers.
pub fn enumeration_size(inst: &Instance, x: &TrailerAssignment) -> u128 {
    inst.lanes
        .iter()
        .filter(|l| x.get(l.store) > 0)
        .flat_map(|l| l.demand.iter())
        .fold(1u128, |acc, &d| acc.saturating_mul(d as u128 + 1))
}

struct Enumerator<'a> {
    inst: &'a Instance,
    x: &'a TrailerAssignment,
    bound: BreachBound,
    cells: Vec<(usize, usize, u64)>,
    gains: Vec<i128>,
    penalty: i128,
    category: Vec<Option<usize>>,
    current: Vec<u64>,
    item_used: Vec<u64>,
    cat_used: Vec<u64>,
    store_used: Vec<u64>,
    lane_used: Vec<u64>,
    best: Option<(i128, Vec<u64>, Vec<u64>)>,
}

impl Enumerator<'_> {
    fn run(&mut self, k: usize, value: i128) {
        if k == self.cells.len() {
            self.leaf(value);
            return;
        }
        let (lane, _, cap) = self.cells[k];
        let l = &self.inst.lanes[lane];
        let item_room = self.inst.inventory[l.item] - self.item_used[l.item];
        let cat = self.category[l.item];
        let cat_room = cat.map_or(u64::MAX, |c| self.inst.labour_capacity[c].saturating_sub(self.cat_used[c]));
        let store_room = self.inst.trailer_max * self.x.get(l.store) - self.store_used[l.store];
        let shelf_room = l.shelf_capacity.map_or(u64::MAX, |c| c - self.lane_used[lane]);
        let top = cap.min(item_room).min(cat_room).min(store_room).min(shelf_room);
        for v in 0..=top {
            self.current[k] = v;
            self.item_used[l.item] += v;
            if let Some(c) = cat {
                self.cat_used[c] += v;
            }
            self.store_used[l.store] += v;
            self.lane_used[lane] += v;
            self.run(k + 1, value + self.gains[k] * v as i128);
            self.item_used[l.item] -= v;
            if let Some(c) = cat {
                self.cat_used[c] -= v;
            }
            self.store_used[l.store] -= v;
            self.lane_used[lane] -= v;
        }
        self.current[k] = 0;
    }

    fn leaf(&mut self, value: i128) {
        let mut breach = vec![0u64; self.inst.stores.len()];
        for (j, b) in breach.iter_mut().enumerate() {
            if self.x.get(j) == 0 {
                continue;
            }
            let floor = self.x.min_load(j, self.inst.trailer_max, self.inst.trailer_min);
            *b = floor.saturating_sub(self.store_used[j]);
            if let BreachBound::PerStore(cap) = self.bound {
                if *b > cap {
                    return;
                }
            }
        }
        let total: u64 = breach.iter().sum();
        if let BreachBound::Total(cap) = self.bound {
            if total > cap {
                return;
            }
        }
        let value = value - self.penalty * total as i128;
        if self.best.as_ref().is_none_or(|(v, _, _)| value > *v) {
            self.best = Some((value, self.current.clone(), breach));
        }
    }
}

/// Reference optimum of the fixed-assignment allocation problem by full
/// enumeration of integral allocations on the untrimmed instance.
///
/// Breach is set to its smallest feasible value per store, which is optimal
/// for any `gamma >= 0`. Returns `None` when nothing is feasible.
pub fn brute_force_optimum(
    inst: &Instance,
    x: &TrailerAssignment,
    bound: BreachBound,
    budget: u128,
) -> Result<Option<(Rational, AllocationPlan)>> {
    if x.len() != inst.stores.len() {
        return Err(Error::DimensionMismatch {
            what: "trailer assignment",
            expected: inst.stores.len(),
            found: x.len(),
        });
    }
    let size = enumeration_size(inst, x);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut cells = Vec::new();
    let mut profits = Vec::new();
    for (idx, lane) in inst.lanes.iter().enumerate() {
        if x.get(lane.store) == 0 {
            continue;
        }
        for (t, &d) in lane.demand.iter().enumerate() {
            cells.push((idx, t, d));
            profits.push(inst.profit(idx, t));
        }
    }
    let scale = common_denominator(profits.iter().chain(core::iter::once(&inst.gamma))).ok_or(Error::CostOverflow)?;
    let to_int = |r: &Rational| r.numer().checked_mul(scale / r.denom()).ok_or(Error::CostOverflow);
    let gains = profits.iter().map(to_int).collect::<Result<Vec<_>>>()?;
    let mut e = Enumerator {
        inst,
        x,
        bound,
        current: vec![0; cells.len()],
        cells,
        gains,
        penalty: to_int(&inst.gamma)?,
        category: inst.item_categories(),
        item_used: vec![0; inst.items.len()],
        cat_used: vec![0; inst.categories.len()],
        store_used: vec![0; inst.stores.len()],
        lane_used: vec![0; inst.lanes.len()],
        best: None,
    };
    e.run(0, 0);
    let Some((value, alloc, breach)) = e.best else {
        return Ok(None);
    };
    let mut plan = AllocationPlan::empty(inst);
    for (&(lane, t, _), &v) in e.cells.iter().zip(&alloc) {
        plan.alloc[lane][t] = int(v as i128);
    }
    plan.breach = breach.iter().map(|&b| int(b as i128)).collect();
    Ok(Some((Rational::new(value, scale), plan)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{plan_from, t1, t2};
    use crate::model::{check_feasibility, g_part};
    use crate::reduction::{Cell, CellKind, Sink, Source};

    fn tiny_cot(supplies: Vec<u64>, needs: Vec<u64>, cells: &[(usize, usize, u64, i128)]) -> CotInstance {
        let total = supplies.iter().sum();
        CotInstance {
            variant: Variant::Final,
            sources: (0..supplies.len()).map(Source::Item).collect(),
            sinks: (0..needs.len()).map(Sink::Store).collect(),
            supplies,
            needs,
            cells: cells
                .iter()
                .map(|&(source, sink, cap, p)| Cell {
                    source,
                    sink,
                    day: 0,
                    cap,
                    profit: int(p),
                    kind: CellKind::Pseudo,
                })
                .collect(),
            total,
            deficit: 0,
        }
    }

    #[test]
    fn two_sources_with_overflow() {
        let cot = tiny_cot(
            vec![3, 2],
            vec![4, 1],
            &[(0, 0, 3, 5), (1, 0, 3, 1), (0, 1, 3, 0), (1, 1, 2, 0)],
        );
        let sol = solve_mcmf(&cot).unwrap().unwrap();
        assert_eq!(sol.profit, int(16));
        assert_eq!(sol.flow[0], 3);
        assert_eq!(sol.flow[1], 1);
        cot.verify_flow(&sol.flow).unwrap();
    }

    #[test]
    fn single_cell_is_forced() {
        let cot = tiny_cot(vec![7], vec![7], &[(0, 0, 7, 2)]);
        let sol = solve_mcmf(&cot).unwrap().unwrap();
        assert_eq!(sol.flow, vec![7]);
        assert_eq!(sol.profit, int(14));
    }

    #[test]
    fn unreachable_need_is_infeasible() {
        let cot = tiny_cot(vec![5], vec![5], &[(0, 0, 3, 1)]);
        assert_eq!(solve_mcmf(&cot).unwrap(), None);
        assert!(!is_cot_feasible(&cot));
    }

    #[test]
    fn negative_profits_are_avoided_when_possible() {
        let cot = tiny_cot(vec![2, 2], vec![2, 2], &[(0, 0, 2, -5), (0, 1, 2, 0), (1, 0, 2, 0), (1, 1, 2, -1)]);
        let sol = solve_mcmf(&cot).unwrap().unwrap();
        assert_eq!(sol.profit, int(0));
    }

    #[test]
    fn t1_exact_value() {
        let x = TrailerAssignment(vec![1]);
        assert_eq!(value_oracle_exact(&t1(), &x, Variant::Final).unwrap(), Some(int(6)));
        assert_eq!(value_oracle_exact(&t1(), &x, Variant::Probe).unwrap(), Some(int(6)));
        assert_eq!(
            value_oracle_exact(&t1(), &TrailerAssignment(vec![0]), Variant::Final).unwrap(),
            Some(int(0))
        );
    }

    #[test]
    fn t2_forced_breach() {
        let x = TrailerAssignment(vec![1]);
        assert_eq!(value_oracle_exact(&t2(), &x, Variant::Final).unwrap(), Some(int(-998)));
    }

    #[test]
    fn t1_final_allocation() {
        let inst = t1();
        let x = TrailerAssignment(vec![1]);
        let plan = final_allocate(&inst, &x).unwrap();
        assert_eq!(plan, plan_from(&inst, &[&[4, 4]], &[0]));
        assert_eq!(g_part(&inst, &plan).unwrap(), int(6));
        assert!(check_feasibility(&inst, &x, &plan).unwrap().is_empty());
        assert_eq!(final_allocate(&inst, &TrailerAssignment(vec![0])).unwrap(), AllocationPlan::empty(&inst));
    }

    #[test]
    fn t2_free_breach() {
        let mut inst = t2();
        inst.gamma = int(0);
        let plan = final_allocate(&inst, &TrailerAssignment(vec![1])).unwrap();
        assert_eq!(plan, plan_from(&inst, &[&[2, 0]], &[1]));
        assert_eq!(g_part(&inst, &plan).unwrap(), int(2));
    }

    #[test]
    fn t1_two_trailers_breach_whole_minimum() {
        // second trailer: s >= 8 + 3 - b with s <= 8 forces b = 3
        let x = TrailerAssignment(vec![2]);
        assert_eq!(value_oracle_exact(&t1(), &x, Variant::Final).unwrap(), Some(int(6 - 3000)));
    }

    #[test]
    fn brute_force_matches_hand_values() {
        let bound = BreachBound::PerStore(3);
        let (v, plan) = brute_force_optimum(&t1(), &TrailerAssignment(vec![1]), bound, BRUTE_FORCE_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(v, int(6));
        assert_eq!(plan, plan_from(&t1(), &[&[4, 4]], &[0]));
        let (v, _) = brute_force_optimum(&t1(), &TrailerAssignment(vec![0]), bound, BRUTE_FORCE_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(v, int(0));
        let (v, _) = brute_force_optimum(&t2(), &TrailerAssignment(vec![1]), bound, BRUTE_FORCE_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(v, int(-998));
    }

    #[test]
    fn brute_force_infeasible_sentinel() {
        let mut inst = t1();
        inst.lanes[0].demand = vec![0, 0];
        let x = TrailerAssignment(vec![2]);
        let got = brute_force_optimum(&inst, &x, BreachBound::PerStore(3), BRUTE_FORCE_BUDGET).unwrap();
        assert_eq!(got, None);
        assert_eq!(value_oracle_exact(&inst, &x, Variant::Final).unwrap(), None);
    }

    #[test]
    fn brute_force_budget() {
        let err = brute_force_optimum(&t1(), &TrailerAssignment(vec![1]), BreachBound::PerStore(3), 10);
        assert_eq!(err, Err(Error::BudgetExceeded { size: 25, budget: 10 }));
    }

    #[test]
    fn probe_bound_relaxes_per_store_breach() {
        // two trailers, no demand beyond one trailer: final needs b = 3, probe
        // allows any b up to M in total
        let inst = t1();
        let x = TrailerAssignment(vec![2]);
        let (probe, _) = brute_force_optimum(&inst, &x, BreachBound::Total(8), BRUTE_FORCE_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(value_oracle_exact(&inst, &x, Variant::Probe).unwrap(), Some(probe));
    }
}
