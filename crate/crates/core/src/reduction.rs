//! Rewrites the fixed-trailer allocation problem as a balanced transport
//! problem with per-cell capacities.
//!
//! Sources are the real items plus two pseudo items: a breach item `b`, whose
//! shipments to real stores cost `gamma` per unit, and a free filler `z` that
//! tops up the last trailer of each store by at most `M - m`. Sinks are the
//! real stores (need `M * x_j`), one labour sink per category that soaks up the
//! stock labour cannot process, and a surplus sink `e` absorbing the rest.
//! Every source must ship exactly its supply and every sink must receive
//! exactly its need.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{AllocationPlan, Instance, TrailerAssignment};
use crate::rational::{int, Rational};

/// Which breach bound the construction encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Variant {
    /// Breach supply `M`, uncapped breach cells: relaxes `b_j <= m` to a
    /// shared budget `sum_j b_j <= M`. Used while probing incremental gains.
    Probe,
    /// Breach supply `m * |J|` with per-store cap `m`: the exact model.
    #[default]
    Final,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Item(usize),
    Breach,
    Filler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sink {
    Store(usize),
    Labour(usize),
    Surplus,
}

/// Origin of a transport cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    /// Allocation of lane `lane` on period `day`.
    Real { lane: usize, day: usize },
    /// Breach shipment to a real store.
    Breach { store: usize },
    /// Any other pseudo cell; carries zero profit.
    Pseudo,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub source: usize,
    pub sink: usize,
    pub day: usize,
    pub cap: u64,
    pub profit: Rational,
    pub kind: CellKind,
}

/// Balanced capacity-constrained transport problem.
///
/// Source and sink lists always have the same layout for a given instance:
/// items, then `b`, then `z`; stores, then one labour sink per category, then
/// `e`. Cells that could only carry zero flow are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CotInstance {
    pub variant: Variant,
    pub sources: Vec<Source>,
    pub supplies: Vec<u64>,
    pub sinks: Vec<Sink>,
    pub needs: Vec<u64>,
    pub cells: Vec<Cell>,
    /// Total mass shipped: sum of supplies, equal to the sum of needs.
    pub total: u64,
    /// Amount added to the breach supply to cover an inventory deficit.
    pub deficit: u64,
}

impl CotInstance {
    pub fn breach_source(&self) -> usize {
        self.sources.len() - 2
    }

    pub fn filler_source(&self) -> usize {
        self.sources.len() - 1
    }

    pub fn surplus_sink(&self) -> usize {
        self.sinks.len() - 1
    }

    pub fn labour_sink(&self, category: usize) -> usize {
        self.num_stores() + category
    }

    pub fn num_stores(&self) -> usize {
        self.sinks
            .iter()
            .filter(|s| matches!(s, Sink::Store(_)))
            .count()
    }

    /// Profit of a flow vector.
    pub fn profit(&self, flow: &[u64]) -> Rational {
        self.cells
            .iter()
            .zip(flow)
            .filter(|(c, &f)| f > 0 && !c.profit.is_zero())
            .map(|(c, &f)| c.profit * int(f as i128))
            .sum()
    }

    /// Checks caps, supplies and needs exactly.
    pub fn verify_flow(&self, flow: &[u64]) -> Result<()> {
        if flow.len() != self.cells.len() {
            return Err(Error::DimensionMismatch {
                what: "flow cells",
                expected: self.cells.len(),
                found: flow.len(),
            });
        }
        let mut out = vec![0u64; self.sources.len()];
        let mut inflow = vec![0u64; self.sinks.len()];
        for (idx, (cell, &f)) in self.cells.iter().zip(flow).enumerate() {
            if f > cell.cap {
                return Err(Error::Unbalanced(format!(
                    "cell {idx} carries {f} above its cap {}",
                    cell.cap
                )));
            }
            out[cell.source] += f;
            inflow[cell.sink] += f;
        }
        for (i, (&o, &s)) in out.iter().zip(&self.supplies).enumerate() {
            if o != s {
                return Err(Error::Unbalanced(format!("source {i} ships {o}, supply is {s}")));
            }
        }
        for (j, (&got, &need)) in inflow.iter().zip(&self.needs).enumerate() {
            if got != need {
                return Err(Error::Unbalanced(format!("sink {j} receives {got}, need is {need}")));
            }
        }
        Ok(())
    }
}

/// Removes demand that shelf space could never hold, starting from the least
/// profitable periods (latest first among equal profits).
///
/// When the unit profit of a lane decreases over time this trims the last
/// period first, then the one before it, and so on. Profit order keeps the
/// optimum intact even for lanes whose priorities rise over the horizon.
pub fn trim_shelf_capacity(inst: &Instance) -> Instance {
    let mut out = inst.clone();
    for (idx, lane) in out.lanes.iter_mut().enumerate() {
        let Some(cap) = lane.shelf_capacity else {
            continue;
        };
        let total = lane.total_demand();
        if total <= cap {
            continue;
        }
        let mut excess = total - cap;
        let mut order: Vec<usize> = (0..lane.demand.len()).collect();
        order.sort_by(|&a, &b| {
            let pa = inst.profit(idx, a);
            let pb = inst.profit(idx, b);
            pa.cmp(&pb).then(b.cmp(&a))
        });
        for t in order {
            if excess == 0 {
                break;
            }
            let cut = excess.min(lane.demand[t]);
            lane.demand[t] -= cut;
            excess -= cut;
        }
    }
    out
}

/// Builds the transport problem for assignment `x`.
///
/// Cells without an upper bound receive their source supply as cap, which can
/// never bind. If the real and pseudo supplies fall short of the needs, the
/// breach supply is raised by the shortfall and the surplus sink gets no need.
pub fn build_cot(inst: &Instance, x: &TrailerAssignment, variant: Variant) -> Result<CotInstance> {
    let n_items = inst.items.len();
    let n_stores = inst.stores.len();
    let n_cats = inst.categories.len();
    if x.len() != n_stores {
        return Err(Error::DimensionMismatch {
            what: "trailer assignment",
            expected: n_stores,
            found: x.len(),
        });
    }
    for (j, (&xj, &rj)) in x.0.iter().zip(&inst.max_trailers).enumerate() {
        if xj > rj {
            return Err(Error::TrailerBound { store: j, count: xj, max: rj });
        }
    }
    if x.is_zero() {
        return Err(Error::EmptyAssignment);
    }
    let big_m = inst.trailer_max;
    let small_m = inst.trailer_min;

    let mut sources: Vec<Source> = (0..n_items).map(Source::Item).collect();
    sources.push(Source::Breach);
    sources.push(Source::Filler);
    let breach = n_items;
    let filler = n_items + 1;
    let mut supplies = inst.inventory.clone();
    let filler_supply = (big_m - small_m) * n_stores as u64;
    let base_breach = match variant {
        Variant::Probe => big_m,
        Variant::Final => small_m * n_stores as u64,
    };
    supplies.push(base_breach);
    supplies.push(filler_supply);

    let mut sinks: Vec<Sink> = (0..n_stores).map(Sink::Store).collect();
    sinks.extend((0..n_cats).map(Sink::Labour));
    sinks.push(Sink::Surplus);
    let surplus = n_stores + n_cats;
    let mut needs: Vec<u64> = x.0.iter().map(|&xj| big_m * xj).collect();
    let category_stock = inst.category_inventory();
    needs.extend(
        category_stock
            .iter()
            .zip(&inst.labour_capacity)
            .map(|(&a, &h)| a.saturating_sub(h)),
    );
    let supply_total: u64 = supplies.iter().sum();
    let need_total: u64 = needs.iter().sum();
    let deficit = need_total.saturating_sub(supply_total);
    supplies[breach] += deficit;
    needs.push(supply_total + deficit - need_total);
    let total = supply_total + deficit;

    let mut cells = Vec::new();
    for (idx, lane) in inst.lanes.iter().enumerate() {
        if needs[lane.store] == 0 || supplies[lane.item] == 0 {
            continue;
        }
        for (t, &d) in lane.demand.iter().enumerate() {
            if d > 0 {
                cells.push(Cell {
                    source: lane.item,
                    sink: lane.store,
                    day: t,
                    cap: d,
                    profit: inst.profit(idx, t),
                    kind: CellKind::Real { lane: idx, day: t },
                });
            }
        }
    }
    for j in 0..n_stores {
        if needs[j] == 0 {
            continue;
        }
        if big_m > small_m && supplies[filler] > 0 {
            cells.push(pseudo(filler, j, big_m - small_m));
        }
        let cap = match variant {
            Variant::Probe => supplies[breach],
            Variant::Final => small_m.min(supplies[breach]),
        };
        if cap > 0 {
            cells.push(Cell {
                source: breach,
                sink: j,
                day: 0,
                cap,
                profit: -inst.gamma,
                kind: CellKind::Breach { store: j },
            });
        }
    }
    for (l, cat) in inst.categories.iter().enumerate() {
        let sink = n_stores + l;
        if needs[sink] == 0 {
            continue;
        }
        for &i in &cat.items {
            if supplies[i] > 0 {
                cells.push(pseudo(i, sink, supplies[i]));
            }
        }
    }
    if needs[surplus] > 0 {
        for (src, &s) in supplies.iter().enumerate() {
            if s > 0 {
                cells.push(pseudo(src, surplus, s));
            }
        }
    }

    Ok(CotInstance {
        variant,
        sources,
        supplies,
        sinks,
        needs,
        cells,
        total,
        deficit,
    })
}

fn pseudo(source: usize, sink: usize, cap: u64) -> Cell {
    Cell {
        source,
        sink,
        day: 0,
        cap,
        profit: Rational::zero(),
        kind: CellKind::Pseudo,
    }
}

/// Reads the allocation plan off a balanced integral flow: real cells become
/// allocations and breach cells become breach slacks; pseudo flows are
/// dropped.
pub fn extract_plan(inst: &Instance, cot: &CotInstance, flow: &[u64]) -> Result<AllocationPlan> {
    cot.verify_flow(flow)?;
    let mut plan = AllocationPlan::empty(inst);
    for (cell, &f) in cot.cells.iter().zip(flow) {
        if f == 0 {
            continue;
        }
        match cell.kind {
            CellKind::Real { lane, day } => plan.alloc[lane][day] += int(f as i128),
            CellKind::Breach { store } => plan.breach[store] += int(f as i128),
            CellKind::Pseudo => {}
        }
    }
    Ok(plan)
}

/// Explicit feasible transport flow for `x = previous ⊎ {k}` built from a
/// plan that was feasible for the previous assignment without breach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleStart {
    pub cot: CotInstance,
    pub flow: Vec<u64>,
    pub plan: AllocationPlan,
}

/// Constructs the witness used to show that the probe construction is
/// feasible after adding one trailer: previous allocations are kept, the new
/// trailer at `k` is covered by `M` units of breach, the filler tops every
/// store up to its need, and leftovers go to the labour and surplus sinks.
pub fn feasible_start(
    inst: &Instance,
    previous: &AllocationPlan,
    x: &TrailerAssignment,
    k: usize,
) -> Result<FeasibleStart> {
    previous.check_dimensions(inst)?;
    if x.get(k) == 0 {
        return Err(Error::Precondition(format!("store {k} has no trailer to add")));
    }
    let mut prev_x = x.clone();
    prev_x.0[k] -= 1;
    let big_m = inst.trailer_max;

    let mut shipped = vec![0u64; inst.stores.len()];
    let mut lane_flow: Vec<Vec<u64>> = Vec::with_capacity(inst.lanes.len());
    for (idx, row) in previous.alloc.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for d in row {
            if !crate::rational::is_integer(d) || *d < Rational::zero() {
                return Err(Error::Precondition(format!("lane {idx} allocation is not a whole number")));
            }
            out.push(*d.numer() as u64);
        }
        shipped[inst.lanes[idx].store] += out.iter().sum::<u64>();
        lane_flow.push(out);
    }
    for (j, b) in previous.breach.iter().enumerate() {
        if !b.is_zero() {
            return Err(Error::Precondition(format!("previous plan breaches at store {j}")));
        }
        let floor = prev_x.min_load(j, inst.trailer_max, inst.trailer_min);
        if shipped[j] < floor || shipped[j] > big_m * prev_x.get(j) {
            return Err(Error::Precondition(format!(
                "previous plan loads store {j} with {} outside [{floor}, {}]",
                shipped[j],
                big_m * prev_x.get(j)
            )));
        }
    }

    let cot = build_cot(inst, x, Variant::Probe)?;
    let mut flow = vec![0u64; cot.cells.len()];
    let mut left = cot.supplies.clone();
    let mut need = cot.needs.clone();
    let send = |flow: &mut Vec<u64>, left: &mut Vec<u64>, need: &mut Vec<u64>, cell: usize, q: u64| {
        let c = &cot.cells[cell];
        flow[cell] += q;
        left[c.source] -= q;
        need[c.sink] -= q;
    };

    for (idx, cell) in cot.cells.iter().enumerate() {
        if let CellKind::Real { lane, day } = cell.kind {
            let q = lane_flow[lane][day];
            if q > 0 {
                send(&mut flow, &mut left, &mut need, idx, q);
            }
        }
    }
    let missing_real = inst
        .lanes
        .iter()
        .enumerate()
        .any(|(idx, lane)| lane_flow[idx].iter().sum::<u64>() > 0 && cot.needs[lane.store] == 0);
    if missing_real {
        return Err(Error::Precondition("previous plan ships to a store without trailers".into()));
    }

    let z = cot.filler_source();
    for (idx, cell) in cot.cells.iter().enumerate() {
        if cell.kind == (CellKind::Breach { store: k }) {
            let q = big_m.min(need[k]);
            send(&mut flow, &mut left, &mut need, idx, q);
        }
    }
    for (idx, cell) in cot.cells.iter().enumerate() {
        if cell.source == z && matches!(cot.sinks[cell.sink], Sink::Store(_)) {
            let q = need[cell.sink].min(cell.cap).min(left[z]);
            if q > 0 {
                send(&mut flow, &mut left, &mut need, idx, q);
            }
        }
    }
    for (idx, cell) in cot.cells.iter().enumerate() {
        if matches!(cot.sinks[cell.sink], Sink::Labour(_)) {
            let q = need[cell.sink].min(left[cell.source]).min(cell.cap);
            if q > 0 {
                send(&mut flow, &mut left, &mut need, idx, q);
            }
        }
    }
    let e = cot.surplus_sink();
    for (idx, cell) in cot.cells.iter().enumerate() {
        if cell.sink == e {
            let q = left[cell.source].min(need[e]);
            if q > 0 {
                send(&mut flow, &mut left, &mut need, idx, q);
            }
        }
    }
    cot.verify_flow(&flow)?;
    let plan = extract_plan(inst, &cot, &flow)?;
    Ok(FeasibleStart { cot, flow, plan })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{plan_from, t1};
    use crate::model::{Category, Lane};
    use crate::rational::ratio;
    use alloc::string::ToString;

    fn lane_instance(demand: &[u64], cap: u64) -> Instance {
        let mut inst = t1();
        inst.lanes = vec![Lane {
            item: 0,
            store: 0,
            shelf_capacity: Some(cap),
            demand: demand.to_vec(),
            priority: vec![int(1); demand.len()],
        }];
        inst.alpha = vec![int(1), ratio(1, 2), ratio(1, 4)];
        inst
    }

    #[test]
    fn trim_back_to_front() {
        let trimmed = trim_shelf_capacity(&lane_instance(&[5, 4, 3], 10));
        assert_eq!(trimmed.lanes[0].demand, vec![5, 4, 1]);
        let trimmed = trim_shelf_capacity(&lane_instance(&[5, 4, 3], 20));
        assert_eq!(trimmed.lanes[0].demand, vec![5, 4, 3]);
        let trimmed = trim_shelf_capacity(&lane_instance(&[5, 4, 3], 4));
        assert_eq!(trimmed.lanes[0].demand, vec![4, 0, 0]);
    }

    #[test]
    fn trim_follows_profit_when_priority_rises() {
        let mut inst = lane_instance(&[5, 4, 3], 8);
        inst.lanes[0].priority = vec![int(1), int(1), int(8)];
        let trimmed = trim_shelf_capacity(&inst);
        assert_eq!(trimmed.lanes[0].demand, vec![5, 0, 3]);
    }

    #[test]
    fn t1_probe_construction() {
        let cot = build_cot(&t1(), &TrailerAssignment(vec![1]), Variant::Probe).unwrap();
        let z = cot.filler_source();
        let b = cot.breach_source();
        assert_eq!(cot.supplies[z], 5);
        assert_eq!(cot.supplies[b], 8);
        assert_eq!(cot.needs[1], 0);
        assert_eq!(cot.needs[0], 8);
        assert_eq!(cot.needs[cot.surplus_sink()], 15);
        assert_eq!(cot.total, 23);
        assert_eq!(cot.deficit, 0);
        assert_eq!(cot.supplies.iter().sum::<u64>(), cot.needs.iter().sum::<u64>());
    }

    #[test]
    fn t1_final_construction() {
        let cot = build_cot(&t1(), &TrailerAssignment(vec![1]), Variant::Final).unwrap();
        assert_eq!(cot.supplies[cot.breach_source()], 3);
        assert_eq!(cot.needs[cot.surplus_sink()], 10);
        assert_eq!(cot.total, 18);
        let breach_cell = cot
            .cells
            .iter()
            .find(|c| matches!(c.kind, CellKind::Breach { .. }))
            .unwrap();
        assert_eq!(breach_cell.cap, 3);
        assert_eq!(breach_cell.profit, int(-1000));
    }

    #[test]
    fn labour_sink_needs() {
        let mut inst = t1();
        inst.items = vec!["a".into(), "b".into(), "c".into()];
        inst.inventory = vec![7, 5, 4];
        inst.categories = vec![
            Category { id: "l1".to_string(), items: vec![0, 1] },
            Category { id: "l2".to_string(), items: vec![2] },
        ];
        inst.labour_capacity = vec![5, 9];
        let cot = build_cot(&inst, &TrailerAssignment(vec![1]), Variant::Final).unwrap();
        assert_eq!(cot.needs[1], 7);
        assert_eq!(cot.needs[2], 0);
        assert!(cot
            .cells
            .iter()
            .filter(|c| c.sink == 1)
            .all(|c| c.source == 0 || c.source == 1));
    }

    #[test]
    fn trailer_bound_and_empty_assignment() {
        assert!(matches!(
            build_cot(&t1(), &TrailerAssignment(vec![3]), Variant::Final),
            Err(Error::TrailerBound { store: 0, count: 3, max: 2 })
        ));
        assert!(matches!(
            build_cot(&t1(), &TrailerAssignment(vec![0]), Variant::Final),
            Err(Error::EmptyAssignment)
        ));
    }

    #[test]
    fn deficit_extends_breach_supply() {
        let mut inst = t1();
        inst.inventory = vec![0];
        inst.max_trailers = vec![3];
        let cot = build_cot(&inst, &TrailerAssignment(vec![3]), Variant::Probe).unwrap();
        // supplies 0 + 5 + 8 = 13 against a need of 24
        assert_eq!(cot.deficit, 11);
        assert_eq!(cot.supplies[cot.breach_source()], 19);
        assert_eq!(cot.needs[cot.surplus_sink()], 0);
        assert_eq!(cot.supplies.iter().sum::<u64>(), cot.needs.iter().sum::<u64>());
    }

    fn cell_index(cot: &CotInstance, pred: impl Fn(&Cell) -> bool) -> usize {
        cot.cells.iter().position(pred).unwrap()
    }

    #[test]
    fn extract_t1_probe_flow() {
        let inst = t1();
        let cot = build_cot(&inst, &TrailerAssignment(vec![1]), Variant::Probe).unwrap();
        let mut flow = vec![0u64; cot.cells.len()];
        let e = cot.surplus_sink();
        flow[cell_index(&cot, |c| c.kind == CellKind::Real { lane: 0, day: 0 })] = 4;
        flow[cell_index(&cot, |c| c.kind == CellKind::Real { lane: 0, day: 1 })] = 4;
        flow[cell_index(&cot, |c| c.source == cot.filler_source() && c.sink == e)] = 5;
        flow[cell_index(&cot, |c| c.source == cot.breach_source() && c.sink == e)] = 8;
        flow[cell_index(&cot, |c| c.source == 0 && c.sink == e)] = 2;
        let plan = extract_plan(&inst, &cot, &flow).unwrap();
        assert_eq!(plan, plan_from(&inst, &[&[4, 4]], &[0]));
        assert_eq!(cot.profit(&flow), int(6));
    }

    #[test]
    fn extract_breach_flow() {
        let inst = t1();
        let cot = build_cot(&inst, &TrailerAssignment(vec![1]), Variant::Probe).unwrap();
        let mut flow = vec![0u64; cot.cells.len()];
        let e = cot.surplus_sink();
        flow[cell_index(&cot, |c| c.kind == CellKind::Real { lane: 0, day: 0 })] = 4;
        flow[cell_index(&cot, |c| c.kind == CellKind::Real { lane: 0, day: 1 })] = 3;
        flow[cell_index(&cot, |c| c.kind == CellKind::Breach { store: 0 })] = 1;
        flow[cell_index(&cot, |c| c.source == cot.filler_source() && c.sink == e)] = 5;
        flow[cell_index(&cot, |c| c.source == cot.breach_source() && c.sink == e)] = 7;
        flow[cell_index(&cot, |c| c.source == 0 && c.sink == e)] = 3;
        let plan = extract_plan(&inst, &cot, &flow).unwrap();
        assert_eq!(plan.breach, vec![int(1)]);
    }

    #[test]
    fn extract_zero_real_flow() {
        let inst = t1();
        let cot = build_cot(&inst, &TrailerAssignment(vec![1]), Variant::Probe).unwrap();
        let mut flow = vec![0u64; cot.cells.len()];
        let e = cot.surplus_sink();
        flow[cell_index(&cot, |c| c.source == cot.filler_source() && c.sink == 0)] = 5;
        flow[cell_index(&cot, |c| c.kind == CellKind::Breach { store: 0 })] = 3;
        flow[cell_index(&cot, |c| c.source == cot.breach_source() && c.sink == e)] = 5;
        flow[cell_index(&cot, |c| c.source == 0 && c.sink == e)] = 10;
        let plan = extract_plan(&inst, &cot, &flow).unwrap();
        assert!(plan.alloc[0].iter().all(|d| d.is_zero()));
        assert_eq!(plan.breach, vec![int(3)]);
    }

    #[test]
    fn extract_rejects_unbalanced_flow() {
        let inst = t1();
        let cot = build_cot(&inst, &TrailerAssignment(vec![1]), Variant::Probe).unwrap();
        let flow = vec![0u64; cot.cells.len()];
        assert!(matches!(extract_plan(&inst, &cot, &flow), Err(Error::Unbalanced(_))));
    }

    #[test]
    fn feasible_start_from_empty() {
        let inst = t1();
        let empty = AllocationPlan::empty(&inst);
        let start = feasible_start(&inst, &empty, &TrailerAssignment(vec![1]), 0).unwrap();
        assert_eq!(start.plan.breach, vec![int(8)]);
        assert!(start.plan.alloc[0].iter().all(|d| d.is_zero()));
        start.cot.verify_flow(&start.flow).unwrap();
    }

    #[test]
    fn feasible_start_second_trailer() {
        let inst = t1();
        let prev = plan_from(&inst, &[&[4, 4]], &[0]);
        let start = feasible_start(&inst, &prev, &TrailerAssignment(vec![2]), 0).unwrap();
        assert_eq!(start.plan.breach, vec![int(8)]);
        assert_eq!(start.plan.alloc[0], vec![int(4), int(4)]);
    }

    #[test]
    fn feasible_start_rejects_light_previous_plan() {
        let inst = t1();
        let prev = plan_from(&inst, &[&[2, 0]], &[0]);
        let mut x = TrailerAssignment(vec![2]);
        assert!(matches!(
            feasible_start(&inst, &prev, &x, 0),
            Err(Error::Precondition(_))
        ));
        x.0[0] = 1;
        // previous assignment is empty: shipping anything violates it
        assert!(feasible_start(&inst, &prev, &x, 0).is_err());
    }
}
