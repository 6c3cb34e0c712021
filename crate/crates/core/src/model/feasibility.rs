use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{AllocationPlan, Instance, TrailerAssignment};
use crate::error::Result;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Inventory,
    Labour,
    PlannedTrailers,
    MaxCapacity,
    MinCapacity,
    Shelf,
    DemandUpper,
    DemandLower,
    BreachUpper,
    BreachLower,
}

/// A constraint that the plan breaks: `lhs` should satisfy the relation
/// against `rhs` but does not; `index` identifies the item, category, store or
/// lane (and period for demand bounds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintViolation {
    pub kind: ConstraintKind,
    pub index: usize,
    pub period: Option<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ConstraintViolation {
    /// How far the constraint is broken (always positive).
    pub fn excess(&self) -> Rational {
        (self.lhs - self.rhs).abs()
    }
}

fn push_le(
    out: &mut Vec<ConstraintViolation>,
    kind: ConstraintKind,
    index: usize,
    period: Option<usize>,
    lhs: Rational,
    rhs: Rational,
) {
    if lhs > rhs {
        out.push(ConstraintViolation { kind, index, period, lhs, rhs });
    }
}

fn push_ge(
    out: &mut Vec<ConstraintViolation>,
    kind: ConstraintKind,
    index: usize,
    period: Option<usize>,
    lhs: Rational,
    rhs: Rational,
) {
    if lhs < rhs {
        out.push(ConstraintViolation { kind, index, period, lhs, rhs });
    }
}

/// Lists every operational constraint the plan breaks for the given trailer
/// assignment. An empty list means the plan is feasible.
pub fn check_feasibility(
    inst: &Instance,
    x: &TrailerAssignment,
    plan: &AllocationPlan,
) -> Result<Vec<ConstraintViolation>> {
    plan.check_dimensions(inst)?;
    if x.len() != inst.stores.len() {
        return Err(crate::Error::DimensionMismatch {
            what: "trailer assignment",
            expected: inst.stores.len(),
            found: x.len(),
        });
    }
    let mut out = Vec::new();
    let big_m = inst.trailer_max as i128;
    let small_m = inst.trailer_min as i128;

    let per_item = plan.item_totals(inst);
    for (i, s) in per_item.iter().enumerate() {
        push_le(&mut out, ConstraintKind::Inventory, i, None, *s, int(inst.inventory[i] as i128));
    }

    for (l, cat) in inst.categories.iter().enumerate() {
        let used: Rational = cat.items.iter().map(|&i| per_item[i]).sum();
        push_le(&mut out, ConstraintKind::Labour, l, None, used, int(inst.labour_capacity[l] as i128));
    }

    let per_store = plan.store_totals(inst);
    for j in 0..inst.stores.len() {
        let xj = x.get(j) as i128;
        let yj = x.dispatched(j) as i128;
        push_le(&mut out, ConstraintKind::PlannedTrailers, j, None, int(xj), int(inst.max_trailers[j] as i128));
        push_le(&mut out, ConstraintKind::MaxCapacity, j, None, per_store[j], int(big_m * xj));
        let floor = int(big_m * (xj - yj) + small_m * yj) - plan.breach[j];
        push_ge(&mut out, ConstraintKind::MinCapacity, j, None, per_store[j], floor);
        push_le(&mut out, ConstraintKind::BreachUpper, j, None, plan.breach[j], int(small_m));
        push_ge(&mut out, ConstraintKind::BreachLower, j, None, plan.breach[j], Rational::zero());
    }

    for (idx, lane) in inst.lanes.iter().enumerate() {
        if let Some(cap) = lane.shelf_capacity {
            push_le(&mut out, ConstraintKind::Shelf, idx, None, plan.lane_total(idx), int(cap as i128));
        }
        for (t, d) in plan.alloc[idx].iter().enumerate() {
            push_le(&mut out, ConstraintKind::DemandUpper, idx, Some(t), *d, int(lane.demand[t] as i128));
            push_ge(&mut out, ConstraintKind::DemandLower, idx, Some(t), *d, Rational::zero());
        }
    }
    Ok(out)
}
