use alloc::vec::Vec;

use num_traits::Zero;

use super::{AllocationPlan, Instance, TrailerAssignment};
use crate::rational::{is_integer, to_f64, Rational};

/// Utilisation and pull-forward statistics of a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanMetrics {
    /// Processed quantity over labour capacity, per category.
    pub labour_utilization: Vec<f64>,
    /// Processed quantity over total labour capacity.
    pub overall_labour_utilization: f64,
    /// Shipped quantity over dispatched trailer capacity; 0 without trailers.
    pub trailer_utilization: f64,
    pub total_allocation: f64,
    pub trailer_count: u64,
    /// Stores dispatched below the trailer minimum.
    pub ltmc_breach_count: usize,
    pub total_breach: f64,
    /// Share of nonzero allocations that are whole whpacks.
    pub integrality_fraction: f64,
    /// Mean over pulled-forward lanes of the last period with allocation.
    pub mean_pf_dos: Option<f64>,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Days of supply of a lane: the last period with positive allocation.
pub fn lane_dos(alloc: &[Rational]) -> Option<usize> {
    alloc.iter().rposition(|d| *d > Rational::zero())
}

pub fn compute_metrics(inst: &Instance, x: &TrailerAssignment, plan: &AllocationPlan) -> PlanMetrics {
    let per_item: Vec<f64> = plan.item_totals(inst).iter().map(to_f64).collect();
    let labour_utilization: Vec<f64> = inst
        .categories
        .iter()
        .zip(&inst.labour_capacity)
        .map(|(cat, &cap)| {
            let used: f64 = cat.items.iter().map(|&i| per_item[i]).sum();
            ratio(used, cap as f64)
        })
        .collect();
    let total_allocation: f64 = per_item.iter().sum();
    let total_labour: u64 = inst.labour_capacity.iter().sum();
    let trailer_count = x.total();

    let mut nonzero = 0usize;
    let mut integral = 0usize;
    let mut dos_sum = 0usize;
    let mut dos_lanes = 0usize;
    for row in &plan.alloc {
        for d in row {
            if !d.is_zero() {
                nonzero += 1;
                if is_integer(d) {
                    integral += 1;
                }
            }
        }
        let pulled: Rational = row.iter().skip(1).copied().sum();
        if pulled > Rational::zero() {
            if let Some(dos) = lane_dos(row) {
                dos_sum += dos;
                dos_lanes += 1;
            }
        }
    }

    PlanMetrics {
        labour_utilization,
        overall_labour_utilization: ratio(total_allocation, total_labour as f64),
        trailer_utilization: ratio(total_allocation, (inst.trailer_max * trailer_count) as f64),
        total_allocation,
        trailer_count,
        ltmc_breach_count: plan.breach.iter().filter(|b| **b > Rational::zero()).count(),
        total_breach: plan.breach.iter().map(to_f64).sum(),
        integrality_fraction: if nonzero == 0 {
            1.0
        } else {
            integral as f64 / nonzero as f64
        },
        mean_pf_dos: (dos_lanes > 0).then(|| dos_sum as f64 / dos_lanes as f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::fixtures::{plan_from, t1};
    use crate::rational::ratio as r;

    #[test]
    fn t1_optimal_plan_metrics() {
        let inst = t1();
        let plan = plan_from(&inst, &[&[4, 4]], &[0]);
        let m = compute_metrics(&inst, &TrailerAssignment(vec![1]), &plan);
        assert_eq!(m.labour_utilization, vec![0.08]);
        assert_eq!(m.trailer_utilization, 1.0);
        assert_eq!(m.total_allocation, 8.0);
        assert_eq!(m.trailer_count, 1);
        assert_eq!(m.integrality_fraction, 1.0);
        assert_eq!(m.mean_pf_dos, Some(1.0));
    }

    #[test]
    fn empty_plan_metrics() {
        let inst = t1();
        let plan = AllocationPlan::empty(&inst);
        let m = compute_metrics(&inst, &TrailerAssignment(vec![0]), &plan);
        assert_eq!(m.labour_utilization, vec![0.0]);
        assert_eq!(m.trailer_utilization, 0.0);
        assert_eq!(m.mean_pf_dos, None);
        assert_eq!(m.ltmc_breach_count, 0);
    }

    #[test]
    fn dos_is_last_allocated_period() {
        let inst = t1();
        let plan = plan_from(&inst, &[&[4, 3]], &[0]);
        let m = compute_metrics(&inst, &TrailerAssignment(vec![1]), &plan);
        assert_eq!(m.mean_pf_dos, Some(1.0));
        assert_eq!(lane_dos(&[r(0, 1), r(0, 1)]), None);
        assert_eq!(lane_dos(&[r(1, 1), r(0, 1), r(1, 2)]), Some(2));
    }

    #[test]
    fn fractional_allocations_lower_integrality() {
        let inst = t1();
        let mut plan = AllocationPlan::empty(&inst);
        plan.alloc[0] = vec![r(4, 1), r(1, 2)];
        let m = compute_metrics(&inst, &TrailerAssignment(vec![1]), &plan);
        assert_eq!(m.integrality_fraction, 0.5);
    }
}
