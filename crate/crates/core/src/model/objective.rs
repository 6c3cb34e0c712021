use num_traits::Zero;

use super::{AllocationPlan, Instance, TrailerAssignment};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Discounted allocation utility `sum alpha[t] * q * d` of a plan.
pub fn allocation_utility(inst: &Instance, plan: &AllocationPlan) -> Result<Rational> {
    plan.check_dimensions(inst)?;
    let mut total = Rational::zero();
    for (idx, row) in plan.alloc.iter().enumerate() {
        for (t, d) in row.iter().enumerate() {
            if !d.is_zero() {
                total += inst.profit(idx, t) * d;
            }
        }
    }
    Ok(total)
}

/// Allocation utility minus the breach penalty: the part of the utility that
/// the value oracles compute for a fixed trailer assignment.
pub fn g_part(inst: &Instance, plan: &AllocationPlan) -> Result<Rational> {
    let breach: Rational = plan.breach.iter().copied().sum();
    Ok(allocation_utility(inst, plan)? - inst.gamma * breach)
}

/// Full utility: allocation utility plus store priority reward minus breach
/// penalty.
pub fn evaluate_objective(
    inst: &Instance,
    x: &TrailerAssignment,
    plan: &AllocationPlan,
) -> Result<Rational> {
    if x.len() != inst.stores.len() {
        return Err(Error::DimensionMismatch {
            what: "trailer assignment",
            expected: inst.stores.len(),
            found: x.len(),
        });
    }
    let priority: i128 = x
        .0
        .iter()
        .zip(&inst.store_priority)
        .map(|(&x, &p)| x as i128 * p as i128)
        .sum();
    Ok(g_part(inst, plan)? + inst.beta * int(priority))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::fixtures::{plan_from, t1, t2};
    use crate::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn t1_optimal_plan() {
        let inst = t1();
        let plan = plan_from(&inst, &[&[4, 4]], &[0]);
        let x = TrailerAssignment(vec![1]);
        assert_eq!(evaluate_objective(&inst, &x, &plan).unwrap(), int(106));
    }

    #[test]
    fn t1_empty_plan_is_zero() {
        let inst = t1();
        let plan = AllocationPlan::empty(&inst);
        let x = TrailerAssignment(vec![0]);
        assert_eq!(evaluate_objective(&inst, &x, &plan).unwrap(), int(0));
    }

    #[test]
    fn t2_breach_is_penalised() {
        let inst = t2();
        let plan = plan_from(&inst, &[&[2, 0]], &[1]);
        let x = TrailerAssignment(vec![1]);
        assert_eq!(evaluate_objective(&inst, &x, &plan).unwrap(), int(-898));
    }

    #[test]
    fn dimension_mismatch() {
        let inst = t1();
        let plan = AllocationPlan::empty(&inst);
        let x = TrailerAssignment(vec![0, 0]);
        assert!(matches!(
            evaluate_objective(&inst, &x, &plan),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut bad = plan.clone();
        bad.alloc[0].pop();
        assert!(evaluate_objective(&inst, &TrailerAssignment(vec![0]), &bad).is_err());
    }

    proptest! {
        #[test]
        fn objective_is_linear_in_plan(d0 in 0i128..20, d1 in 0i128..20, b in 0i128..4,
                                       x in 0u64..3, num in 1i128..7, den in 1i128..5) {
            let inst = t1();
            let lambda = ratio(num, den);
            let plan = AllocationPlan { alloc: vec![vec![int(d0), int(d1)]], breach: vec![int(b)] };
            let scaled = AllocationPlan {
                alloc: vec![vec![int(d0) * lambda, int(d1) * lambda]],
                breach: vec![int(b) * lambda],
            };
            let x = TrailerAssignment(vec![x]);
            let h = inst.beta * int(x.0[0] as i128);
            let base = evaluate_objective(&inst, &x, &plan).unwrap();
            let s = evaluate_objective(&inst, &x, &scaled).unwrap();
            prop_assert_eq!(s - h, (base - h) * lambda);
            prop_assert_eq!(base, g_part(&inst, &plan).unwrap() + h);
        }
    }
}
