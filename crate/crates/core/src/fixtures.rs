//! Hand-sized reference instances used in documentation and tests.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{AllocationPlan, Category, Instance, Lane};
use crate::rational::{int, ratio};

/// One item, one store, two periods with demand `(4, 4)`, ten units in stock,
/// trailers of 8 with minimum 3, up to two trailers.
pub fn t1() -> Instance {
    Instance {
        items: vec!["i1".to_string()],
        stores: vec!["j1".to_string()],
        categories: vec![Category {
            id: "l1".to_string(),
            items: vec![0],
        }],
        labour_capacity: vec![100],
        inventory: vec![10],
        trailer_max: 8,
        trailer_min: 3,
        max_trailers: vec![2],
        store_priority: vec![1],
        lanes: vec![Lane::new(0, 0, vec![4, 4], vec![int(1), int(1)])],
        alpha: vec![int(1), ratio(1, 2)],
        beta: int(100),
        gamma: int(1000),
    }
}

/// [`t1`] with demand `(2, 0)`: a single trailer cannot reach its minimum.
pub fn t2() -> Instance {
    let mut inst = t1();
    inst.lanes[0].demand = vec![2, 0];
    inst
}

/// Builds an integral plan from per-lane allocations and per-store breach.
pub fn plan_from(inst: &Instance, alloc: &[&[u64]], breach: &[u64]) -> AllocationPlan {
    let mut plan = AllocationPlan::empty(inst);
    for (row, values) in plan.alloc.iter_mut().zip(alloc) {
        for (slot, &v) in row.iter_mut().zip(values.iter()) {
            *slot = int(v as i128);
        }
    }
    plan.breach = breach.iter().map(|&b| int(b as i128)).collect::<Vec<_>>();
    plan
}
