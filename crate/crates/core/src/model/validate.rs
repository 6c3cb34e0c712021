use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::Instance;

/// One broken instance invariant, located by a field path such as
/// `lanes[3].priority[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Outcome of [`validate_instance`].
///
/// `warnings` hold conditions outside the usual parameter regime that do not
/// make the instance invalid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            path: path.into(),
            message: message.into(),
        });
    }

    fn warn(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.warnings.push(Violation {
            path: path.into(),
            message: message.into(),
        });
    }
}

pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n_items = inst.items.len();
    let n_stores = inst.stores.len();

    let sized = [
        ("labour_capacity", inst.labour_capacity.len(), inst.categories.len()),
        ("inventory", inst.inventory.len(), n_items),
        ("max_trailers", inst.max_trailers.len(), n_stores),
        ("store_priority", inst.store_priority.len(), n_stores),
    ];
    for (field, found, expected) in sized {
        if found != expected {
            report.error(field, format!("has {found} entries, expected {expected}"));
        }
    }

    let mut owner = vec![None; n_items];
    for (l, cat) in inst.categories.iter().enumerate() {
        for (pos, &i) in cat.items.iter().enumerate() {
            let path = format!("categories[{l}].items[{pos}]");
            if i >= n_items {
                report.error(path, format!("item index {i} out of range"));
                continue;
            }
            match owner[i] {
                Some(prev) => report.error(
                    path,
                    format!("item `{}` already belongs to category {prev}", inst.items[i]),
                ),
                None => owner[i] = Some(l),
            }
        }
    }
    for (i, o) in owner.iter().enumerate() {
        if o.is_none() {
            report.error(
                format!("items[{i}]"),
                format!("item `{}` belongs to no category", inst.items[i]),
            );
        }
    }

    if inst.trailer_max == 0 {
        report.error("trailer_max", "trailer_max must be positive");
    }
    if inst.trailer_min > inst.trailer_max {
        report.error(
            "trailer_min",
            format!(
                "trailer_min exceeds trailer_max ({} > {})",
                inst.trailer_min, inst.trailer_max
            ),
        );
    }
    for (j, &p) in inst.store_priority.iter().enumerate() {
        if p == 0 {
            report.error(format!("store_priority[{j}]"), "store priority must be positive");
        }
    }

    let mut seen = BTreeSet::new();
    for (idx, lane) in inst.lanes.iter().enumerate() {
        let path = format!("lanes[{idx}]");
        if lane.item >= n_items {
            report.error(format!("{path}.item"), format!("item index {} out of range", lane.item));
        }
        if lane.store >= n_stores {
            report.error(
                format!("{path}.store"),
                format!("store index {} out of range", lane.store),
            );
        }
        if !seen.insert((lane.item, lane.store)) {
            report.error(path.clone(), "duplicate (item, store) lane");
        }
        if lane.demand.is_empty() {
            report.error(format!("{path}.demand"), "lane has no periods");
        }
        if lane.priority.len() != lane.demand.len() {
            report.error(
                format!("{path}.priority"),
                format!(
                    "has {} periods but demand has {}",
                    lane.priority.len(),
                    lane.demand.len()
                ),
            );
        }
        for (t, q) in lane.priority.iter().enumerate() {
            if q.is_negative() {
                report.error(format!("{path}.priority[{t}]"), "priority must be non-negative");
            }
        }
        if lane.demand.len() > inst.alpha.len() {
            report.error(
                format!("{path}.demand"),
                format!(
                    "horizon {} exceeds the discount schedule of length {}",
                    lane.horizon(),
                    inst.alpha.len()
                ),
            );
        }
    }

    if inst.alpha.is_empty() {
        report.error("alpha", "discount schedule is empty");
    }
    for (t, a) in inst.alpha.iter().enumerate() {
        if !a.is_positive() {
            report.error(format!("alpha[{t}]"), "discount must be positive");
        }
        if t > 0 && *a >= inst.alpha[t - 1] {
            report.error(
                format!("alpha[{t}]"),
                "alpha is not strictly decreasing",
            );
        }
    }
    if !inst.beta.is_positive() {
        report.error("beta", "beta must be positive");
    }
    if inst.gamma.is_negative() {
        report.error("gamma", "gamma must be non-negative");
    } else if !inst.gamma.is_zero() && inst.gamma <= inst.beta {
        report.warn("gamma", "gamma <= beta: breach penalty below the usual regime");
    }
    report
}
