use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Rational;

/// A labour category and the items that consume its handling capacity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Category {
    pub id: String,
    pub items: Vec<usize>,
}

/// Demand of one item at one store over its planning periods.
///
/// Period `0` is the coverage period; periods `1..=horizon` are pull-forward
/// days. `demand` and `priority` always have `horizon + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lane {
    pub item: usize,
    pub store: usize,
    /// Shelf space for the item at the store; `None` means unconstrained.
    pub shelf_capacity: Option<u64>,
    pub demand: Vec<u64>,
    pub priority: Vec<Rational>,
}

impl Lane {
    pub fn new(item: usize, store: usize, demand: Vec<u64>, priority: Vec<Rational>) -> Self {
        Self {
            item,
            store,
            shelf_capacity: None,
            demand,
            priority,
        }
    }

    pub fn horizon(&self) -> usize {
        self.demand.len().saturating_sub(1)
    }

    pub fn total_demand(&self) -> u64 {
        self.demand.iter().sum()
    }
}

/// Full planning data for one replenishment cycle.
///
/// Items, stores and categories are addressed by position; the string ids are
/// kept for file formats and reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub items: Vec<String>,
    pub stores: Vec<String>,
    pub categories: Vec<Category>,
    /// Warehouse labour per category, in whpacks.
    pub labour_capacity: Vec<u64>,
    /// Warehouse stock per item, in whpacks.
    pub inventory: Vec<u64>,
    pub trailer_max: u64,
    pub trailer_min: u64,
    pub max_trailers: Vec<u64>,
    pub store_priority: Vec<u64>,
    pub lanes: Vec<Lane>,
    /// Discount per period, strictly decreasing.
    pub alpha: Vec<Rational>,
    pub beta: Rational,
    pub gamma: Rational,
}

impl Instance {
    pub fn num_items(&self) -> usize {
        self.items.len()
    }

    pub fn num_stores(&self) -> usize {
        self.stores.len()
    }

    /// Longest lane horizon (in pull-forward days).
    pub fn max_horizon(&self) -> usize {
        self.lanes.iter().map(Lane::horizon).max().unwrap_or(0)
    }

    /// Unit utility of allocating lane `lane` on day `day`.
    pub fn profit(&self, lane: usize, day: usize) -> Rational {
        self.alpha[day] * self.lanes[lane].priority[day]
    }

    /// Category index per item; `None` for items outside every category.
    pub fn item_categories(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.items.len()];
        for (l, cat) in self.categories.iter().enumerate() {
            for &i in &cat.items {
                if i < out.len() {
                    out[i] = Some(l);
                }
            }
        }
        out
    }

    /// Total stock held by the items of each category.
    pub fn category_inventory(&self) -> Vec<u64> {
        self.categories
            .iter()
            .map(|c| c.items.iter().map(|&i| self.inventory[i]).sum())
            .collect()
    }

    /// Lane indices grouped by store.
    pub fn lanes_by_store(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.stores.len()];
        for (idx, lane) in self.lanes.iter().enumerate() {
            out[lane.store].push(idx);
        }
        out
    }
}

/// Number of trailers dispatched to each store.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrailerAssignment(pub Vec<u64>);

impl TrailerAssignment {
    pub fn zeros(stores: usize) -> Self {
        Self(vec![0; stores])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, store: usize) -> u64 {
        self.0[store]
    }

    /// Whether any trailer is dispatched to `store`.
    pub fn dispatched(&self, store: usize) -> u64 {
        self.0[store].min(1)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Copy with one more trailer at `store`.
    pub fn incremented(&self, store: usize) -> Self {
        let mut next = self.clone();
        next.0[store] += 1;
        next
    }

    /// Componentwise `self <= other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Lowest load a store must carry before breach slack.
    pub fn min_load(&self, store: usize, trailer_max: u64, trailer_min: u64) -> u64 {
        let x = self.0[store];
        let y = self.dispatched(store);
        trailer_max * (x - y) + trailer_min * y
    }
}

/// Item allocations and breach slacks for a fixed trailer assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AllocationPlan {
    /// Allocation per lane and period, aligned with [`Instance::lanes`].
    pub alloc: Vec<Vec<Rational>>,
    /// Min-capacity breach per store.
    pub breach: Vec<Rational>,
}

impl AllocationPlan {
    pub fn empty(inst: &Instance) -> Self {
        Self {
            alloc: inst
                .lanes
                .iter()
                .map(|l| vec![Rational::zero(); l.demand.len()])
                .collect(),
            breach: vec![Rational::zero(); inst.stores.len()],
        }
    }

    /// Total allocation of one lane over all periods.
    pub fn lane_total(&self, lane: usize) -> Rational {
        self.alloc[lane].iter().copied().sum()
    }

    /// Total allocation per store.
    pub fn store_totals(&self, inst: &Instance) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); inst.stores.len()];
        for (idx, lane) in inst.lanes.iter().enumerate() {
            out[lane.store] += self.lane_total(idx);
        }
        out
    }

    /// Total allocation per item.
    pub fn item_totals(&self, inst: &Instance) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); inst.items.len()];
        for (idx, lane) in inst.lanes.iter().enumerate() {
            out[lane.item] += self.lane_total(idx);
        }
        out
    }

    pub fn check_dimensions(&self, inst: &Instance) -> crate::Result<()> {
        if self.alloc.len() != inst.lanes.len() {
            return Err(crate::Error::DimensionMismatch {
                what: "plan lanes",
                expected: inst.lanes.len(),
                found: self.alloc.len(),
            });
        }
        for (row, lane) in self.alloc.iter().zip(&inst.lanes) {
            if row.len() != lane.demand.len() {
                return Err(crate::Error::DimensionMismatch {
                    what: "plan periods",
                    expected: lane.demand.len(),
                    found: row.len(),
                });
            }
        }
        if self.breach.len() != inst.stores.len() {
            return Err(crate::Error::DimensionMismatch {
                what: "plan breach",
                expected: inst.stores.len(),
                found: self.breach.len(),
            });
        }
        Ok(())
    }
}
