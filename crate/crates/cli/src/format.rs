//! JSON file formats for instances, plans and transport dumps.
//!
//! Entities are referenced by their string ids. Demand, shelf space and item
//! priorities are stored sparsely; a lane exists for every `horizon` entry.

use std::collections::HashMap;

use num_traits::Zero;
use replen_core::model::{AllocationPlan, Category, Instance, Lane, TrailerAssignment};
use replen_core::rational::serde_rational;
use replen_core::reduction::{CellKind, CotInstance, Sink, Source};
use replen_core::Rational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryEntry {
    pub id: String,
    pub items: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairQty {
    pub item: String,
    pub store: String,
    pub qty: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDays {
    pub item: String,
    pub store: String,
    pub days: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellQty {
    pub item: String,
    pub store: String,
    pub day: usize,
    pub qty: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellValue {
    pub item: String,
    pub store: String,
    pub day: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Instance document. Per-item, per-store and per-category lists follow the
/// order of `items`, `stores` and `categories`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub items: Vec<String>,
    pub stores: Vec<String>,
    pub categories: Vec<CategoryEntry>,
    pub labour_capacity: Vec<u64>,
    pub inventory: Vec<u64>,
    pub trailer_max: u64,
    pub trailer_min: u64,
    pub max_trailers: Vec<u64>,
    #[serde(default)]
    pub shelf_capacity: Vec<PairQty>,
    pub horizon: Vec<PairDays>,
    #[serde(default)]
    pub demand: Vec<CellQty>,
    pub store_priority: Vec<u64>,
    #[serde(default)]
    pub item_store_priority: Vec<CellValue>,
    #[serde(with = "serde_rational::vec")]
    pub alpha: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
}

fn index_of(ids: &[String], what: &str) -> Result<HashMap<String, usize>, CliError> {
    let mut map = HashMap::with_capacity(ids.len());
    for (k, id) in ids.iter().enumerate() {
        if map.insert(id.clone(), k).is_some() {
            return Err(CliError::Invalid(format!("duplicate {what} id `{id}`")));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<String, usize>, id: &str, what: &str) -> Result<usize, CliError> {
    map.get(id)
        .copied()
        .ok_or_else(|| CliError::Invalid(format!("unknown {what} id `{id}`")))
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let item = |i: usize| inst.items[i].clone();
        let store = |j: usize| inst.stores[j].clone();
        let mut shelf_capacity = Vec::new();
        let mut horizon = Vec::new();
        let mut demand = Vec::new();
        let mut item_store_priority = Vec::new();
        for lane in &inst.lanes {
            horizon.push(PairDays {
                item: item(lane.item),
                store: store(lane.store),
                days: lane.horizon(),
            });
            if let Some(c) = lane.shelf_capacity {
                shelf_capacity.push(PairQty {
                    item: item(lane.item),
                    store: store(lane.store),
                    qty: c,
                });
            }
            for (t, (&d, q)) in lane.demand.iter().zip(&lane.priority).enumerate() {
                if d > 0 {
                    demand.push(CellQty {
                        item: item(lane.item),
                        store: store(lane.store),
                        day: t,
                        qty: d,
                    });
                }
                if !q.is_zero() {
                    item_store_priority.push(CellValue {
                        item: item(lane.item),
                        store: store(lane.store),
                        day: t,
                        value: *q,
                    });
                }
            }
        }
        Self {
            items: inst.items.clone(),
            stores: inst.stores.clone(),
            categories: inst
                .categories
                .iter()
                .map(|c| CategoryEntry {
                    id: c.id.clone(),
                    items: c.items.iter().map(|&i| item(i)).collect(),
                })
                .collect(),
            labour_capacity: inst.labour_capacity.clone(),
            inventory: inst.inventory.clone(),
            trailer_max: inst.trailer_max,
            trailer_min: inst.trailer_min,
            max_trailers: inst.max_trailers.clone(),
            shelf_capacity,
            horizon,
            demand,
            store_priority: inst.store_priority.clone(),
            item_store_priority,
            alpha: inst.alpha.clone(),
            beta: inst.beta,
            gamma: inst.gamma,
        }
    }

    pub fn to_instance(&self) -> Result<Instance, CliError> {
        let items = index_of(&self.items, "item")?;
        let stores = index_of(&self.stores, "store")?;
        let mut lane_of: HashMap<(usize, usize), usize> = HashMap::new();
        let mut lanes = Vec::with_capacity(self.horizon.len());
        for h in &self.horizon {
            let key = (lookup(&items, &h.item, "item")?, lookup(&stores, &h.store, "store")?);
            if lane_of.insert(key, lanes.len()).is_some() {
                return Err(CliError::Invalid(format!("duplicate horizon for ({}, {})", h.item, h.store)));
            }
            lanes.push(Lane::new(key.0, key.1, vec![0; h.days + 1], vec![Rational::zero(); h.days + 1]));
        }
        let lane_at = |item: &str, store: &str| -> Result<usize, CliError> {
            let key = (lookup(&items, item, "item")?, lookup(&stores, store, "store")?);
            lane_of
                .get(&key)
                .copied()
                .ok_or_else(|| CliError::Invalid(format!("({item}, {store}) has no horizon entry")))
        };
        let day_check = |lane: &Lane, day: usize, item: &str, store: &str| {
            if day > lane.horizon() {
                Err(CliError::Invalid(format!("day {day} beyond horizon of ({item}, {store})")))
            } else {
                Ok(())
            }
        };
        for c in &self.shelf_capacity {
            let l = lane_at(&c.item, &c.store)?;
            lanes[l].shelf_capacity = Some(c.qty);
        }
        for d in &self.demand {
            let l = lane_at(&d.item, &d.store)?;
            day_check(&lanes[l], d.day, &d.item, &d.store)?;
            lanes[l].demand[d.day] = d.qty;
        }
        for q in &self.item_store_priority {
            let l = lane_at(&q.item, &q.store)?;
            day_check(&lanes[l], q.day, &q.item, &q.store)?;
            lanes[l].priority[q.day] = q.value;
        }
        let categories = self
            .categories
            .iter()
            .map(|c| {
                Ok(Category {
                    id: c.id.clone(),
                    items: c
                        .items
                        .iter()
                        .map(|i| lookup(&items, i, "item"))
                        .collect::<Result<_, CliError>>()?,
                })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(Instance {
            items: self.items.clone(),
            stores: self.stores.clone(),
            categories,
            labour_capacity: self.labour_capacity.clone(),
            inventory: self.inventory.clone(),
            trailer_max: self.trailer_max,
            trailer_min: self.trailer_min,
            max_trailers: self.max_trailers.clone(),
            store_priority: self.store_priority.clone(),
            lanes,
            alpha: self.alpha.clone(),
            beta: self.beta,
            gamma: self.gamma,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationEntry {
    pub item: String,
    pub store: String,
    pub day: usize,
    #[serde(with = "serde_rational")]
    pub qty: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrailerEntry {
    pub store: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreachEntry {
    pub store: String,
    #[serde(with = "serde_rational")]
    pub qty: Rational,
}

/// Plan document: nonzero allocations and breaches, every store's trailers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanFile {
    pub allocations: Vec<AllocationEntry>,
    pub trailers: Vec<TrailerEntry>,
    pub breach: Vec<BreachEntry>,
    #[serde(with = "serde_rational")]
    pub objective: Rational,
}

impl PlanFile {
    pub fn new(inst: &Instance, x: &TrailerAssignment, plan: &AllocationPlan, objective: Rational) -> Self {
        let mut allocations = Vec::new();
        for (lane, alloc) in inst.lanes.iter().zip(&plan.alloc) {
            for (t, q) in alloc.iter().enumerate() {
                if !q.is_zero() {
                    allocations.push(AllocationEntry {
                        item: inst.items[lane.item].clone(),
                        store: inst.stores[lane.store].clone(),
                        day: t,
                        qty: *q,
                    });
                }
            }
        }
        Self {
            allocations,
            trailers: x
                .0
                .iter()
                .enumerate()
                .map(|(j, &count)| TrailerEntry {
                    store: inst.stores[j].clone(),
                    count,
                })
                .collect(),
            breach: plan
                .breach
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .map(|(j, b)| BreachEntry {
                    store: inst.stores[j].clone(),
                    qty: *b,
                })
                .collect(),
            objective,
        }
    }

    /// Rebuilds the trailer vector and plan against `inst`.
    pub fn decode(&self, inst: &Instance) -> Result<(TrailerAssignment, AllocationPlan), CliError> {
        let items = index_of(&inst.items, "item")?;
        let stores = index_of(&inst.stores, "store")?;
        let lanes: HashMap<(usize, usize), usize> =
            inst.lanes.iter().enumerate().map(|(k, l)| ((l.item, l.store), k)).collect();
        let mut x = TrailerAssignment::zeros(inst.stores.len());
        for t in &self.trailers {
            x.0[lookup(&stores, &t.store, "store")?] = t.count;
        }
        let mut plan = AllocationPlan::empty(inst);
        for a in &self.allocations {
            let key = (lookup(&items, &a.item, "item")?, lookup(&stores, &a.store, "store")?);
            let l = *lanes
                .get(&key)
                .ok_or_else(|| CliError::Invalid(format!("allocation to unknown lane ({}, {})", a.item, a.store)))?;
            let cell = plan.alloc[l]
                .get_mut(a.day)
                .ok_or_else(|| CliError::Invalid(format!("allocation day {} beyond horizon", a.day)))?;
            *cell = a.qty;
        }
        for b in &self.breach {
            plan.breach[lookup(&stores, &b.store, "store")?] = b.qty;
        }
        Ok((x, plan))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CotNode {
    pub name: String,
    pub amount: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CotCell {
    pub source: String,
    pub sink: String,
    pub day: usize,
    pub cap: u64,
    #[serde(with = "serde_rational")]
    pub profit: Rational,
    pub kind: &'static str,
}

/// Debug view of a transport instance.
#[derive(Debug, Clone, Serialize)]
pub struct CotDump {
    pub variant: String,
    pub total: u64,
    pub deficit: u64,
    pub sources: Vec<CotNode>,
    pub sinks: Vec<CotNode>,
    pub cells: Vec<CotCell>,
}

impl CotDump {
    pub fn new(inst: &Instance, cot: &CotInstance) -> Self {
        let source_name = |s: &Source| match s {
            Source::Item(i) => inst.items[*i].clone(),
            Source::Breach => "b".to_string(),
            Source::Filler => "z".to_string(),
        };
        let sink_name = |s: &Sink| match s {
            Sink::Store(j) => inst.stores[*j].clone(),
            Sink::Labour(l) => format!("h:{}", inst.categories[*l].id),
            Sink::Surplus => "e".to_string(),
        };
        Self {
            variant: format!("{:?}", cot.variant).to_lowercase(),
            total: cot.total,
            deficit: cot.deficit,
            sources: cot
                .sources
                .iter()
                .zip(&cot.supplies)
                .map(|(s, &a)| CotNode { name: source_name(s), amount: a })
                .collect(),
            sinks: cot
                .sinks
                .iter()
                .zip(&cot.needs)
                .map(|(s, &a)| CotNode { name: sink_name(s), amount: a })
                .collect(),
            cells: cot
                .cells
                .iter()
                .map(|c| CotCell {
                    source: source_name(&cot.sources[c.source]),
                    sink: sink_name(&cot.sinks[c.sink]),
                    day: c.day,
                    cap: c.cap,
                    profit: c.profit,
                    kind: match c.kind {
                        CellKind::Real { .. } => "real",
                        CellKind::Breach { .. } => "breach",
                        CellKind::Pseudo => "pseudo",
                    },
                })
                .collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_instance(path: &std::path::Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: InstanceFile = serde_json::from_str(&text)?;
    file.to_instance()
}

/// Hex SHA-256 of the canonical instance document.
pub fn instance_digest(inst: &Instance) -> String {
    let text = serde_json::to_string(&InstanceFile::from_instance(inst)).unwrap_or_default();
    hex::encode(Sha256::digest(text.as_bytes()))
}
