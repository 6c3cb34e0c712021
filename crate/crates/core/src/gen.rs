//! Seeded synthetic instances and named presets.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::model::{validate_instance, Category, Instance, Lane};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum QMode {
    /// `q = D / max D` over the whole instance.
    Proportional,
    /// `q = 1` everywhere.
    Constant,
}

/// Generator settings. Pairs are inclusive `[low, high]` ranges drawn
/// uniformly per instance (counts, factors) or per entity (the rest).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenConfig {
    pub items: [usize; 2],
    pub stores: [usize; 2],
    pub categories: [usize; 2],
    /// Pull-forward days per lane.
    pub horizon: [usize; 2],
    /// Probability that a store lists an item.
    pub lane_density: f64,
    /// Mean daily demand per item, drawn log-uniformly.
    pub velocity: [f64; 2],
    /// Store size multiplier on the item rate.
    pub store_scale: [f64; 2],
    /// Rate multiplier on days 5 and 6 of each store's week.
    pub weekend_boost: f64,
    /// Demand per lane and day is truncated at this value.
    pub max_demand: u64,
    /// Stock as a fraction of the item's total demand.
    pub inventory_slack: [f64; 2],
    /// Labour as a fraction of the category's total demand.
    pub labour_tightness: [f64; 2],
    pub trailer_max: [u64; 2],
    /// `m / M`.
    pub trailer_min_ratio: [f64; 2],
    pub max_trailers: [u64; 2],
    /// Shelf space per lane in whpacks; `None` leaves shelves unlimited.
    pub shelf_capacity: Option<[u64; 2]>,
    pub priority_levels: Vec<u64>,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_rational"))]
    pub alpha_ratio: Rational,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_rational"))]
    pub beta: Rational,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_rational"))]
    pub gamma: Rational,
    pub pf_enabled: bool,
    pub q_mode: QMode,
    /// Cap on the product of `D + 1` over all cells; the largest demand is
    /// lowered until it holds.
    pub enumeration_budget: Option<u64>,
    pub seed: u64,
}

pub const PRESETS: [&str; 6] = ["expA", "expB", "expC", "expD", "small-corpus", "medium-bench"];

fn medium() -> GenConfig {
    GenConfig {
        items: [40, 40],
        stores: [10, 10],
        categories: [3, 3],
        horizon: [2, 4],
        lane_density: 0.5,
        velocity: [0.5, 6.0],
        store_scale: [0.6, 1.4],
        weekend_boost: 1.6,
        max_demand: 30,
        inventory_slack: [1.0, 1.3],
        labour_tightness: [0.55, 0.65],
        trailer_max: [40, 40],
        trailer_min_ratio: [0.5, 0.5],
        max_trailers: [2, 6],
        shelf_capacity: Some([10, 30]),
        priority_levels: vec![1, 2, 3],
        alpha_ratio: ratio(4, 5),
        beta: int(5),
        gamma: int(50),
        pf_enabled: true,
        q_mode: QMode::Proportional,
        enumeration_budget: None,
        seed: 0,
    }
}

/// Named configuration. The `exp*` presets share one medium-sized shape and
/// differ only in pull-forward, breach penalty and priority mode.
pub fn preset(name: &str) -> Result<GenConfig> {
    let cfg = match name {
        "expA" => GenConfig {
            pf_enabled: false,
            gamma: int(0),
            ..medium()
        },
        "expB" => GenConfig {
            gamma: int(0),
            ..medium()
        },
        "expC" => GenConfig {
            q_mode: QMode::Constant,
            ..medium()
        },
        "expD" => medium(),
        "small-corpus" => GenConfig {
            items: [1, 3],
            stores: [1, 3],
            categories: [1, 2],
            horizon: [1, 1],
            lane_density: 0.8,
            velocity: [0.5, 4.0],
            store_scale: [0.7, 1.3],
            weekend_boost: 1.5,
            max_demand: 6,
            inventory_slack: [0.6, 1.2],
            labour_tightness: [0.5, 1.1],
            trailer_max: [3, 8],
            trailer_min_ratio: [0.2, 0.8],
            max_trailers: [1, 2],
            shelf_capacity: Some([2, 10]),
            priority_levels: vec![1, 2],
            alpha_ratio: ratio(1, 2),
            beta: int(1),
            gamma: int(2),
            pf_enabled: true,
            q_mode: QMode::Proportional,
            enumeration_budget: Some(100_000),
            seed: 0,
        },
        "medium-bench" => GenConfig {
            items: [500, 500],
            stores: [50, 50],
            categories: [5, 5],
            horizon: [2, 2],
            lane_density: 0.3,
            trailer_max: [200, 200],
            max_trailers: [1, 3],
            shelf_capacity: Some([10, 40]),
            ..medium()
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(cfg)
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.into()));
        let ordered_usize = |r: &[usize; 2]| r[0] <= r[1];
        if !ordered_usize(&self.items) || self.items[0] == 0 {
            return bad("items range must be ordered and positive");
        }
        if !ordered_usize(&self.stores) || self.stores[0] == 0 {
            return bad("stores range must be ordered and positive");
        }
        if !ordered_usize(&self.categories) || self.categories[0] == 0 {
            return bad("categories range must be ordered and positive");
        }
        if !ordered_usize(&self.horizon) {
            return bad("horizon range must be ordered");
        }
        if !(0.0..=1.0).contains(&self.lane_density) {
            return bad("lane_density must lie in [0, 1]");
        }
        for (name, r) in [
            ("velocity", self.velocity),
            ("store_scale", self.store_scale),
            ("inventory_slack", self.inventory_slack),
            ("labour_tightness", self.labour_tightness),
        ] {
            if !(r[0] > 0.0 && r[0] <= r[1] && r[1].is_finite()) {
                return bad(&format!("{name} range must be positive and ordered"));
            }
        }
        if !(self.trailer_min_ratio[0] >= 0.0 && self.trailer_min_ratio[0] <= self.trailer_min_ratio[1] && self.trailer_min_ratio[1] <= 1.0) {
            return bad("trailer_min_ratio must be an ordered range in [0, 1]");
        }
        if self.trailer_max[0] == 0 || self.trailer_max[0] > self.trailer_max[1] {
            return bad("trailer_max range must be ordered and positive");
        }
        if self.max_trailers[0] > self.max_trailers[1] {
            return bad("max_trailers range must be ordered");
        }
        if let Some(c) = self.shelf_capacity {
            if c[0] > c[1] {
                return bad("shelf_capacity range must be ordered");
            }
        }
        if self.weekend_boost <= 0.0 || !self.weekend_boost.is_finite() {
            return bad("weekend_boost must be positive");
        }
        if self.priority_levels.is_empty() || self.priority_levels.contains(&0) {
            return bad("priority_levels must be non-empty and positive");
        }
        if !(self.alpha_ratio > int(0) && self.alpha_ratio < int(1)) {
            return bad("alpha_ratio must lie in (0, 1)");
        }
        if self.beta <= int(0) || self.gamma < int(0) {
            return bad("beta must be positive and gamma non-negative");
        }
        Ok(())
    }
}

fn uniform_usize<R: Rng>(rng: &mut R, r: [usize; 2]) -> usize {
    rng.random_range(r[0]..=r[1])
}

fn uniform_u64<R: Rng>(rng: &mut R, r: [u64; 2]) -> u64 {
    rng.random_range(r[0]..=r[1])
}

fn uniform_f64<R: Rng>(rng: &mut R, r: [f64; 2]) -> f64 {
    if r[0] == r[1] {
        r[0]
    } else {
        rng.random_range(r[0]..r[1])
    }
}

fn log_uniform<R: Rng>(rng: &mut R, r: [f64; 2]) -> f64 {
    libm::exp(uniform_f64(rng, [libm::log(r[0]), libm::log(r[1])]))
}

fn round_u64(x: f64) -> u64 {
    libm::round(x.max(0.0)) as u64
}

/// Draws one instance. Identical configs give identical instances.
pub fn generate(cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n_items = uniform_usize(&mut rng, cfg.items);
    let n_stores = uniform_usize(&mut rng, cfg.stores);
    let n_cats = uniform_usize(&mut rng, cfg.categories).min(n_items);
    let velocity: Vec<f64> = (0..n_items).map(|_| log_uniform(&mut rng, cfg.velocity)).collect();
    let scale: Vec<f64> = (0..n_stores).map(|_| uniform_f64(&mut rng, cfg.store_scale)).collect();
    let weekday: Vec<usize> = (0..n_stores).map(|_| rng.random_range(0..7)).collect();
    let priority: Vec<u64> = (0..n_stores)
        .map(|_| cfg.priority_levels[rng.random_range(0..cfg.priority_levels.len())])
        .collect();
    let max_trailers: Vec<u64> = (0..n_stores).map(|_| uniform_u64(&mut rng, cfg.max_trailers)).collect();
    let trailer_max = uniform_u64(&mut rng, cfg.trailer_max);
    let trailer_min = round_u64(uniform_f64(&mut rng, cfg.trailer_min_ratio) * trailer_max as f64).min(trailer_max);

    let mut lanes: Vec<Lane> = Vec::new();
    for j in 0..n_stores {
        for (i, &v) in velocity.iter().enumerate() {
            if !rng.random_bool(cfg.lane_density) {
                continue;
            }
            let h = uniform_usize(&mut rng, cfg.horizon);
            let demand: Vec<u64> = (0..=h)
                .map(|t| {
                    let weekend = (weekday[j] + t) % 7 >= 5;
                    let rate = v * scale[j] * if weekend { cfg.weekend_boost } else { 1.0 };
                    let draw = Poisson::new(rate).map(|p| p.sample(&mut rng)).unwrap_or(0.0);
                    (draw as u64).min(cfg.max_demand)
                })
                .collect();
            let shelf = cfg.shelf_capacity.map(|c| uniform_u64(&mut rng, c));
            lanes.push(Lane {
                item: i,
                store: j,
                shelf_capacity: shelf,
                priority: vec![int(1); demand.len()],
                demand,
            });
        }
    }
    if let Some(budget) = cfg.enumeration_budget {
        enforce_budget(&mut lanes, budget as u128);
    }
    let mut item_demand = vec![0u64; n_items];
    for lane in &lanes {
        item_demand[lane.item] += lane.total_demand();
    }
    if !cfg.pf_enabled {
        for lane in &mut lanes {
            lane.demand.truncate(1);
            lane.priority.truncate(1);
        }
    }
    let max_d = lanes.iter().flat_map(|l| l.demand.iter().copied()).max().unwrap_or(0);
    for lane in &mut lanes {
        lane.priority = lane
            .demand
            .iter()
            .map(|&d| match cfg.q_mode {
                QMode::Constant => int(1),
                QMode::Proportional if max_d == 0 => int(0),
                QMode::Proportional => ratio(d as i128, max_d as i128),
            })
            .collect();
    }

    let inventory: Vec<u64> = item_demand
        .iter()
        .map(|&d| round_u64(d as f64 * uniform_f64(&mut rng, cfg.inventory_slack)))
        .collect();
    let categories: Vec<Category> = (0..n_cats)
        .map(|l| Category {
            id: format!("c{l}"),
            items: (l..n_items).step_by(n_cats).collect(),
        })
        .collect();
    let labour_capacity: Vec<u64> = categories
        .iter()
        .map(|c| {
            let d: u64 = c.items.iter().map(|&i| item_demand[i]).sum();
            round_u64(d as f64 * uniform_f64(&mut rng, cfg.labour_tightness))
        })
        .collect();
    let max_h = lanes.iter().map(Lane::horizon).max().unwrap_or(0);
    let mut alpha = Vec::with_capacity(max_h + 1);
    let mut a = int(1);
    for _ in 0..=max_h {
        alpha.push(a);
        a *= cfg.alpha_ratio;
    }

    let inst = Instance {
        items: (0..n_items).map(|i| format!("i{i}")).collect(),
        stores: (0..n_stores).map(|j| format!("s{j}")).collect(),
        categories,
        labour_capacity,
        inventory,
        trailer_max,
        trailer_min,
        max_trailers,
        store_priority: priority,
        lanes,
        alpha,
        beta: cfg.beta,
        gamma: cfg.gamma,
    };
    let report = validate_instance(&inst);
    if !report.is_valid() {
        return Err(Error::InvalidConfig(format!(
            "generated instance is invalid: {}",
            report.violations.iter().map(ToString::to_string).collect::<Vec<String>>().join("; ")
        )));
    }
    Ok(inst)
}

fn enforce_budget(lanes: &mut [Lane], budget: u128) {
    let size = |lanes: &[Lane]| {
        lanes
            .iter()
            .flat_map(|l| l.demand.iter())
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128 + 1))
    };
    while size(lanes) > budget {
        let mut top = (0, 0, 0u64);
        for (idx, lane) in lanes.iter().enumerate() {
            for (t, &d) in lane.demand.iter().enumerate() {
                if d > top.2 {
                    top = (idx, t, d);
                }
            }
        }
        if top.2 == 0 {
            break;
        }
        lanes[top.0].demand[top.1] -= 1;
    }
}

/// `count` instances from `cfg` with seeds `base_seed, base_seed + 1, ...`.
pub fn corpus(cfg: &GenConfig, base_seed: u64, count: usize) -> Result<Vec<Instance>> {
    (0..count as u64)
        .map(|k| {
            generate(&GenConfig {
                seed: base_seed.wrapping_add(k),
                ..cfg.clone()
            })
        })
        .collect()
}
