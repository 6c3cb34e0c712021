//! Exact baseline: depth-first branch and bound over the trailer vector with
//! the exact value oracle at the leaves.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Result;
use crate::exact::ExactOracle;
use crate::greedy::{finish, PlanStats, Solution};
use crate::model::{Instance, TrailerAssignment};
use crate::oracle::ValueOracle;
use crate::rational::{int, Rational};
use crate::reduction::Variant;

#[derive(Debug, Clone)]
pub struct GlobalSolution {
    pub solution: Solution,
    /// `false` when the node budget stopped the search early.
    pub optimal: bool,
    pub nodes: u64,
    pub leaves: u64,
}

struct Search<'a> {
    oracle: &'a ExactOracle,
    order: Vec<usize>,
    /// Reward of each store at its full trailer count.
    reward: Vec<Rational>,
    /// Utility cap of each store: every lane fully allocated.
    lane_cap: Vec<Rational>,
    budget: u64,
    nodes: u64,
    leaves: u64,
    exhausted: bool,
    best: (Rational, TrailerAssignment),
    cache: BTreeMap<Vec<u64>, Option<Rational>>,
}

impl Search<'_> {
    fn inst(&self) -> &Instance {
        self.oracle.instance()
    }

    fn bound(&self, x: &TrailerAssignment, depth: usize) -> Rational {
        let inst = self.inst();
        let mut total = Rational::zero();
        for (pos, &j) in self.order.iter().enumerate() {
            if pos < depth {
                total += inst.beta * int((inst.store_priority[j] * x.get(j)) as i128);
                if x.get(j) > 0 {
                    total += self.lane_cap[j];
                }
            } else {
                total += self.reward[j] + self.lane_cap[j];
            }
        }
        total
    }

    fn value(&mut self, x: &TrailerAssignment) -> Result<Option<Rational>> {
        if let Some(v) = self.cache.get(&x.0) {
            return Ok(*v);
        }
        let v = self.oracle.evaluate(x, None)?.value;
        self.cache.insert(x.0.clone(), v);
        Ok(v)
    }

    fn visit(&mut self, x: &mut TrailerAssignment, depth: usize) -> Result<()> {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return Ok(());
        }
        self.nodes += 1;
        if self.bound(x, depth) <= self.best.0 {
            return Ok(());
        }
        if depth == self.order.len() {
            self.leaves += 1;
            if let Some(g) = self.value(x)? {
                let inst = self.inst();
                let h: i128 = x
                    .0
                    .iter()
                    .zip(&inst.store_priority)
                    .map(|(&xj, &p)| (xj * p) as i128)
                    .sum();
                let f = g + inst.beta * int(h);
                if f > self.best.0 {
                    self.best = (f, x.clone());
                }
            }
            return Ok(());
        }
        let j = self.order[depth];
        for v in (0..=self.inst().max_trailers[j]).rev() {
            x.0[j] = v;
            self.visit(x, depth + 1)?;
            if self.exhausted {
                break;
            }
        }
        x.0[j] = 0;
        Ok(())
    }
}

/// Maximizes the full objective over every `x` with `x_j <= R_j`.
///
/// Stores are branched in decreasing `beta * p_j`, larger counts first. The
/// bound adds, for every store that is unfixed or has a trailer, the reward
/// at its maximum count and the utility of allocating all its demand.
pub fn solve_global(inst: &Instance, node_budget: u64) -> Result<GlobalSolution> {
    let oracle = ExactOracle::new(inst, Variant::Final);
    let trimmed = oracle.instance();
    let mut order: Vec<usize> = (0..trimmed.stores.len()).collect();
    order.sort_by(|&a, &b| trimmed.store_priority[b].cmp(&trimmed.store_priority[a]).then(a.cmp(&b)));
    let reward = (0..trimmed.stores.len())
        .map(|j| trimmed.beta * int((trimmed.store_priority[j] * trimmed.max_trailers[j]) as i128))
        .collect();
    let mut lane_cap = vec![Rational::zero(); trimmed.stores.len()];
    for (idx, lane) in trimmed.lanes.iter().enumerate() {
        for (t, &d) in lane.demand.iter().enumerate() {
            let p = trimmed.profit(idx, t);
            if p > Rational::zero() {
                lane_cap[lane.store] += p * int(d as i128);
            }
        }
    }
    let zero = TrailerAssignment::zeros(trimmed.stores.len());
    let mut search = Search {
        oracle: &oracle,
        order,
        reward,
        lane_cap,
        budget: node_budget,
        nodes: 0,
        leaves: 0,
        exhausted: false,
        best: (Rational::zero(), zero.clone()),
        cache: BTreeMap::new(),
    };
    let mut x = zero;
    search.visit(&mut x, 0)?;
    let (nodes, leaves, optimal) = (search.nodes, search.leaves, !search.exhausted);
    let best = search.best.1;
    let stats = PlanStats {
        oracle_calls: search.cache.len(),
        ..PlanStats::default()
    };
    Ok(GlobalSolution {
        solution: finish(inst, best, stats)?,
        optimal,
        nodes,
        leaves,
    })
}
