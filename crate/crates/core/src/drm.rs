//! Approximate value oracle: double entropic regularization of the transport
//! problem, solved by alternating monotone root finds on log-domain duals.
//!
//! With row dual `a_i`, column dual `c_j` and unit profit `P`, each free cell
//! carries `d = D * sigmoid(a_i + P / mu + c_j)`. A row sweep solves every
//! source balance for its `a_i`, then a column sweep solves every sink balance
//! for its `c_j`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::FlowNetwork;
use crate::model::{Instance, TrailerAssignment};
use crate::oracle::{Evaluation, ValueOracle};
use crate::rational::{to_f64, Rational};
use crate::reduction::{build_cot, trim_shelf_capacity, CellKind, CotInstance, Variant};
use crate::roots::{root_find_monotone, RootError};

/// Solver parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DrmParams {
    pub mu: f64,
    /// Stop once every marginal is within `eps` on the normalized scale.
    pub eps: f64,
    pub root_tol: f64,
    pub max_iter: usize,
    pub max_doublings: u32,
}

impl Default for DrmParams {
    fn default() -> Self {
        Self {
            mu: 1.0,
            eps: 1e-6,
            root_tol: 1e-12,
            max_iter: 10_000,
            max_doublings: 200,
        }
    }
}

impl DrmParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.mu > 0.0 && self.mu.is_finite() && self.eps > 0.0 && self.root_tol >= 0.0 && self.max_iter > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(alloc::format!("invalid DRM parameters {self:?}")))
        }
    }
}

/// Transport data divided by the total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedCot {
    pub supplies: Vec<f64>,
    pub needs: Vec<f64>,
    pub caps: Vec<f64>,
    pub scale: u64,
}

/// Divides supplies, needs and caps by the total mass. `None` when the total
/// is zero, in which case the only solution is the empty flow.
pub fn normalize(cot: &CotInstance) -> Option<NormalizedCot> {
    if cot.total == 0 {
        return None;
    }
    let k = cot.total as f64;
    Some(NormalizedCot {
        supplies: cot.supplies.iter().map(|&s| s as f64 / k).collect(),
        needs: cot.needs.iter().map(|&m| m as f64 / k).collect(),
        caps: cot.cells.iter().map(|c| c.cap as f64 / k).collect(),
        scale: cot.total,
    })
}

/// Cells whose value is settled by integer bookkeeping before iterating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Zero,
    Full,
    Free,
}

/// Dual potentials and progress of one DRM run.
#[derive(Debug, Clone, PartialEq)]
pub struct DrmState {
    /// Row duals `ln phi_i`; rows fixed by bookkeeping keep their input value.
    pub log_phi: Vec<f64>,
    /// Column duals `ln psi_j`.
    pub log_psi: Vec<f64>,
    /// `P / mu` per cell.
    pub log_kernel: Vec<f64>,
    pub status: Vec<CellStatus>,
    pub mu: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Rows or columns whose bracket search ran out of room.
    pub clamped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrmSolution {
    /// Flow per cell in original units.
    pub flow: Vec<f64>,
    pub state: DrmState,
}

impl DrmSolution {
    /// Profit over real and breach cells.
    pub fn profit(&self, cot: &CotInstance) -> f64 {
        cot.cells
            .iter()
            .zip(&self.flow)
            .filter(|(c, _)| !matches!(c.kind, CellKind::Pseudo))
            .map(|(c, &d)| to_f64(&c.profit) * d)
            .sum()
    }

    /// Largest `|marginal - target| / K` over all sources and sinks.
    pub fn marginal_residual(&self, cot: &CotInstance) -> f64 {
        marginal_residual(cot, &self.flow)
    }
}

pub fn marginal_residual(cot: &CotInstance, flow: &[f64]) -> f64 {
    if cot.total == 0 {
        return 0.0;
    }
    let mut out = vec![0.0f64; cot.sources.len()];
    let mut inflow = vec![0.0f64; cot.sinks.len()];
    for (cell, &d) in cot.cells.iter().zip(flow) {
        out[cell.source] += d;
        inflow[cell.sink] += d;
    }
    let k = cot.total as f64;
    let rows = out.iter().zip(&cot.supplies).map(|(&o, &s)| (o - s as f64).abs());
    let cols = inflow.iter().zip(&cot.needs).map(|(&i, &m)| (i - m as f64).abs());
    rows.chain(cols).fold(0.0, f64::max) / k
}

#[inline]
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

/// Cells that every feasible flow leaves empty or saturates.
///
/// Finds one feasible flow, then looks for residual cycles: an empty cell can
/// carry flow, and a saturated one can give some back, exactly when both
/// endpoints lie in one strongly connected component of the residual graph.
/// `Err(Infeasible)` when no flow meets the marginals.
pub fn boundary_cells(cot: &CotInstance) -> Result<Vec<CellStatus>> {
    let ns = cot.sources.len();
    let nt = cot.sinks.len();
    let (s, t) = (ns + nt, ns + nt + 1);
    let mut net = FlowNetwork::new(ns + nt + 2);
    for (i, &a) in cot.supplies.iter().enumerate() {
        net.add_arc(s, i, a, 0);
    }
    for (j, &a) in cot.needs.iter().enumerate() {
        net.add_arc(ns + j, t, a, 0);
    }
    let arcs: Vec<usize> = cot.cells.iter().map(|c| net.add_arc(c.source, ns + c.sink, c.cap, 0)).collect();
    if net.max_flow(s, t, cot.total) < cot.total {
        return Err(Error::Infeasible);
    }
    let flows: Vec<u64> = arcs.iter().map(|&a| net.flow(a)).collect();
    let mut adj = vec![Vec::new(); ns + nt];
    for (c, &f) in cot.cells.iter().zip(&flows) {
        if f < c.cap {
            adj[c.source].push(ns + c.sink);
        }
        if f > 0 {
            adj[ns + c.sink].push(c.source);
        }
    }
    let comp = strong_components(&adj);
    Ok(cot
        .cells
        .iter()
        .zip(&flows)
        .map(|(c, &f)| {
            if comp[c.source] == comp[ns + c.sink] || (f > 0 && f < c.cap) {
                CellStatus::Free
            } else if f == 0 {
                CellStatus::Zero
            } else {
                CellStatus::Full
            }
        })
        .collect())
}

/// Component label per node (iterative Tarjan).
fn strong_components(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let (mut next, mut label) = (0usize, 0usize);
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge == 0 && index[v] == UNSEEN {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = label;
                    if w == v {
                        break;
                    }
                }
                label += 1;
            }
        }
    }
    comp
}

/// Fixes cells pinned by [`boundary_cells`], then those forced by empty or
/// saturated rows and columns, repeating until nothing changes. Returns the
/// status per cell and the mass each row and column still has to place on
/// its free cells.
fn propagate(cot: &CotInstance) -> Result<(Vec<CellStatus>, Vec<u64>, Vec<u64>)> {
    let mut status = boundary_cells(cot)?;
    let mut supply = cot.supplies.clone();
    let mut need = cot.needs.clone();
    let mut row_cells = vec![Vec::new(); cot.sources.len()];
    let mut col_cells = vec![Vec::new(); cot.sinks.len()];
    let mut row_free = vec![0u64; cot.sources.len()];
    let mut col_free = vec![0u64; cot.sinks.len()];
    for (idx, c) in cot.cells.iter().enumerate() {
        row_cells[c.source].push(idx);
        col_cells[c.sink].push(idx);
        match status[idx] {
            CellStatus::Free => {
                row_free[c.source] += c.cap;
                col_free[c.sink] += c.cap;
            }
            CellStatus::Full => {
                supply[c.source] -= c.cap;
                need[c.sink] -= c.cap;
            }
            CellStatus::Zero => {}
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..supply.len() {
            if row_free[i] == 0 {
                if supply[i] > 0 {
                    return Err(Error::Infeasible);
                }
                continue;
            }
            let fix = if supply[i] == 0 {
                CellStatus::Zero
            } else if supply[i] == row_free[i] {
                CellStatus::Full
            } else if supply[i] > row_free[i] {
                return Err(Error::Infeasible);
            } else {
                continue;
            };
            for &idx in &row_cells[i] {
                if status[idx] != CellStatus::Free {
                    continue;
                }
                let c = &cot.cells[idx];
                status[idx] = fix;
                row_free[i] -= c.cap;
                col_free[c.sink] -= c.cap;
                if fix == CellStatus::Full {
                    supply[i] -= c.cap;
                    need[c.sink] = need[c.sink].checked_sub(c.cap).ok_or(Error::Infeasible)?;
                }
            }
            changed = true;
        }
        for j in 0..need.len() {
            if col_free[j] == 0 {
                if need[j] > 0 {
                    return Err(Error::Infeasible);
                }
                continue;
            }
            let fix = if need[j] == 0 {
                CellStatus::Zero
            } else if need[j] == col_free[j] {
                CellStatus::Full
            } else if need[j] > col_free[j] {
                return Err(Error::Infeasible);
            } else {
                continue;
            };
            for &idx in &col_cells[j] {
                if status[idx] != CellStatus::Free {
                    continue;
                }
                let c = &cot.cells[idx];
                status[idx] = fix;
                col_free[j] -= c.cap;
                row_free[c.source] -= c.cap;
                if fix == CellStatus::Full {
                    need[j] -= c.cap;
                    supply[c.source] = supply[c.source].checked_sub(c.cap).ok_or(Error::Infeasible)?;
                }
            }
            changed = true;
        }
    }
    Ok((status, supply, need))
}

/// Compressed adjacency of the free cells.
struct Lines {
    start: Vec<usize>,
    cells: Vec<usize>,
}

impl Lines {
    fn build(n: usize, free: &[usize], key: impl Fn(usize) -> usize) -> Self {
        let mut count = vec![0usize; n + 1];
        for &c in free {
            count[key(c) + 1] += 1;
        }
        for k in 0..n {
            count[k + 1] += count[k];
        }
        let mut fill = count.clone();
        let mut cells = vec![0usize; free.len()];
        for &c in free {
            let k = key(c);
            cells[fill[k]] = c;
            fill[k] += 1;
        }
        Self { start: count, cells }
    }

    fn line(&self, k: usize) -> &[usize] {
        &self.cells[self.start[k]..self.start[k + 1]]
    }
}

/// Warm start: duals of a previous run on a problem with the same layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DrmWarm {
    pub log_phi: Vec<f64>,
    pub log_psi: Vec<f64>,
}

/// Runs the alternating scheme. Returns `Err(Infeasible)` when integer
/// bookkeeping proves that no flow meets the marginals.
pub fn drm_solve(cot: &CotInstance, params: &DrmParams, warm: Option<&DrmWarm>) -> Result<DrmSolution> {
    params.validate()?;
    let ns = cot.sources.len();
    let nt = cot.sinks.len();
    let mut log_phi = vec![0.0; ns];
    let mut log_psi = vec![0.0; nt];
    if let Some(w) = warm {
        if w.log_phi.len() == ns && w.log_psi.len() == nt {
            log_phi.clone_from(&w.log_phi);
            log_psi.clone_from(&w.log_psi);
        }
    }
    let log_kernel: Vec<f64> = cot.cells.iter().map(|c| to_f64(&c.profit) / params.mu).collect();
    let Some(norm) = normalize(cot) else {
        return Ok(DrmSolution {
            flow: vec![0.0; cot.cells.len()],
            state: DrmState {
                log_phi,
                log_psi,
                log_kernel,
                status: vec![CellStatus::Zero; cot.cells.len()],
                mu: params.mu,
                residual: 0.0,
                iterations: 0,
                converged: true,
                clamped: 0,
            },
        });
    };
    let (status, supply_left, need_left) = propagate(cot)?;
    let k = norm.scale as f64;
    let row_target: Vec<f64> = supply_left.iter().map(|&s| s as f64 / k).collect();
    let col_target: Vec<f64> = need_left.iter().map(|&m| m as f64 / k).collect();
    let free: Vec<usize> = (0..cot.cells.len()).filter(|&c| status[c] == CellStatus::Free).collect();
    let rows = Lines::build(ns, &free, |c| cot.cells[c].source);
    let cols = Lines::build(nt, &free, |c| cot.cells[c].sink);
    let caps = &norm.caps;

    let row_sum = |i: usize, a: f64, psi: &[f64]| -> f64 {
        rows.line(i)
            .iter()
            .map(|&c| caps[c] * sigmoid(a + log_kernel[c] + psi[cot.cells[c].sink]))
            .sum()
    };
    let col_sum = |j: usize, b: f64, phi: &[f64]| -> f64 {
        cols.line(j)
            .iter()
            .map(|&c| caps[c] * sigmoid(phi[cot.cells[c].source] + log_kernel[c] + b))
            .sum()
    };
    let residual = |phi: &[f64], psi: &[f64]| -> f64 {
        let r = (0..ns)
            .filter(|&i| !rows.line(i).is_empty())
            .map(|i| (row_sum(i, phi[i], psi) - row_target[i]).abs());
        let c = (0..nt)
            .filter(|&j| !cols.line(j).is_empty())
            .map(|j| (col_sum(j, psi[j], phi) - col_target[j]).abs());
        r.chain(c).fold(0.0, f64::max)
    };

    let mut clamped = 0usize;
    let mut iterations = 0usize;
    let mut res = residual(&log_phi, &log_psi);
    while res > params.eps && iterations < params.max_iter {
        for i in 0..ns {
            if rows.line(i).is_empty() {
                continue;
            }
            let f = |a: f64| row_sum(i, a, &log_psi) - row_target[i];
            log_phi[i] = match root_find_monotone(f, log_phi[i], params.root_tol, params.max_doublings) {
                Ok(r) => r.x,
                Err(RootError::BracketExhausted { at }) | Err(RootError::NoSignChange { lo: at, .. }) => {
                    clamped += 1;
                    at
                }
            };
        }
        for j in 0..nt {
            if cols.line(j).is_empty() {
                continue;
            }
            let f = |b: f64| col_sum(j, b, &log_phi) - col_target[j];
            log_psi[j] = match root_find_monotone(f, log_psi[j], params.root_tol, params.max_doublings) {
                Ok(r) => r.x,
                Err(RootError::BracketExhausted { at }) | Err(RootError::NoSignChange { lo: at, .. }) => {
                    clamped += 1;
                    at
                }
            };
        }
        iterations += 1;
        res = residual(&log_phi, &log_psi);
    }

    let flow = cot
        .cells
        .iter()
        .enumerate()
        .map(|(idx, c)| match status[idx] {
            CellStatus::Zero => 0.0,
            CellStatus::Full => c.cap as f64,
            CellStatus::Free => {
                c.cap as f64 * sigmoid(log_phi[c.source] + log_kernel[idx] + log_psi[c.sink])
            }
        })
        .collect();
    Ok(DrmSolution {
        flow,
        state: DrmState {
            log_phi,
            log_psi,
            log_kernel,
            status,
            mu: params.mu,
            residual: res,
            iterations,
            converged: res <= params.eps,
            clamped,
        },
    })
}

/// Approximate `g(x)`, meant only for ranking candidate assignments;
/// `None` when `x` is infeasible.
pub fn value_oracle_drm(
    inst: &Instance,
    x: &TrailerAssignment,
    variant: Variant,
    params: &DrmParams,
    warm: Option<&DrmWarm>,
) -> Result<Evaluation<f64, DrmWarm>> {
    params.validate()?;
    drm_on_trimmed(&trim_shelf_capacity(inst), x, variant, params, warm)
}

fn drm_on_trimmed(
    inst: &Instance,
    x: &TrailerAssignment,
    variant: Variant,
    params: &DrmParams,
    warm: Option<&DrmWarm>,
) -> Result<Evaluation<f64, DrmWarm>> {
    if x.len() == inst.stores.len() && x.is_zero() {
        return Ok(Evaluation::exact(Some(0.0)));
    }
    let cot = build_cot(inst, x, variant)?;
    let sol = match drm_solve(&cot, params, warm) {
        Err(Error::Infeasible) => return Ok(Evaluation::exact(None)),
        r => r?,
    };
    Ok(Evaluation {
        value: Some(sol.profit(&cot)),
        converged: sol.state.converged,
        residual: sol.state.residual,
        warm: Some(DrmWarm {
            log_phi: sol.state.log_phi,
            log_psi: sol.state.log_psi,
        }),
    })
}

/// DRM oracle bound to one instance.
#[derive(Debug, Clone)]
pub struct DrmOracle {
    inst: Instance,
    variant: Variant,
    params: DrmParams,
}

impl DrmOracle {
    pub fn new(inst: &Instance, variant: Variant, params: DrmParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            inst: trim_shelf_capacity(inst),
            variant,
            params,
        })
    }

    pub fn params(&self) -> &DrmParams {
        &self.params
    }
}

impl ValueOracle for DrmOracle {
    type Value = f64;
    type Warm = DrmWarm;

    fn instance(&self) -> &Instance {
        &self.inst
    }

    fn evaluate(&self, x: &TrailerAssignment, warm: Option<&DrmWarm>) -> Result<Evaluation<f64, DrmWarm>> {
        drm_on_trimmed(&self.inst, x, self.variant, &self.params, warm)
    }
}

/// Utility of a rational value on the float scale used by the DRM oracle.
pub fn as_f64(r: &Rational) -> f64 {
    to_f64(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::value_oracle_exact;
    use crate::fixtures::t1;
    use crate::rational::int;
    use crate::reduction::{Cell, Sink, Source};

    fn tiny(supplies: Vec<u64>, needs: Vec<u64>, cells: &[(usize, usize, u64, i128)]) -> CotInstance {
        CotInstance {
            variant: Variant::Final,
            sources: (0..supplies.len()).map(Source::Item).collect(),
            sinks: (0..needs.len()).map(Sink::Store).collect(),
            total: supplies.iter().sum(),
            supplies,
            needs,
            cells: cells
                .iter()
                .map(|&(source, sink, cap, p)| Cell {
                    source,
                    sink,
                    day: 0,
                    cap,
                    profit: int(p),
                    kind: CellKind::Real { lane: 0, day: 0 },
                })
                .collect(),
            deficit: 0,
        }
    }

    #[test]
    fn normalization() {
        let cot = build_cot(&t1(), &TrailerAssignment(vec![1]), Variant::Probe).unwrap();
        let n = normalize(&cot).unwrap();
        assert_eq!(n.scale, 23);
        assert_eq!(n.supplies[0], 10.0 / 23.0);
        let real = cot.cells.iter().position(|c| c.cap == 4).unwrap();
        assert_eq!(n.caps[real], 4.0 / 23.0);
        let mut empty = cot.clone();
        empty.total = 0;
        assert!(normalize(&empty).is_none());
    }

    #[test]
    fn boundary_cells_pinned_by_flow() {
        let cot = tiny(vec![2, 2], vec![3, 1], &[(0, 0, 2, 0), (0, 1, 2, 0), (1, 0, 1, 0), (1, 1, 2, 0)]);
        use CellStatus::*;
        assert_eq!(boundary_cells(&cot).unwrap(), vec![Full, Zero, Full, Free]);
        let open = tiny(vec![1, 1], vec![1, 1], &[(0, 0, 2, 0), (1, 0, 2, 0), (1, 1, 2, 0), (0, 1, 2, 0)]);
        assert!(boundary_cells(&open).unwrap().iter().all(|s| *s == Free));
        let stuck = tiny(vec![3], vec![3], &[(0, 0, 2, 0)]);
        assert_eq!(boundary_cells(&stuck), Err(Error::Infeasible));
    }

    #[test]
    fn single_cell_is_exact() {
        let cot = tiny(vec![5], vec![5], &[(0, 0, 5, 3)]);
        let sol = drm_solve(&cot, &DrmParams::default(), None).unwrap();
        assert_eq!(sol.flow, vec![5.0]);
        assert!(sol.state.converged);
    }

    #[test]
    fn row_root_matches_closed_form() {
        // supply 1, one cell of cap 2 and a second sink absorbing 1
        let cot = tiny(vec![1, 1], vec![1, 1], &[(0, 0, 2, 0), (1, 0, 2, 0), (1, 1, 2, 0), (0, 1, 2, 0)]);
        let sol = drm_solve(&cot, &DrmParams::default(), None).unwrap();
        for d in &sol.flow {
            assert!((d - 0.5).abs() < 1e-5, "{:?}", sol.flow);
        }
        assert!(sol.marginal_residual(&cot) <= 1e-6);
    }

    #[test]
    fn converges_on_t1_probe_within_caps() {
        let inst = t1();
        let cot = build_cot(&inst, &TrailerAssignment(vec![1]), Variant::Probe).unwrap();
        let sol = drm_solve(&cot, &DrmParams::default(), None).unwrap();
        assert!(sol.state.converged);
        assert!(sol.marginal_residual(&cot) <= 1e-6);
        for (c, d) in cot.cells.iter().zip(&sol.flow) {
            assert!(*d >= 0.0 && *d <= c.cap as f64);
        }
    }

    #[test]
    fn small_mu_approaches_exact() {
        let inst = t1();
        let x = TrailerAssignment(vec![1]);
        let exact = to_f64(&value_oracle_exact(&inst, &x, Variant::Probe).unwrap().unwrap());
        let gap = |mu: f64| {
            let params = DrmParams { mu, ..DrmParams::default() };
            let v = value_oracle_drm(&inst, &x, Variant::Probe, &params, None).unwrap();
            (exact - v.value.unwrap()).abs()
        };
        let (g1, g2) = (gap(1.0), gap(0.01));
        assert!(g2 < g1, "{g1} {g2}");
        assert!(g2 < 0.05 * exact, "{g2}");
    }

    #[test]
    fn zero_assignment_is_zero() {
        let v = value_oracle_drm(&t1(), &TrailerAssignment(vec![0]), Variant::Probe, &DrmParams::default(), None)
            .unwrap();
        assert_eq!(v.value, Some(0.0));
    }

    #[test]
    fn infeasible_assignment_is_none() {
        let mut inst = t1();
        inst.lanes[0].demand = vec![0, 0];
        let v = value_oracle_drm(&inst, &TrailerAssignment(vec![2]), Variant::Final, &DrmParams::default(), None)
            .unwrap();
        assert_eq!(v.value, None);
    }

    #[test]
    fn propagation_detects_saturated_rows() {
        let cot = tiny(vec![4, 0], vec![3, 1], &[(0, 0, 3, 1), (0, 1, 1, 0), (1, 0, 2, 0)]);
        let (status, s, m) = propagate(&cot).unwrap();
        assert_eq!(status, vec![CellStatus::Full, CellStatus::Full, CellStatus::Zero]);
        assert_eq!(s, vec![0, 0]);
        assert_eq!(m, vec![0, 0]);
    }
}
