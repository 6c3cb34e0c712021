use replen_core::drm::{drm_solve, marginal_residual, value_oracle_drm, DrmParams};
use replen_core::exact::value_oracle_exact;
use replen_core::gen::{corpus, preset};
use replen_core::model::TrailerAssignment;
use replen_core::rational::to_f64;
use replen_core::reduction::{build_cot, trim_shelf_capacity, Variant};

fn assignments(inst: &replen_core::model::Instance) -> Vec<TrailerAssignment> {
    (0..inst.stores.len())
        .filter(|&j| inst.max_trailers[j] > 0)
        .map(|j| TrailerAssignment::zeros(inst.stores.len()).incremented(j))
        .chain(std::iter::once(TrailerAssignment(inst.max_trailers.clone())))
        .collect()
}

#[test]
fn converged_solves_meet_tolerance_and_stay_below_exact() {
    let params = DrmParams::default();
    for inst in corpus(&preset("small-corpus").unwrap(), 200, 40).unwrap() {
        let trimmed = trim_shelf_capacity(&inst);
        for x in assignments(&inst) {
            if x.is_zero() {
                continue;
            }
            for variant in [Variant::Probe, Variant::Final] {
                let exact = value_oracle_exact(&inst, &x, variant).unwrap();
                let e = value_oracle_drm(&inst, &x, variant, &params, None).unwrap();
                assert_eq!(exact.is_some(), e.value.is_some());
                let (Some(ex), Some(v)) = (exact, e.value) else { continue };
                assert!(e.converged);
                assert!(e.residual <= params.eps);
                let scale = to_f64(&ex).abs().max(1.0);
                assert!(v <= to_f64(&ex) + 1e-3 * scale, "drm {v} exact {ex}");
                let cot = build_cot(&trimmed, &x, variant).unwrap();
                let sol = drm_solve(&cot, &params, None).unwrap();
                assert!(marginal_residual(&cot, &sol.flow) <= params.eps);
            }
        }
    }
}

#[test]
fn small_mu_approaches_exact() {
    let params = DrmParams {
        mu: 0.01,
        ..DrmParams::default()
    };
    for inst in corpus(&preset("small-corpus").unwrap(), 300, 15).unwrap() {
        for x in assignments(&inst) {
            let Some(ex) = value_oracle_exact(&inst, &x, Variant::Probe).unwrap() else { continue };
            let v = value_oracle_drm(&inst, &x, Variant::Probe, &params, None).unwrap().value.unwrap();
            let ex = to_f64(&ex);
            assert!((v - ex).abs() <= 0.05 * ex.abs().max(1.0), "drm {v} exact {ex}");
        }
    }
}
