use replen_core::gen::{corpus, preset};
use replen_core::global::solve_global;
use replen_core::greedy::{full_solve, plan_trailers, OracleKind, PlannerConfig};
use replen_core::exact::ExactOracle;
use replen_core::model::validate_instance;
use replen_core::oracle::Sequential;
use replen_core::rational::int;
use replen_core::reduction::Variant;

#[test]
fn lazy_matches_eager() {
    for inst in corpus(&preset("small-corpus").unwrap(), 50, 40).unwrap() {
        for variant in [Variant::Final, Variant::Probe] {
            let eager = PlannerConfig {
                variant,
                ..PlannerConfig::default()
            };
            let lazy = PlannerConfig { lazy: true, ..eager.clone() };
            let a = full_solve(&inst, &eager).unwrap();
            let b = full_solve(&inst, &lazy).unwrap();
            assert_eq!(a.objective, b.objective);
            assert!(b.stats.oracle_calls <= a.stats.oracle_calls);
        }
    }
}

#[test]
fn greedy_never_beats_global() {
    for inst in corpus(&preset("small-corpus").unwrap(), 70, 25).unwrap() {
        let greedy = full_solve(&inst, &PlannerConfig::default()).unwrap();
        let global = solve_global(&inst, 10_000_000).unwrap();
        assert!(global.optimal);
        assert!(greedy.objective <= global.solution.objective);
    }
}

#[test]
fn gain_records_are_modular() {
    for inst in corpus(&preset("small-corpus").unwrap(), 90, 20).unwrap() {
        let oracle = ExactOracle::new(&inst, Variant::Final);
        let out = plan_trailers(&oracle, &PlannerConfig::default(), &Sequential).unwrap();
        for rec in &out.accepted {
            let reward = inst.beta * int(inst.store_priority[rec.store] as i128);
            assert_eq!(rec.total_gain.unwrap() - rec.g_gain.unwrap(), reward);
        }
    }
}

#[test]
fn sampled_runs_repeat_under_a_seed() {
    let inst = corpus(&preset("expD").unwrap(), 5, 1).unwrap().remove(0);
    let cfg = PlannerConfig {
        rho: 0.5,
        seed: 11,
        ..PlannerConfig::default()
    };
    let a = full_solve(&inst, &cfg).unwrap();
    let b = full_solve(&inst, &cfg).unwrap();
    assert_eq!(a.x, b.x);
    assert_eq!(a.plan, b.plan);
}

#[test]
fn drm_planner_produces_exact_final_plans() {
    for inst in corpus(&preset("small-corpus").unwrap(), 110, 15).unwrap() {
        let cfg = PlannerConfig {
            oracle: OracleKind::Drm,
            variant: Variant::Probe,
            ..PlannerConfig::default()
        };
        let sol = full_solve(&inst, &cfg).unwrap();
        assert_eq!(sol.metrics.integrality_fraction, 1.0);
        assert_eq!(sol.stats.nonconverged, 0);
    }
}

#[test]
fn presets_generate_valid_instances() {
    for name in ["expA", "expB", "expC", "expD", "small-corpus"] {
        for inst in corpus(&preset(name).unwrap(), 0, 5).unwrap() {
            let report = validate_instance(&inst);
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
            if name == "expD" {
                assert!(inst.gamma > inst.beta);
            }
        }
    }
}
