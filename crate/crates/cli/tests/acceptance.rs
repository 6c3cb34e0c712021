//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::Zero;
use replen::commands::{bench, csv_string};
use replen::format::{to_json, InstanceFile};
use replen_core::drm::{DrmOracle, DrmParams};
use replen_core::exact::{
    brute_force_optimum, final_allocate, value_oracle_exact, BreachBound, ExactOracle, BRUTE_FORCE_BUDGET,
};
use replen_core::gen::{corpus, generate, preset, GenConfig};
use replen_core::global::solve_global;
use replen_core::greedy::{audit_submodularity, full_solve, plan_trailers, OracleKind, PlannerConfig};
use replen_core::model::{compute_metrics, Instance, TrailerAssignment};
use replen_core::oracle::{Sequential, ValueOracle};
use replen_core::rational::{int, is_integer, to_f64, to_string};
use replen_core::reduction::Variant;
use replen_core::Rational;

/// Criteria expected to fail, with the reason recorded alongside the results.
const KNOWN_FAILURES: &[&str] = &["6"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn small_corpus(seed: u64, count: usize) -> Vec<Instance> {
    corpus(&preset("small-corpus").unwrap(), seed, count).unwrap()
}

fn all_assignments(max: &[u64]) -> Vec<TrailerAssignment> {
    let mut out = vec![Vec::new()];
    for &r in max {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..=r).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(TrailerAssignment).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let instances = small_corpus(1000, 200);
    let (mut pairs, mut feasible, mut mismatches) = (0, 0, 0);
    for inst in &instances {
        for x in all_assignments(&inst.max_trailers) {
            let exact = value_oracle_exact(inst, &x, Variant::Final).unwrap();
            let brute = brute_force_optimum(inst, &x, BreachBound::PerStore(inst.trailer_min), BRUTE_FORCE_BUDGET)
                .unwrap()
                .map(|(v, _)| v);
            pairs += 1;
            feasible += usize::from(exact.is_some());
            mismatches += usize::from(exact != brute);
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: "1",
        pass: mismatches == 0 && instances.len() >= 200 && elapsed < Duration::from_secs(300),
        detail: format!(
            "oracle equivalence: {} instances, {pairs} assignments ({feasible} feasible), {mismatches} mismatches, {:.1}s",
            instances.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion_2() -> Outcome {
    let (mut plans, mut cells, mut fractional) = (0, 0, 0);
    let mut tally = |inst: &Instance, x: &TrailerAssignment| {
        if value_oracle_exact(inst, x, Variant::Final).unwrap().is_none() {
            return;
        }
        let plan = final_allocate(inst, x).unwrap();
        plans += 1;
        for q in plan.alloc.iter().flatten().chain(&plan.breach) {
            if !q.is_zero() {
                cells += 1;
                fractional += usize::from(!is_integer(q));
            }
        }
        assert_eq!(compute_metrics(inst, x, &plan).integrality_fraction, 1.0);
    };
    for inst in small_corpus(1000, 200) {
        for x in all_assignments(&inst.max_trailers) {
            tally(&inst, &x);
        }
    }
    for name in ["expA", "expB", "expC", "expD"] {
        for seed in 0..3 {
            let inst = generate(&GenConfig { seed, ..preset(name).unwrap() }).unwrap();
            let sol = full_solve(&inst, &PlannerConfig::default()).unwrap();
            tally(&inst, &sol.x);
        }
    }
    Outcome {
        id: "2",
        pass: fractional == 0 && plans > 0,
        detail: format!("integrality: {plans} final plans, {cells} nonzero values, {fractional} fractional"),
    }
}

fn criterion_3() -> Outcome {
    let instances: Vec<Instance> = small_corpus(2000, 40)
        .into_iter()
        .filter(|i| i.stores.len() >= 2)
        .take(6)
        .collect();
    let (mut total, mut positive, mut distinct) = (0, 0, 0);
    let mut min: Option<Rational> = None;
    for (n, inst) in instances.iter().enumerate() {
        let report = audit_submodularity(inst, 20, n as u64).unwrap();
        total += report.triplets.len();
        positive += report.triplets.iter().filter(|t| t.difference > Rational::zero()).count();
        distinct += report.triplets.iter().filter(|t| t.x != t.y).count();
        if let Some(m) = report.min_difference {
            min = Some(min.map_or(m, |v| v.min(m)));
        }
    }
    let min_ok = min.is_some_and(|m| m >= Rational::zero());
    Outcome {
        id: "3",
        pass: min_ok && total >= 100 && instances.len() >= 5,
        detail: format!(
            "submodularity audit: {} instances, {total} triplets ({distinct} with X != Y, {positive} strictly positive), min difference {}",
            instances.len(),
            min.map_or("none".into(), |m| to_string(&m))
        ),
    }
}

fn criterion_4() -> Outcome {
    let instances = small_corpus(3000, 60);
    let (mut same, mut violations, mut gap_sum) = (0, 0, 0.0);
    for inst in &instances {
        assert!(inst.stores.len() <= 5 && inst.max_trailers.iter().all(|&r| r <= 2));
        let greedy = full_solve(inst, &PlannerConfig::default()).unwrap();
        let global = solve_global(inst, 10_000_000).unwrap();
        assert!(global.optimal);
        same += usize::from(greedy.x == global.solution.x);
        violations += usize::from(greedy.objective > global.solution.objective);
        let (g, opt) = (to_f64(&greedy.objective), to_f64(&global.solution.objective));
        gap_sum += if opt.abs() > 0.0 { (opt - g) / opt.abs() } else { 0.0 };
    }
    let share = same as f64 / instances.len() as f64;
    let gap = gap_sum / instances.len() as f64;
    Outcome {
        id: "4",
        pass: violations == 0 && share >= 0.7 && gap <= 0.05,
        detail: format!(
            "greedy vs global: {} instances, identical x {:.1}%, mean gap {:.4}%, {violations} greedy > global",
            instances.len(),
            100.0 * share,
            100.0 * gap
        ),
    }
}

struct Fidelity {
    points: usize,
    hits: usize,
    max_residual: f64,
    nonconverged: usize,
}

/// Replays greedy runs and, at every step with two or more candidates,
/// compares the entropic argmax with the exact best total gain.
fn fidelity(instances: &[Instance], variant: Variant, params: DrmParams) -> Fidelity {
    let mut f = Fidelity {
        points: 0,
        hits: 0,
        max_residual: 0.0,
        nonconverged: 0,
    };
    for inst in instances {
        let exact = ExactOracle::new(inst, variant);
        let drm = DrmOracle::new(inst, variant, params).unwrap();
        let cfg = PlannerConfig {
            variant,
            ..PlannerConfig::default()
        };
        let run = plan_trailers(&exact, &cfg, &Sequential).unwrap();
        let mut x = TrailerAssignment::zeros(inst.stores.len());
        for step in &run.accepted {
            let candidates: Vec<usize> = (0..inst.stores.len()).filter(|&j| x.get(j) < inst.max_trailers[j]).collect();
            if candidates.len() >= 2 {
                let mut exact_gain = Vec::new();
                let mut drm_gain = Vec::new();
                for &k in &candidates {
                    let xk = x.incremented(k);
                    let reward = inst.beta * int(inst.store_priority[k] as i128);
                    exact_gain.push(exact.evaluate(&xk, None).unwrap().value.map(|v| v + reward));
                    let e = drm.evaluate(&xk, None).unwrap();
                    if e.converged {
                        f.max_residual = f.max_residual.max(e.residual);
                    } else {
                        f.nonconverged += 1;
                    }
                    drm_gain.push(e.value.map(|v| v + to_f64(&reward)));
                }
                let best = exact_gain.iter().flatten().max().copied();
                let mut pick: Option<usize> = None;
                for (n, g) in drm_gain.iter().enumerate() {
                    if let Some(g) = g {
                        if pick.is_none_or(|p| *g > drm_gain[p].unwrap()) {
                            pick = Some(n);
                        }
                    }
                }
                f.points += 1;
                if pick.is_some_and(|p| exact_gain[p] == best) {
                    f.hits += 1;
                }
            }
            x = x.incremented(step.store);
        }
    }
    f
}

fn criterion_5() -> Outcome {
    let instances = small_corpus(4000, 100);
    let params = DrmParams::default();
    let probe = fidelity(&instances, Variant::Probe, params);
    let fin = fidelity(&instances, Variant::Final, params);
    let rate = |f: &Fidelity| f.hits as f64 / f.points.max(1) as f64;
    let residual_ok = probe.max_residual <= params.eps && fin.max_residual <= params.eps;
    Outcome {
        id: "5",
        pass: probe.points >= 30 && rate(&probe) >= 0.9 && residual_ok,
        detail: format!(
            "entropic argmax fidelity (mu = 1): probe construction {}/{} = {:.1}%; final construction {}/{} = {:.1}% (informational); max residual {:.2e}, {} unconverged",
            probe.hits,
            probe.points,
            100.0 * rate(&probe),
            fin.hits,
            fin.points,
            100.0 * rate(&fin),
            probe.max_residual.max(fin.max_residual),
            probe.nonconverged + fin.nonconverged
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut labour = [0.0; 4];
    let mut trailer = [0.0; 4];
    let mut dos = [0.0; 4];
    for (p, name) in ["expA", "expB", "expC", "expD"].iter().enumerate() {
        let mut dos_n = 0;
        for seed in 0..10 {
            let inst = generate(&GenConfig { seed, ..preset(name).unwrap() }).unwrap();
            let m = full_solve(&inst, &PlannerConfig::default()).unwrap().metrics;
            labour[p] += m.overall_labour_utilization / 10.0;
            trailer[p] += m.trailer_utilization / 10.0;
            if let Some(d) = m.mean_pf_dos {
                dos[p] += d;
                dos_n += 1;
            }
        }
        dos[p] /= f64::from(dos_n.max(1));
    }
    let a = labour[1] > labour[0];
    let b = trailer[3] > trailer[1];
    let c = dos[3] < dos[2];
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
    Outcome {
        id: "6",
        pass: a && b && c,
        detail: format!(
            "directional: labour B {:.4} > A {:.4} {}; trailer D {:.4} > B {:.4} {}; PF-DOS D {:.4} < C {:.4} {}",
            labour[1],
            labour[0],
            mark(a),
            trailer[3],
            trailer[1],
            mark(b),
            dos[3],
            dos[2],
            mark(c)
        ),
    }
}

fn criterion_7() -> Outcome {
    let inst = generate(&preset("medium-bench").unwrap()).unwrap();
    let cfg = PlannerConfig {
        oracle: OracleKind::Drm,
        variant: Variant::Probe,
        ..PlannerConfig::default()
    };
    let start = Instant::now();
    let sol = full_solve(&inst, &cfg).unwrap();
    let elapsed = start.elapsed();
    let rows = bench(&[(20, 5), (60, 10)], 5, 0, DrmParams::default()).unwrap();
    let csv = csv_string(&rows).unwrap();
    let ratios: Vec<String> = rows.iter().map(|r| format!("{} {:.2}", r.size, r.drm_to_exact)).collect();
    Outcome {
        id: "7",
        pass: elapsed < Duration::from_secs(120) && csv.lines().count() == rows.len() + 1,
        detail: format!(
            "performance: medium-bench {} items x {} stores, {} lanes, greedy-drm full solve {:.1}s ({} trailers, {} oracle calls); bench DRM/exact time per call: {}",
            inst.items.len(),
            inst.stores.len(),
            inst.lanes.len(),
            elapsed.as_secs_f64(),
            sol.x.total(),
            sol.stats.oracle_calls,
            ratios.join(", ")
        ),
    }
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate(&GenConfig { seed: 8, ..preset("expD").unwrap() }).unwrap();
    let input = dir.path().join("instance.json");
    std::fs::write(&input, to_json(&InstanceFile::from_instance(&inst)).unwrap()).unwrap();
    let mut outputs = Vec::new();
    for n in 0..2 {
        let out = dir.path().join(format!("plan{n}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_replen"))
            .args(["solve", "--rho", "1", "--solver", "greedy-exact", "-o"])
            .arg(&out)
            .arg(&input)
            .output()
            .unwrap();
        assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
        outputs.push(std::fs::read(&out).unwrap());
    }
    Outcome {
        id: "8",
        pass: outputs[0] == outputs[1] && !outputs[0].is_empty(),
        detail: format!("determinism: two solve runs, plan files {} bytes, identical {}", outputs[0].len(), outputs[0] == outputs[1]),
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 8] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ];
    let mut unexpected = Vec::new();
    for run in criteria {
        let o = run();
        let known = KNOWN_FAILURES.contains(&o.id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {}: {tag}: {}", o.id, o.detail);
        if o.pass == known {
            unexpected.push(o.id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
