//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use circnoc::analysis::{
    adaptive_memory_bits, chip_capacity, clockwise_memory_bits, efficiency_k, max_cycle_count, route_cycle_count,
    table_memory_bits, ChipProfile, Resource, ResourceModel,
};
use circnoc::harness::{
    cycle_threshold, fuzz_termination, run_experiment, Dataset, ExperimentConfig, Figure, FuzzConfig,
    PUBLISHED_CYCLE_THRESHOLD,
};
use circnoc::routing::{
    build_routing_table, clockwise_hops, payload_bits, trace_route, AdaptiveMode, Algorithm, Router, RouterConfig,
};
use circnoc::topology::{bfs_distances, compare_topologies, search_best_ring_circulant, SelectionRule};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: circnoc::Error) -> String {
    e.to_string()
}

const TABLE_C8_1_3: [[u8; 8]; 8] = [
    [9, 0, 0, 1, 0, 3, 0, 2],
    [2, 9, 0, 0, 1, 0, 3, 0],
    [0, 2, 9, 0, 0, 1, 0, 3],
    [3, 0, 2, 9, 0, 0, 1, 0],
    [0, 3, 0, 2, 9, 0, 0, 1],
    [1, 0, 3, 0, 2, 9, 0, 0],
    [0, 1, 0, 3, 0, 2, 9, 0],
    [0, 0, 1, 0, 3, 0, 2, 9],
];

fn routing_table_golden() -> Check {
    let table = build_routing_table(&RouterConfig::new(8, 3).map_err(err)?);
    let mut matched = 0;
    for (u, row) in TABLE_C8_1_3.iter().enumerate() {
        for (v, &want) in row.iter().enumerate() {
            let got = table.entry(u, v).map_or(9, |p| p.value());
            ensure(got == want, || format!("entry {u} -> {v}: got {got}, want {want}"))?;
            matched += usize::from(u != v);
        }
    }
    Ok(format!("{matched} entries match"))
}

fn two_cycle_route() -> Check {
    let cfg = RouterConfig::new(100, 44).map_err(err)?;
    let t = trace_route(Algorithm::Adaptive, 0, 37, &cfg, &AdaptiveMode::default(), 200).map_err(err)?;
    let want = vec![0, 56, 12, 68, 24, 80, 36, 37];
    ensure(t.nodes == want, || format!("route {:?}", t.nodes))?;
    let cycles = route_cycle_count(&t, 100);
    ensure(t.hops == 7 && cycles == 2, || format!("{} hops, {cycles} cycles", t.hops))?;
    Ok("0 -> 37 in C(100; 1, 44): 7 hops, 2 cycles".into())
}

fn efficiency_claims() -> Check {
    let mode = AdaptiveMode::default();
    let mut adaptive_checked = 0;
    for m in 3..=23usize {
        let n = m * m;
        let cfg = RouterConfig::try_from(&search_best_ring_circulant(n).map_err(err)?).map_err(err)?;
        let k = |alg| efficiency_k(&cfg, alg, &mode, 0).map(|r| r.k).map_err(err);
        let table = k(Algorithm::Table)?;
        ensure(table == 1.0, || format!("K(table) = {table} for {cfg}"))?;
        let clockwise = k(Algorithm::Clockwise)?;
        ensure(clockwise >= 1.0, || format!("K(clockwise) = {clockwise} for {cfg}"))?;
        if max_cycle_count(&cfg) <= 2 {
            let adaptive = k(Algorithm::Adaptive)?;
            ensure(adaptive == 1.0, || format!("K(adaptive) = {adaptive} for {cfg}"))?;
            adaptive_checked += 1;
        }
    }
    let c16 = efficiency_k(&RouterConfig::new(16, 7).map_err(err)?, Algorithm::Clockwise, &mode, 0).map_err(err)?;
    let expect = 46.0 / 34.0;
    ensure((c16.k - expect).abs() <= 1e-9, || format!("K(clockwise, C(16; 1, 7)) = {}", c16.k))?;
    Ok(format!(
        "table and adaptive exact on 21 squares ({adaptive_checked} with <= 2 wraps), clockwise C(16; 1, 7) K = {:.4}",
        c16.k
    ))
}

fn cycle_threshold_sweep() -> Check {
    let out = run_experiment(&ExperimentConfig::new(Figure::Cycles)).map_err(err)?;
    let Dataset::Cycles(rows) = &out.dataset else {
        return Err("cycles experiment returned another dataset".into());
    };
    let first = cycle_threshold(rows).ok_or("no n in 5..=300 needs more than two wraps")?;
    if first.n == PUBLISHED_CYCLE_THRESHOLD {
        return Ok(format!("first n = {} matches", first.n));
    }
    ensure(out.notes.iter().any(|n| n.contains(&PUBLISHED_CYCLE_THRESHOLD.to_string())), || {
        "deviation not recorded in the experiment notes".into()
    })?;
    Ok(format!(
        "first n = {} (s2 = {}) vs published {}; documented deviation from the unspecified s2 rule",
        first.n, first.s2, PUBLISHED_CYCLE_THRESHOLD
    ))
}

fn memory_models() -> Check {
    let got = (
        table_memory_bits(8, 4).map_err(err)?,
        clockwise_memory_bits(8).map_err(err)?,
        adaptive_memory_bits(8).map_err(err)?,
        payload_bits(100).map_err(err)?,
    );
    ensure(got == (128, 40, 64, 7), || format!("got {got:?}"))?;
    Ok("128 / 40 / 64 bits, 7-bit payload".into())
}

fn chip_capacity_estimates() -> Check {
    let mut parts = Vec::new();
    for (alg, want) in [(Algorithm::Table, 275), (Algorithm::Clockwise, 278), (Algorithm::Adaptive, 53)] {
        let r = chip_capacity(&ResourceModel::CYCLONE_V, alg, &ChipProfile::default()).map_err(err)?;
        ensure(r.max_routers.abs_diff(want) <= 2, || format!("{alg}: {} routers, want {want}", r.max_routers))?;
        ensure(r.binding_resource == Resource::Alm, || format!("{alg}: registers bind"))?;
        parts.push(format!("{alg} {}", r.max_routers));
    }
    Ok(format!("{}, ALM binds", parts.join(", ")))
}

fn topology_comparison() -> Check {
    let sides: Vec<usize> = (3..=23).collect();
    let rows = compare_topologies(&sides, SelectionRule::BestRing).map_err(err)?;
    let mut best = 0.0f64;
    for r in &rows {
        let c = &r.circulant_metrics;
        ensure(c.diameter <= r.torus.diameter && r.torus.diameter <= r.mesh.diameter, || {
            format!("D order fails at side {}", r.side)
        })?;
        ensure(c.avg_distance <= r.torus.avg_distance && r.torus.avg_distance <= r.mesh.avg_distance, || {
            format!("L_av order fails at side {}", r.side)
        })?;
        best = best.max(r.red_d_vs_mesh);
    }
    ensure((58.0..=69.0).contains(&best), || format!("max D reduction {best:.1}%"))?;
    Ok(format!("orderings hold for sides 3..=23, max D reduction vs mesh {best:.1}%"))
}

fn oracle_equivalence() -> Check {
    let mut routes = 0u64;
    for n in 5..=120usize {
        for s2 in 2..n.div_ceil(2) {
            let cfg = RouterConfig::new(n, s2).map_err(err)?;
            let graph = cfg.graph();
            let wraps = max_cycle_count(&cfg).max(2);
            let mode = AdaptiveMode::corrected(wraps).map_err(err)?;
            let table = Router::new(Algorithm::Table, cfg, mode);
            let clockwise = Router::new(Algorithm::Clockwise, cfg, mode);
            let adaptive = Router::new(Algorithm::Adaptive, cfg, mode);
            let limit = 2 * n;
            for src in 0..n {
                let dist = bfs_distances(&graph, src).map_err(err)?;
                for dst in 0..n {
                    let d = dist[dst];
                    let t = table.hop_count(src, dst, limit).map_err(err)?;
                    ensure(t == d, || format!("table {src} -> {dst} in {cfg}: {t} vs {d}"))?;
                    let c = clockwise.hop_count(src, dst, limit).map_err(err)?;
                    let closed = clockwise_hops(cfg.offset(src, dst), &cfg);
                    ensure(c == closed && c >= d, || format!("clockwise {src} -> {dst} in {cfg}: {c}"))?;
                    let a = adaptive.hop_count(src, dst, limit).map_err(err)?;
                    ensure(a == d, || format!("adaptive {src} -> {dst} in {cfg} with {wraps} wraps: {a} vs {d}"))?;
                    routes += 3;
                }
            }
        }
    }
    Ok(format!("{routes} routes over n <= 120 agree with BFS"))
}

fn termination_fuzzing() -> Check {
    let cfg = FuzzConfig::default();
    let a = fuzz_termination(&cfg).map_err(err)?;
    ensure(a.passed(), || format!("{} hop-limit violations, first: {}", a.failures.len(), a.failures[0].error))?;
    let b = fuzz_termination(&cfg).map_err(err)?;
    ensure(a.to_json().map_err(err)? == b.to_json().map_err(err)?, || "reruns differ".into())?;
    Ok(format!("{} trials, 0 violations, reproducible report", cfg.trials))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("routing table golden", routing_table_golden),
        ("two-cycle adaptive route", two_cycle_route),
        ("efficiency claims", efficiency_claims),
        ("cycle threshold", cycle_threshold_sweep),
        ("memory models", memory_models),
        ("chip capacity", chip_capacity_estimates),
        ("topology comparison", topology_comparison),
        ("oracle equivalence", oracle_equivalence),
        ("termination fuzzing", termination_fuzzing),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
