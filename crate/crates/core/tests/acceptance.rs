//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgflow::decompose::{decompose_base_sun, decompose_tree_2base, verify_partition};
use sgflow::duality::{build_ps, flow_from_coloring};
use sgflow::flows::{
    connect, connect_composite, connect_prime, connect_projective, verify_avoidance, z2_to_3flow, ConnectOutcome, Hints,
};
use sgflow::generators;
use sgflow::graph::{
    all_cycles, is_k_edge_connected, is_two_unbalanced, EdgeSet, Orientation, SignedGraph,
};
use sgflow::group::{is_flow, AbelianGroup, EdgeMap, GroupElement, VertexMap};
use sgflow::oracle::{has_nz_a_flow, has_nz_k_flow, is_a_connected, random_edge_map, Connectivity};
use sgflow::Limits;

type Criterion = fn() -> (bool, String);

struct Report {
    lines: Vec<(usize, bool, String)>,
}

impl Report {
    fn record(&mut self, n: usize, ok: bool, detail: String) {
        println!("criterion {n}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((n, ok, detail));
    }
}

fn criterion_1() -> (bool, String) {
    let start = Instant::now();
    let g = generators::petersen_ps();
    let limits = Limits::default();
    let mut bad = Vec::new();
    for spec in ["Z2", "Z3", "Z4", "Z5", "Z2xZ2"] {
        let a = AbelianGroup::parse(spec).unwrap();
        if has_nz_a_flow(&g, &a, &limits).unwrap().is_some() {
            bad.push(spec.to_string());
        }
    }
    for k in 2..=5 {
        if has_nz_k_flow(&g, k, &limits).unwrap().is_some() {
            bad.push(format!("{k}-flow"));
        }
    }
    // the bound is sharp: a 6-flow exists
    let six = has_nz_k_flow(&g, 6, &limits).unwrap().is_some();
    let took = start.elapsed();
    let ok = bad.is_empty() && six && took < Duration::from_secs(600);
    (ok, format!("no nowhere-zero flow over Z2 Z3 Z4 Z5 Z2xZ2 or integer 2..5 on the signed Petersen graph; 6-flow found: {six}; unexpected: {bad:?}; {took:.2?}"))
}

fn timed_certificates(
    name: &str,
    g: &SignedGraph,
    groups: &[&str],
    count: usize,
    budget: Duration,
    seed: u64,
    run: impl Fn(&Orientation, &EdgeMap) -> sgflow::Result<sgflow::flows::AvoidanceCertificate>,
) -> (bool, String) {
    let tau = Orientation::default_for(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    let mut ok = true;
    for spec in groups {
        let a = AbelianGroup::parse(spec).unwrap();
        let (mut good, mut slowest) = (0, Duration::ZERO);
        for _ in 0..count {
            let fbar = random_edge_map(&a, g.edge_count(), &mut rng);
            let start = Instant::now();
            let result = run(&tau, &fbar);
            slowest = slowest.max(start.elapsed());
            if let Ok(cert) = result {
                if verify_avoidance(g, &cert).is_ok() && cert.fbar == fbar {
                    good += 1;
                }
            }
        }
        ok &= good == count && slowest <= budget;
        parts.push(format!("{spec} {good}/{count} (slowest {slowest:.2?})"));
    }
    (ok, format!("{name}: {}", parts.join(", ")))
}

fn criterion_2() -> (bool, String) {
    let g = generators::petersen_ps();
    timed_certificates("composite on the signed Petersen graph", &g, &["Z6", "Z2xZ2xZ2"], 100, Duration::from_secs(1), 2, |tau, f| {
        connect_composite(&g, tau, f)
    })
}

fn criterion_3() -> (bool, String) {
    let g = generators::petersen_two_negative();
    let limits = Limits::default();
    timed_certificates("prime on the doubly-negative Petersen graph", &g, &["Z11", "Z13"], 100, Duration::from_secs(5), 3, |tau, f| {
        connect_prime(&g, tau, f, &limits)
    })
}

fn criterion_4() -> (bool, String) {
    let ps = build_ps().unwrap();
    let g = ps.graph.clone();
    let (ok1, msg) = timed_certificates("projective with primal K6", &g, &["Z6", "Z7"], 100, Duration::from_secs(1), 4, |tau, f| {
        connect_projective(&g, tau, f, &ps.embedding)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut failures = 0;
    for i in 0..1000 {
        let a = AbelianGroup::parse(["Z5", "Z6", "Z7", "Z2xZ2", "Z3xZ3"][i % 5]).unwrap();
        let c = VertexMap { group: a.clone(), values: (0..6).map(|_| GroupElement(rng.gen_range(0..a.order() as u32))).collect() };
        match flow_from_coloring(&ps.embedding, &ps.dual, &c) {
            Ok(f) if is_flow(&ps.dual.graph, &ps.dual.tau, &f).unwrap() => {}
            _ => failures += 1,
        }
    }
    (ok1 && failures == 0, format!("{msg}; 1000 random colourings of K6, {failures} non-flows"))
}

/// Edges of `set` as an adjacency walk: connected and touching every vertex.
fn spans_connected(g: &SignedGraph, set: &EdgeSet, skip: Option<usize>) -> bool {
    let n = g.vertex_count();
    let touched: Vec<bool> = (0..n).map(|v| Some(v) != skip && set.iter().any(|e| g.endpoints(e).contains(&v))).collect();
    let Some(root) = (0..n).find(|&v| touched[v]) else { return true };
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for e in set.iter() {
            let [a, b] = g.endpoints(e);
            if Some(a) == skip || Some(b) == skip {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    (0..n).all(|v| !touched[v] || seen[v])
}

/// Whether some cycle inside `set` is negative, by 2-colouring signs.
fn set_unbalanced(g: &SignedGraph, set: &EdgeSet) -> bool {
    let n = g.vertex_count();
    let mut side: Vec<Option<i8>> = vec![None; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(1);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for e in set.iter() {
                let [a, b] = g.endpoints(e);
                if a != u && b != u {
                    continue;
                }
                let w = if a == u { b } else { a };
                let want = side[u].unwrap() * g.sign(e).as_i8();
                match side[w] {
                    None => {
                        side[w] = Some(want);
                        stack.push(w);
                    }
                    Some(s) if s != want => return true,
                    _ => {}
                }
            }
        }
    }
    false
}

fn naive_two_closure(g: &SignedGraph, seed: &EdgeSet) -> EdgeSet {
    let positive: Vec<_> = all_cycles(g)
        .unwrap()
        .into_iter()
        .filter(|c| c.edges.iter().map(|&e| g.sign(e).as_i8()).product::<i8>() > 0)
        .collect();
    let mut set = seed.clone();
    loop {
        let mut grew = false;
        for c in &positive {
            let missing: Vec<usize> = c.edges.iter().copied().filter(|&e| !set.contains(e)).collect();
            if (1..=2).contains(&missing.len()) {
                missing.iter().for_each(|&e| {
                    set.insert(e);
                });
                grew = true;
            }
        }
        if !grew {
            return set;
        }
    }
}

fn base_sun_conclusions(g: &SignedGraph) -> Result<(), String> {
    let cert = decompose_base_sun(g, false, &Limits::default()).map_err(|e| e.to_string())?;
    verify_partition(g, &cert)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    if !cert.x1.is_disjoint(&cert.x2) || cert.x1.union(&cert.x2) != EdgeSet::full(m) {
        return Err("not a partition".into());
    }
    // connected base: spanning, connected, n edges, its one cycle negative
    if cert.x1.len() != n || !spans_connected(g, &cert.x1, None) || !set_unbalanced(g, &cert.x1) {
        return Err("X1 is not a connected base".into());
    }
    // negative sun: a negative cycle whose vertices each carry one pendant edge of F
    let mut deg = vec![0; n];
    for e in cert.f.iter() {
        let [a, b] = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    let on_cycle = deg.iter().filter(|&&d| d == 3).count();
    let leaves = deg.iter().filter(|&&d| d == 1).count();
    let core = EdgeSet::from_edges(m, cert.f.iter().filter(|&e| g.endpoints(e).iter().all(|&v| deg[v] == 3)));
    if !cert.f.is_subset(&cert.x1)
        || on_cycle < 3
        || leaves != on_cycle
        || core.len() != on_cycle
        || cert.f.len() != 2 * on_cycle
        || !set_unbalanced(g, &core)
    {
        return Err("F is not a negative sun inside X1".into());
    }
    let closure = naive_two_closure(g, &cert.x2);
    if closure != EdgeSet::full(m).difference(&cert.f) {
        return Err("recomputed 2-closure of X2 is not E - F".into());
    }
    if !spans_connected(g, &closure, None) || (0..n).any(|v| !spans_connected(g, &closure, Some(v))) {
        return Err("2-closure of X2 is not 2-connected".into());
    }
    if !set_unbalanced(g, &cert.x2) {
        return Err("X2 is balanced".into());
    }
    Ok(())
}

fn criterion_5() -> (bool, String) {
    let mut graphs: Vec<(String, SignedGraph)> = vec![
        ("Petersen".into(), generators::petersen()),
        ("signed Petersen".into(), generators::petersen_ps()),
        ("K4".into(), generators::complete(4)),
    ];
    for i in 0..20u64 {
        let n = 4 + 2 * (i as usize % 6);
        graphs.push((format!("random cubic n={n} seed={i}"), generators::random_cubic(n, 0.3, 500 + i).unwrap()));
    }
    let mut failed = Vec::new();
    for (name, g) in &graphs {
        let ok = decompose_tree_2base(g).map_err(|e| e.to_string()).and_then(|c| verify_partition(g, &c));
        if let Err(r) = ok {
            failed.push(format!("{name}: {r}"));
        }
    }
    let sun = base_sun_conclusions(&generators::petersen_two_negative());
    let ok = failed.is_empty() && sun.is_ok();
    (ok, format!("tree + 2-base on {} graphs, failures {failed:?}; base + sun on the doubly-negative Petersen graph: {sun:?}", graphs.len()))
}

fn criterion_6() -> (bool, String) {
    let groups = ["Z6", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ3"];
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut agree, mut out_of_scope, mut disagreements) = (0, 0, Vec::new());
    let mut constructed = 0;
    for (name, g) in generators::suite().into_iter().filter(|(_, g)| g.vertex_count() <= 8) {
        let in_scope = is_k_edge_connected(&g, 3) && is_two_unbalanced(&g);
        for spec in groups {
            let a = AbelianGroup::parse(spec).unwrap();
            let verdict = is_a_connected(&g, &a, &limits).unwrap();
            if !in_scope {
                out_of_scope += 1;
                continue;
            }
            let tau = Orientation::default_for(&g);
            let mut failures = 0;
            for i in 0..10 {
                let fbar = if i == 0 { EdgeMap::zero(&a, g.edge_count()) } else { random_edge_map(&a, g.edge_count(), &mut rng) };
                match connect(&g, &tau, &fbar, &Hints::default(), &limits) {
                    Ok((ConnectOutcome::Flow(cert), _)) => {
                        if verify_avoidance(&g, &cert).is_err() {
                            failures += 1;
                        } else if cert.strategy != sgflow::flows::Strategy::Oracle {
                            constructed += 1;
                        }
                    }
                    _ => failures += 1,
                }
            }
            if failures > 0 && verdict == Connectivity::Yes {
                disagreements.push(format!("{name}/{spec}"));
            } else {
                agree += 1;
            }
        }
    }
    let ok = disagreements.is_empty();
    (ok, format!("{agree} graph-group pairs agree ({constructed} certificates from constructors), {out_of_scope} out of scope, disagreements {disagreements:?}"))
}

fn criterion_7() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut violations = Vec::new();
    let random_graph = |rng: &mut ChaCha8Rng, min_m: usize| {
        let n = rng.gen_range(1..8);
        generators::random_signed(n, rng.gen_range(min_m..11), rng.gen())
    };
    let groups: Vec<AbelianGroup> = ["Z2", "Z3", "Z6", "Z2xZ2", "Z3xZ3", "Z11"].iter().map(|s| AbelianGroup::parse(s).unwrap()).collect();
    for _ in 0..10_000 {
        let g = random_graph(&mut rng, 0);
        let side: Vec<bool> = (0..g.vertex_count()).map(|_| rng.gen_bool(0.5)).collect();
        if let Err(r) = switching_case(&g, &side, rng.gen()) {
            violations.push(format!("switching: {r}"));
        }
        let a = &groups[rng.gen_range(0..groups.len())];
        let mut tau = Orientation::default_for(&g);
        for e in g.edges() {
            if rng.gen_bool(0.5) {
                tau.reverse_edge(e);
            }
        }
        let f = random_edge_map(a, g.edge_count(), &mut rng);
        if let Err(r) = boundary_sum_case(&g, &tau, &f) {
            violations.push(format!("boundary sum: {r}"));
        }
    }
    for _ in 0..1_000 {
        let g = random_graph(&mut rng, 0);
        let seed = EdgeSet::from_edges(g.edge_count(), g.edges().filter(|_| rng.gen_bool(0.3)));
        let k = rng.gen_range(1..4);
        if let Err(r) = closure_case(&g, &seed, k, &mut rng) {
            violations.push(format!("closure: {r}"));
        }
        let h = random_graph(&mut rng, 4);
        let v = rng.gen_range(0..h.vertex_count());
        if let Err(r) = contract_case(&h, v, rng.gen(), rng.gen()) {
            violations.push(format!("contraction: {r}"));
        }
    }
    for n in 3..=8 {
        for p in [11, 13] {
            for s in 0..20 {
                if let Err(r) = sun_counts_case(n, p, 1000 * n as u64 + s) {
                    violations.push(format!("sun H_{n}: {r}"));
                }
            }
        }
    }
    let ok = violations.is_empty();
    (ok, format!("switching and boundary sums 10^4 each, closure order and contraction 10^3 each, sun counts on H_3..H_8; violations {violations:?}"))
}

fn criterion_8() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut good = 0;
    let mut biggest = 0;
    for _ in 0..200 {
        let (g, support) = random_z2_instance(&mut rng);
        biggest = biggest.max(g.edge_count());
        let tau = Orientation::default_for(&g);
        if let Ok(f) = z2_to_3flow(&g, &tau, &support, &EdgeSet::full(g.edge_count())) {
            if three_flow_case(&g, &tau, &support, &f).is_ok() {
                good += 1;
            }
        }
    }
    (good == 200 && biggest <= 12, format!("{good}/200 supports on carriers of at most {biggest} edges gave checked 3-flows"))
}

fn main() {
    let mut report = Report { lines: Vec::new() };
    let criteria: [(usize, Criterion); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    for (n, check) in criteria {
        let start = Instant::now();
        let (ok, detail) = check();
        report.record(n, ok, format!("{detail} [{:.1?}]", start.elapsed()));
    }
    let failed: Vec<usize> = report.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
