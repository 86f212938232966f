//! Checks shared by the property suite and the acceptance run. Each returns a reason on failure.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgflow::flows::sun_flow;
use sgflow::generators;
use sgflow::graph::{
    all_cycles, contract, is_connected, signatures_equivalent, uncontract_halves, EdgeSet, Equivalence, HalfEdge,
    Orientation, Sign, SignedGraph,
};
use sgflow::group::{boundary, is_a_boundary, AbelianGroup, EdgeMap, IntegerEdgeMap};
use sgflow::oracle::random_edge_map;
use sgflow::structures::{
    check_closure_steps, closure_over, fundamental_cycle, negative_cycle_within, spanning_forest, sun_shape,
    NegativeSun,
};
use sgflow::graph::CycleRef;

pub type Check = Result<(), String>;

fn sign_of(g: &SignedGraph, c: &CycleRef) -> i8 {
    c.edges.iter().map(|&e| g.sign(e).as_i8()).product()
}

/// Switching twice is the identity, preserves every cycle sign, and is recovered by the
/// equivalence test; flipping one edge on a cycle is detected with a witness.
pub fn switching_case(g: &SignedGraph, side: &[bool], flip: usize) -> Check {
    let h = g.switch_set(side);
    if h.switch_set(side) != *g {
        return Err("switching twice changed the graph".into());
    }
    let cycles = all_cycles(g).map_err(|e| e.to_string())?;
    if cycles.iter().any(|c| sign_of(g, c) != sign_of(&h, c)) {
        return Err("switching changed a cycle sign".into());
    }
    match signatures_equivalent(g, &h).map_err(|e| e.to_string())? {
        Equivalence::Equivalent { switching } if g.switch_set(&switching) == h => {}
        other => return Err(format!("equivalence not recovered: {other:?}")),
    }
    if g.edge_count() == 0 {
        return Ok(());
    }
    let e = flip % g.edge_count();
    let mut signs = h.signs().to_vec();
    signs[e] = signs[e] * Sign::Negative;
    let k = h.with_signs(signs).map_err(|e| e.to_string())?;
    let on_cycle = cycles.iter().any(|c| c.edges.contains(&e));
    match signatures_equivalent(g, &k).map_err(|e| e.to_string())? {
        Equivalence::Different { cycle } if on_cycle && sign_of(g, &cycle) != sign_of(&k, &cycle) => Ok(()),
        Equivalence::Equivalent { switching } if !on_cycle && g.switch_set(&switching) == k => Ok(()),
        other => Err(format!("flipping edge {e} (on a cycle: {on_cycle}) gave {other:?}")),
    }
}

/// The boundary of any map sums to `2a`, `a` the signed sum over negative edges.
pub fn boundary_sum_case(g: &SignedGraph, tau: &Orientation, f: &EdgeMap) -> Check {
    let a = &f.group;
    let beta = boundary(g, tau, f).map_err(|e| e.to_string())?;
    let half = a.sum(g.edges().filter(|&e| g.sign(e).is_negative()).map(|e| a.signed(f.get(e), tau.get(HalfEdge::of(e, 0)))));
    if beta.total() != a.add(half, half) {
        return Err(format!("total {:?} is not twice {:?}", beta.total(), half));
    }
    if !is_a_boundary(&beta).holds() {
        return Err("the boundary of a map was not recognised as an A-boundary".into());
    }
    Ok(())
}

/// The closure does not depend on the order the positive cycles are scanned in, is
/// closed, and its recorded steps replay to it.
pub fn closure_case(g: &SignedGraph, seed: &EdgeSet, k: usize, rng: &mut ChaCha8Rng) -> Check {
    let mut cycles: Vec<CycleRef> =
        all_cycles(g).map_err(|e| e.to_string())?.into_iter().filter(|c| sign_of(g, c) > 0).collect();
    let first = closure_over(&cycles, seed, k);
    cycles.shuffle(rng);
    let second = closure_over(&cycles, seed, k);
    if first.set != second.set {
        return Err(format!("closures differ: {} vs {}", first.set, second.set));
    }
    if let Some(c) = cycles.iter().find(|c| {
        let missing = c.edges.iter().filter(|&&e| !first.set.contains(e)).count();
        (1..=k).contains(&missing)
    }) {
        return Err(format!("closure misses a positive cycle {:?}", c.edges));
    }
    if check_closure_steps(g, seed, k, &first.steps).as_ref() != Some(&first.set) {
        return Err("recorded steps do not replay".into());
    }
    Ok(())
}

/// Contracting the edge created by an uncontraction gives back the original graph,
/// unless the split broke a positive loop (which contraction then drops).
pub fn contract_case(g: &SignedGraph, v: usize, i: usize, j: usize) -> Check {
    let hs = g.half_edges_at(v);
    if hs.len() < 4 {
        return Ok(());
    }
    let (h1, h2) = (hs[i % hs.len()], hs[j % hs.len()]);
    if h1 == h2 {
        return Ok(());
    }
    let broken_loop = [h1, h2].iter().any(|&h| {
        let e = h.edge();
        g.is_loop(e) && !g.sign(e).is_negative() && !(h1.edge() == e && h2.edge() == e)
    });
    let u = uncontract_halves(g, v, h1, h2).map_err(|e| e.to_string())?;
    if u.graph.degree(u.new_vertex) != 3 || u.graph.degree(v) + 1 != g.degree(v) {
        return Err("split degrees are wrong".into());
    }
    let (back, map) = contract(&u.graph, u.new_edge).map_err(|e| e.to_string())?;
    if broken_loop {
        return Ok(());
    }
    if back != *g {
        return Err("contract(uncontract(g)) differs from g".into());
    }
    if map.edge[u.new_edge].is_some() || (0..g.edge_count()).any(|e| map.edge[e] != Some(e)) {
        return Err("index map is not the identity".into());
    }
    Ok(())
}

/// `H_n` with its pendant ends closed into a ring carrying one negative edge.
pub fn sun_host(n: usize) -> (SignedGraph, NegativeSun, CycleRef) {
    let mut g = generators::negative_sun(n).expect("n >= 3");
    for i in 0..n {
        let s = if i == 0 { Sign::Negative } else { Sign::Positive };
        g.add_edge(n + i, n + (i + 1) % n, s).expect("in range");
    }
    let sun = sun_shape(&g, &EdgeSet::from_edges(g.edge_count(), 0..2 * n)).expect("valid").expect("a sun");
    let ring = EdgeSet::from_edges(g.edge_count(), 2 * n..3 * n);
    let neg = negative_cycle_within(&g, &ring).expect("ring is negative");
    (g, sun, neg)
}

/// Every fixing step on a sun rules out fewer than 11 values.
pub fn sun_counts_case(n: usize, p: u32, seed: u64) -> Check {
    let (g, sun, neg) = sun_host(n);
    let a = AbelianGroup::cyclic(p).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fbar = random_edge_map(&a, g.edge_count(), &mut rng);
    let tau = Orientation::default_for(&g);
    let r = sun_flow(&g, &tau, &sun, &neg, &fbar).map_err(|e| e.to_string())?;
    if let Some(c) = r.ruled_out.iter().find(|&&c| c >= 11) {
        return Err(format!("{c} values ruled out on H_{n}"));
    }
    if !sgflow::group::is_flow(&g, &tau, &r.flow).map_err(|e| e.to_string())? {
        return Err("sun flow is not a flow".into());
    }
    Ok(())
}

/// A connected signed graph with at most 12 edges and a nonempty even subgraph with an
/// even number of negative edges, built as a sum of fundamental cycles.
pub fn random_z2_instance(rng: &mut ChaCha8Rng) -> (SignedGraph, EdgeSet) {
    loop {
        let n = rng.gen_range(2..=7);
        let m = rng.gen_range(n..=12);
        let g = generators::random_signed(n, m, rng.gen());
        if !is_connected(&g) {
            continue;
        }
        let tree = spanning_forest(&g, &EdgeSet::full(m));
        let mut support = EdgeSet::empty(m);
        for e in tree.complement().iter() {
            if rng.gen_bool(0.5) {
                let c = fundamental_cycle(&g, &tree, e).expect("non-tree edge closes a cycle");
                support = support.symmetric_difference(&c.edge_set(m));
            }
        }
        let negatives = support.iter().filter(|&e| g.sign(e).is_negative()).count();
        if !support.is_empty() && negatives % 2 == 0 {
            return (g, support);
        }
    }
}

/// Boundary zero over the integers, values in `-2..=2`, `±1` exactly where required.
pub fn three_flow_case(g: &SignedGraph, tau: &Orientation, support: &EdgeSet, f: &IntegerEdgeMap) -> Check {
    let mut excess = vec![0i64; g.vertex_count()];
    for e in g.edges() {
        let x = f.values[e];
        if x.abs() > 2 {
            return Err(format!("edge {e} carries {x}"));
        }
        if support.contains(e) && x.abs() != 1 {
            return Err(format!("support edge {e} carries {x}"));
        }
        for end in 0..2 {
            let h = HalfEdge::of(e, end);
            excess[g.vertex_of(h)] += tau.get(h) as i64 * x;
        }
    }
    match excess.iter().position(|&b| b != 0) {
        Some(v) => Err(format!("nonzero boundary at vertex {v}")),
        None => Ok(()),
    }
}
