use crate::decompose::PATH_LIMIT;
use crate::error::{Error, Result};
use crate::graph::{cycles_within, CycleRef, Edge, EdgeSet, HalfEdge, Orientation, PathRef, Sign, SignedGraph, Vertex};
use crate::group::{integer_boundary, AbelianGroup, EdgeMap, GroupElement, IntegerEdgeMap};
use crate::structures::Barbell;

/// A positive cycle or a barbell: the supports of the elementary flows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Circuit {
    Cycle(CycleRef),
    Barbell(Barbell),
}

impl Circuit {
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Circuit::Cycle(c) => c.edges.clone(),
            Circuit::Barbell(b) => [&b.first.edges[..], &b.second.edges, &b.path.edges].concat(),
        }
    }

    pub fn edge_set(&self, m: usize) -> EdgeSet {
        EdgeSet::from_edges(m, self.edges())
    }

    /// The cycles of the circuit: one, or the two ends of a barbell.
    pub fn cycles(&self) -> Vec<&CycleRef> {
        match self {
            Circuit::Cycle(c) => vec![c],
            Circuit::Barbell(b) => vec![&b.first, &b.second],
        }
    }

    /// The integer flow with value `±1` on cycle edges and `±2` on a barbell's path.
    pub fn unit_flow(&self, g: &SignedGraph, tau: &Orientation) -> Result<IntegerEdgeMap> {
        let mut coef = vec![0i64; g.edge_count()];
        match self {
            Circuit::Cycle(c) => {
                c.validate(g)?;
                if walk_cycle(g, tau, c, c.vertices[0], 1, &mut coef) != 0 {
                    return Err(Error::pre("a cycle flow needs a positive cycle"));
                }
            }
            Circuit::Barbell(b) => {
                b.validate(g)?;
                let u = b.path.start();
                let r1 = walk_cycle(g, tau, &b.first, u, 1, &mut coef);
                // Carry the excess of the first cycle along the path.
                let mut q = r1;
                for (i, &e) in b.path.edges.iter().enumerate() {
                    let (out, inn) = halves(g, e, b.path.vertices[i]);
                    let d = -q * tau.get(out) as i64;
                    coef[e] = d;
                    q = tau.get(inn) as i64 * d;
                }
                let mut second = vec![0i64; g.edge_count()];
                let r2 = walk_cycle(g, tau, &b.second, b.path.end(), 1, &mut second);
                let s = -q / r2;
                for e in &b.second.edges {
                    coef[*e] = s * second[*e];
                }
            }
        }
        let f = IntegerEdgeMap { values: coef };
        if integer_boundary(g, tau, &f).iter().any(|&x| x != 0) {
            return Err(Error::internal("elementary flow has nonzero boundary"));
        }
        Ok(f)
    }
}

/// `±1` around any cycle, balancing every vertex but the first; also returns the excess
/// left there, which is `±2` for a negative cycle.
pub fn cycle_coefficients(g: &SignedGraph, tau: &Orientation, c: &CycleRef) -> (IntegerEdgeMap, i64) {
    let mut coef = vec![0i64; g.edge_count()];
    let r = walk_cycle(g, tau, c, c.vertices[0], 1, &mut coef);
    (IntegerEdgeMap { values: coef }, r)
}

/// The half-edge of `e` at `v` and its mate; a loop leaves at end 0.
fn halves(g: &SignedGraph, e: Edge, v: Vertex) -> (HalfEdge, HalfEdge) {
    let out = if g.endpoints(e)[0] == v { HalfEdge::of(e, 0) } else { HalfEdge::of(e, 1) };
    (out, out.mate())
}

/// Writes `±scale` around `c` starting at `start` so every vertex but `start` balances;
/// returns the excess left at `start` (zero exactly when `c` is positive).
fn walk_cycle(g: &SignedGraph, tau: &Orientation, c: &CycleRef, start: Vertex, scale: i64, coef: &mut [i64]) -> i64 {
    let k = c.len();
    let at = c.vertices.iter().position(|&v| v == start).expect("start lies on the cycle");
    let mut value = scale;
    let mut first_out = None;
    let mut last_in = None;
    for t in 0..k {
        let i = (at + t) % k;
        let e = c.edges[i];
        let (out, inn) = halves(g, e, c.vertices[i]);
        if let Some(prev) = last_in {
            value *= -(tau.get(prev) as i64) * tau.get(out) as i64;
        } else {
            first_out = Some(out);
        }
        coef[e] = value;
        last_in = Some(inn);
    }
    tau.get(last_in.unwrap()) as i64 * value + tau.get(first_out.unwrap()) as i64 * scale
}

/// Adds `x` times an integer flow to a group-valued map.
pub fn add_scaled(a: &AbelianGroup, target: &mut EdgeMap, unit: &IntegerEdgeMap, x: GroupElement) {
    for (e, &k) in unit.values.iter().enumerate() {
        if k != 0 {
            target.values[e] = a.add(target.values[e], a.scale(x, k));
        }
    }
}

/// A circuit inside `set` containing every `required` edge, none of them on a barbell path.
/// Positive cycles are preferred, shortest first.
pub fn circuit_within(g: &SignedGraph, set: &EdgeSet, required: &[Edge]) -> Result<Option<Circuit>> {
    let cycles = cycles_within(g, set)?;
    let holds = |edges: &[Edge]| required.iter().all(|e| edges.contains(e));
    if let Some(c) = cycles.iter().find(|c| c.sign_unchecked(g) == Sign::Positive && holds(&c.edges)) {
        return Ok(Some(Circuit::Cycle(c.clone())));
    }
    let negative: Vec<&CycleRef> = cycles.iter().filter(|c| c.sign_unchecked(g).is_negative()).collect();
    let n = g.vertex_count();
    let mut best: Option<Barbell> = None;
    for (i, c1) in negative.iter().enumerate() {
        for c2 in &negative[i + 1..] {
            if !holds(&[&c1.edges[..], &c2.edges].concat()) || c1.edges.iter().any(|e| c2.edges.contains(e)) {
                continue;
            }
            let (m1, m2) = (c1.vertex_mask(n), c2.vertex_mask(n));
            let shared: Vec<Vertex> = c1.vertices.iter().copied().filter(|&v| m2[v]).collect();
            let path = match shared.len() {
                0 => c1
                    .vertices
                    .iter()
                    .filter_map(|&u| crate::graph::shortest_path(g, u, &m2, set, &m1))
                    .min_by_key(|p| p.len()),
                1 => Some(PathRef::trivial(shared[0])),
                _ => None,
            };
            let Some(path) = path else { continue };
            if best.as_ref().is_none_or(|b| b.path.len() > path.len()) {
                best = Some(Barbell { first: (*c1).clone(), second: (*c2).clone(), path });
            }
        }
    }
    Ok(best.map(Circuit::Barbell))
}

/// A shortest path of the given sign from `from` to `to` using allowed edges and
/// avoiding blocked vertices.
pub fn signed_path(
    g: &SignedGraph,
    from: Vertex,
    to: Vertex,
    sign: Sign,
    allowed: &EdgeSet,
    blocked: &[bool],
) -> Result<Option<PathRef>> {
    if from == to {
        return Ok((sign == Sign::Positive).then(|| PathRef::trivial(from)));
    }
    let n = g.vertex_count();
    let mut count = 0usize;
    for depth in 1..n {
        let mut on_path = blocked.to_vec();
        on_path[from] = true;
        let mut path = PathRef::trivial(from);
        if let Some(p) = deepen(g, to, sign, allowed, depth, &mut on_path, &mut path, &mut count)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn deepen(
    g: &SignedGraph,
    to: Vertex,
    sign: Sign,
    allowed: &EdgeSet,
    depth: usize,
    on_path: &mut Vec<bool>,
    path: &mut PathRef,
    count: &mut usize,
) -> Result<Option<PathRef>> {
    let u = path.end();
    if u == to {
        return Ok((path.sign(g) == sign).then(|| path.clone()));
    }
    if path.len() == depth {
        return Ok(None);
    }
    *count += 1;
    if *count > PATH_LIMIT {
        return Err(Error::DeskScale { what: "path count", limit: PATH_LIMIT, actual: *count });
    }
    for e in g.edges_at(u) {
        let w = g.other_end(e, u);
        if !allowed.contains(e) || on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.vertices.push(w);
        path.edges.push(e);
        let found = deepen(g, to, sign, allowed, depth, on_path, path, count)?;
        path.vertices.pop();
        path.edges.pop();
        on_path[w] = false;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::group::is_flow;

    fn check(g: &SignedGraph, c: &Circuit) {
        let tau = Orientation::default_for(g);
        let u = c.unit_flow(g, &tau).unwrap();
        let z = AbelianGroup::cyclic(5).unwrap();
        let mut f = EdgeMap::zero(&z, g.edge_count());
        add_scaled(&z, &mut f, &u, GroupElement(2));
        assert!(is_flow(g, &tau, &f).unwrap());
    }

    #[test]
    fn cycle_and_barbell_flows() {
        let g = generators::petersen_two_negative();
        let all = EdgeSet::full(g.edge_count());
        let c = circuit_within(&g, &all, &[3]).unwrap().unwrap();
        assert!(matches!(c, Circuit::Cycle(_)));
        check(&g, &c);
        // two negative loops joined by an edge
        let db = SignedGraph::from_edges(2, [(0, 0, Sign::Negative), (0, 1, Sign::Positive), (1, 1, Sign::Negative)]).unwrap();
        let c = circuit_within(&db, &EdgeSet::full(3), &[0, 2]).unwrap().unwrap();
        let Circuit::Barbell(b) = &c else { panic!("expected a barbell") };
        assert_eq!(b.path.edges, vec![1]);
        let u = c.unit_flow(&db, &Orientation::default_for(&db)).unwrap();
        assert_eq!(u.values.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 2, 1]);
        check(&db, &c);
        // figure eight: two negative loops at one vertex
        let eight = SignedGraph::from_edges(1, [(0, 0, Sign::Negative), (0, 0, Sign::Negative)]).unwrap();
        let c = circuit_within(&eight, &EdgeSet::full(2), &[0]).unwrap().unwrap();
        check(&eight, &c);
    }

    #[test]
    fn signed_paths() {
        let g = generators::petersen_ps();
        let all = EdgeSet::full(g.edge_count());
        let none = vec![false; g.vertex_count()];
        for s in [Sign::Positive, Sign::Negative] {
            let p = signed_path(&g, 0, 7, s, &all, &none).unwrap().unwrap();
            p.validate(&g).unwrap();
            assert_eq!(p.sign(&g), s);
            assert_eq!(p.end(), 7);
        }
    }
}
