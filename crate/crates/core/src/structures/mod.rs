//! Cycle-level structure of signed graphs: negative cycles, thetas, bases,
//! closures, bridges, peripheral cycles and negative suns.

mod closure;
mod sun;

pub use closure::*;
pub use sun::*;

use crate::error::{Error, Result};
use crate::graph::{
    all_cycles, balance, balance_of, components_within, cycles_within, is_connected, Balance, CycleRef, Edge, EdgeSet,
    PathRef, Sign, SignedGraph, Vertex,
};

pub use crate::graph::cycle_sign;

/// A negative cycle, if the graph is unbalanced.
pub fn find_negative_cycle(g: &SignedGraph) -> Option<CycleRef> {
    match balance(g) {
        Balance::Balanced { .. } => None,
        Balance::Unbalanced { witness } => Some(witness),
    }
}

/// The subgraph formed by `set` is balanced.
pub fn is_edge_set_balanced(g: &SignedGraph, set: &EdgeSet) -> bool {
    let (sub, _) = g.edge_subgraph(set);
    balance(&sub).is_balanced()
}

/// A negative cycle inside the subgraph formed by `set`, in host edge indices.
pub fn negative_cycle_within(g: &SignedGraph, set: &EdgeSet) -> Option<CycleRef> {
    let (sub, back) = g.edge_subgraph(set);
    find_negative_cycle(&sub).map(|c| CycleRef { vertices: c.vertices, edges: c.edges.iter().map(|&e| back[e]).collect() })
}

/// Two vertex-disjoint cycles of the requested signs (`None` accepts either sign).
pub fn disjoint_cycles(g: &SignedGraph, first: Option<Sign>, second: Option<Sign>) -> Result<Option<(CycleRef, CycleRef)>> {
    let cycles = all_cycles(g)?;
    let n = g.vertex_count();
    let masks: Vec<Vec<bool>> = cycles.iter().map(|c| c.vertex_mask(n)).collect();
    let signs: Vec<Sign> = cycles.iter().map(|c| c.sign_unchecked(g)).collect();
    for i in 0..cycles.len() {
        if first.is_some_and(|s| s != signs[i]) {
            continue;
        }
        for j in 0..cycles.len() {
            if i == j || second.is_some_and(|s| s != signs[j]) {
                continue;
            }
            if cycles[j].vertices.iter().all(|&v| !masks[i][v]) {
                return Ok(Some((cycles[i].clone(), cycles[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Three internally disjoint paths between two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta {
    pub paths: [PathRef; 3],
}

/// Up to `k` internally vertex-disjoint `x`–`y` paths over allowed edges, by unit augmenting paths.
pub fn disjoint_paths(g: &SignedGraph, x: Vertex, y: Vertex, k: usize, allowed: &EdgeSet) -> Vec<PathRef> {
    // Vertex v splits into v_in = 2v and v_out = 2v + 1; arcs are stored in pairs (arc, reverse).
    let n = g.vertex_count();
    let mut head: Vec<usize> = Vec::new();
    let mut cap: Vec<i32> = Vec::new();
    let mut label: Vec<Option<Edge>> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut arc = |a: usize, b: usize, c: i32, e: Option<Edge>, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(head.len());
        head.push(b);
        cap.push(c);
        label.push(e);
        adj[b].push(head.len());
        head.push(a);
        cap.push(0);
        label.push(None);
    };
    for v in 0..n {
        let c = if v == x || v == y { k as i32 } else { 1 };
        arc(2 * v, 2 * v + 1, c, None, &mut adj);
    }
    for e in allowed.iter() {
        let [a, b] = g.endpoints(e);
        if a != b {
            arc(2 * a + 1, 2 * b, 1, Some(e), &mut adj);
            arc(2 * b + 1, 2 * a, 1, Some(e), &mut adj);
        }
    }
    let (source, sink) = (2 * x + 1, 2 * y);
    let mut found = 0;
    while found < k {
        let mut prev = vec![usize::MAX; 2 * n];
        prev[source] = usize::MAX - 1;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &i in &adj[u] {
                let w = head[i];
                if cap[i] > 0 && prev[w] == usize::MAX {
                    prev[w] = i;
                    queue.push_back(w);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut w = sink;
        while w != source {
            let i = prev[w];
            cap[i] -= 1;
            cap[i ^ 1] += 1;
            w = head[i ^ 1];
        }
        found += 1;
    }
    // Follow saturated edge arcs from x; circulations through other vertices are never reached.
    let mut used = vec![false; head.len()];
    let mut out = Vec::new();
    for _ in 0..found {
        let mut vertices = vec![x];
        let mut edges = Vec::new();
        let mut cur = x;
        while cur != y {
            let next = adj[2 * cur + 1]
                .iter()
                .copied()
                .find(|&i| i % 2 == 0 && label[i].is_some() && cap[i] == 0 && !used[i]);
            let Some(i) = next else { break };
            used[i] = true;
            cur = head[i] / 2;
            vertices.push(cur);
            edges.push(label[i].unwrap());
        }
        if cur == y {
            out.push(PathRef { vertices, edges });
        }
    }
    out
}

pub fn find_theta(g: &SignedGraph, x: Vertex, y: Vertex) -> Result<Option<Theta>> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(Error::pre("a theta needs two distinct branch vertices"));
    }
    let paths = disjoint_paths(g, x, y, 3, &EdgeSet::full(g.edge_count()));
    Ok(if paths.len() == 3 {
        let mut it = paths.into_iter();
        Some(Theta { paths: [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()] })
    } else {
        None
    })
}

/// The cycle formed by two internally disjoint paths with common ends.
pub fn join_paths(p: &PathRef, q: &PathRef) -> CycleRef {
    let mut vertices = p.vertices.clone();
    let back = q.reversed();
    vertices.extend(&back.vertices[1..back.vertices.len() - 1]);
    let mut edges = p.edges.clone();
    edges.extend(&back.edges);
    CycleRef { vertices, edges }
}

/// Some pair of the three paths closes a positive cycle.
pub fn positive_cycle_in_theta(g: &SignedGraph, theta: &Theta) -> CycleRef {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (p, q) = (&theta.paths[i], &theta.paths[j]);
        if p.sign(g) == q.sign(g) {
            return join_paths(p, q);
        }
    }
    unreachable!("three signs cannot be pairwise distinct")
}

/// BFS spanning tree of the subgraph formed by `allowed` (a forest if it is disconnected).
pub fn spanning_forest(g: &SignedGraph, allowed: &EdgeSet) -> EdgeSet {
    let mut tree = EdgeSet::empty(g.edge_count());
    let mut seen = vec![false; g.vertex_count()];
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for h in g.half_edges_at(u) {
                let e = h.edge();
                let w = g.other_end(e, u);
                if allowed.contains(e) && !seen[w] {
                    seen[w] = true;
                    tree.insert(e);
                    queue.push_back(w);
                }
            }
        }
    }
    tree
}

/// Whether every vertex of `g` lies in one component of `set`.
pub fn is_spanning_connected(g: &SignedGraph, set: &EdgeSet) -> bool {
    components_within(g, set).count() <= 1
}

/// The tree path between two vertices of a forest.
pub fn tree_path(g: &SignedGraph, tree: &EdgeSet, from: Vertex, to: Vertex) -> Option<PathRef> {
    let mut targets = vec![false; g.vertex_count()];
    targets[to] = true;
    crate::graph::shortest_path(g, from, &targets, tree, &vec![false; g.vertex_count()])
}

/// The cycle closed by a non-tree edge with the tree.
pub fn fundamental_cycle(g: &SignedGraph, tree: &EdgeSet, e: Edge) -> Option<CycleRef> {
    let [a, b] = g.endpoints(e);
    if a == b {
        return Some(CycleRef { vertices: vec![a], edges: vec![e] });
    }
    let p = tree_path(g, tree, b, a)?;
    let mut edges = vec![e];
    edges.extend(&p.edges);
    Some(CycleRef { vertices: [vec![a], p.vertices[..p.vertices.len() - 1].to_vec()].concat(), edges })
}

/// A spanning tree, plus one edge closing a negative cycle when the graph is unbalanced.
pub fn connected_base(g: &SignedGraph) -> Result<EdgeSet> {
    if !is_connected(g) {
        return Err(Error::pre("a connected base needs a connected graph"));
    }
    let mut tree = spanning_forest(g, &EdgeSet::full(g.edge_count()));
    for e in g.edges() {
        if tree.contains(e) {
            continue;
        }
        let c = fundamental_cycle(g, &tree, e).expect("connected");
        if c.sign_unchecked(g).is_negative() {
            tree.insert(e);
            break;
        }
    }
    Ok(tree)
}

/// Every component of `set` has at most one cycle, and that cycle is negative.
/// Equivalent to containing neither a positive cycle nor a barbell.
pub fn is_base_like(g: &SignedGraph, set: &EdgeSet) -> bool {
    let (sub, _) = g.edge_subgraph(set);
    let comps = components_within(&sub, &EdgeSet::full(sub.edge_count()));
    let mut verts = vec![0usize; comps.count()];
    let mut edges = vec![0usize; comps.count()];
    for v in sub.vertices() {
        verts[comps.label[v]] += 1;
    }
    for e in sub.edges() {
        edges[comps.label[sub.endpoints(e)[0]]] += 1;
    }
    (0..comps.count()).all(|c| {
        edges[c] < verts[c]
            || edges[c] == verts[c] && {
                let keep: Vec<bool> = comps.label.iter().map(|&l| l == c).collect();
                !balance(&sub.induced(&keep).0).is_balanced()
            }
    })
}

/// A spanning connected edge set with no positive cycle and no barbell, of maximal size.
pub fn is_connected_base(g: &SignedGraph, set: &EdgeSet) -> bool {
    if !is_spanning_connected(g, set) || !is_base_like(g, set) {
        return false;
    }
    let unbalanced = !balance(g).is_balanced();
    let want = g.vertex_count() - 1 + usize::from(unbalanced);
    set.len() == want
}

/// Exhaustive reference check: no positive cycle, and no two distinct cycles in one component.
pub fn has_positive_cycle_or_barbell(g: &SignedGraph, set: &EdgeSet) -> Result<bool> {
    let cycles = cycles_within(g, set)?;
    if cycles.iter().any(|c| !c.sign_unchecked(g).is_negative()) {
        return Ok(true);
    }
    let comps = components_within(g, set);
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if comps.label[cycles[i].vertices[0]] == comps.label[cycles[j].vertices[0]] {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// A component of the graph outside a subgraph `H`, with its attachments on `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    /// Vertices of the bridge not on `H`.
    pub inner: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub attachments: Vec<Vertex>,
}

impl Bridge {
    /// Vertices (inner and attachments) plus edges.
    pub fn size(&self) -> usize {
        self.inner.len() + self.attachments.len() + self.edges.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub host: EdgeSet,
    pub bridges: Vec<Bridge>,
}

/// Bridges of the subgraph formed by `h`: each edge outside `h` with both ends on `h`,
/// and each component of `g - V(h)` together with its edges to `h`.
pub fn bridges_of(g: &SignedGraph, h: &EdgeSet) -> BridgeDecomposition {
    let on_h = crate::graph::touched_vertices(g, h);
    let n = g.vertex_count();
    let mut bridges = Vec::new();
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        if !h.contains(e) && on_h[a] && on_h[b] {
            let mut att = vec![a, b];
            att.dedup();
            bridges.push(Bridge { inner: Vec::new(), edges: vec![e], attachments: att });
        }
    }
    let mut seen = vec![false; n];
    for root in 0..n {
        if on_h[root] || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut inner = vec![root];
        let mut edges = Vec::new();
        let mut att = Vec::new();
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for hh in g.half_edges_at(u) {
                let e = hh.edge();
                let w = g.other_end(e, u);
                if !edges.contains(&e) {
                    edges.push(e);
                }
                if on_h[w] {
                    if !att.contains(&w) {
                        att.push(w);
                    }
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                    stack.push(w);
                }
            }
        }
        inner.sort_unstable();
        edges.sort_unstable();
        att.sort_unstable();
        bridges.push(Bridge { inner, edges, attachments: att });
    }
    BridgeDecomposition { host: h.clone(), bridges }
}

/// Induced, and removing its vertices leaves a connected graph.
pub fn is_peripheral(g: &SignedGraph, c: &CycleRef) -> bool {
    if c.validate(g).is_err() {
        return false;
    }
    let set = c.edge_set(g.edge_count());
    let b = bridges_of(g, &set);
    b.bridges.len() <= 1 && b.bridges.iter().all(|br| !br.inner.is_empty())
}

/// Constraints for [`find_peripheral_cycle`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeripheralRequest {
    /// Required sign, if any.
    pub sign: Option<Sign>,
    /// A cycle the result must be vertex-disjoint from.
    pub avoid: Option<CycleRef>,
    /// Require `g - E(C)` to be unbalanced.
    pub unbalanced_rest: bool,
}

/// The first peripheral cycle, shortest first, meeting the request.
///
/// Enumeration is exhaustive, so `Unsat` means no such cycle exists; enumeration
/// beyond the cycle limit is reported as a size error instead.
pub fn find_peripheral_cycle(g: &SignedGraph, req: &PeripheralRequest) -> Result<CycleRef> {
    if req.sign == Some(Sign::Negative) && balance(g).is_balanced() {
        return Err(Error::Unsat("a balanced graph has no negative cycle".into()));
    }
    let avoid_mask = req.avoid.as_ref().map(|c| c.vertex_mask(g.vertex_count()));
    for c in all_cycles(g)? {
        if req.sign.is_some_and(|s| c.sign_unchecked(g) != s) {
            continue;
        }
        if let Some(mask) = &avoid_mask {
            if c.vertices.iter().any(|&v| mask[v]) {
                continue;
            }
        }
        if !is_peripheral(g, &c) {
            continue;
        }
        if req.unbalanced_rest {
            let rest = c.edge_set(g.edge_count()).complement();
            if balance_of(g, &g.edges().map(|e| if rest.contains(e) { g.sign(e) } else { Sign::Positive }).collect::<Vec<_>>())
                .is_balanced()
            {
                continue;
            }
        }
        return Ok(c);
    }
    Err(Error::Unsat("no peripheral cycle meets the request".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::Sign::{Negative as N, Positive as P};

    #[test]
    fn thetas() {
        let k4 = generators::complete(4);
        for x in 0..4 {
            for y in x + 1..4 {
                let t = find_theta(&k4, x, y).unwrap().unwrap();
                for p in &t.paths {
                    p.validate(&k4).unwrap();
                    assert_eq!((p.start(), p.end()), (x, y));
                }
            }
        }
        // one path carries a negative edge: the cycle avoiding it is positive
        let g = SignedGraph::from_edges(4, [(0, 1, P), (1, 3, P), (0, 2, N), (2, 3, P), (0, 3, P)]).unwrap();
        let t = find_theta(&g, 0, 3).unwrap().unwrap();
        let c = positive_cycle_in_theta(&g, &t);
        assert_eq!(c.sign(&g).unwrap(), P);
        assert!(!c.edges.contains(&2));
        let c4 = SignedGraph::unsigned(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(find_theta(&c4, 0, 2).unwrap().is_none());
    }

    #[test]
    fn parallel_edges_make_thetas() {
        let g = SignedGraph::from_edges(2, [(0, 1, P), (0, 1, N), (0, 1, N)]).unwrap();
        let t = find_theta(&g, 0, 1).unwrap().unwrap();
        assert_eq!(positive_cycle_in_theta(&g, &t).sign(&g).unwrap(), P);
    }

    #[test]
    fn bases() {
        let tree = SignedGraph::unsigned(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(connected_base(&tree).unwrap(), EdgeSet::full(3));
        let c5 = SignedGraph::from_edges(5, [(0, 1, P), (1, 2, P), (2, 3, N), (3, 4, P), (4, 0, P)]).unwrap();
        assert_eq!(connected_base(&c5).unwrap(), EdgeSet::full(5));
        let ps = generators::petersen_ps();
        let b = connected_base(&ps).unwrap();
        assert_eq!(b.len(), 10);
        assert!(is_connected_base(&ps, &b));
        assert!(!has_positive_cycle_or_barbell(&ps, &b).unwrap());
        assert!(connected_base(&SignedGraph::new(2)).is_err());
    }

    #[test]
    fn bridge_counts() {
        let p = generators::petersen();
        let five = all_cycles(&p).unwrap().into_iter().find(|c| c.len() == 5).unwrap();
        assert_eq!(bridges_of(&p, &five.edge_set(15)).bridges.len(), 1);
        assert!(bridges_of(&p, &EdgeSet::full(15)).bridges.is_empty());
    }

    #[test]
    fn peripheral_cycles() {
        let ps = generators::petersen_ps();
        let req = PeripheralRequest { sign: Some(N), ..Default::default() };
        let c = find_peripheral_cycle(&ps, &req).unwrap();
        assert!(is_peripheral(&ps, &c));
        let inner = CycleRef { vertices: vec![0, 1, 2, 3, 4], edges: vec![0, 1, 2, 3, 4] };
        assert!(is_peripheral(&ps, &inner));
        assert_eq!(inner.sign(&ps).unwrap(), N);

        let two = generators::petersen_two_negative();
        let req = PeripheralRequest { sign: Some(N), unbalanced_rest: true, ..Default::default() };
        let d = find_peripheral_cycle(&two, &req).unwrap();
        assert!(is_peripheral(&two, &d) && d.sign(&two).unwrap() == N);

        assert!(matches!(find_peripheral_cycle(&generators::petersen(), &PeripheralRequest { sign: Some(N), ..Default::default() }), Err(Error::Unsat(_))));
    }

    #[test]
    fn disjoint_negative_cycles() {
        assert!(disjoint_cycles(&generators::petersen_two_negative(), Some(N), Some(N)).unwrap().is_some());
        assert!(disjoint_cycles(&generators::petersen_ps(), Some(N), Some(N)).unwrap().is_none());
        assert!(disjoint_cycles(&generators::petersen_ps(), Some(N), None).unwrap().is_some());
    }
}
