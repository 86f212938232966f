use super::{EdgeSet, SignedGraph, Vertex};

/// Connected components: `label[v]` is the component of `v`, `first[c]` its lowest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub label: Vec<usize>,
    pub first: Vec<Vertex>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.first.len()
    }
}

pub fn components(g: &SignedGraph) -> Components {
    components_within(g, &EdgeSet::full(g.edge_count()))
}

/// Components of the spanning subgraph with edge set `allowed`.
pub fn components_within(g: &SignedGraph, allowed: &EdgeSet) -> Components {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut first = Vec::new();
    let mut stack = Vec::new();
    for root in 0..n {
        if label[root] != usize::MAX {
            continue;
        }
        let c = first.len();
        first.push(root);
        label[root] = c;
        stack.push(root);
        while let Some(u) = stack.pop() {
            for h in g.half_edges_at(u) {
                if !allowed.contains(h.edge()) {
                    continue;
                }
                let w = g.other_end(h.edge(), u);
                if label[w] == usize::MAX {
                    label[w] = c;
                    stack.push(w);
                }
            }
        }
    }
    Components { label, first }
}

pub fn is_connected(g: &SignedGraph) -> bool {
    g.vertex_count() <= 1 || components(g).count() == 1
}

/// Vertices touched by an edge set.
pub fn touched_vertices(g: &SignedGraph, set: &EdgeSet) -> Vec<bool> {
    let mut mask = vec![false; g.vertex_count()];
    for e in set.iter() {
        let [a, b] = g.endpoints(e);
        mask[a] = true;
        mask[b] = true;
    }
    mask
}

/// The subgraph formed by `set` and its endpoints is connected (and non-empty).
pub fn is_edge_set_connected(g: &SignedGraph, set: &EdgeSet) -> bool {
    let touched = touched_vertices(g, set);
    let comps = components_within(g, set);
    let mut label = None;
    for v in g.vertices().filter(|&v| touched[v]) {
        match label {
            None => label = Some(comps.label[v]),
            Some(l) if l != comps.label[v] => return false,
            _ => {}
        }
    }
    label.is_some()
}

/// The subgraph formed by `set` is 2-connected: connected, not a single edge,
/// and without cut vertices. Loops are ignored.
pub fn is_edge_set_two_connected(g: &SignedGraph, set: &EdgeSet) -> bool {
    let proper = EdgeSet::from_edges(g.edge_count(), set.iter().filter(|&e| !g.is_loop(e)));
    if proper.len() < 2 || !is_edge_set_connected(g, &proper) {
        return false;
    }
    let touched = touched_vertices(g, &proper);
    for v in g.vertices().filter(|&v| touched[v]) {
        let mut without = proper.clone();
        for h in g.half_edges_at(v) {
            without.remove(h.edge());
        }
        let comps = components_within(g, &without);
        let mut label = None;
        for w in g.vertices().filter(|&w| touched[w] && w != v) {
            match label {
                None => label = Some(comps.label[w]),
                Some(l) if l != comps.label[w] => return false,
                _ => {}
            }
        }
    }
    true
}

/// Global minimum edge cut of the underlying multigraph (Stoer–Wagner); loops and signs are ignored.
/// Returns `None` for graphs with fewer than two vertices, which have no cut.
pub fn edge_connectivity(g: &SignedGraph) -> Option<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let mut w = vec![vec![0usize; n]; n];
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        if a != b {
            w[a][b] += 1;
            w[b][a] += 1;
        }
    }
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    while alive.len() > 1 {
        let mut added = vec![false; n];
        let mut weight = vec![0usize; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        for step in 0..alive.len() {
            let mut pick = None;
            for &v in &alive {
                if !added[v] && pick.is_none_or(|p: usize| weight[v] > weight[p]) {
                    pick = Some(v);
                }
            }
            let v = pick.unwrap();
            added[v] = true;
            if step == alive.len() - 1 {
                best = best.min(weight[v]);
                prev = last;
                last = v;
            } else {
                last = v;
            }
            for &u in &alive {
                weight[u] += w[v][u];
            }
        }
        // merge `last` into `prev`
        for &u in &alive {
            w[prev][u] += w[last][u];
            w[u][prev] = w[prev][u];
        }
        w[prev][prev] = 0;
        alive.retain(|&v| v != last);
    }
    Some(best)
}

pub fn is_k_edge_connected(g: &SignedGraph, k: usize) -> bool {
    match edge_connectivity(g) {
        None => true,
        Some(c) => c >= k,
    }
}

/// Vertex `k`-connectivity by deleting every set of fewer than `k` vertices.
/// Intended for small `k`; a graph needs more than `k` vertices to qualify.
pub fn is_k_connected(g: &SignedGraph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    let mut removed = vec![false; n];
    fn rec(g: &SignedGraph, start: usize, left: usize, removed: &mut Vec<bool>) -> bool {
        if !connected_without(g, removed) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for v in start..g.vertex_count() {
            removed[v] = true;
            let ok = rec(g, v + 1, left - 1, removed);
            removed[v] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    rec(g, 0, k - 1, &mut removed)
}

fn connected_without(g: &SignedGraph, removed: &[bool]) -> bool {
    let n = g.vertex_count();
    let Some(root) = (0..n).find(|&v| !removed[v]) else { return true };
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for h in g.half_edges_at(u) {
            let w = g.other_end(h.edge(), u);
            if !removed[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == removed.iter().filter(|&&r| !r).count()
}

/// No set of fewer than `k` edges separates two components that both contain a cycle.
pub fn is_cyclically_k_edge_connected(g: &SignedGraph, k: usize) -> bool {
    cyclic_cut_below(g, k).is_none()
}

/// A set of fewer than `k` edges whose removal leaves two components with cycles.
pub fn cyclic_cut_below(g: &SignedGraph, k: usize) -> Option<EdgeSet> {
    let m = g.edge_count();
    let mut chosen = Vec::new();
    fn rec(g: &SignedGraph, start: usize, left: usize, chosen: &mut Vec<usize>) -> Option<EdgeSet> {
        let set = EdgeSet::from_edges(g.edge_count(), chosen.iter().copied());
        if separates_cycles(g, &set) {
            return Some(set);
        }
        if left == 0 {
            return None;
        }
        for e in start..g.edge_count() {
            chosen.push(e);
            let found = rec(g, e + 1, left - 1, chosen);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    if k == 0 || m == 0 {
        return None;
    }
    rec(g, 0, k - 1, &mut chosen)
}

fn separates_cycles(g: &SignedGraph, removed: &EdgeSet) -> bool {
    let keep = removed.complement();
    let comps = components_within(g, &keep);
    let mut verts = vec![0usize; comps.count()];
    let mut edges = vec![0usize; comps.count()];
    for v in g.vertices() {
        verts[comps.label[v]] += 1;
    }
    for e in keep.iter() {
        edges[comps.label[g.endpoints(e)[0]]] += 1;
    }
    (0..comps.count()).filter(|&c| edges[c] >= verts[c]).count() >= 2
}

/// Largest `k` (up to `cap`) for which the graph is cyclically `k`-edge-connected.
pub fn cyclic_edge_connectivity(g: &SignedGraph, cap: usize) -> usize {
    (1..=cap).take_while(|&k| is_cyclically_k_edge_connected(g, k)).last().unwrap_or(0)
}
