use std::collections::VecDeque;

use super::{Edge, EdgeSet, Sign, SignedGraph, Vertex};
use crate::error::{Error, Result};

/// Most cycles any enumeration will produce before giving up.
pub const CYCLE_LIMIT: usize = 500_000;

/// A cycle given by its vertices in order; `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleRef {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl CycleRef {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks the vertex/edge alternation and that no vertex repeats.
    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        let k = self.edges.len();
        if k == 0 || self.vertices.len() != k {
            return Err(Error::pre("a cycle needs as many vertices as edges"));
        }
        let mut seen_v = std::collections::HashSet::new();
        let mut seen_e = std::collections::HashSet::new();
        for i in 0..k {
            let (a, b, e) = (self.vertices[i], self.vertices[(i + 1) % k], self.edges[i]);
            g.check_vertex(a)?;
            g.check_edge(e)?;
            let [x, y] = g.endpoints(e);
            if !((x == a && y == b) || (x == b && y == a)) {
                return Err(Error::pre(format!("edge {e} does not join {a} and {b}")));
            }
            if !seen_v.insert(a) || !seen_e.insert(e) {
                return Err(Error::pre("cycle repeats a vertex or an edge"));
            }
        }
        Ok(())
    }

    pub fn sign(&self, g: &SignedGraph) -> Result<Sign> {
        self.validate(g)?;
        Ok(self.sign_unchecked(g))
    }

    pub(crate) fn sign_unchecked(&self, g: &SignedGraph) -> Sign {
        self.edges.iter().fold(Sign::Positive, |s, &e| s * g.sign(e))
    }

    pub fn edge_set(&self, m: usize) -> EdgeSet {
        EdgeSet::from_edges(m, self.edges.iter().copied())
    }

    pub fn vertex_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.vertices {
            mask[v] = true;
        }
        mask
    }
}

/// The sign of a cycle: product of its edge signs.
pub fn cycle_sign(g: &SignedGraph, c: &CycleRef) -> Result<Sign> {
    c.sign(g)
}

/// A path from `vertices[0]` to its last vertex; may be trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathRef {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl PathRef {
    pub fn trivial(v: Vertex) -> PathRef {
        PathRef { vertices: vec![v], edges: Vec::new() }
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn sign(&self, g: &SignedGraph) -> Sign {
        self.edges.iter().fold(Sign::Positive, |s, &e| s * g.sign(e))
    }

    pub fn reversed(&self) -> PathRef {
        PathRef {
            vertices: self.vertices.iter().rev().copied().collect(),
            edges: self.edges.iter().rev().copied().collect(),
        }
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(Error::pre("a path needs one more vertex than edges"));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &self.vertices {
            g.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::pre("path repeats a vertex"));
            }
        }
        for (i, &e) in self.edges.iter().enumerate() {
            g.check_edge(e)?;
            let [x, y] = g.endpoints(e);
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            if !((x == a && y == b) || (x == b && y == a)) {
                return Err(Error::pre(format!("edge {e} does not join {a} and {b}")));
            }
        }
        Ok(())
    }
}

/// Every cycle of `g` using only edges in `allowed`, shortest first.
pub fn cycles_within(g: &SignedGraph, allowed: &EdgeSet) -> Result<Vec<CycleRef>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for s in 0..n {
        for h in g.half_edges_at(s) {
            let e = h.edge();
            if allowed.contains(e) && g.is_loop(e) && h.end() == 0 {
                out.push(CycleRef { vertices: vec![s], edges: vec![e] });
            }
        }
        on_path[s] = true;
        vs.push(s);
        extend(g, allowed, s, s, &mut on_path, &mut vs, &mut es, &mut out)?;
        vs.pop();
        on_path[s] = false;
    }
    out.sort_by_key(|c| c.len());
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &SignedGraph,
    allowed: &EdgeSet,
    s: Vertex,
    u: Vertex,
    on_path: &mut [bool],
    vs: &mut Vec<Vertex>,
    es: &mut Vec<Edge>,
    out: &mut Vec<CycleRef>,
) -> Result<()> {
    for h in g.half_edges_at(u) {
        let e = h.edge();
        if !allowed.contains(e) || g.is_loop(e) || es.contains(&e) {
            continue;
        }
        let w = g.other_end(e, u);
        if w == s {
            if !es.is_empty() && es[0] < e {
                let mut edges = es.clone();
                edges.push(e);
                out.push(CycleRef { vertices: vs.clone(), edges });
                if out.len() > CYCLE_LIMIT {
                    return Err(Error::DeskScale { what: "cycle count", limit: CYCLE_LIMIT, actual: out.len() });
                }
            }
        } else if w > s && !on_path[w] {
            on_path[w] = true;
            vs.push(w);
            es.push(e);
            extend(g, allowed, s, w, on_path, vs, es, out)?;
            es.pop();
            vs.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}

pub fn all_cycles(g: &SignedGraph) -> Result<Vec<CycleRef>> {
    cycles_within(g, &EdgeSet::full(g.edge_count()))
}

/// Shortest path from `from` to any vertex in `targets`, using allowed edges and
/// avoiding blocked vertices other than the endpoints.
pub fn shortest_path(
    g: &SignedGraph,
    from: Vertex,
    targets: &[bool],
    allowed: &EdgeSet,
    blocked: &[bool],
) -> Option<PathRef> {
    let n = g.vertex_count();
    if targets[from] {
        return Some(PathRef::trivial(from));
    }
    let mut prev: Vec<Option<(Vertex, Edge)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for h in g.half_edges_at(u) {
            let e = h.edge();
            if !allowed.contains(e) {
                continue;
            }
            let w = g.other_end(e, u);
            if seen[w] || (blocked[w] && !targets[w]) {
                continue;
            }
            seen[w] = true;
            prev[w] = Some((u, e));
            if targets[w] {
                let mut vertices = vec![w];
                let mut edges = Vec::new();
                let mut x = w;
                while let Some((p, pe)) = prev[x] {
                    vertices.push(p);
                    edges.push(pe);
                    x = p;
                }
                vertices.reverse();
                edges.reverse();
                return Some(PathRef { vertices, edges });
            }
            queue.push_back(w);
        }
    }
    None
}
