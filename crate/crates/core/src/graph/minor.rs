use super::{Edge, HalfEdge, Sign, SignedGraph, Vertex};
use crate::error::{Error, Result};

/// Old-to-new index translation returned by every minor operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    /// `vertex[old]` is the new index of an old vertex (merged vertices share one).
    pub vertex: Vec<Vertex>,
    /// `edge[old]` is the new index, or `None` when the edge disappeared.
    pub edge: Vec<Option<Edge>>,
}

impl IndexMap {
    pub fn identity(g: &SignedGraph) -> IndexMap {
        IndexMap { vertex: g.vertices().collect(), edge: g.edges().map(Some).collect() }
    }

    /// Composition: first `self`, then `next`.
    pub fn then(&self, next: &IndexMap) -> IndexMap {
        IndexMap {
            vertex: self.vertex.iter().map(|&v| next.vertex[v]).collect(),
            edge: self.edge.iter().map(|e| e.and_then(|e| next.edge[e])).collect(),
        }
    }
}

/// Contracts `e`. A negative non-loop edge is first made positive by switching at its
/// lower endpoint. The merged vertex keeps the lower index; loops created by the
/// identification are kept when negative and deleted when positive. Contracting a
/// loop deletes it.
pub fn contract(g: &SignedGraph, e: Edge) -> Result<(SignedGraph, IndexMap)> {
    g.check_edge(e)?;
    let [a, b] = g.endpoints(e);
    if a == b {
        return Ok(delete_edges(g, &[e]));
    }
    let (keep, gone) = (a.min(b), a.max(b));
    let base = if g.sign(e).is_negative() { g.switch_at(keep)? } else { g.clone() };
    let vertex: Vec<Vertex> = g
        .vertices()
        .map(|v| match v.cmp(&gone) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        })
        .collect();
    let mut out = SignedGraph::new(g.vertex_count() - 1);
    let mut edge = vec![None; g.edge_count()];
    for f in g.edges() {
        if f == e {
            continue;
        }
        let [x, y] = g.endpoints(f);
        let created_loop = x != y && vertex[x] == vertex[y];
        if created_loop && !base.sign(f).is_negative() {
            continue;
        }
        edge[f] = Some(out.add_edge(vertex[x], vertex[y], base.sign(f))?);
    }
    Ok((out, IndexMap { vertex, edge }))
}

/// Contracts the edges one after another, composing the translation maps.
pub fn contract_all(g: &SignedGraph, edges: &[Edge]) -> Result<(SignedGraph, IndexMap)> {
    let mut cur = g.clone();
    let mut map = IndexMap::identity(g);
    for &e in edges {
        let Some(now) = map.edge[e] else { continue };
        let (next, step) = contract(&cur, now)?;
        map = map.then(&step);
        cur = next;
    }
    Ok((cur, map))
}

/// Removes the listed edges, renumbering the rest densely.
pub fn delete_edges(g: &SignedGraph, remove: &[Edge]) -> (SignedGraph, IndexMap) {
    let mut out = SignedGraph::new(g.vertex_count());
    let mut edge = vec![None; g.edge_count()];
    for f in g.edges() {
        if remove.contains(&f) {
            continue;
        }
        let [x, y] = g.endpoints(f);
        edge[f] = Some(out.add_edge(x, y, g.sign(f)).expect("same vertices"));
    }
    (out, IndexMap { vertex: g.vertices().collect(), edge })
}

/// Deletes the masked vertices and their edges.
pub fn delete_vertices(g: &SignedGraph, remove: &[bool]) -> (SignedGraph, IndexMap) {
    let keep: Vec<bool> = remove.iter().map(|&r| !r).collect();
    let (h, vback, eback) = g.induced(&keep);
    let mut vertex = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in vback.iter().enumerate() {
        vertex[old] = new;
    }
    let mut edge = vec![None; g.edge_count()];
    for (new, &old) in eback.iter().enumerate() {
        edge[old] = Some(new);
    }
    (h, IndexMap { vertex, edge })
}

/// Result of splitting a vertex in two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uncontraction {
    pub graph: SignedGraph,
    /// The split vertex keeps its index.
    pub vertex: Vertex,
    /// The new vertex, always the last one.
    pub new_vertex: Vertex,
    /// The new positive edge joining them, always the last edge.
    pub new_edge: Edge,
}

/// Moves the half-edges `h1`, `h2` from `v` to a new vertex joined to `v` by a positive edge.
/// Both half-edges of one loop may be given; the loop then moves to the new vertex.
pub fn uncontract_halves(g: &SignedGraph, v: Vertex, h1: HalfEdge, h2: HalfEdge) -> Result<Uncontraction> {
    g.check_vertex(v)?;
    if g.degree(v) < 4 {
        return Err(Error::pre(format!("vertex {v} has degree {} < 4", g.degree(v))));
    }
    for h in [h1, h2] {
        if h.edge() >= g.edge_count() || g.vertex_of(h) != v {
            return Err(Error::pre(format!("half-edge {} is not at vertex {v}", h.0)));
        }
    }
    if h1 == h2 {
        return Err(Error::pre("the two half-edges must differ"));
    }
    let mut out = SignedGraph::new(g.vertex_count() + 1);
    let nv = g.vertex_count();
    for f in g.edges() {
        let mut ends = g.endpoints(f);
        for (end, x) in ends.iter_mut().enumerate() {
            let h = HalfEdge::of(f, end);
            if h == h1 || h == h2 {
                *x = nv;
            }
        }
        out.add_edge(ends[0], ends[1], g.sign(f))?;
    }
    let new_edge = out.add_edge(v, nv, Sign::Positive)?;
    Ok(Uncontraction { graph: out, vertex: v, new_vertex: nv, new_edge })
}

/// Edge form of [`uncontract_halves`]; for a loop the half-edge at end 0 is used.
pub fn uncontract(g: &SignedGraph, v: Vertex, e: Edge, f: Edge) -> Result<Uncontraction> {
    g.check_edge(e)?;
    g.check_edge(f)?;
    if e == f {
        return Err(Error::pre("the two edges must differ"));
    }
    let half = |x: Edge| -> Result<HalfEdge> {
        let [a, b] = g.endpoints(x);
        if a == v {
            Ok(HalfEdge::of(x, 0))
        } else if b == v {
            Ok(HalfEdge::of(x, 1))
        } else {
            Err(Error::pre(format!("edge {x} is not incident with vertex {v}")))
        }
    };
    uncontract_halves(g, v, half(e)?, half(f)?)
}

/// Replaces a degree-2 vertex and its two (non-loop) edges by one edge carrying the sign product.
pub fn suppress(g: &SignedGraph, v: Vertex) -> Result<(SignedGraph, IndexMap)> {
    g.check_vertex(v)?;
    let hs = g.half_edges_at(v);
    if hs.len() != 2 || hs[0].edge() == hs[1].edge() {
        return Err(Error::pre(format!("vertex {v} is not a degree-2 vertex without loop")));
    }
    let (e1, e2) = (hs[0].edge(), hs[1].edge());
    let a = g.other_end(e1, v);
    let b = g.other_end(e2, v);
    let sign = g.sign(e1) * g.sign(e2);
    let mut remove = vec![false; g.vertex_count()];
    remove[v] = true;
    let (mut h, mut map) = delete_vertices(g, &remove);
    let joined = h.add_edge(map.vertex[a], map.vertex[b], sign)?;
    map.edge[e1] = Some(joined);
    map.edge[e2] = Some(joined);
    Ok((h, map))
}
