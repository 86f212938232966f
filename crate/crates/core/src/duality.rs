//! Embedded graphs on the plane and the projective plane, their oriented duals, and the
//! passage between colourings of an embedded graph and flows on its dual.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{cycles_within, io, is_connected, EdgeSet, HalfEdge, Orientation, Sign, SignedGraph, Vertex};
use crate::group::{boundary, EdgeMap, GroupElement, IntegerEdgeMap, VertexMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Plane,
    Projective,
}

impl Surface {
    pub fn name(self) -> &'static str {
        match self {
            Surface::Plane => "plane",
            Surface::Projective => "projective",
        }
    }

    /// `V - E + F` of a cellular embedding.
    pub fn euler_characteristic(self) -> i64 {
        match self {
            Surface::Plane => 2,
            Surface::Projective => 1,
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A graph with a cyclic order of half-edges at each vertex and a twist bit per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    /// The underlying graph; its signs are all positive.
    pub graph: SignedGraph,
    pub rotation: Vec<Vec<HalfEdge>>,
    /// Edges passing through the cross-cap.
    pub twisted: Vec<bool>,
    pub surface: Surface,
}

/// A face as a closed walk: the half-edge each step leaves along, with the local
/// orientation (`+1` or `-1`) in force when leaving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<(HalfEdge, i8)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// The vertices met along the walk, starting at its first vertex.
    pub fn vertices(&self, g: &SignedGraph) -> Vec<Vertex> {
        self.walk.iter().map(|&(h, _)| g.vertex_of(h)).collect()
    }
}

impl EmbeddedGraph {
    /// Builds the graph from the rotations: half-edge `h` lies at the vertex whose rotation lists it.
    pub fn new(n: usize, rotation: Vec<Vec<HalfEdge>>, twisted: Vec<bool>, surface: Surface) -> Result<EmbeddedGraph> {
        let m = twisted.len();
        if rotation.len() != n {
            return Err(Error::pre("one rotation per vertex is required"));
        }
        let mut at = vec![usize::MAX; 2 * m];
        for (v, rot) in rotation.iter().enumerate() {
            for &h in rot {
                if h.0 >= 2 * m {
                    return Err(Error::pre(format!("half-edge {} out of range", h.0)));
                }
                if at[h.0] != usize::MAX {
                    return Err(Error::pre(format!("half-edge {} listed twice", h.0)));
                }
                at[h.0] = v;
            }
        }
        if let Some(h) = at.iter().position(|&v| v == usize::MAX) {
            return Err(Error::pre(format!("half-edge {h} missing from every rotation")));
        }
        let graph = SignedGraph::from_edges(n, (0..m).map(|e| (at[2 * e], at[2 * e + 1], Sign::Positive)))?;
        // The graph stores half-edges per vertex in its own order; the rotation is kept separately.
        Ok(EmbeddedGraph { graph, rotation, twisted, surface })
    }

    fn position(&self) -> Vec<usize> {
        let mut pos = vec![0; 2 * self.twisted.len()];
        for rot in &self.rotation {
            for (i, h) in rot.iter().enumerate() {
                pos[h.0] = i;
            }
        }
        pos
    }

    /// Text form: `emb <surface> <n> <m>`, then `r <v> <half-edges...>` per vertex and
    /// `s <e> <+|->` per edge (`-` passes through the cross-cap). Vertices are 1-based as
    /// in graph files; edge `e` has half-edges `2e` and `2e+1`.
    pub fn to_text(&self) -> String {
        let mut s = format!("emb {} {} {}\n", self.surface, self.graph.vertex_count(), self.twisted.len());
        for (v, rot) in self.rotation.iter().enumerate() {
            s += &format!("r {}{}\n", v + 1, rot.iter().map(|h| format!(" {}", h.0)).collect::<String>());
        }
        for (e, &t) in self.twisted.iter().enumerate() {
            s += &format!("s {e} {}\n", if t { '-' } else { '+' });
        }
        s
    }

    pub fn parse(text: &str) -> Result<EmbeddedGraph> {
        let mut lines = io::content_lines(text);
        let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, "empty embedding"))?;
        if head.len() != 4 || head[0] != "emb" {
            return Err(Error::parse(ln, "expected `emb <surface> <n> <m>`"));
        }
        let surface = match head[1] {
            "plane" => Surface::Plane,
            "projective" => Surface::Projective,
            s => return Err(Error::parse(ln, format!("unknown surface `{s}`"))),
        };
        let n = io::parse_usize(head[2], ln, "a vertex count")?;
        let m = io::parse_usize(head[3], ln, "an edge count")?;
        let mut rotation: Vec<Option<Vec<HalfEdge>>> = vec![None; n];
        let mut twisted = vec![false; m];
        for (ln, toks) in lines {
            match toks[0] {
                "r" if toks.len() >= 2 => {
                    let v = io::parse_vertex(toks[1], ln, n)?;
                    if rotation[v].is_some() {
                        return Err(Error::parse(ln, format!("rotation of vertex {v} given twice")));
                    }
                    let hs = toks[2..]
                        .iter()
                        .map(|t| io::parse_usize(t, ln, "a half-edge").map(HalfEdge))
                        .collect::<Result<Vec<_>>>()?;
                    rotation[v] = Some(hs);
                }
                "s" if toks.len() == 3 => {
                    let e = io::parse_usize(toks[1], ln, "an edge")?;
                    if e >= m {
                        return Err(Error::parse(ln, format!("edge {e} out of range")));
                    }
                    twisted[e] = io::parse_sign(toks[2], ln)?.is_negative();
                }
                _ => return Err(Error::parse(ln, "expected `r <v> <half-edges>` or `s <e> <+|->`")),
            }
        }
        let rotation = rotation.into_iter().map(|r| r.unwrap_or_default()).collect();
        EmbeddedGraph::new(n, rotation, twisted, surface).map_err(|e| Error::parse(ln, e.to_string()))
    }
}

/// Traces every face once and checks Euler's formula for the surface.
pub fn trace_faces(eg: &EmbeddedGraph) -> Result<Vec<Face>> {
    let g = &eg.graph;
    let m = g.edge_count();
    if !is_connected(g) {
        return Err(Error::pre("a cellular embedding needs a connected graph"));
    }
    let pos = eg.position();
    let step = |h: HalfEdge, s: i8| -> (HalfEdge, i8) {
        let e = h.edge();
        let arrive = h.mate();
        let s = if eg.twisted[e] { -s } else { s };
        let rot = &eg.rotation[g.vertex_of(arrive)];
        let k = rot.len();
        let i = pos[arrive.0];
        let next = if s > 0 { rot[(i + 1) % k] } else { rot[(i + k - 1) % k] };
        (next, s)
    };
    let idx = |h: HalfEdge, s: i8| 2 * h.0 + usize::from(s < 0);
    let mut used = vec![false; 4 * m];
    let mut faces = Vec::new();
    for s0 in [1i8, -1] {
        for h0 in 0..2 * m {
            let start = (HalfEdge(h0), s0);
            if used[idx(start.0, start.1)] {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                let (h, s) = cur;
                if used[idx(h, s)] {
                    return Err(Error::pre("face tracing met a used side twice: rotation data is inconsistent"));
                }
                used[idx(h, s)] = true;
                // The same side walked the other way belongs to this face too.
                let back = (h.mate(), if eg.twisted[h.edge()] { s } else { -s });
                used[idx(back.0, back.1)] = true;
                walk.push(cur);
                cur = step(h, s);
                if cur == start {
                    break;
                }
            }
            faces.push(Face { walk });
        }
    }
    let chi = g.vertex_count() as i64 - m as i64 + faces.len() as i64;
    if chi != eg.surface.euler_characteristic() {
        return Err(Error::pre(format!(
            "V - E + F = {chi}, but the {} needs {}",
            eg.surface,
            eg.surface.euler_characteristic()
        )));
    }
    Ok(faces)
}

/// One bit per face: reverse the traced direction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FaceChoice {
    pub reversed: Vec<bool>,
}

/// The dual of an embedded graph with signs and directions read off a primal orientation.
///
/// Dual vertex `i` is face `i`, dual edge `e` crosses primal edge `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub graph: SignedGraph,
    pub tau: Orientation,
    pub faces: Vec<Face>,
    /// `+1`: primal edge `e` runs from its end 0 to its end 1.
    pub primal_direction: Vec<i8>,
    pub choice: FaceChoice,
}

/// Builds the oriented dual. A dual edge is positive and points into the one face whose
/// direction agrees with its primal edge; it is negative with both ends in when both
/// agree, and negative with both ends out when neither does.
pub fn oriented_dual(eg: &EmbeddedGraph, primal_direction: &[i8], choice: &FaceChoice) -> Result<Dual> {
    let m = eg.graph.edge_count();
    if primal_direction.len() != m || primal_direction.iter().any(|d| d.abs() != 1) {
        return Err(Error::pre("one direction of +1 or -1 per primal edge is required"));
    }
    let faces = trace_faces(eg)?;
    let reversed: Vec<bool> = if choice.reversed.is_empty() { vec![false; faces.len()] } else { choice.reversed.clone() };
    if reversed.len() != faces.len() {
        return Err(Error::pre(format!("{} face bits for {} faces", reversed.len(), faces.len())));
    }
    // (face, agreement) for each of the two sides of every primal edge.
    let mut sides: Vec<Vec<(usize, i8)>> = vec![Vec::new(); m];
    for (fi, face) in faces.iter().enumerate() {
        for &(h, _) in &face.walk {
            let along = if h.end() == 0 { 1 } else { -1 };
            let dir = if reversed[fi] { -along } else { along };
            sides[h.edge()].push((fi, dir * primal_direction[h.edge()]));
        }
    }
    let mut graph = SignedGraph::new(faces.len());
    let mut tau = Vec::with_capacity(2 * m);
    for (e, s) in sides.iter().enumerate() {
        let [(f1, a1), (f2, a2)] = s[..] else {
            return Err(Error::internal(format!("edge {e} borders {} face sides", s.len())));
        };
        let (t1, t2) = (-a1, -a2);
        let sign = if t1 * t2 == 1 { Sign::Negative } else { Sign::Positive };
        graph.add_edge(f1, f2, sign)?;
        tau.push(t1);
        tau.push(t2);
    }
    let tau = Orientation::from_values(&graph, tau)?;
    Ok(Dual { graph, tau, faces, primal_direction: primal_direction.to_vec(), choice: FaceChoice { reversed } })
}

/// `f(e*) = c(head) - c(tail)` for every primal edge; always a flow on the dual.
pub fn flow_from_coloring(eg: &EmbeddedGraph, dual: &Dual, c: &VertexMap) -> Result<EdgeMap> {
    let g = &eg.graph;
    if c.values.len() != g.vertex_count() {
        return Err(Error::pre("the colouring does not cover every vertex"));
    }
    let a = &c.group;
    let values = g
        .edges()
        .map(|e| {
            let [x, y] = g.endpoints(e);
            let (tail, head) = if dual.primal_direction[e] > 0 { (x, y) } else { (y, x) };
            a.sub(c.get(head), c.get(tail))
        })
        .collect();
    let f = EdgeMap { group: a.clone(), values };
    if !boundary(&dual.graph, &dual.tau, &f)?.values.iter().all(|x| x.0 == 0) {
        return Err(Error::internal("a colouring difference failed to be a flow on the dual"));
    }
    Ok(f)
}

/// A colouring `c` with `c(head) - c(tail) = f(e*)` on every primal edge, found by
/// propagating along a spanning tree and then checked on every edge.
///
/// On the projective plane the group must have no element of order 2.
pub fn coloring_from_flow(eg: &EmbeddedGraph, dual: &Dual, f: &EdgeMap) -> Result<VertexMap> {
    let g = &eg.graph;
    let a = &f.group;
    if eg.surface == Surface::Projective && a.has_element_of_order_two() {
        return Err(Error::pre(format!("{a} has an element of order 2; potentials need not exist on the projective plane")));
    }
    if f.len() != g.edge_count() {
        return Err(Error::pre("the flow does not cover every dual edge"));
    }
    // Walking primal edge `e` from `from` along its direction adds `f(e*)`.
    let forward = |e: usize, from: Vertex| (g.endpoints(e)[0] == from) == (dual.primal_direction[e] > 0);
    let n = g.vertex_count();
    let mut c: Vec<Option<GroupElement>> = vec![None; n];
    for root in 0..n {
        if c[root].is_some() {
            continue;
        }
        c[root] = Some(a.zero());
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let cu = c[u].expect("visited vertices are coloured");
            for e in g.edges_at(u) {
                let w = g.other_end(e, u);
                if c[w].is_none() {
                    c[w] = Some(if forward(e, u) { a.add(cu, f.get(e)) } else { a.sub(cu, f.get(e)) });
                    stack.push(w);
                }
            }
        }
    }
    let c = VertexMap { group: a.clone(), values: c.into_iter().map(|x| x.unwrap()).collect() };
    if flow_from_coloring(eg, dual, &c)? != *f {
        return Err(Error::pre("the map is not a flow on the dual: no potential matches it"));
    }
    Ok(c)
}

/// `K6` on the projective plane: vertex 0 inside a wheel on 1..5, the pentagram
/// chords through the cross-cap. Faces `012 023 034 045 051 124 235 341 452 513`.
pub fn k6_projective() -> EmbeddedGraph {
    k6_projective_with(&K6_TWISTS)
}

fn k6_projective_with(twists: &[bool; 15]) -> EmbeddedGraph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 1..=5 {
        edges.push((0, i));
    }
    for i in 1..=5 {
        edges.push((i, i % 5 + 1));
    }
    for i in 1..=5 {
        edges.push((i, (i + 1) % 5 + 1));
    }
    let half = |u: usize, v: usize| -> HalfEdge {
        let e = edges.iter().position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)).expect("edge exists");
        HalfEdge::of(e, usize::from(edges[e].0 != u))
    };
    let next = |i: usize, k: usize| (i - 1 + k) % 5 + 1;
    let mut rotation = vec![(1..=5).rev().map(|i| half(0, i)).collect::<Vec<_>>()];
    for i in 1..=5 {
        rotation.push(vec![half(i, 0), half(i, next(i, 1)), half(i, next(i, 3)), half(i, next(i, 2)), half(i, next(i, 4))]);
    }
    let twisted = twists.to_vec();
    EmbeddedGraph::new(6, rotation, twisted, Surface::Projective).expect("fixed embedding is valid")
}

/// Only the pentagram chords are twisted.
const K6_TWISTS: [bool; 15] = [false, false, false, false, false, false, false, false, false, false, true, true, true, true, true];

/// The Petersen graph signed with one negative 5-cycle, as the oriented dual of
/// [`k6_projective`] with every edge directed from its lower end and every face kept in
/// its traced direction. The negative edges are the duals of the five twisted chords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsInstance {
    pub graph: SignedGraph,
    pub tau: Orientation,
    pub embedding: EmbeddedGraph,
    pub dual: Dual,
}

pub fn build_ps() -> Result<PsInstance> {
    let embedding = k6_projective();
    let dual = oriented_dual(&embedding, &[1; 15], &FaceChoice::default())?;
    let negative = dual.graph.negative_edges();
    let set = EdgeSet::from_edges(dual.graph.edge_count(), negative.iter().copied());
    if negative.len() != 5 || !cycles_within(&dual.graph, &set)?.iter().any(|c| c.len() == 5) {
        return Err(Error::internal("the dual of K6 does not have a negative 5-cycle as its negative edges"));
    }
    Ok(PsInstance { graph: dual.graph.clone(), tau: dual.tau.clone(), embedding, dual })
}

/// An integer potential `c` with `c(head) - c(tail) = f(e*)`. Integers have no element
/// of order 2, so one exists for every integer flow on the dual on either surface.
pub fn integer_potential(eg: &EmbeddedGraph, dual: &Dual, f: &IntegerEdgeMap) -> Result<Vec<i64>> {
    let g = &eg.graph;
    if f.values.len() != g.edge_count() {
        return Err(Error::pre("the flow does not cover every dual edge"));
    }
    if crate::group::integer_boundary(&dual.graph, &dual.tau, f).iter().any(|&b| b != 0) {
        return Err(Error::pre("the map is not a flow on the dual"));
    }
    let tail_head = |e: usize| {
        let [x, y] = g.endpoints(e);
        if dual.primal_direction[e] > 0 {
            (x, y)
        } else {
            (y, x)
        }
    };
    let n = g.vertex_count();
    let mut c: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if c[root].is_some() {
            continue;
        }
        c[root] = Some(0);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let cu = c[u].expect("visited vertices have a value");
            for e in g.edges_at(u) {
                let (t, h) = tail_head(e);
                let (w, cw) = if t == u { (h, cu + f.values[e]) } else { (t, cu - f.values[e]) };
                if c[w].is_none() {
                    c[w] = Some(cw);
                    stack.push(w);
                }
            }
        }
    }
    let c: Vec<i64> = c.into_iter().map(|x| x.expect("all reached")).collect();
    if let Some(e) = g.edges().find(|&e| {
        let (t, h) = tail_head(e);
        c[h] - c[t] != f.values[e]
    }) {
        return Err(Error::internal(format!("potential fails on primal edge {e}")));
    }
    Ok(c)
}
