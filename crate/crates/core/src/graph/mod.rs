//! Signed multigraphs stored as half-edge incidences.
//!
//! Edge `e` owns the half-edges `2e` and `2e + 1`. Loops and parallel edges
//! are allowed everywhere.

mod connectivity;
mod cycle;
pub(crate) mod io;
mod minor;
mod planar;
mod switching;

pub use connectivity::*;
pub use cycle::*;
pub use io::*;
pub use minor::*;
pub use planar::*;
pub use switching::*;

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Edge = usize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge(pub usize);

impl HalfEdge {
    /// The half-edge of `e` at end 0 or 1.
    pub fn of(e: Edge, end: usize) -> HalfEdge {
        debug_assert!(end < 2);
        HalfEdge(2 * e + end)
    }

    pub fn edge(self) -> Edge {
        self.0 / 2
    }

    pub fn end(self) -> usize {
        self.0 & 1
    }

    pub fn mate(self) -> HalfEdge {
        HalfEdge(self.0 ^ 1)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn from_i8(x: i8) -> Sign {
        if x < 0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A signed multigraph. Cheap to clone for the sizes this crate targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    ends: Vec<[Vertex; 2]>,
    signs: Vec<Sign>,
    incidence: Vec<Vec<HalfEdge>>,
}

impl SignedGraph {
    /// A graph with `n` vertices and no edges.
    pub fn new(n: usize) -> SignedGraph {
        SignedGraph { ends: Vec::new(), signs: Vec::new(), incidence: vec![Vec::new(); n] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<SignedGraph>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Sign)>,
    {
        let mut g = SignedGraph::new(n);
        for (u, v, s) in edges {
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }

    /// All-positive graph from an edge list.
    pub fn unsigned<I>(n: usize, edges: I) -> Result<SignedGraph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        SignedGraph::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, Sign::Positive)))
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.incidence.push(Vec::new());
        self.incidence.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, sign: Sign) -> Result<Edge> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.signs.push(sign);
        self.incidence[u].push(HalfEdge::of(e, 0));
        self.incidence[v].push(HalfEdge::of(e, 1));
        Ok(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn edges(&self) -> std::ops::Range<Edge> {
        0..self.edge_count()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(Error::InvalidEdge(e))
        }
    }

    pub fn endpoints(&self, e: Edge) -> [Vertex; 2] {
        self.ends[e]
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a loop).
    pub fn other_end(&self, e: Edge, v: Vertex) -> Vertex {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn vertex_of(&self, h: HalfEdge) -> Vertex {
        self.ends[h.edge()][h.end()]
    }

    pub fn sign(&self, e: Edge) -> Sign {
        self.signs[e]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_loop(&self, e: Edge) -> bool {
        let [a, b] = self.ends[e];
        a == b
    }

    /// Half-edges at `v`; a loop contributes both of its halves.
    pub fn half_edges_at(&self, v: Vertex) -> &[HalfEdge] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    /// Distinct edges incident with `v`, in half-edge order.
    pub fn edges_at(&self, v: Vertex) -> Vec<Edge> {
        let mut out: Vec<Edge> = Vec::with_capacity(self.degree(v));
        for h in &self.incidence[v] {
            if !out.contains(&h.edge()) {
                out.push(h.edge());
            }
        }
        out
    }

    pub fn negative_edges(&self) -> Vec<Edge> {
        self.edges().filter(|&e| self.signs[e].is_negative()).collect()
    }

    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) == 3)
    }

    /// Sum over vertices of |deg(v) - 3|.
    pub fn cubic_excess(&self) -> usize {
        self.vertices().map(|v| self.degree(v).abs_diff(3)).sum()
    }

    pub fn has_loops(&self) -> bool {
        self.edges().any(|e| self.is_loop(e))
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for e in self.edges() {
            let [a, b] = self.ends[e];
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return false;
            }
        }
        true
    }

    /// Same graph with a new signature.
    pub fn with_signs(&self, signs: Vec<Sign>) -> Result<SignedGraph> {
        if signs.len() != self.edge_count() {
            return Err(Error::pre(format!(
                "signature has {} entries for {} edges",
                signs.len(),
                self.edge_count()
            )));
        }
        Ok(SignedGraph { signs, ..self.clone() })
    }

    /// Same graph with the given edges negative and all others positive.
    pub fn with_negative_edges(&self, negative: &[Edge]) -> Result<SignedGraph> {
        let mut signs = vec![Sign::Positive; self.edge_count()];
        for &e in negative {
            self.check_edge(e)?;
            signs[e] = Sign::Negative;
        }
        self.with_signs(signs)
    }

    /// True when both graphs have the same vertices and the same edge ends.
    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.vertex_count() == other.vertex_count() && self.ends == other.ends
    }

    /// Subgraph on the same vertex set keeping only `keep`, plus the new to old edge map.
    pub fn edge_subgraph(&self, keep: &EdgeSet) -> (SignedGraph, Vec<Edge>) {
        let mut g = SignedGraph::new(self.vertex_count());
        let mut back = Vec::new();
        for e in keep.iter() {
            let [a, b] = self.ends[e];
            g.add_edge(a, b, self.signs[e]).expect("vertices exist");
            back.push(e);
        }
        (g, back)
    }

    /// Subgraph induced by `keep` (vertex mask) with new to old vertex and edge maps.
    pub fn induced(&self, keep: &[bool]) -> (SignedGraph, Vec<Vertex>, Vec<Edge>) {
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        let mut vback = Vec::new();
        for v in self.vertices() {
            if keep[v] {
                new_index[v] = vback.len();
                vback.push(v);
            }
        }
        let mut g = SignedGraph::new(vback.len());
        let mut eback = Vec::new();
        for e in self.edges() {
            let [a, b] = self.ends[e];
            if keep[a] && keep[b] {
                g.add_edge(new_index[a], new_index[b], self.signs[e]).expect("vertices exist");
                eback.push(e);
            }
        }
        (g, vback, eback)
    }
}

/// A subset of the edges of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    bits: Vec<bool>,
}

impl EdgeSet {
    pub fn empty(m: usize) -> EdgeSet {
        EdgeSet { bits: vec![false; m] }
    }

    pub fn full(m: usize) -> EdgeSet {
        EdgeSet { bits: vec![true; m] }
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(m: usize, edges: I) -> EdgeSet {
        let mut s = EdgeSet::empty(m);
        for e in edges {
            s.insert(e);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.bits.get(e).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        let was = self.bits[e];
        self.bits[e] = true;
        !was
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        let was = self.bits[e];
        self.bits[e] = false;
        was
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e)
    }

    pub fn to_vec(&self) -> Vec<Edge> {
        self.iter().collect()
    }

    pub fn complement(&self) -> EdgeSet {
        EdgeSet { bits: self.bits.iter().map(|&b| !b).collect() }
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet { bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a || b).collect() }
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet { bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a && b).collect() }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet { bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a && !b).collect() }
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet { bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a != b).collect() }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !(a && b))
    }

    pub fn as_mask(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// A direction bit per half-edge: `+1` points away from the half-edge's vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    tau: Vec<i8>,
}

impl Orientation {
    /// Positive edges run from end 0 to end 1; negative edges point out at both ends.
    pub fn default_for(g: &SignedGraph) -> Orientation {
        let mut tau = Vec::with_capacity(2 * g.edge_count());
        for e in g.edges() {
            tau.push(1);
            tau.push(if g.sign(e).is_negative() { 1 } else { -1 });
        }
        Orientation { tau }
    }

    pub fn from_values(g: &SignedGraph, tau: Vec<i8>) -> Result<Orientation> {
        let o = Orientation { tau };
        o.validate(g)?;
        Ok(o)
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.tau.len() != 2 * g.edge_count() {
            return Err(Error::pre("orientation does not cover every half-edge"));
        }
        for e in g.edges() {
            let (a, b) = (self.tau[2 * e], self.tau[2 * e + 1]);
            if a.abs() != 1 || b.abs() != 1 {
                return Err(Error::pre(format!("edge {e}: direction bits must be +1 or -1")));
            }
            let want = if g.sign(e).is_negative() { 1 } else { -1 };
            if a * b != want {
                return Err(Error::pre(format!("edge {e}: orientation disagrees with its sign")));
            }
        }
        Ok(())
    }

    pub fn get(&self, h: HalfEdge) -> i8 {
        self.tau[h.0]
    }

    pub fn values(&self) -> &[i8] {
        &self.tau
    }

    /// Flips both halves of `e`.
    pub fn reverse_edge(&mut self, e: Edge) {
        self.tau[2 * e] = -self.tau[2 * e];
        self.tau[2 * e + 1] = -self.tau[2 * e + 1];
    }

    /// Flips the half-edges at `v`, matching a switch of the signature at `v`.
    /// Loops at `v` flip at both ends and so keep their type.
    pub fn switch_at(&mut self, g: &SignedGraph, v: Vertex) {
        for h in g.half_edges_at(v) {
            self.tau[h.0] = -self.tau[h.0];
        }
    }

    /// Flips one half-edge; the caller is responsible for the matching sign change.
    pub fn flip_half(&mut self, h: HalfEdge) {
        self.tau[h.0] = -self.tau[h.0];
    }

    /// The signature this orientation is valid for.
    pub fn implied_signs(&self) -> Vec<Sign> {
        self.tau.chunks(2).map(|p| Sign::from_i8(-(p[0] * p[1]))).collect()
    }
}
