use crate::error::{Error, Result};
use crate::graph::{all_cycles, cycles_within, CycleRef, Edge, EdgeSet, PathRef, SignedGraph, Vertex};

/// A negative cycle with one pendant edge at each of its vertices.
///
/// `pendants[i]` leaves `cycle.vertices[i]` and ends at `pendant_vertices[i]`,
/// which lie off the cycle. Repeated pendant vertices make the sun degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeSun {
    pub cycle: CycleRef,
    pub pendants: Vec<Edge>,
    pub pendant_vertices: Vec<Vertex>,
}

impl NegativeSun {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        let mut v = self.pendant_vertices.clone();
        v.sort_unstable();
        v.dedup();
        v.len() < self.pendant_vertices.len()
    }

    pub fn edge_set(&self, m: usize) -> EdgeSet {
        EdgeSet::from_edges(m, self.cycle.edges.iter().chain(&self.pendants).copied())
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if !self.cycle.sign(g)?.is_negative() {
            return Err(Error::pre("the cycle of a negative sun must be negative"));
        }
        let n = self.cycle.len();
        if n < 2 || self.pendants.len() != n || self.pendant_vertices.len() != n {
            return Err(Error::pre("a negative sun needs one pendant edge per cycle vertex"));
        }
        let on_cycle = self.cycle.vertex_mask(g.vertex_count());
        for i in 0..n {
            let e = self.pendants[i];
            g.check_edge(e)?;
            let v = self.cycle.vertices[i];
            let [a, b] = g.endpoints(e);
            let w = if a == v { b } else if b == v { a } else { v };
            if w == v || w != self.pendant_vertices[i] || on_cycle[w] {
                return Err(Error::pre(format!("pendant edge {e} does not leave the cycle at {v}")));
            }
        }
        Ok(())
    }
}

/// Two negative cycles joined by a path meeting each of them only at its ends.
/// With a trivial path the cycles share that one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Barbell {
    pub first: CycleRef,
    pub second: CycleRef,
    pub path: PathRef,
}

impl Barbell {
    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        self.path.validate(g)?;
        for c in [&self.first, &self.second] {
            if !c.sign(g)?.is_negative() {
                return Err(Error::pre("barbell cycles must be negative"));
            }
        }
        let n = g.vertex_count();
        let (m1, m2) = (self.first.vertex_mask(n), self.second.vertex_mask(n));
        let shared: Vec<Vertex> = self.second.vertices.iter().copied().filter(|&v| m1[v]).collect();
        if self.path.is_empty() {
            // A trivial path: the cycles meet exactly at its vertex.
            let edges_meet = self.first.edges.iter().any(|e| self.second.edges.contains(e));
            if shared != [self.path.start()] || edges_meet {
                return Err(Error::pre("barbell cycles with a trivial path must share exactly its vertex"));
            }
            return Ok(());
        }
        if !shared.is_empty() {
            return Err(Error::pre("barbell cycles must be vertex-disjoint"));
        }
        let last = self.path.vertices.len() - 1;
        for (i, &v) in self.path.vertices.iter().enumerate() {
            if m1[v] != (i == 0) || m2[v] != (i == last) {
                return Err(Error::pre("barbell path must meet each cycle only at its ends"));
            }
        }
        Ok(())
    }

    pub fn edge_set(&self, m: usize) -> EdgeSet {
        EdgeSet::from_edges(m, self.first.edges.iter().chain(&self.second.edges).chain(&self.path.edges).copied())
    }
}

/// Attaches pendant edges to a negative cycle; `None` if some vertex has no edge leaving the cycle.
fn sun_on(g: &SignedGraph, cycle: &CycleRef, allowed: &EdgeSet, distinct: bool) -> Option<NegativeSun> {
    let on_cycle = cycle.vertex_mask(g.vertex_count());
    let mut pendants = Vec::new();
    let mut ends: Vec<Vertex> = Vec::new();
    for &v in &cycle.vertices {
        let pick = g.half_edges_at(v).iter().map(|h| h.edge()).find(|&e| {
            let w = g.other_end(e, v);
            allowed.contains(e) && !on_cycle[w] && !pendants.contains(&e) && !(distinct && ends.contains(&w))
        })?;
        ends.push(g.other_end(pick, v));
        pendants.push(pick);
    }
    Some(NegativeSun { cycle: cycle.clone(), pendants, pendant_vertices: ends })
}

/// A negative sun subgraph, shortest cycle first, preferring distinct pendant vertices.
pub fn find_negative_sun(g: &SignedGraph) -> Result<Option<NegativeSun>> {
    let all = EdgeSet::full(g.edge_count());
    let negative: Vec<CycleRef> = all_cycles(g)?.into_iter().filter(|c| c.sign_unchecked(g).is_negative() && c.len() >= 2).collect();
    for distinct in [true, false] {
        if let Some(s) = negative.iter().find_map(|c| sun_on(g, c, &all, distinct)) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Reads `set` as exactly the edges of a negative sun, degenerate or not.
pub fn sun_shape(g: &SignedGraph, set: &EdgeSet) -> Result<Option<NegativeSun>> {
    for c in cycles_within(g, set)? {
        if !c.sign_unchecked(g).is_negative() || c.len() < 2 || 2 * c.len() != set.len() {
            continue;
        }
        if let Some(s) = sun_on(g, &c, set, false) {
            if s.edge_set(g.edge_count()) == *set {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

pub use crate::generators::negative_sun as build_negative_sun;
