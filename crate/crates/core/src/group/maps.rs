use super::{AbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::graph::{io, Orientation, SignedGraph};

/// A group value on every edge: flows and forbidden maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeMap {
    pub group: AbelianGroup,
    pub values: Vec<GroupElement>,
}

/// A group value on every vertex: boundaries and colourings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    pub group: AbelianGroup,
    pub values: Vec<GroupElement>,
}

/// Integer edge values, as used for integer `k`-flows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerEdgeMap {
    pub values: Vec<i64>,
}

impl EdgeMap {
    pub fn zero(group: &AbelianGroup, m: usize) -> EdgeMap {
        EdgeMap { group: group.clone(), values: vec![group.zero(); m] }
    }

    pub fn get(&self, e: usize) -> GroupElement {
        self.values[e]
    }

    pub fn set(&mut self, e: usize, x: GroupElement) {
        self.values[e] = x;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &EdgeMap) -> Result<EdgeMap> {
        same_group(&self.group, &other.group)?;
        Ok(EdgeMap {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| self.group.add(a, b)).collect(),
        })
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|x| x.0 != 0)
    }

    /// `f(e) != fbar(e)` on every edge.
    pub fn avoids(&self, fbar: &EdgeMap) -> bool {
        self.values.iter().zip(&fbar.values).all(|(a, b)| a != b)
    }

    /// Text form: one `<edge> <coords>` line per edge, edges numbered from 0.
    pub fn to_text(&self) -> String {
        self.values.iter().enumerate().map(|(e, &x)| format!("{e} {}\n", self.group.format_element(x))).collect()
    }

    pub fn parse(text: &str, group: &AbelianGroup, m: usize) -> Result<EdgeMap> {
        let values = parse_map(text, group, m, 0)?;
        Ok(EdgeMap { group: group.clone(), values })
    }
}

impl VertexMap {
    pub fn zero(group: &AbelianGroup, n: usize) -> VertexMap {
        VertexMap { group: group.clone(), values: vec![group.zero(); n] }
    }

    pub fn get(&self, v: usize) -> GroupElement {
        self.values[v]
    }

    pub fn total(&self) -> GroupElement {
        self.group.sum(self.values.iter().copied())
    }

    /// Text form: one `<vertex> <coords>` line per vertex, vertices numbered from 1.
    pub fn to_text(&self) -> String {
        self.values.iter().enumerate().map(|(v, &x)| format!("{} {}\n", v + 1, self.group.format_element(x))).collect()
    }

    pub fn parse(text: &str, group: &AbelianGroup, n: usize) -> Result<VertexMap> {
        let values = parse_map(text, group, n, 1)?;
        Ok(VertexMap { group: group.clone(), values })
    }
}

/// Lines `<index> <coords>`; missing indices default to zero.
fn parse_map(text: &str, group: &AbelianGroup, len: usize, base: usize) -> Result<Vec<GroupElement>> {
    let mut values = vec![group.zero(); len];
    let mut seen = vec![false; len];
    for (ln, toks) in io::content_lines(text) {
        if toks.len() != 2 {
            return Err(Error::parse(ln, "expected `<index> <coord,coord,...>`"));
        }
        let i = io::parse_usize(toks[0], ln, "an index")?;
        if i < base || i - base >= len {
            return Err(Error::parse(ln, format!("index {i} out of range")));
        }
        if seen[i - base] {
            return Err(Error::parse(ln, format!("index {i} given twice")));
        }
        seen[i - base] = true;
        values[i - base] = group.parse_element(toks[1]).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse(ln, msg),
            other => other,
        })?;
    }
    Ok(values)
}

fn same_group(a: &AbelianGroup, b: &AbelianGroup) -> Result<()> {
    if a != b {
        return Err(Error::GroupMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// `∂f(v)`: the sum over half-edges at `v` of `τ(h) f(e_h)`.
pub fn boundary(g: &SignedGraph, tau: &Orientation, f: &EdgeMap) -> Result<VertexMap> {
    if f.len() != g.edge_count() || tau.values().len() != 2 * g.edge_count() {
        return Err(Error::pre("map or orientation does not match the graph"));
    }
    let a = &f.group;
    let mut out = VertexMap::zero(a, g.vertex_count());
    for v in g.vertices() {
        let mut s = a.zero();
        for &h in g.half_edges_at(v) {
            s = a.add(s, a.signed(f.get(h.edge()), tau.get(h)));
        }
        out.values[v] = s;
    }
    Ok(out)
}

pub fn is_flow(g: &SignedGraph, tau: &Orientation, f: &EdgeMap) -> Result<bool> {
    Ok(boundary(g, tau, f)?.values.iter().all(|x| x.0 == 0))
}

pub fn is_nowhere_zero(f: &EdgeMap) -> bool {
    f.is_nowhere_zero()
}

/// Whether the total of `beta` is a double, with the least such `a` and the number of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCheck {
    pub half: Option<GroupElement>,
    pub solutions: usize,
}

impl BoundaryCheck {
    pub fn holds(&self) -> bool {
        self.half.is_some()
    }
}

/// `beta` is an A-boundary when its total equals `2a` for some `a`.
pub fn is_a_boundary(beta: &VertexMap) -> BoundaryCheck {
    let halves = beta.group.halves(beta.total());
    BoundaryCheck { half: halves.first().copied(), solutions: halves.len() }
}

/// Integer boundary under an orientation.
pub fn integer_boundary(g: &SignedGraph, tau: &Orientation, f: &IntegerEdgeMap) -> Vec<i64> {
    g.vertices()
        .map(|v| g.half_edges_at(v).iter().map(|&h| tau.get(h) as i64 * f.values[h.edge()]).sum())
        .collect()
}

/// Integer `k`-flow test: zero boundary and `|f(e)| < k` everywhere.
pub fn is_integer_k_flow(g: &SignedGraph, tau: &Orientation, f: &IntegerEdgeMap, k: i64) -> bool {
    f.values.len() == g.edge_count()
        && f.values.iter().all(|x| x.abs() < k)
        && integer_boundary(g, tau, f).iter().all(|&b| b == 0)
}
