//! Exhaustive ground truth: boundary satisfaction, nowhere-zero group and integer
//! flows, and group connectivity.
//!
//! Searches assign edges one at a time, always picking an edge at the vertex with
//! the fewest unassigned half-edges, so that most values are forced by the vertex
//! constraint once every other edge at that vertex is known.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Limits, Result};
use crate::graph::{balance, components, Balance, Orientation, SignedGraph};
use crate::group::{AbelianGroup, EdgeMap, GroupElement, IntegerEdgeMap, VertexMap};

/// Largest group handled by the searches.
pub const MAX_SEARCH_ORDER: usize = 1024;
/// Largest `|A|^|V|` handled by exact connectivity.
pub const MAX_EXACT_STATES: usize = 43_046_721; // 9^8

struct Table {
    q: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl Table {
    fn new(a: &AbelianGroup) -> Result<Table> {
        let q = a.order();
        if q > MAX_SEARCH_ORDER {
            return Err(Error::DeskScale { what: "group order", limit: MAX_SEARCH_ORDER, actual: q });
        }
        let mut add = vec![0u16; q * q];
        for x in 0..q {
            for y in 0..q {
                add[x * q + y] = a.add(GroupElement(x as u32), GroupElement(y as u32)).0 as u16;
            }
        }
        let neg = (0..q).map(|x| a.neg(GroupElement(x as u32)).0 as u16).collect();
        Ok(Table { q, add, neg })
    }

    fn add(&self, x: u16, y: u16) -> u16 {
        self.add[x as usize * self.q + y as usize]
    }

    fn signed(&self, x: u16, dir: i8) -> u16 {
        if dir >= 0 {
            x
        } else {
            self.neg[x as usize]
        }
    }
}

struct GroupSearch<'a> {
    g: &'a SignedGraph,
    tau: &'a Orientation,
    t: Table,
    allowed: Vec<Vec<u16>>,
    value: Vec<Option<u16>>,
    residual: Vec<u16>,
    open: Vec<usize>,
}

impl GroupSearch<'_> {
    fn pick_edge(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for e in self.g.edges() {
            if self.value[e].is_some() {
                continue;
            }
            let [a, b] = self.g.endpoints(e);
            let key = self.open[a].min(self.open[b]);
            if best.is_none_or(|(k, _)| key < k) {
                best = Some((key, e));
            }
        }
        best.map(|(_, e)| e)
    }

    /// Contributions of value `x` on edge `e` at its two half-edges.
    fn apply(&mut self, e: usize, x: u16, undo: bool) {
        for end in 0..2 {
            let h = crate::graph::HalfEdge::of(e, end);
            let v = self.g.vertex_of(h);
            let c = self.t.signed(x, self.tau.get(h));
            if undo {
                self.residual[v] = self.t.add(self.residual[v], c);
                self.open[v] += 1;
            } else {
                self.residual[v] = self.t.add(self.residual[v], self.t.neg[c as usize]);
                self.open[v] -= 1;
            }
        }
    }

    fn run(&mut self) -> bool {
        let Some(e) = self.pick_edge() else {
            return self.residual.iter().all(|&r| r == 0);
        };
        let [a, b] = self.g.endpoints(e);
        for i in 0..self.allowed[e].len() {
            let x = self.allowed[e][i];
            self.apply(e, x, false);
            let ok = (self.open[a] > 0 || self.residual[a] == 0) && (self.open[b] > 0 || self.residual[b] == 0);
            if ok {
                self.value[e] = Some(x);
                if self.run() {
                    return true;
                }
                self.value[e] = None;
            }
            self.apply(e, x, true);
        }
        false
    }
}

/// Checks that `beta` can possibly be a boundary: on each balanced component the sum
/// after switching to all-positive is zero, on each unbalanced one the sum is a double.
pub fn is_admissible(g: &SignedGraph, beta: &VertexMap) -> bool {
    let a = &beta.group;
    let comps = components(g);
    for c in 0..comps.count() {
        let members: Vec<usize> = g.vertices().filter(|&v| comps.label[v] == c).collect();
        let (sub, _, _) = g.induced(&comps.label.iter().map(|&l| l == c).collect::<Vec<_>>());
        match balance(&sub) {
            Balance::Balanced { switching: local } => {
                let s = a.sum(members.iter().enumerate().map(|(i, &v)| a.signed(beta.get(v), if local[i] { -1 } else { 1 })));
                if !a.is_zero(s) {
                    return false;
                }
            }
            Balance::Unbalanced { .. } => {
                let s = a.sum(members.iter().map(|&v| beta.get(v)));
                if a.halves(s).is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Finds `f` with `∂f = beta`, `f` nowhere zero and `f(e) != fbar(e)` where given.
pub fn satisfy_boundary(
    g: &SignedGraph,
    tau: &Orientation,
    beta: &VertexMap,
    fbar: Option<&EdgeMap>,
    limits: &Limits,
) -> Result<Option<EdgeMap>> {
    limits.check(g.vertex_count(), g.edge_count())?;
    tau.validate(g)?;
    if beta.values.len() != g.vertex_count() {
        return Err(Error::pre("boundary does not cover every vertex"));
    }
    if let Some(f) = fbar {
        if f.group != beta.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", f.group, beta.group)));
        }
        if f.len() != g.edge_count() {
            return Err(Error::pre("forbidden map does not cover every edge"));
        }
    }
    if !is_admissible(g, beta) {
        return Err(Error::pre("the vertex map is not a boundary of this graph"));
    }
    search_unchecked(g, tau, beta, fbar)
}

fn search_unchecked(
    g: &SignedGraph,
    tau: &Orientation,
    beta: &VertexMap,
    fbar: Option<&EdgeMap>,
) -> Result<Option<EdgeMap>> {
    let a = &beta.group;
    let t = Table::new(a)?;
    let allowed = g
        .edges()
        .map(|e| {
            (1..t.q as u16).filter(|&x| fbar.is_none_or(|f| f.get(e).0 as u16 != x)).collect()
        })
        .collect();
    let mut s = GroupSearch {
        g,
        tau,
        allowed,
        value: vec![None; g.edge_count()],
        residual: beta.values.iter().map(|x| x.0 as u16).collect(),
        open: g.vertices().map(|v| g.degree(v)).collect(),
        t,
    };
    if s.run() {
        let values = s.value.iter().map(|x| GroupElement(x.unwrap() as u32)).collect();
        Ok(Some(EdgeMap { group: a.clone(), values }))
    } else {
        Ok(None)
    }
}

/// A nowhere-zero `A`-flow under the default orientation.
pub fn has_nz_a_flow(g: &SignedGraph, a: &AbelianGroup, limits: &Limits) -> Result<Option<(Orientation, EdgeMap)>> {
    let tau = Orientation::default_for(g);
    let beta = VertexMap::zero(a, g.vertex_count());
    limits.check(g.vertex_count(), g.edge_count())?;
    Ok(search_unchecked(g, &tau, &beta, None)?.map(|f| (tau, f)))
}

struct IntSearch<'a> {
    g: &'a SignedGraph,
    tau: &'a Orientation,
    k: i64,
    value: Vec<Option<i64>>,
    residual: Vec<i64>,
    open: Vec<usize>,
}

impl IntSearch<'_> {
    fn feasible(&self, v: usize) -> bool {
        let r = self.residual[v];
        if self.open[v] == 0 {
            r == 0
        } else {
            r.abs() <= self.open[v] as i64 * (self.k - 1)
        }
    }

    fn apply(&mut self, e: usize, x: i64, undo: bool) {
        for end in 0..2 {
            let h = crate::graph::HalfEdge::of(e, end);
            let v = self.g.vertex_of(h);
            let c = self.tau.get(h) as i64 * x;
            if undo {
                self.residual[v] += c;
                self.open[v] += 1;
            } else {
                self.residual[v] -= c;
                self.open[v] -= 1;
            }
        }
    }

    fn run(&mut self) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for e in self.g.edges() {
            if self.value[e].is_none() {
                let [a, b] = self.g.endpoints(e);
                let key = self.open[a].min(self.open[b]);
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, e));
                }
            }
        }
        let Some((_, e)) = best else { return true };
        let [a, b] = self.g.endpoints(e);
        for x in (1..self.k).flat_map(|x| [x, -x]) {
            self.apply(e, x, false);
            if self.feasible(a) && self.feasible(b) {
                self.value[e] = Some(x);
                if self.run() {
                    return true;
                }
                self.value[e] = None;
            }
            self.apply(e, x, true);
        }
        false
    }
}

/// A nowhere-zero integer `k`-flow under the default orientation.
pub fn has_nz_k_flow(g: &SignedGraph, k: i64, limits: &Limits) -> Result<Option<(Orientation, IntegerEdgeMap)>> {
    limits.check(g.vertex_count(), g.edge_count())?;
    if k < 2 {
        return Err(Error::pre("k-flows need k >= 2"));
    }
    let tau = Orientation::default_for(g);
    let mut s = IntSearch {
        g,
        tau: &tau,
        k,
        value: vec![None; g.edge_count()],
        residual: vec![0; g.vertex_count()],
        open: g.vertices().map(|v| g.degree(v)).collect(),
    };
    if s.run() {
        let values = s.value.iter().map(|x| x.unwrap()).collect();
        Ok(Some((tau, IntegerEdgeMap { values })))
    } else {
        Ok(None)
    }
}

/// Verdict of a connectivity query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// Every boundary was shown satisfiable.
    Yes,
    /// This boundary (with this forbidden map, if any) cannot be satisfied.
    No { beta: VertexMap, fbar: Option<EdgeMap> },
    /// Every sampled instance was satisfiable.
    SampledYes { samples: usize, seed: u64 },
}

impl Connectivity {
    pub fn is_no(&self) -> bool {
        matches!(self, Connectivity::No { .. })
    }
}

/// Exact connectivity: computes the set of boundaries of all nowhere-zero maps and
/// compares it with the set of admissible boundaries.
pub fn is_a_connected(g: &SignedGraph, a: &AbelianGroup, limits: &Limits) -> Result<Connectivity> {
    limits.check(g.vertex_count(), g.edge_count())?;
    let tau = Orientation::default_for(g);
    let n = g.vertex_count();
    let zero = VertexMap::zero(a, n);
    if search_unchecked(g, &tau, &zero, None)?.is_none() {
        return Ok(Connectivity::No { beta: zero, fbar: None });
    }
    let q = a.order();
    let states = (q as u128).pow(n as u32);
    if states > MAX_EXACT_STATES as u128 {
        return Err(Error::DeskScale { what: "|A|^|V|", limit: MAX_EXACT_STATES, actual: states.min(usize::MAX as u128) as usize });
    }
    let states = states as usize;
    let t = Table::new(a)?;
    let pow: Vec<usize> = (0..n).map(|v| q.pow(v as u32)).collect();
    let words = states.div_ceil(64);
    let mut cur = vec![0u64; words];
    cur[0] = 1;
    for e in g.edges() {
        let mut next = vec![0u64; words];
        let hs = [crate::graph::HalfEdge::of(e, 0), crate::graph::HalfEdge::of(e, 1)];
        let [u, w] = g.endpoints(e);
        for x in 1..q as u16 {
            let cu = t.signed(x, tau.get(hs[0]));
            let cw = t.signed(x, tau.get(hs[1]));
            for (wi, &word) in cur.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let s = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let mut s2 = s;
                    let du = (s2 / pow[u]) % q;
                    let nu = t.add(du as u16, cu) as usize;
                    s2 = s2 - du * pow[u] + nu * pow[u];
                    let dw = (s2 / pow[w]) % q;
                    let nw = t.add(dw as u16, cw) as usize;
                    s2 = s2 - dw * pow[w] + nw * pow[w];
                    next[s2 / 64] |= 1 << (s2 % 64);
                }
            }
        }
        cur = next;
    }
    let mut beta = VertexMap::zero(a, n);
    for s in 0..states {
        if cur[s / 64] >> (s % 64) & 1 == 1 {
            continue;
        }
        for (x, &p) in beta.values.iter_mut().zip(&pow) {
            *x = GroupElement(((s / p) % q) as u32);
        }
        if is_admissible(g, &beta) {
            return Ok(Connectivity::No { beta, fbar: None });
        }
    }
    Ok(Connectivity::Yes)
}

/// A uniformly random admissible boundary.
pub fn random_boundary(g: &SignedGraph, a: &AbelianGroup, rng: &mut impl Rng) -> VertexMap {
    loop {
        let values = g.vertices().map(|_| GroupElement(rng.gen_range(0..a.order() as u32))).collect();
        let beta = VertexMap { group: a.clone(), values };
        if is_admissible(g, &beta) {
            return beta;
        }
    }
}

pub fn random_edge_map(a: &AbelianGroup, m: usize, rng: &mut impl Rng) -> EdgeMap {
    EdgeMap { group: a.clone(), values: (0..m).map(|_| GroupElement(rng.gen_range(0..a.order() as u32))).collect() }
}

/// Sampled connectivity over random boundaries and random forbidden maps.
pub fn is_a_connected_sampled(
    g: &SignedGraph,
    a: &AbelianGroup,
    samples: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Connectivity> {
    limits.check(g.vertex_count(), g.edge_count())?;
    let tau = Orientation::default_for(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let beta = random_boundary(g, a, &mut rng);
        let fbar = random_edge_map(a, g.edge_count(), &mut rng);
        if search_unchecked(g, &tau, &beta, Some(&fbar))?.is_none() {
            return Ok(Connectivity::No { beta, fbar: Some(fbar) });
        }
    }
    Ok(Connectivity::SampledYes { samples, seed })
}

/// A flow avoiding `fbar` everywhere (zero boundary), if one exists.
pub fn avoiding_flow(g: &SignedGraph, tau: &Orientation, fbar: &EdgeMap, limits: &Limits) -> Result<Option<EdgeMap>> {
    let beta = VertexMap::zero(&fbar.group, g.vertex_count());
    satisfy_boundary_any(g, tau, &beta, fbar, limits)
}

/// Like [`satisfy_boundary`] but the values need only avoid `fbar`; zero is allowed.
pub fn satisfy_boundary_any(
    g: &SignedGraph,
    tau: &Orientation,
    beta: &VertexMap,
    fbar: &EdgeMap,
    limits: &Limits,
) -> Result<Option<EdgeMap>> {
    limits.check(g.vertex_count(), g.edge_count())?;
    tau.validate(g)?;
    // Shift by a reference map: f = h + fbar turns "f != fbar" into "h != 0".
    let a = &fbar.group;
    let shift = crate::group::boundary(g, tau, fbar)?;
    let values = beta.values.iter().zip(&shift.values).map(|(&b, &s)| a.sub(b, s)).collect();
    let target = VertexMap { group: a.clone(), values };
    if !is_admissible(g, &target) {
        return Ok(None);
    }
    let found = search_unchecked(g, tau, &target, None)?;
    Ok(found.map(|h| h.add(fbar).expect("same group")))
}
