use std::collections::VecDeque;

use super::{CycleRef, Edge, EdgeSet, Sign, SignedGraph, Vertex};
use crate::error::{Error, Limits, Result};

/// A vertex set together with the edges leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCut {
    pub side: Vec<bool>,
    pub cut_edges: EdgeSet,
}

impl EdgeCut {
    /// The cut induced by `side`; loops never belong to a cut.
    pub fn of(g: &SignedGraph, side: Vec<bool>) -> Result<EdgeCut> {
        if side.len() != g.vertex_count() {
            return Err(Error::pre("cut side must list every vertex"));
        }
        let cut_edges = EdgeSet::from_edges(
            g.edge_count(),
            g.edges().filter(|&e| {
                let [a, b] = g.endpoints(e);
                side[a] != side[b]
            }),
        );
        Ok(EdgeCut { side, cut_edges })
    }

    pub fn from_vertices(g: &SignedGraph, vertices: &[Vertex]) -> Result<EdgeCut> {
        let mut side = vec![false; g.vertex_count()];
        for &v in vertices {
            g.check_vertex(v)?;
            side[v] = true;
        }
        EdgeCut::of(g, side)
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        let expect = EdgeCut::of(g, self.side.clone())?;
        if expect.cut_edges != self.cut_edges {
            return Err(Error::pre("cut edges do not match the boundary of the cut side"));
        }
        Ok(())
    }
}

impl SignedGraph {
    /// Negates every non-loop edge at `v`.
    pub fn switch_at(&self, v: Vertex) -> Result<SignedGraph> {
        self.check_vertex(v)?;
        let mut side = vec![false; self.vertex_count()];
        side[v] = true;
        Ok(self.switch_set(&side))
    }

    /// Negates exactly the edges of the cut after checking it is consistent.
    pub fn switch_on_cut(&self, cut: &EdgeCut) -> Result<SignedGraph> {
        cut.validate(self)?;
        Ok(self.switch_set(&cut.side))
    }

    /// Switches at every vertex of the mask.
    pub fn switch_set(&self, side: &[bool]) -> SignedGraph {
        let signs = self
            .edges()
            .map(|e| {
                let [a, b] = self.endpoints(e);
                if side[a] != side[b] {
                    -self.sign(e)
                } else {
                    self.sign(e)
                }
            })
            .collect();
        self.with_signs(signs).expect("same edge count")
    }
}

/// Outcome of a balance test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// Switching at the marked vertices makes every edge positive.
    Balanced { switching: Vec<bool> },
    Unbalanced { witness: CycleRef },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced { .. })
    }
}

/// Two-colours each component so that negative edges join opposite colours.
pub fn balance(g: &SignedGraph) -> Balance {
    balance_of(g, g.signs())
}

pub fn is_balanced(g: &SignedGraph) -> bool {
    balance(g).is_balanced()
}

/// Balance test for an arbitrary signature on the underlying graph of `g`.
pub(crate) fn balance_of(g: &SignedGraph, signs: &[Sign]) -> Balance {
    let n = g.vertex_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<(Vertex, Edge)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for h in g.half_edges_at(u) {
                let e = h.edge();
                let w = g.other_end(e, u);
                let want = colour[u].unwrap() ^ signs[e].is_negative();
                match colour[w] {
                    None => {
                        colour[w] = Some(want);
                        parent[w] = Some((u, e));
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(c) if c != want => {
                        return Balance::Unbalanced { witness: tree_cycle(&parent, &depth, u, w, e) };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Balance::Balanced { switching: colour.into_iter().map(|c| c.unwrap_or(false)).collect() }
}

/// The cycle formed by tree edge paths from `u` and `w` and the closing edge `e`.
fn tree_cycle(parent: &[Option<(Vertex, Edge)>], depth: &[usize], u: Vertex, w: Vertex, e: Edge) -> CycleRef {
    if u == w {
        return CycleRef { vertices: vec![u], edges: vec![e] };
    }
    let (mut a, mut b) = (u, w);
    let mut left_v = vec![a];
    let mut left_e = Vec::new();
    let mut right_v = vec![b];
    let mut right_e = Vec::new();
    while depth[a] > depth[b] {
        let (p, pe) = parent[a].unwrap();
        left_e.push(pe);
        left_v.push(p);
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, pe) = parent[b].unwrap();
        right_e.push(pe);
        right_v.push(p);
        b = p;
    }
    while a != b {
        let (p, pe) = parent[a].unwrap();
        left_e.push(pe);
        left_v.push(p);
        a = p;
        let (q, qe) = parent[b].unwrap();
        right_e.push(qe);
        right_v.push(q);
        b = q;
    }
    // left_v runs u .. lca, right_v runs w .. lca.
    right_v.pop();
    let mut vertices: Vec<Vertex> = left_v.iter().rev().copied().collect();
    let mut edges: Vec<Edge> = left_e.iter().rev().copied().collect();
    // vertices: lca .. u, edges join consecutive ones; then u -> w by e, then back to lca.
    edges.push(e);
    vertices.extend(right_v.iter().copied());
    edges.extend(right_e.iter().copied());
    CycleRef { vertices, edges }
}

/// Outcome of comparing two signatures on one underlying graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// Switching the first graph at the marked vertices yields the second.
    Equivalent { switching: Vec<bool> },
    /// A cycle whose sign differs between the two graphs.
    Different { cycle: CycleRef },
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

pub fn signatures_equivalent(g1: &SignedGraph, g2: &SignedGraph) -> Result<Equivalence> {
    if !g1.same_underlying(g2) {
        return Err(Error::pre("signatures live on different underlying graphs"));
    }
    let diff: Vec<Sign> = g1.edges().map(|e| g1.sign(e) * g2.sign(e)).collect();
    Ok(match balance_of(g1, &diff) {
        Balance::Balanced { switching } => Equivalence::Equivalent { switching },
        Balance::Unbalanced { witness } => Equivalence::Different { cycle: witness },
    })
}

/// Result of a bounded frustration computation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Frustration {
    Exactly(usize),
    ExceedsBudget,
}

/// Least number of negative edges over the switching class of `g`, reported if at most `budget`.
///
/// Budgets 0 and 1 are polynomial. Larger budgets enumerate switching sets and
/// refuse graphs beyond `limits`.
pub fn min_negative_edges(g: &SignedGraph, budget: usize, limits: &Limits) -> Result<Frustration> {
    if is_balanced(g) {
        return Ok(Frustration::Exactly(0));
    }
    if budget == 0 {
        return Ok(Frustration::ExceedsBudget);
    }
    if single_negative_edge(g).is_some() {
        return Ok(Frustration::Exactly(1));
    }
    if budget == 1 {
        return Ok(Frustration::ExceedsBudget);
    }
    limits.check(g.vertex_count(), g.edge_count())?;
    let best = exhaustive_frustration(g);
    Ok(if best <= budget { Frustration::Exactly(best) } else { Frustration::ExceedsBudget })
}

/// An edge `e` such that `g` is equivalent to the signature with only `e` negative.
pub fn single_negative_edge(g: &SignedGraph) -> Option<Edge> {
    let mut signs = vec![Sign::Positive; g.edge_count()];
    for e in g.edges() {
        signs[e] = Sign::Negative;
        let diff: Vec<Sign> = g.edges().map(|f| g.sign(f) * signs[f]).collect();
        signs[e] = Sign::Positive;
        if balance_of(g, &diff).is_balanced() {
            return Some(e);
        }
    }
    None
}

/// Every equivalent signature has at least two negative edges.
pub fn is_two_unbalanced(g: &SignedGraph) -> bool {
    !is_balanced(g) && single_negative_edge(g).is_none()
}

fn exhaustive_frustration(g: &SignedGraph) -> usize {
    let n = g.vertex_count();
    let roots = super::components(g);
    // Switching a whole component changes nothing, so each component's first vertex stays fixed.
    let free: Vec<Vertex> = (0..n).filter(|&v| roots.label[v] != usize::MAX && roots.first[roots.label[v]] != v).collect();
    let mut best = usize::MAX;
    let mut side = vec![false; n];
    for mask in 0u64..(1u64 << free.len()) {
        for (i, &v) in free.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let count = g
            .edges()
            .filter(|&e| {
                let [a, b] = g.endpoints(e);
                g.sign(e).is_negative() != (side[a] != side[b])
            })
            .count();
        best = best.min(count);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Negative as N, Positive as P};

    fn triangle(signs: [Sign; 3]) -> SignedGraph {
        SignedGraph::from_edges(3, [(0, 1, signs[0]), (1, 2, signs[1]), (2, 0, signs[2])]).unwrap()
    }

    #[test]
    fn switch_triangle() {
        let g = triangle([P, P, P]);
        let s = g.switch_at(1).unwrap();
        assert_eq!(s.signs(), &[N, N, P]);
        assert_eq!(s.switch_at(1).unwrap(), g);
        assert!(g.switch_at(3).is_err());
    }

    #[test]
    fn loops_ignore_switching() {
        let g = SignedGraph::from_edges(2, [(0, 0, N), (0, 1, P)]).unwrap();
        assert_eq!(g.switch_at(0).unwrap().signs(), &[N, N]);
    }

    #[test]
    fn cut_switching() {
        let path = SignedGraph::from_edges(3, [(0, 1, P), (1, 2, P)]).unwrap();
        let empty = EdgeCut::of(&path, vec![false; 3]).unwrap();
        assert_eq!(path.switch_on_cut(&empty).unwrap(), path);
        let a = EdgeCut::from_vertices(&path, &[0]).unwrap();
        assert_eq!(path.switch_on_cut(&a).unwrap().signs(), &[N, P]);
        assert_eq!(path.switch_on_cut(&a).unwrap(), path.switch_at(0).unwrap());
        let bad = EdgeCut { side: vec![true, false, false], cut_edges: EdgeSet::from_edges(2, [1]) };
        assert!(path.switch_on_cut(&bad).is_err());
    }

    #[test]
    fn balance_examples() {
        assert_eq!(balance(&triangle([P, P, P])), Balance::Balanced { switching: vec![false; 3] });
        let l = SignedGraph::from_edges(1, [(0, 0, N)]).unwrap();
        assert_eq!(balance(&l), Balance::Unbalanced { witness: CycleRef { vertices: vec![0], edges: vec![0] } });
        // uv and vw negative; the unique nontrivial switching set up to complement is {v}.
        let t = triangle([N, N, P]);
        match balance(&t) {
            Balance::Balanced { switching } => {
                let flipped: Vec<_> = (0..3).filter(|&v| switching[v]).collect();
                assert!(flipped == vec![1] || flipped == vec![0, 2]);
                assert!(t.switch_set(&switching).negative_edges().is_empty());
            }
            _ => panic!("balanced"),
        }
    }

    #[test]
    fn witness_is_negative_cycle() {
        let g = SignedGraph::from_edges(5, [(0, 1, P), (1, 2, P), (2, 3, P), (3, 4, P), (4, 0, N)]).unwrap();
        match balance(&g) {
            Balance::Unbalanced { witness } => {
                assert_eq!(witness.sign(&g).unwrap(), N);
                assert_eq!(witness.len(), 5);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn equivalence() {
        let g = triangle([P, N, P]);
        assert!(signatures_equivalent(&g, &g.switch_at(2).unwrap()).unwrap().holds());
        match signatures_equivalent(&triangle([P, P, P]), &g).unwrap() {
            Equivalence::Different { cycle } => assert_eq!(cycle.len(), 3),
            _ => panic!(),
        }
        let other = SignedGraph::from_edges(3, [(0, 1, P)]).unwrap();
        assert!(signatures_equivalent(&g, &other).is_err());
    }

    #[test]
    fn frustration_examples() {
        let lim = Limits::default();
        assert_eq!(min_negative_edges(&triangle([N, N, P]), 2, &lim).unwrap(), Frustration::Exactly(0));
        let g = SignedGraph::from_edges(4, [(0, 0, N), (1, 2, P), (2, 3, P), (3, 1, P)]).unwrap();
        assert_eq!(min_negative_edges(&g, 1, &lim).unwrap(), Frustration::Exactly(1));
        let two = SignedGraph::from_edges(1, [(0, 0, N), (0, 0, N)]).unwrap();
        assert_eq!(min_negative_edges(&two, 1, &lim).unwrap(), Frustration::ExceedsBudget);
        assert_eq!(min_negative_edges(&two, 2, &lim).unwrap(), Frustration::Exactly(2));
        assert!(is_two_unbalanced(&two));
    }
}
