//! Degree reduction to cubic graphs and moving flows between a graph and its
//! uncontractions or contractions.

use crate::error::{Error, Limits, Result};
use crate::graph::{
    balance, components_within, is_k_edge_connected, is_two_unbalanced, uncontract, Balance, Edge, EdgeSet, HalfEdge,
    Orientation, SignedGraph, Vertex,
};
use crate::group::{boundary, EdgeMap, VertexMap};

/// The partner edge `e'` such that splitting `e, e'` off `v` keeps the graph
/// 2-unbalanced and 3-edge-connected; the lowest such edge index.
pub fn choose_uncontraction(g: &SignedGraph, v: Vertex, e: Edge) -> Result<Edge> {
    g.check_vertex(v)?;
    g.check_edge(e)?;
    if g.vertex_count() < 2 {
        return Err(Error::pre("uncontraction needs at least two vertices"));
    }
    if g.degree(v) < 4 {
        return Err(Error::pre(format!("vertex {v} has degree {} < 4", g.degree(v))));
    }
    if !g.endpoints(e).contains(&v) {
        return Err(Error::pre(format!("edge {e} is not incident with vertex {v}")));
    }
    if !is_two_unbalanced(g) || !is_k_edge_connected(g, 3) {
        return Err(Error::pre("the graph must be 2-unbalanced and 3-edge-connected"));
    }
    let mut candidates = g.edges_at(v);
    candidates.sort_unstable();
    candidates.dedup();
    for f in candidates.into_iter().filter(|&f| f != e) {
        let u = uncontract(g, v, e, f)?;
        if is_two_unbalanced(&u.graph) && is_k_edge_connected(&u.graph, 3) {
            return Ok(f);
        }
    }
    Err(Error::internal("no uncontraction keeps the graph 2-unbalanced and 3-edge-connected"))
}

/// One recorded split: edges `e` and `partner` moved from `vertex` to `new_vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitStep {
    pub vertex: Vertex,
    pub e: Edge,
    pub partner: Edge,
    pub new_vertex: Vertex,
    pub new_edge: Edge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cubicization {
    pub graph: SignedGraph,
    /// Splits in application order; edge and vertex indices of earlier graphs persist.
    pub history: Vec<SplitStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cubicized {
    Cubic(Cubicization),
    /// A single vertex carrying at least two negative loops: connected for every group
    /// directly, by orienting two loops oppositely.
    SingleVertex,
}

/// `Σ |deg(v) - 3|`.
pub fn degree_excess(g: &SignedGraph) -> usize {
    g.vertices().map(|v| g.degree(v).abs_diff(3)).sum()
}

/// Splits high-degree vertices until the graph is cubic, keeping it 2-unbalanced and
/// 3-edge-connected. The lowest vertex of degree above 3 is split along its lowest edge.
pub fn cubicize(g: &SignedGraph) -> Result<Cubicized> {
    if !is_two_unbalanced(g) || !is_k_edge_connected(g, 3) {
        return Err(Error::pre("the graph must be 2-unbalanced and 3-edge-connected"));
    }
    if g.vertex_count() == 1 {
        return Ok(Cubicized::SingleVertex);
    }
    let mut cur = g.clone();
    let mut history = Vec::new();
    while let Some(v) = cur.vertices().find(|&v| cur.degree(v) > 3) {
        let e = *cur.edges_at(v).iter().min().expect("degree above 3");
        let partner = choose_uncontraction(&cur, v, e)?;
        let before = degree_excess(&cur);
        let u = uncontract(&cur, v, e, partner)?;
        if degree_excess(&u.graph) + 1 != before {
            return Err(Error::internal("a split did not lower the degree excess by one"));
        }
        history.push(SplitStep { vertex: v, e, partner, new_vertex: u.new_vertex, new_edge: u.new_edge });
        cur = u.graph;
    }
    Ok(Cubicized::Cubic(Cubicization { graph: cur, history }))
}

/// Restricts a solution on an uncontraction `g'` of `g` back to `g`.
///
/// `g'` must be `g` with one vertex split off as its last vertex and the new edge last.
/// The new vertex must carry boundary zero; the result then satisfies `beta'` restricted to `g`.
pub fn restrict_flow_after_uncontraction(
    g: &SignedGraph,
    split: &SignedGraph,
    tau: &Orientation,
    f: &EdgeMap,
    beta: &VertexMap,
) -> Result<(Orientation, EdgeMap, VertexMap)> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if split.vertex_count() != n + 1 || split.edge_count() != m + 1 {
        return Err(Error::pre("the second graph is not an uncontraction of the first"));
    }
    if boundary(split, tau, f)? != *beta {
        return Err(Error::pre("the map does not satisfy the given boundary"));
    }
    if !beta.group.is_zero(beta.get(n)) {
        return Err(Error::pre("the split-off vertex must have boundary zero"));
    }
    let restricted_tau = Orientation::from_values(g, tau.values()[..2 * m].to_vec())?;
    let restricted = EdgeMap { group: f.group.clone(), values: f.values[..m].to_vec() };
    let restricted_beta = VertexMap { group: beta.group.clone(), values: beta.values[..n].to_vec() };
    if boundary(g, &restricted_tau, &restricted)? != restricted_beta {
        return Err(Error::internal("restriction changed the boundary"));
    }
    Ok((restricted_tau, restricted, restricted_beta))
}

/// The graph with each component of `H` identified to one vertex.
///
/// Balanced components are switched to all-positive first (recorded in `switched`);
/// every edge outside `H` survives, edges inside a class becoming loops. Each class
/// of an unbalanced component gets one extra negative loop, listed in `markers`, so
/// the quotient stays unbalanced there; its value is discarded when lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: SignedGraph,
    pub tau: Orientation,
    /// `class[v]`: the quotient vertex containing `v`.
    pub class: Vec<Vertex>,
    pub switched: Vec<bool>,
    /// `edge[e]`: the quotient edge of an edge outside `H`.
    pub edge: Vec<Option<Edge>>,
    pub markers: Vec<Edge>,
    pub contracted: EdgeSet,
}

pub fn quotient(g: &SignedGraph, tau: &Orientation, h: &EdgeSet) -> Result<Quotient> {
    tau.validate(g)?;
    if h.capacity() != g.edge_count() {
        return Err(Error::pre("edge set does not match the graph"));
    }
    let comps = components_within(g, h);
    let (sub, _) = g.edge_subgraph(h);
    let mut switched = vec![false; g.vertex_count()];
    let mut unbalanced = Vec::new();
    for c in 0..comps.count() {
        let keep: Vec<bool> = comps.label.iter().map(|&l| l == c).collect();
        let (part, vback, _) = sub.induced(&keep);
        match balance(&part) {
            Balance::Balanced { switching } => {
                for (i, &v) in vback.iter().enumerate() {
                    switched[v] = switching[i];
                }
            }
            Balance::Unbalanced { .. } => unbalanced.push(c),
        }
    }
    let s = |v: Vertex| if switched[v] { -1i8 } else { 1 };
    let mut graph = SignedGraph::new(comps.count());
    let mut taus = Vec::new();
    let mut edge = vec![None; g.edge_count()];
    for e in g.edges().filter(|&e| !h.contains(e)) {
        let [a, b] = g.endpoints(e);
        let sign = g.sign(e) * crate::graph::Sign::from_i8(s(a) * s(b));
        edge[e] = Some(graph.add_edge(comps.label[a], comps.label[b], sign)?);
        taus.push(tau.get(HalfEdge::of(e, 0)) * s(a));
        taus.push(tau.get(HalfEdge::of(e, 1)) * s(b));
    }
    let mut markers = Vec::new();
    for c in unbalanced {
        markers.push(graph.add_edge(c, c, crate::graph::Sign::Negative)?);
        taus.extend([1, 1]);
    }
    let tau_q = Orientation::from_values(&graph, taus)?;
    Ok(Quotient { graph, tau: tau_q, class: comps.label.clone(), switched, edge, markers, contracted: h.clone() })
}

impl Quotient {
    /// The boundary a quotient solution must meet so that it lifts to `beta`.
    pub fn boundary_of(&self, beta: &VertexMap) -> VertexMap {
        let a = &beta.group;
        let mut out = VertexMap::zero(a, self.graph.vertex_count());
        for (v, &x) in beta.values.iter().enumerate() {
            let c = self.class[v];
            out.values[c] = a.add(out.values[c], a.signed(x, if self.switched[v] { -1 } else { 1 }));
        }
        out
    }
}

/// Extends a quotient solution to all of `g` by solving the residual boundary on `H`
/// (nowhere zero there, and avoiding `fbar` on `H` when given).
pub fn lift_flow_through_contraction(
    g: &SignedGraph,
    tau: &Orientation,
    q: &Quotient,
    f_quot: &EdgeMap,
    beta: &VertexMap,
    fbar: Option<&EdgeMap>,
    limits: &Limits,
) -> Result<EdgeMap> {
    let a = &beta.group;
    if f_quot.group != *a {
        return Err(Error::GroupMismatch(format!("{} vs {a}", f_quot.group)));
    }
    if boundary(&q.graph, &q.tau, f_quot)? != q.boundary_of(beta) {
        return Err(Error::pre("the quotient map does not satisfy the induced boundary"));
    }
    let mut f = EdgeMap::zero(a, g.edge_count());
    for e in g.edges() {
        if let Some(qe) = q.edge[e] {
            f.set(e, f_quot.get(qe));
        }
    }
    // Residual on H: what is left of beta after the edges outside H.
    let outside = boundary(g, tau, &f)?;
    let residual = VertexMap { group: a.clone(), values: beta.values.iter().zip(&outside.values).map(|(&b, &o)| a.sub(b, o)).collect() };
    let (sub, back) = g.edge_subgraph(&q.contracted);
    let sub_tau = Orientation::from_values(&sub, back.iter().flat_map(|&e| [tau.get(HalfEdge::of(e, 0)), tau.get(HalfEdge::of(e, 1))]).collect())?;
    let sub_fbar = fbar.map(|fb| EdgeMap { group: a.clone(), values: back.iter().map(|&e| fb.get(e)).collect() });
    if !crate::oracle::is_admissible(&sub, &residual) {
        return Err(Error::pre("the residual is not a boundary of the contracted subgraph"));
    }
    let Some(inner) = crate::oracle::satisfy_boundary(&sub, &sub_tau, &residual, sub_fbar.as_ref(), limits)? else {
        return Err(Error::Unsat("the contracted subgraph has no solution for the residual boundary".into()));
    };
    for (i, &e) in back.iter().enumerate() {
        f.set(e, inner.get(i));
    }
    if boundary(g, tau, &f)? != *beta {
        return Err(Error::internal("lifted map misses the boundary"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::group::{AbelianGroup, GroupElement};
    use crate::oracle::{random_boundary, satisfy_boundary};
    use rand::SeedableRng;

    #[test]
    fn cubic_input_is_untouched() {
        let g = generators::petersen_ps();
        let Cubicized::Cubic(c) = cubicize(&g).unwrap() else { panic!() };
        assert!(c.history.is_empty());
        assert_eq!(c.graph, g);
    }

    #[test]
    fn k5_becomes_cubic() {
        let g = generators::complete(5).with_negative_edges(&[0, 9]).unwrap();
        let Cubicized::Cubic(c) = cubicize(&g).unwrap() else { panic!() };
        assert_eq!(c.history.len(), 5);
        assert_eq!(c.graph.vertex_count(), 10);
        assert!(c.graph.is_cubic() && c.graph.is_simple());
        assert!(is_two_unbalanced(&c.graph) && crate::graph::is_k_connected(&c.graph, 3));
    }

    #[test]
    fn single_vertex() {
        assert_eq!(cubicize(&generators::double_negative_loop()).unwrap(), Cubicized::SingleVertex);
    }

    #[test]
    fn restriction_keeps_the_boundary() {
        let g = generators::complete(5).with_negative_edges(&[0, 9]).unwrap();
        let e = g.edges_at(0)[0];
        let p = choose_uncontraction(&g, 0, e).unwrap();
        let u = uncontract(&g, 0, e, p).unwrap();
        let a = AbelianGroup::cyclic(5).unwrap();
        let tau = Orientation::default_for(&u.graph);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut beta = random_boundary(&u.graph, &a, &mut rng);
        let n = g.vertex_count();
        // move the new vertex's demand onto the old one so it carries zero
        beta.values[0] = a.add(beta.values[0], beta.values[n]);
        beta.values[n] = GroupElement(0);
        let f = satisfy_boundary(&u.graph, &tau, &beta, None, &Limits::default()).unwrap().unwrap();
        let (_, r, rb) = restrict_flow_after_uncontraction(&g, &u.graph, &tau, &f, &beta).unwrap();
        assert!(r.is_nowhere_zero());
        assert_eq!(rb.values[..], beta.values[..n]);

        let mut bad = beta.clone();
        bad.values[n] = GroupElement(1);
        bad.values[0] = a.sub(bad.values[0], GroupElement(1));
        assert!(restrict_flow_after_uncontraction(&g, &u.graph, &tau, &f, &bad).is_err());
    }

    fn lift_case(g: &SignedGraph, h: &EdgeSet, a: &AbelianGroup, seed: u64) {
        let tau = Orientation::default_for(g);
        let q = quotient(g, &tau, h).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let beta = random_boundary(g, a, &mut rng);
            let bq = q.boundary_of(&beta);
            let fq = satisfy_boundary(&q.graph, &q.tau, &bq, None, &Limits::default()).unwrap().unwrap();
            let f = lift_flow_through_contraction(g, &tau, &q, &fq, &beta, None, &Limits::default()).unwrap();
            assert!(f.is_nowhere_zero());
            assert_eq!(boundary(g, &tau, &f).unwrap(), beta);
        }
    }

    #[test]
    fn lift_positive_four_cycle() {
        // 0-1 and 2-0 negative, 1-3 and 3-2 positive: a positive 4-cycle
        let g = generators::k4_negative_triangle();
        lift_case(&g, &EdgeSet::from_edges(6, [0, 4, 5, 2]), &AbelianGroup::cyclic(5).unwrap(), 1);
    }

    #[test]
    fn lift_whole_graph_and_loops() {
        let g = generators::double_negative_loop();
        lift_case(&g, &EdgeSet::full(2), &AbelianGroup::cyclic(6).unwrap(), 2);
        let k4 = generators::k4_negative_triangle();
        lift_case(&k4, &EdgeSet::full(6), &AbelianGroup::cyclic(6).unwrap(), 4);
    }
}
