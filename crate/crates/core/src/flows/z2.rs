use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Orientation, SignedGraph};
use crate::group::{integer_boundary, IntegerEdgeMap};

/// Search nodes visited before [`z2_to_3flow`] gives up.
pub const NODE_LIMIT: usize = 5_000_000;

/// Checks that `support` is an even subgraph of `carrier` with an even number of negative edges.
pub fn check_z2_support(g: &SignedGraph, support: &EdgeSet, carrier: &EdgeSet) -> Result<()> {
    if !support.is_subset(carrier) {
        return Err(Error::pre("the support must lie inside the carrier"));
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for e in support.iter() {
        let [a, b] = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    if let Some(v) = g.vertices().find(|&v| deg[v] % 2 == 1) {
        return Err(Error::pre(format!("the support has odd degree at vertex {v}")));
    }
    if support.iter().filter(|&e| g.sign(e).is_negative()).count() % 2 == 1 {
        return Err(Error::pre("the support has an odd number of negative edges"));
    }
    Ok(())
}

struct Search<'a> {
    g: &'a SignedGraph,
    tau: &'a Orientation,
    order: Vec<Edge>,
    domains: Vec<&'static [i64]>,
    value: Vec<i64>,
    residual: Vec<i64>,
    open: Vec<usize>,
    nodes: usize,
}

impl Search<'_> {
    fn assign(&mut self, e: Edge, x: i64, sign: i64) {
        for end in 0..2 {
            let h = crate::graph::HalfEdge::of(e, end);
            let v = self.g.vertex_of(h);
            self.residual[v] += sign * self.tau.get(h) as i64 * x;
            if sign > 0 {
                self.open[v] -= 1;
            } else {
                self.open[v] += 1;
            }
        }
    }

    fn feasible(&self, e: Edge) -> bool {
        self.g.endpoints(e).iter().all(|&v| self.residual[v].abs() <= 2 * self.open[v] as i64)
    }

    fn run(&mut self, k: usize) -> Result<bool> {
        if k == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(Error::DeskScale { what: "3-flow search nodes", limit: NODE_LIMIT, actual: self.nodes });
        }
        let e = self.order[k];
        for &x in self.domains[k] {
            self.assign(e, x, 1);
            if self.feasible(e) && self.run(k + 1)? {
                self.value[e] = x;
                return Ok(true);
            }
            self.assign(e, x, -1);
        }
        Ok(false)
    }
}

/// An integer 3-flow on `carrier` that is `±1` on every edge of `support` and zero off the carrier.
///
/// Off the support values from `{0, ±2}` are tried first, so the flow is odd exactly on the
/// support whenever that is possible; `±1` is allowed there only as a fallback.
pub fn z2_to_3flow(g: &SignedGraph, tau: &Orientation, support: &EdgeSet, carrier: &EdgeSet) -> Result<IntegerEdgeMap> {
    tau.validate(g)?;
    check_z2_support(g, support, carrier)?;
    // Vertex-by-vertex order so constraints close early.
    let mut order = Vec::new();
    let mut taken = vec![false; g.edge_count()];
    for v in g.vertices() {
        for e in g.edges_at(v) {
            if carrier.contains(e) && !taken[e] {
                taken[e] = true;
                order.push(e);
            }
        }
    }
    const ODD: &[i64] = &[1, -1];
    const EVEN: &[i64] = &[0, 2, -2];
    const ANY: &[i64] = &[0, 2, -2, 1, -1];
    for off_support in [EVEN, ANY] {
        let mut s = Search {
            g,
            tau,
            domains: order.iter().map(|&e| if support.contains(e) { ODD } else { off_support }).collect(),
            order: order.clone(),
            value: vec![0; g.edge_count()],
            residual: vec![0; g.vertex_count()],
            open: g.vertices().map(|v| g.half_edges_at(v).iter().filter(|h| carrier.contains(h.edge())).count()).collect(),
            nodes: 0,
        };
        if s.run(0)? {
            let f = IntegerEdgeMap { values: s.value };
            if integer_boundary(g, tau, &f).iter().any(|&b| b != 0) {
                return Err(Error::internal("3-flow search returned a nonzero boundary"));
            }
            return Ok(f);
        }
    }
    Err(Error::Unsat("no 3-flow with the required support".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Negative as N, Positive as P};
    use crate::group::is_integer_k_flow;

    #[test]
    fn positive_cycle() {
        let g = SignedGraph::from_edges(4, [(0, 1, P), (1, 2, P), (2, 3, P), (3, 0, P), (0, 2, P)]).unwrap();
        let tau = Orientation::default_for(&g);
        let support = EdgeSet::from_edges(5, [0, 1, 2, 3]);
        let f = z2_to_3flow(&g, &tau, &support, &EdgeSet::full(5)).unwrap();
        assert!(is_integer_k_flow(&g, &tau, &f, 3));
        assert_eq!(f.values[..4].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1; 4]);
        assert_eq!(f.values[4], 0);
    }

    #[test]
    fn barbell_uses_two_on_the_path() {
        let g = SignedGraph::from_edges(4, [(0, 1, N), (1, 0, P), (1, 2, P), (2, 3, N), (3, 2, P)]).unwrap();
        let tau = Orientation::default_for(&g);
        let support = EdgeSet::from_edges(5, [0, 1, 3, 4]);
        let f = z2_to_3flow(&g, &tau, &support, &EdgeSet::full(5)).unwrap();
        assert!(is_integer_k_flow(&g, &tau, &f, 3));
        assert_eq!(f.values.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn parity_checked() {
        let g = SignedGraph::from_edges(3, [(0, 1, N), (1, 2, P), (2, 0, P)]).unwrap();
        let tau = Orientation::default_for(&g);
        assert!(z2_to_3flow(&g, &tau, &EdgeSet::full(3), &EdgeSet::full(3)).is_err());
        assert!(z2_to_3flow(&g, &tau, &EdgeSet::from_edges(3, [0, 1]), &EdgeSet::full(3)).is_err());
    }
}
