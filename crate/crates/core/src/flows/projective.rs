use super::certificate::{verify_avoidance, Artifact, AvoidanceCertificate, Strategy};
use super::{check_inputs, transfer};
use crate::duality::{flow_from_coloring, oriented_dual, EmbeddedGraph, FaceChoice};
use crate::error::{Error, Result};
use crate::graph::{signatures_equivalent, Equivalence, Orientation, SignedGraph, Vertex};
use crate::group::{EdgeMap, GroupElement, VertexMap};

/// Removal order where each vertex has the fewest remaining neighbours when taken.
fn degeneracy_order(g: &SignedGraph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| deg[v]).expect("a vertex remains");
        gone[v] = true;
        order.push(v);
        for e in g.edges_at(v) {
            let w = g.other_end(e, v);
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    order
}

/// A flow avoiding `fbar` on the dual of a plane or projective-plane embedding with a
/// 5-degenerate primal, over any group of order at least 6.
///
/// `g` must be the dual graph of `embedding` (dual vertex `i` is face `i`, dual edge `e`
/// crosses primal edge `e`) up to switching. The primal is coloured greedily so that no
/// colour difference across an edge equals the forbidden value of its dual edge.
pub fn connect_projective(
    g: &SignedGraph,
    tau: &Orientation,
    fbar: &EdgeMap,
    embedding: &EmbeddedGraph,
) -> Result<AvoidanceCertificate> {
    let a = &fbar.group;
    check_inputs(g, tau, fbar)?;
    if a.order() < 6 {
        return Err(Error::pre(format!("{a} has fewer than 6 elements")));
    }
    let primal = &embedding.graph;
    let direction = vec![1i8; primal.edge_count()];
    let dual = oriented_dual(embedding, &direction, &FaceChoice::default())?;
    if !dual.graph.same_underlying(g) {
        return Err(Error::pre("the graph is not the dual of the embedding with matching labels"));
    }
    let switching = match signatures_equivalent(&dual.graph, g)? {
        Equivalence::Equivalent { switching } => switching,
        Equivalence::Different { cycle } => {
            return Err(Error::Witnessed {
                msg: "the signature differs from the dual's on a cycle".into(),
                vertices: cycle.vertices,
                edges: cycle.edges,
            })
        }
    };
    let mut tau_dual = dual.tau.clone();
    for v in g.vertices().filter(|&v| switching[v]) {
        tau_dual.switch_at(&dual.graph, v);
    }
    // The forbidden values as seen by the dual's own orientation.
    let fbar_dual = transfer(g, tau, &tau_dual, fbar)?;

    let order = degeneracy_order(primal);
    let mut colour: Vec<Option<GroupElement>> = vec![None; primal.vertex_count()];
    for &v in order.iter().rev() {
        let mut banned = Vec::new();
        for e in primal.edges_at(v) {
            if primal.is_loop(e) {
                if a.is_zero(fbar_dual.get(e)) {
                    return Err(Error::pre(format!("loop {e} carries a zero flow but forbids zero")));
                }
                continue;
            }
            let w = primal.other_end(e, v);
            if let Some(cw) = colour[w] {
                // f(e*) = c(head) - c(tail), with edges directed from end 0.
                let v_is_head = primal.endpoints(e)[1] == v;
                banned.push(if v_is_head { a.add(cw, fbar_dual.get(e)) } else { a.sub(cw, fbar_dual.get(e)) });
            }
        }
        let pick = a.elements().find(|x| !banned.contains(x)).ok_or_else(|| {
            Error::pre(format!("vertex {v} has {} coloured neighbours; the primal is not degenerate enough", banned.len()))
        })?;
        colour[v] = Some(pick);
    }
    let colouring = VertexMap { group: a.clone(), values: colour.into_iter().map(|c| c.expect("all coloured")).collect() };
    let flow_dual = flow_from_coloring(embedding, &dual, &colouring)?;
    let flow = transfer(g, &tau_dual, tau, &flow_dual)?;
    let artifacts = vec![
        Artifact::Note(
            "colouring".into(),
            colouring.values.iter().map(|&x| a.format_element(x)).collect::<Vec<_>>().join(" "),
        ),
        Artifact::Note(
            "switching".into(),
            g.vertices().filter(|&v| switching[v]).map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
        ),
    ];
    let cert = AvoidanceCertificate { strategy: Strategy::Projective, orientation: tau.clone(), flow, fbar: fbar.clone(), artifacts };
    verify_avoidance(g, &cert).map_err(|r| Error::internal(format!("projective construction failed: {r}")))?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::build_ps;
    use crate::group::AbelianGroup;
    use crate::oracle::random_edge_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn petersen_over_six_and_seven() {
        let ps = build_ps().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in [6, 7] {
            let a = AbelianGroup::cyclic(n).unwrap();
            for _ in 0..30 {
                let fbar = random_edge_map(&a, 15, &mut rng);
                let cert = connect_projective(&ps.graph, &ps.tau, &fbar, &ps.embedding).unwrap();
                assert_eq!(verify_avoidance(&ps.graph, &cert), Ok(()));
                // any orientation of the same signed graph works too
                let tau = Orientation::default_for(&ps.graph);
                let cert = connect_projective(&ps.graph, &tau, &fbar, &ps.embedding).unwrap();
                assert_eq!(verify_avoidance(&ps.graph, &cert), Ok(()));
            }
        }
    }

    #[test]
    fn five_is_too_small() {
        let ps = build_ps().unwrap();
        let a = AbelianGroup::cyclic(5).unwrap();
        assert!(connect_projective(&ps.graph, &ps.tau, &EdgeMap::zero(&a, 15), &ps.embedding).is_err());
    }
}
