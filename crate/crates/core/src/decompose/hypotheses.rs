use crate::error::{Error, Limits, Result};
use crate::graph::{balance, is_planar, Sign, SignedGraph, Vertex};

/// A vertex set breaking one of the structural hypotheses of the base-sun decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisViolation {
    /// `|X| >= 2`, three edges leave `X`, and `G[X]` is balanced.
    BalancedThreeCut(Vec<Vertex>),
    /// `|X| >= 3`, four edges leave `X`, `G[X]` is balanced and embeds in the plane with
    /// every vertex that has an edge leaving `X` on the outer face.
    BalancedPlanarFourCut(Vec<Vertex>),
}

impl HypothesisViolation {
    pub fn vertices(&self) -> &[Vertex] {
        match self {
            HypothesisViolation::BalancedThreeCut(x) | HypothesisViolation::BalancedPlanarFourCut(x) => x,
        }
    }

    pub fn into_error(self) -> Error {
        let msg = match &self {
            HypothesisViolation::BalancedThreeCut(_) => "balanced side of a 3-edge-cut",
            HypothesisViolation::BalancedPlanarFourCut(_) => "balanced planar side of a 4-edge-cut",
        };
        Error::witnessed(msg, self.vertices().to_vec(), Vec::new())
    }
}

/// Scans every vertex subset for a violation; smallest subsets first.
pub fn check_sun_hypotheses(g: &SignedGraph, limits: &Limits) -> Result<Option<HypothesisViolation>> {
    limits.check(g.vertex_count(), g.edge_count())?;
    let n = g.vertex_count();
    let mut masks: Vec<u32> = (1..(1u32 << n)).filter(|m| m.count_ones() >= 2).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let inside = |v: Vertex| mask >> v & 1 == 1;
        let cut = g.edges().filter(|&e| {
            let [a, b] = g.endpoints(e);
            inside(a) != inside(b)
        });
        let cut: Vec<usize> = cut.collect();
        let size = mask.count_ones();
        let three = cut.len() == 3;
        let four = cut.len() == 4 && size >= 3;
        if !three && !four {
            continue;
        }
        let keep: Vec<bool> = g.vertices().map(inside).collect();
        let (sub, back, _) = g.induced(&keep);
        if !balance(&sub).is_balanced() {
            continue;
        }
        let x: Vec<Vertex> = back.clone();
        if three {
            return Ok(Some(HypothesisViolation::BalancedThreeCut(x)));
        }
        // Outer-face condition: planar after joining a new apex to every cut edge's inner end.
        let mut apex = sub.clone();
        let top = apex.add_vertex();
        for &e in &cut {
            let [a, b] = g.endpoints(e);
            let inner = if inside(a) { a } else { b };
            let local = back.iter().position(|&v| v == inner).expect("inner end is kept");
            apex.add_edge(local, top, Sign::Positive)?;
        }
        if is_planar(&apex) {
            return Ok(Some(HypothesisViolation::BalancedPlanarFourCut(x)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn petersen_with_two_negative_cycles_passes() {
        assert_eq!(check_sun_hypotheses(&generators::petersen_two_negative(), &Limits::default()).unwrap(), None);
    }

    #[test]
    fn balanced_triangle_on_a_three_cut() {
        // the prism has two triangles, each the side of a 3-edge-cut
        let g = generators::prism().with_negative_edges(&[6]).unwrap();
        let v = check_sun_hypotheses(&g, &Limits::default()).unwrap().unwrap();
        assert!(matches!(v, HypothesisViolation::BalancedThreeCut(ref x) if x.len() == 3));
    }

    #[test]
    fn balanced_square_on_a_four_cut() {
        // the cube: a face 4-cycle leaves four edges and is planar with all vertices outside
        let g = generators::cube().with_negative_edges(&[0]).unwrap();
        let v = check_sun_hypotheses(&g, &Limits::default()).unwrap();
        assert!(matches!(v, Some(HypothesisViolation::BalancedPlanarFourCut(_)) | Some(HypothesisViolation::BalancedThreeCut(_))));
    }
}
