use super::{check_sun_hypotheses, degrees_within, improving_path, verify_partition, Mode, PartitionCertificate};
use crate::error::{Error, Limits, Result};
use crate::graph::{
    all_cycles, components_within, cycles_within, cyclic_cut_below, is_balanced, is_edge_set_connected, is_edge_set_two_connected,
    is_k_connected, CycleRef, EdgeSet, PathRef, Sign, SignedGraph,
};
use crate::structures::{
    closure_over, disjoint_cycles, find_peripheral_cycle, is_edge_set_balanced, is_spanning_connected,
    spanning_forest, sun_shape, PeripheralRequest,
};

/// The three parts `A`, `B`, `C` maintained while peeling paths off `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkingPartition {
    pub a: EdgeSet,
    pub b: EdgeSet,
    pub c: EdgeSet,
}

/// Which loop invariants a run maintains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    /// `C` stays unbalanced and `A ∪ C` keeps a connected base rather than just a spanning tree.
    pub sun: bool,
    /// `B` must keep a negative cycle (otherwise any cycle).
    pub negative_in_b: bool,
}

impl WorkingPartition {
    /// Starts from a cycle: `A` empty, `B` the cycle, `C` everything else.
    pub fn from_cycle(g: &SignedGraph, d: &CycleRef) -> WorkingPartition {
        let b = d.edge_set(g.edge_count());
        WorkingPartition { a: EdgeSet::empty(g.edge_count()), c: b.complement(), b }
    }

    /// Moves the end edges of `p` into `A` and its interior into `B`.
    pub fn apply(&mut self, p: &PathRef) {
        let ends = [p.edges[0], *p.edges.last().unwrap()];
        for &e in &p.edges {
            self.c.remove(e);
            if ends.contains(&e) {
                self.a.insert(e);
            } else {
                self.b.insert(e);
            }
        }
    }

    /// Names the first invariant that fails. `positive_cycles` lists the positive cycles of `g`.
    pub fn check(&self, g: &SignedGraph, inv: Invariants, positive_cycles: &[CycleRef]) -> std::result::Result<(), String> {
        let ab = self.a.union(&self.b);
        if !is_edge_set_two_connected(g, &ab) {
            return Err("A ∪ B not 2-connected".into());
        }
        if !self.c.is_empty() {
            if !is_edge_set_connected(g, &self.c) {
                return Err("C not connected".into());
            }
            if degrees_within(g, &self.c).iter().any(|&d| d != 0 && d != 1 && d != 3) {
                return Err("C has a vertex of degree other than 1 or 3".into());
            }
            if inv.sun && is_edge_set_balanced(g, &self.c) {
                return Err("C balanced".into());
            }
        }
        let ac = self.a.union(&self.c);
        if !is_spanning_connected(g, &ac) {
            return Err("A ∪ C not spanning and connected".into());
        }
        if inv.sun && !is_balanced(g) && is_edge_set_balanced(g, &ac) {
            return Err("A ∪ C contains no connected base".into());
        }
        if !self.a.is_subset(&closure_over(positive_cycles, &self.b, 2).set) {
            return Err("2-closure of B misses part of A".into());
        }
        let cycles_b = cycles_within(g, &self.b).map_err(|e| e.to_string())?;
        let wanted = |c: &CycleRef| !inv.negative_in_b || c.sign_unchecked(g).is_negative();
        if !cycles_b.iter().any(wanted) {
            return Err("B has no cycle of the required sign".into());
        }
        Ok(())
    }
}

fn require_cubic_three_connected(g: &SignedGraph) -> Result<()> {
    if !g.is_cubic() {
        return Err(Error::pre("the graph must be cubic"));
    }
    if !is_k_connected(g, 3) {
        return Err(Error::pre("the graph must be 3-connected"));
    }
    Ok(())
}

fn positive_cycles(g: &SignedGraph) -> Result<Vec<CycleRef>> {
    Ok(all_cycles(g)?.into_iter().filter(|c| !c.sign_unchecked(g).is_negative()).collect())
}

/// Peels improving paths until `C` is empty (tree mode) or a negative sun (sun mode).
fn run(g: &SignedGraph, d: &CycleRef, inv: Invariants) -> Result<WorkingPartition> {
    let pos = positive_cycles(g)?;
    let mut w = WorkingPartition::from_cycle(g, d);
    w.check(g, inv, &pos).map_err(|r| Error::internal(format!("initial partition: {r}")))?;
    loop {
        if w.c.is_empty() {
            if inv.sun {
                return Err(Error::internal("C emptied while an unbalanced C was required"));
            }
            return Ok(w);
        }
        if inv.sun && sun_shape(g, &w.c)?.is_some_and(|s| !s.is_degenerate() && s.len() >= 3) {
            return Ok(w);
        }
        let Some(p) = improving_path(g, &w.c, inv.sun)? else {
            return Err(Error::internal("no improving path although C is not a negative sun"));
        };
        let before = w.c.len();
        w.apply(&p);
        debug_assert!(w.c.len() < before);
        w.check(g, inv, &pos).map_err(|r| Error::internal(format!("after a step: {r}")))?;
    }
}

fn finish(g: &SignedGraph, cert: PartitionCertificate) -> Result<PartitionCertificate> {
    verify_partition(g, &cert).map_err(|r| Error::internal(format!("emitted certificate fails: {r}")))?;
    Ok(cert)
}

/// A spanning tree plus a 2-base.
pub fn decompose_tree_2base(g: &SignedGraph) -> Result<PartitionCertificate> {
    require_cubic_three_connected(g)?;
    let unbalanced = !is_balanced(g);
    let req = PeripheralRequest { sign: unbalanced.then_some(Sign::Negative), ..Default::default() };
    let d = find_peripheral_cycle(g, &req)?;
    let w = run(g, &d, Invariants { sun: false, negative_in_b: unbalanced })?;
    let x1 = spanning_forest(g, &w.a);
    finish(g, PartitionCertificate { mode: Mode::TreeTwoBase, x2: x1.complement(), f: EdgeSet::empty(g.edge_count()), x1, assumed: false })
}

/// `X1`: the sun `C` plus as many `A` edges as fit without closing another cycle.
fn sun_certificate(g: &SignedGraph, w: &WorkingPartition, mode: Mode, assumed: bool) -> PartitionCertificate {
    let mut x1 = w.c.clone();
    for e in w.a.iter() {
        let mut trial = x1.clone();
        trial.insert(e);
        if components_within(g, &trial).count() < components_within(g, &x1).count() {
            x1 = trial;
        }
    }
    PartitionCertificate { mode, x2: x1.complement(), f: w.c.clone(), x1, assumed }
}

/// A connected base containing a negative sun `F`, and a remainder whose 2-closure is `E - F`.
///
/// With `assume` set the vertex-subset hypothesis scan is skipped and recorded in the certificate.
pub fn decompose_base_sun(g: &SignedGraph, assume: bool, limits: &Limits) -> Result<PartitionCertificate> {
    require_cubic_three_connected(g)?;
    if disjoint_cycles(g, Some(Sign::Negative), Some(Sign::Negative))?.is_none() {
        return Err(Error::pre("the graph needs two vertex-disjoint negative cycles"));
    }
    if !assume {
        if let Some(v) = check_sun_hypotheses(g, limits)? {
            return Err(v.into_error());
        }
    }
    base_sun_unchecked(g, Mode::BaseSun, assume)
}

fn base_sun_unchecked(g: &SignedGraph, mode: Mode, assumed: bool) -> Result<PartitionCertificate> {
    let req = PeripheralRequest { sign: Some(Sign::Negative), unbalanced_rest: true, ..Default::default() };
    let d = find_peripheral_cycle(g, &req)?;
    let w = run(g, &d, Invariants { sun: true, negative_in_b: true })?;
    finish(g, sun_certificate(g, &w, mode, assumed))
}

/// The general decomposition: `X1` contains a connected base and `X2` 2-closes to `E - F`
/// with `F` empty or a degenerate negative sun.
///
/// Requires a cubic, cyclically 4-edge-connected graph without positive cycles of length
/// at most 5; `assume` skips those checks.
pub fn decompose_general(g: &SignedGraph, assume: bool) -> Result<PartitionCertificate> {
    if !g.is_cubic() {
        return Err(Error::pre("the graph must be cubic"));
    }
    if !assume {
        if let Some(cut) = cyclic_cut_below(g, 4) {
            return Err(Error::witnessed("cyclic edge cut with fewer than 4 edges", Vec::new(), cut.to_vec()));
        }
        if let Some(c) = all_cycles(g)?.into_iter().find(|c| c.len() <= 5 && !c.sign_unchecked(g).is_negative()) {
            return Err(Error::witnessed("positive cycle of length at most 5", c.vertices, c.edges));
        }
    }
    let m = g.edge_count();
    if is_balanced(g) {
        let mut cert = decompose_tree_2base(g)?;
        cert.mode = Mode::General;
        cert.assumed = assume;
        return finish(g, cert);
    }
    if disjoint_cycles(g, None, None)?.is_none() {
        let d = find_peripheral_cycle(g, &PeripheralRequest { sign: Some(Sign::Negative), ..Default::default() })?;
        let on_d = d.vertex_mask(g.vertex_count());
        let mut x1 = d.edge_set(m);
        for v in g.vertices().filter(|&v| !on_d[v]) {
            let e = g
                .edges_at(v)
                .into_iter()
                .find(|&e| on_d[g.other_end(e, v)])
                .ok_or_else(|| Error::internal("a vertex off the peripheral cycle has no neighbour on it"))?;
            x1.insert(e);
        }
        let x2 = x1.complement();
        let closure = closure_over(&positive_cycles(g)?, &x2, 2).set;
        let f = closure.complement();
        return finish(g, PartitionCertificate { mode: Mode::General, x1, x2, f, assumed: assume });
    }
    if disjoint_cycles(g, Some(Sign::Negative), Some(Sign::Negative))?.is_some() {
        require_cubic_three_connected(g)?;
        return base_sun_unchecked(g, Mode::General, assume);
    }
    require_cubic_three_connected(g)?;
    let req = PeripheralRequest { sign: Some(Sign::Positive), unbalanced_rest: true, ..Default::default() };
    let d = find_peripheral_cycle(g, &req)?;
    let w = run(g, &d, Invariants { sun: true, negative_in_b: false })?;
    finish(g, sun_certificate(g, &w, Mode::General, assume))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::structures::k_closure;

    #[test]
    fn tree_two_base_on_petersens() {
        for g in [generators::petersen(), generators::petersen_ps()] {
            let cert = decompose_tree_2base(&g).unwrap();
            assert_eq!((cert.x1.len(), cert.x2.len()), (9, 6));
            assert_eq!(k_closure(&g, &cert.x2, 2).unwrap(), EdgeSet::full(15));
        }
    }

    #[test]
    fn tree_two_base_on_k4() {
        let cert = decompose_tree_2base(&generators::complete(4)).unwrap();
        assert_eq!((cert.x1.len(), cert.x2.len()), (3, 3));
    }

    #[test]
    fn moving_an_edge_breaks_the_tree() {
        let g = generators::petersen();
        let mut cert = decompose_tree_2base(&g).unwrap();
        let e = cert.x1.iter().next().unwrap();
        cert.x1.remove(e);
        cert.x2.insert(e);
        assert_eq!(verify_partition(&g, &cert), Err("X1 not spanning tree".to_string()));
    }

    #[test]
    fn base_sun_on_doubly_negative_petersen() {
        let g = generators::petersen_two_negative();
        let cert = decompose_base_sun(&g, false, &Limits::default()).unwrap();
        assert!(!cert.f.is_empty() && cert.f.is_subset(&cert.x1));
        let closure = k_closure(&g, &cert.x2, 2).unwrap();
        assert!(closure.is_disjoint(&cert.f));
        assert_eq!(closure.union(&cert.f), EdgeSet::full(15));
    }

    #[test]
    fn base_sun_needs_two_negative_cycles() {
        assert!(decompose_base_sun(&generators::petersen_ps(), false, &Limits::default()).is_err());
    }

    #[test]
    fn general_mode() {
        assert!(matches!(decompose_general(&generators::petersen(), false), Err(Error::Witnessed { .. })));
        assert!(matches!(decompose_general(&generators::petersen_ps(), false), Err(Error::Witnessed { .. })));
        let cert = decompose_general(&generators::petersen_ps(), true).unwrap();
        assert_eq!(cert.mode, Mode::General);
        assert!(verify_partition(&generators::petersen_ps(), &cert).is_ok());
    }
}
