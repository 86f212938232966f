use super::certificate::{verify_avoidance, Artifact, AvoidanceCertificate, Strategy};
use super::check_inputs;
use super::circuit::{add_scaled, circuit_within, Circuit};
use super::sun::{in_forbidden_band, sun_flow};
use super::z2::z2_to_3flow;
use crate::decompose::decompose_base_sun;
use crate::error::{Error, Limits, Result};
use crate::graph::{is_two_unbalanced, Edge, EdgeSet, Orientation, SignedGraph};
use crate::group::{is_prime, EdgeMap, GroupElement};
use crate::structures::{k_closure_trace, negative_cycle_within, sun_shape};

/// A flow avoiding `fbar` over `Z_p`, `p >= 11` prime, on a cubic 3-connected graph with
/// two disjoint negative cycles that passes the base-sun hypothesis scan.
///
/// A connected base `T` containing a negative sun `F` and a remainder `B` are found first.
/// A flow keeps every edge of `T` (but one special sun edge) away from its forbidden value
/// by more than the multiples 3 and 6; three times an integer 3-flow then moves the edges
/// of `B` that still collide, by exactly 3.
pub fn connect_prime(g: &SignedGraph, tau: &Orientation, fbar: &EdgeMap, limits: &Limits) -> Result<AvoidanceCertificate> {
    let a = &fbar.group;
    check_inputs(g, tau, fbar)?;
    let p = a.order();
    if a.factors().len() != 1 || !is_prime(p) {
        return Err(Error::pre(format!("{a} is not of prime order")));
    }
    if p < 11 {
        return Err(Error::pre(format!("prime order {p} is below 11; this construction needs at least 11")));
    }
    if !is_two_unbalanced(g) {
        return Err(Error::pre("the graph must be 2-unbalanced"));
    }
    let m = g.edge_count();
    let part = decompose_base_sun(g, false, limits)?;
    let (base, rest, sun_edges) = (part.x1, part.x2, part.f);
    let sun = sun_shape(g, &sun_edges)?.ok_or_else(|| Error::internal("F is not a negative sun"))?;
    let negative = negative_cycle_within(g, &rest).ok_or_else(|| Error::internal("the remainder is balanced"))?;
    let sf = sun_flow(g, tau, &sun, &negative, fbar)?;
    let special = sf.special;
    let mut phi1 = sf.flow;

    let trace = k_closure_trace(g, &rest, 2)?;
    if trace.set != sun_edges.complement() {
        return Err(Error::internal("the remainder does not close to every edge off the sun"));
    }
    let elements: Vec<GroupElement> = a.elements().collect();
    let mut fixed: Vec<Edge> = Vec::new();
    for step in trace.steps.iter().rev() {
        let unit = Circuit::Cycle(step.cycle.clone()).unit_flow(g, tau)?;
        let bad = |x: GroupElement| {
            step.added.iter().any(|&e| in_forbidden_band(a, a.add(phi1.get(e), a.scale(x, unit.values[e])), fbar.get(e)))
        };
        let count = elements.iter().filter(|&&x| bad(x)).count();
        if count > 5 * step.added.len() || count >= p {
            return Err(Error::internal(format!("{count} bad values for a closure step")));
        }
        let x = *elements.iter().find(|&&x| !bad(x)).expect("fewer bad values than elements");
        add_scaled(a, &mut phi1, &unit, x);
        fixed.extend(&step.added);
        if let Some(&e) = fixed.iter().find(|&&e| in_forbidden_band(a, phi1.get(e), fbar.get(e))) {
            return Err(Error::internal(format!("edge {e} fell back into its forbidden band")));
        }
    }
    for e in base.iter() {
        let ok = if e == special { phi1.get(e) != fbar.get(e) } else { !in_forbidden_band(a, phi1.get(e), fbar.get(e)) };
        if !ok {
            return Err(Error::internal(format!("base edge {e} is not clear of its forbidden band")));
        }
    }

    // Edges of B still on their forbidden value get moved by exactly 3.
    let colliding: Vec<Edge> = rest.iter().filter(|&e| phi1.get(e) == fbar.get(e)).collect();
    let mut support = EdgeSet::empty(m);
    for &e in &colliding {
        let mut set = base.clone();
        set.insert(e);
        let circuit = circuit_within(g, &set, &[e])?.ok_or_else(|| Error::internal("no positive cycle or barbell"))?;
        for c in circuit.cycles() {
            support = support.symmetric_difference(&c.edge_set(m));
        }
    }
    let carrier = base.union(&EdgeSet::from_edges(m, colliding.iter().copied()));
    let psi = z2_to_3flow(g, tau, &support, &carrier)?;
    if colliding.iter().any(|&e| psi.values[e].abs() != 1) {
        return Err(Error::internal("the 3-flow is not ±1 on a colliding edge"));
    }
    let with = |k: i64| -> Vec<GroupElement> { (0..m).map(|e| a.add(phi1.get(e), a.from_int(k * psi.values[e]))).collect() };
    let mut sign = "+";
    let mut values = with(3);
    if values[special] == fbar.get(special) {
        if a.from_int(3 * psi.values[special]) == a.from_int(-3 * psi.values[special]) {
            return Err(Error::internal("3 psi equals -3 psi on the special edge"));
        }
        sign = "-";
        values = with(-3);
    }
    let flow = EdgeMap { group: a.clone(), values };
    let artifacts = vec![
        Artifact::Map("phi1".into(), phi1),
        Artifact::Integers("psi".into(), psi),
        Artifact::Note("sign".into(), sign.into()),
        Artifact::Note("special".into(), special.to_string()),
        Artifact::Note("base".into(), base.to_string()),
        Artifact::Note("sun".into(), sun_edges.to_string()),
        Artifact::Note("colliding".into(), colliding.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")),
    ];
    let cert = AvoidanceCertificate { strategy: Strategy::Prime, orientation: tau.clone(), flow, fbar: fbar.clone(), artifacts };
    verify_avoidance(g, &cert).map_err(|r| Error::internal(format!("prime construction failed: {r}")))?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::group::AbelianGroup;
    use crate::oracle::random_edge_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn doubly_negative_petersen() {
        let g = generators::petersen_two_negative();
        let tau = Orientation::default_for(&g);
        let limits = Limits::default();
        let a = AbelianGroup::cyclic(11).unwrap();
        let cert = connect_prime(&g, &tau, &EdgeMap::zero(&a, 15), &limits).unwrap();
        assert!(cert.flow.is_nowhere_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [11, 13] {
            let a = AbelianGroup::cyclic(p).unwrap();
            for _ in 0..25 {
                let fbar = random_edge_map(&a, 15, &mut rng);
                let cert = connect_prime(&g, &tau, &fbar, &limits).unwrap();
                assert_eq!(verify_avoidance(&g, &cert), Ok(()));
            }
        }
    }

    #[test]
    fn seven_is_out_of_scope() {
        let g = generators::petersen_two_negative();
        let a = AbelianGroup::cyclic(7).unwrap();
        let r = connect_prime(&g, &Orientation::default_for(&g), &EdgeMap::zero(&a, 15), &Limits::default());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
