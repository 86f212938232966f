use super::certificate::{verify_avoidance, Artifact, AvoidanceCertificate, Strategy};
use super::circuit::{add_scaled, circuit_within, cycle_coefficients, Circuit};
use super::check_inputs;
use crate::decompose::decompose_tree_2base;
use crate::error::{Error, Result};
use crate::graph::{is_two_unbalanced, Edge, EdgeSet, Orientation, SignedGraph};
use crate::group::{is_prime, AbelianGroup, EdgeMap, GroupElement, IntegerEdgeMap, MinimalSubgroup};
use crate::structures::{fundamental_cycle, k_closure_trace};

/// The least element of `choices` that makes `value(e) + coef(e) * x` avoid `bad(e, ·)` for
/// every listed edge, together with how many choices were ruled out.
fn least_choice(
    a: &AbelianGroup,
    choices: &[GroupElement],
    edges: &[Edge],
    current: &EdgeMap,
    unit: &IntegerEdgeMap,
    bad: impl Fn(Edge, GroupElement) -> bool,
) -> (Option<GroupElement>, usize) {
    let mut ruled_out = 0;
    let mut pick = None;
    for &x in choices {
        let hit = edges.iter().any(|&e| bad(e, a.add(current.get(e), a.scale(x, unit.values[e]))));
        if hit {
            ruled_out += 1;
        } else if pick.is_none() {
            pick = Some(x);
        }
    }
    (pick, ruled_out)
}

/// A flow avoiding `fbar` on a cubic, 3-connected, 2-unbalanced graph when `|A|` is composite.
///
/// A spanning tree `T` and 2-base `B` are found first. A flow in the cosets of a minimal
/// subgroup `N` keeps every tree edge out of its forbidden coset; an `N`-valued flow then
/// repairs the edges of `B` without disturbing those cosets.
pub fn connect_composite(g: &SignedGraph, tau: &Orientation, fbar: &EdgeMap) -> Result<AvoidanceCertificate> {
    let a = &fbar.group;
    check_inputs(g, tau, fbar)?;
    if a.order() < 6 || is_prime(a.order()) {
        return Err(Error::pre(format!("{a} does not have composite order at least 6")));
    }
    if !is_two_unbalanced(g) {
        return Err(Error::pre("the graph must be 2-unbalanced"));
    }
    let m = g.edge_count();
    let part = decompose_tree_2base(g)?;
    let (tree, base) = (part.x1, part.x2);
    let n = MinimalSubgroup::of(a)?;
    let q = n.quotient().ok_or_else(|| Error::internal("quotient by a minimal subgroup is trivial"))?;
    let cosets: Vec<GroupElement> = q.elements().map(|y| n.lift(y)).collect();

    // Phase one: positive cycles of the closure trace, last absorbed first.
    let trace = k_closure_trace(g, &base, 2)?;
    if trace.set.len() != m {
        return Err(Error::internal("the 2-base does not close to every edge"));
    }
    let mut phi1 = EdgeMap::zero(a, m);
    let mut fixed: Vec<Edge> = Vec::new();
    for step in trace.steps.iter().rev() {
        let unit = Circuit::Cycle(step.cycle.clone()).unit_flow(g, tau)?;
        let (x, ruled_out) =
            least_choice(a, &cosets, &step.added, &phi1, &unit, |e, v| n.same_coset(v, fbar.get(e)));
        if ruled_out > step.added.len() {
            return Err(Error::internal("a closure step rules out more cosets than it adds edges"));
        }
        let x = x.ok_or_else(|| Error::internal("no coset left for a closure step"))?;
        add_scaled(a, &mut phi1, &unit, x);
        fixed.extend(&step.added);
        if let Some(&e) = fixed.iter().find(|&&e| n.same_coset(phi1.get(e), fbar.get(e))) {
            return Err(Error::internal(format!("edge {e} fell into its forbidden coset")));
        }
    }

    // Phase two: values in N on the 2-base.
    let mut nvals = n.elements();
    nvals.sort();
    let mut phi2 = EdgeMap::zero(a, m);
    let residual = |phi2: &EdgeMap, e: Edge| a.add(phi1.get(e), phi2.get(e));
    let mut notes = vec![Artifact::Note("tree".into(), tree.to_string())];
    if n.prime() == 2 {
        // Every fundamental cycle carries both elements of N, whatever its sign.
        for e in base.iter() {
            let c = fundamental_cycle(g, &tree, e).ok_or_else(|| Error::internal("tree is not spanning"))?;
            let (unit, _) = cycle_coefficients(g, tau, &c);
            let cur = EdgeMap { group: a.clone(), values: (0..m).map(|f| residual(&phi2, f)).collect() };
            let (y, _) = least_choice(a, &nvals, &[e], &cur, &unit, |f, v| v == fbar.get(f));
            add_scaled(a, &mut phi2, &unit, y.ok_or_else(|| Error::internal("both elements of N are forbidden"))?);
        }
    } else {
        let negative: Vec<Edge> = base
            .iter()
            .filter(|&e| fundamental_cycle(g, &tree, e).is_some_and(|c| c.sign_unchecked(g).is_negative()))
            .take(2)
            .collect();
        let [b, b2] = negative[..] else {
            return Err(Error::internal("fewer than two negative fundamental cycles"));
        };
        notes.push(Artifact::Note("b".into(), format!("{b} {b2}")));
        let mut base_tree = tree.clone();
        base_tree.insert(b2);
        let fix = |phi2: &mut EdgeMap, set: &EdgeSet, edges: &[Edge]| -> Result<()> {
            let circuit = circuit_within(g, set, edges)?.ok_or_else(|| Error::internal("no positive cycle or barbell"))?;
            let unit = circuit.unit_flow(g, tau)?;
            let cur = EdgeMap { group: a.clone(), values: (0..m).map(|f| residual(phi2, f)).collect() };
            let (y, ruled_out) = least_choice(a, &nvals, edges, &cur, &unit, |f, v| v == fbar.get(f));
            if ruled_out > edges.len() {
                return Err(Error::internal("a repair rules out more values than it fixes edges"));
            }
            add_scaled(a, phi2, &unit, y.ok_or_else(|| Error::internal("no value of N left"))?);
            Ok(())
        };
        for e in base.iter().filter(|&e| e != b && e != b2) {
            let mut set = base_tree.clone();
            set.insert(e);
            fix(&mut phi2, &set, &[e])?;
        }
        let mut set = base_tree.clone();
        set.insert(b);
        fix(&mut phi2, &set, &[b, b2])?;
    }

    let flow = phi1.add(&phi2)?;
    let mut artifacts = vec![Artifact::Map("phi1".into(), phi1), Artifact::Map("phi2".into(), phi2)];
    artifacts.append(&mut notes);
    artifacts.push(Artifact::Note("closure-steps".into(), trace.steps.len().to_string()));
    let cert = AvoidanceCertificate { strategy: Strategy::Composite, orientation: tau.clone(), flow, fbar: fbar.clone(), artifacts };
    verify_avoidance(g, &cert).map_err(|r| Error::internal(format!("composite construction failed: {r}")))?;
    Ok(cert)
}
