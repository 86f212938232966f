use super::circuit::{add_scaled, signed_path, Circuit};
use crate::error::{Error, Result};
use crate::graph::{CycleRef, Edge, EdgeSet, HalfEdge, Orientation, SignedGraph};
use crate::group::{is_prime, AbelianGroup, EdgeMap, GroupElement, IntegerEdgeMap};
use crate::structures::NegativeSun;

/// A flow on the whole graph that treats the sun's edges well: every sun edge but
/// `special` avoids its forbidden value and the values 3 and 6 away from it, and
/// `special` avoids its forbidden value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunFlow {
    pub flow: EdgeMap,
    pub special: Edge,
    /// The positive cycles used, one per cycle edge of the sun.
    pub cycles: Vec<CycleRef>,
    /// Bad values counted before each choice.
    pub ruled_out: Vec<usize>,
}

/// `v - fbar` lies in `{0, ±3, ±6}`.
pub fn in_forbidden_band(a: &AbelianGroup, v: GroupElement, forbidden: GroupElement) -> bool {
    let d = a.sub(v, forbidden);
    [0, 3, -3, 6, -6].iter().any(|&k| a.from_int(k) == d)
}

fn half_at(g: &SignedGraph, e: Edge, v: usize) -> HalfEdge {
    if g.endpoints(e)[0] == v {
        HalfEdge::of(e, 0)
    } else {
        HalfEdge::of(e, 1)
    }
}

/// For each cycle edge `e_i` of the sun, a positive cycle through the pendant at its
/// start, `e_i` and the pendant at its end, closed off the sun's cycle.
pub fn sun_cycles(g: &SignedGraph, sun: &NegativeSun) -> Result<Vec<CycleRef>> {
    let n = sun.len();
    let on_cycle = sun.cycle.vertex_mask(g.vertex_count());
    let outside: EdgeSet =
        EdgeSet::from_edges(g.edge_count(), g.edges().filter(|&e| g.endpoints(e).iter().all(|&v| !on_cycle[v])));
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        let (ei, pi, pj) = (sun.cycle.edges[i], sun.pendants[i], sun.pendants[j]);
        let want = g.sign(ei) * g.sign(pi) * g.sign(pj);
        let (wi, wj) = (sun.pendant_vertices[i], sun.pendant_vertices[j]);
        let path = signed_path(g, wj, wi, want, &outside, &on_cycle)?.ok_or_else(|| {
            Error::pre(format!("no {want} path closes a cycle through sun edge {ei}: the rest is not 2-connected"))
        })?;
        let mut vertices = vec![sun.cycle.vertices[i], sun.cycle.vertices[j]];
        vertices.extend(&path.vertices);
        let mut edges = vec![ei, pj];
        edges.extend(&path.edges);
        edges.push(pi);
        let c = CycleRef { vertices, edges };
        if c.sign(g)?.is_negative() {
            return Err(Error::internal("sun cycle came out negative"));
        }
        out.push(c);
    }
    Ok(out)
}

/// A flow that is good on the negative sun `sun`, over `Z_p` with `p >= 11` prime.
///
/// `negative` is a negative cycle edge-disjoint from the sun; with the rest of the graph
/// 2-connected it guarantees the closing paths of both signs.
pub fn sun_flow(
    g: &SignedGraph,
    tau: &Orientation,
    sun: &NegativeSun,
    negative: &CycleRef,
    fbar: &EdgeMap,
) -> Result<SunFlow> {
    let a = &fbar.group;
    let p = a.order();
    if a.factors().len() != 1 || !is_prime(p) || p < 11 {
        return Err(Error::pre(format!("{a} is not cyclic of prime order at least 11")));
    }
    tau.validate(g)?;
    sun.validate(g)?;
    if !negative.sign(g)?.is_negative() {
        return Err(Error::pre("the extra cycle must be negative"));
    }
    let m = g.edge_count();
    let h = sun.edge_set(m);
    if negative.edges.iter().any(|&e| h.contains(e)) {
        return Err(Error::pre("the negative cycle must be edge-disjoint from the sun"));
    }
    let n = sun.len();
    let cycles = sun_cycles(g, sun)?;
    let units: Vec<IntegerEdgeMap> =
        cycles.iter().map(|c| Circuit::Cycle(c.clone()).unit_flow(g, tau)).collect::<Result<_>>()?;
    let (ce, pe, cv) = (&sun.cycle.edges, &sun.pendants, &sun.cycle.vertices);
    let tau_at = |e: Edge, v: usize| tau.get(half_at(g, e, v)) as i64;
    let boundary_at = |i: usize| {
        let v = cv[i];
        let prev = ce[(i + n - 1) % n];
        a.sum([prev, ce[i], pe[i]].iter().map(|&e| a.scale(fbar.get(e), tau_at(e, v))))
    };
    let mut flow = EdgeMap::zero(a, m);
    let mut ruled_out = Vec::new();
    let special;
    let elements: Vec<GroupElement> = a.elements().collect();

    if let Some(j) = (0..n).find(|&i| !a.is_zero(boundary_at(i))) {
        // Lock the pendant at v_j to the cycle edge before it, then repair in pairs.
        let before = (j + n - 1) % n;
        let (ua, uc, ub) = (units[before].values[ce[before]], units[before].values[pe[j]], units[j].values[pe[j]]);
        let xj = a.scale(a.sub(fbar.get(pe[j]), a.scale(fbar.get(ce[before]), ua * uc)), ub);
        add_scaled(a, &mut flow, &units[j], xj);
        special = ce[j];
        if flow.get(special) == fbar.get(special) {
            return Err(Error::internal("locking step hit the forbidden value of the special edge"));
        }
        let mut choose = |flow: &mut EdgeMap, i: usize, edges: &[Edge]| -> Result<()> {
            let bad = |x: GroupElement| {
                edges.iter().any(|&e| in_forbidden_band(a, a.add(flow.get(e), a.scale(x, units[i].values[e])), fbar.get(e)))
            };
            let count = elements.iter().filter(|&&x| bad(x)).count();
            if count > 10 || count >= p {
                return Err(Error::internal(format!("{count} bad values on sun cycle {i}")));
            }
            ruled_out.push(count);
            let x = *elements.iter().find(|&&x| !bad(x)).expect("fewer bad values than elements");
            add_scaled(a, flow, &units[i], x);
            Ok(())
        };
        for t in 1..n.saturating_sub(1) {
            let i = (j + t) % n;
            choose(&mut flow, i, &[ce[i], pe[i]])?;
        }
        choose(&mut flow, before, &[pe[before], ce[before], pe[j]])?;
    } else {
        // Offsets ±1 on cycle edges, chosen so each pendant gets ±2; an even cycle needs one bump.
        let mut d = vec![1i64; n];
        for i in 1..n {
            d[i] = tau_at(ce[i - 1], cv[i]) * tau_at(ce[i], cv[i]) * d[i - 1];
        }
        let cancels = tau_at(ce[n - 1], cv[0]) * d[n - 1] != tau_at(ce[0], cv[0]) * d[0];
        if cancels {
            d[n - 1] *= 2;
            special = pe[n - 1];
        } else {
            special = ce[0];
        }
        for i in 0..n {
            let target = a.add(fbar.get(ce[i]), a.from_int(d[i]));
            let x = a.scale(target, units[i].values[ce[i]]);
            add_scaled(a, &mut flow, &units[i], x);
        }
    }

    for e in h.iter() {
        let ok = if e == special { flow.get(e) != fbar.get(e) } else { !in_forbidden_band(a, flow.get(e), fbar.get(e)) };
        if !ok {
            return Err(Error::internal(format!("sun edge {e} keeps a forbidden value")));
        }
    }
    Ok(SunFlow { flow, special, cycles, ruled_out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::group::is_flow;
    use crate::oracle::random_edge_map;
    use crate::structures::negative_cycle_within;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// A sun `H_n` whose pendants end on a negative cycle, closed up by a ring: cubic and
    /// 2-connected off the sun's cycle.
    fn host(n: usize) -> (SignedGraph, NegativeSun, CycleRef) {
        let h = generators::negative_sun(n).unwrap();
        let mut g = h.clone();
        // ring through the pendant ends, with one negative edge
        for i in 0..n {
            let s = if i == 0 { crate::graph::Sign::Negative } else { crate::graph::Sign::Positive };
            g.add_edge(n + i, n + (i + 1) % n, s).unwrap();
        }
        let sun = crate::structures::sun_shape(&g, &EdgeSet::from_edges(g.edge_count(), 0..2 * n)).unwrap().unwrap();
        let ring = EdgeSet::from_edges(g.edge_count(), 2 * n..3 * n);
        let neg = negative_cycle_within(&g, &ring).unwrap();
        (g, sun, neg)
    }

    #[test]
    fn zero_boundary_offsets() {
        let a = AbelianGroup::cyclic(11).unwrap();
        for n in 3..=6 {
            let (g, sun, neg) = host(n);
            let tau = Orientation::default_for(&g);
            let r = sun_flow(&g, &tau, &sun, &neg, &EdgeMap::zero(&a, g.edge_count())).unwrap();
            assert!(is_flow(&g, &tau, &r.flow).unwrap());
            // cycle edges sit one away from the forbidden value, pendants two away (or 3, 2, 1 when even)
            let pend: Vec<i64> = sun.pendants.iter().map(|&e| r.flow.get(e).0 as i64).map(|v| v.min(11 - v)).collect();
            if n % 2 == 1 {
                assert!(pend.iter().all(|&v| v == 2), "{pend:?}");
            } else {
                assert_eq!(pend.iter().filter(|&&v| v == 3).count(), 1);
                assert_eq!(r.special, sun.pendants[n - 1]);
            }
        }
    }

    #[test]
    fn random_forbidden_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [11, 13] {
            let a = AbelianGroup::cyclic(p).unwrap();
            for n in 3..=8 {
                let (g, sun, neg) = host(n);
                let tau = Orientation::default_for(&g);
                for _ in 0..20 {
                    let fbar = random_edge_map(&a, g.edge_count(), &mut rng);
                    let r = sun_flow(&g, &tau, &sun, &neg, &fbar).unwrap();
                    assert!(is_flow(&g, &tau, &r.flow).unwrap());
                    assert!(r.ruled_out.iter().all(|&c| c <= 10));
                }
            }
        }
    }

    #[test]
    fn small_primes_refused() {
        let (g, sun, neg) = host(3);
        let a = AbelianGroup::cyclic(7).unwrap();
        let tau = Orientation::default_for(&g);
        assert!(sun_flow(&g, &tau, &sun, &neg, &EdgeMap::zero(&a, g.edge_count())).is_err());
    }
}
