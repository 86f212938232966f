use super::certificate::{verify_avoidance, Artifact, AvoidanceCertificate, Strategy};
use super::{check_inputs, connect_composite, connect_prime, connect_projective};
use crate::duality::EmbeddedGraph;
use crate::error::{Error, Limits, Result};
use crate::graph::{is_k_connected, is_k_edge_connected, is_two_unbalanced, Orientation, SignedGraph};
use crate::group::{is_prime, EdgeMap};
use crate::oracle::avoiding_flow;
use crate::reduce::{cubicize, Cubicized};

/// Structure the caller knows about the graph.
#[derive(Clone, Debug, Default)]
pub struct Hints {
    /// An embedding whose oriented dual is the graph, up to switching.
    pub projective: Option<EmbeddedGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectOutcome {
    Flow(AvoidanceCertificate),
    /// The search showed no flow avoids `fbar`; the graph is not connected for the group.
    Unsat { fbar: EdgeMap },
}

/// Strategies tried by [`connect`], in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Attempts {
    /// `(strategy, reason)` for each constructor that declined.
    pub declined: Vec<(Strategy, String)>,
}

/// A flow avoiding `fbar`, built by the first constructor whose hypotheses hold, else
/// by exhaustive search.
///
/// The graph is split to a cubic one first (new edges are positive and appended, so the
/// flow restricts back by truncation); the composite and prime constructors run there when
/// it is 3-connected. A projective hint is used on the graph as given.
pub fn connect(
    g: &SignedGraph,
    tau: &Orientation,
    fbar: &EdgeMap,
    hints: &Hints,
    limits: &Limits,
) -> Result<(ConnectOutcome, Attempts)> {
    check_inputs(g, tau, fbar)?;
    if !is_k_edge_connected(g, 3) || !is_two_unbalanced(g) {
        return Err(Error::pre("the graph must be 3-edge-connected and 2-unbalanced"));
    }
    let a = &fbar.group;
    let m = g.edge_count();
    let mut attempts = Attempts::default();
    let mut decline = |s: Strategy, r: String| attempts.declined.push((s, r));

    let cubic = match cubicize(g)? {
        Cubicized::Cubic(c) => Some(c),
        Cubicized::SingleVertex => None,
    };
    if let Some(c) = cubic.as_ref().filter(|c| is_k_connected(&c.graph, 3)) {
        let h = &c.graph;
        let mut tau_values = tau.values().to_vec();
        let mut fbar_values = fbar.values.clone();
        for _ in m..h.edge_count() {
            tau_values.extend([1, -1]);
            fbar_values.push(a.zero());
        }
        let tau_h = Orientation::from_values(h, tau_values)?;
        let fbar_h = EdgeMap { group: a.clone(), values: fbar_values };
        let composite = a.order() >= 4 && !is_prime(a.order());
        let prime = a.factors().len() == 1 && is_prime(a.order()) && a.order() >= 11;
        let tried = if composite {
            Some((Strategy::Composite, connect_composite(h, &tau_h, &fbar_h)))
        } else if prime {
            Some((Strategy::Prime, connect_prime(h, &tau_h, &fbar_h, limits)))
        } else {
            None
        };
        match tried {
            Some((_, Ok(cert))) => {
                let cert = restrict(g, tau, fbar, cert, h.edge_count() - m)?;
                return Ok((ConnectOutcome::Flow(cert), attempts));
            }
            Some((s, Err(Error::Precondition(r)))) => decline(s, r),
            Some((_, Err(e))) => return Err(e),
            None => decline(Strategy::Composite, format!("{a} is neither composite nor a prime field of order at least 11")),
        }
    } else {
        decline(Strategy::Composite, "the cubic reduction is not 3-connected".into());
    }

    if let Some(eg) = &hints.projective {
        match connect_projective(g, tau, fbar, eg) {
            Ok(cert) => return Ok((ConnectOutcome::Flow(cert), attempts)),
            Err(Error::Precondition(r)) => decline(Strategy::Projective, r),
            Err(e) => return Err(e),
        }
    }

    let outcome = match avoiding_flow(g, tau, fbar, limits)? {
        Some(flow) => {
            let cert = AvoidanceCertificate {
                strategy: Strategy::Oracle,
                orientation: tau.clone(),
                flow,
                fbar: fbar.clone(),
                artifacts: Vec::new(),
            };
            verify_avoidance(g, &cert).map_err(|r| Error::internal(format!("search returned a bad flow: {r}")))?;
            ConnectOutcome::Flow(cert)
        }
        None => ConnectOutcome::Unsat { fbar: fbar.clone() },
    };
    Ok((outcome, attempts))
}

/// Drops the edges added by splitting; the values on the original edges form a flow
/// because each added edge is positive with both ends inside one original vertex.
fn restrict(
    g: &SignedGraph,
    tau: &Orientation,
    fbar: &EdgeMap,
    cert: AvoidanceCertificate,
    added: usize,
) -> Result<AvoidanceCertificate> {
    let m = g.edge_count();
    let cut = |f: EdgeMap| EdgeMap { group: f.group, values: f.values[..m].to_vec() };
    let mut artifacts: Vec<Artifact> = cert
        .artifacts
        .into_iter()
        .map(|art| match art {
            Artifact::Map(k, f) => Artifact::Map(k, cut(f)),
            Artifact::Integers(k, mut f) => {
                f.values.truncate(m);
                Artifact::Integers(k, f)
            }
            note => note,
        })
        .collect();
    if added > 0 {
        artifacts.push(Artifact::Note("split-edges".into(), added.to_string()));
    }
    let out = AvoidanceCertificate {
        strategy: cert.strategy,
        orientation: tau.clone(),
        flow: cut(cert.flow),
        fbar: fbar.clone(),
        artifacts,
    };
    verify_avoidance(g, &out).map_err(|r| Error::internal(format!("restriction to the original graph failed: {r}")))?;
    Ok(out)
}
