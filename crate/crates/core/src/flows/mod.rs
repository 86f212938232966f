//! Constructive group connectivity: flows that avoid a forbidden value on every edge.

mod certificate;
mod circuit;
mod composite;
mod dispatch;
mod prime;
mod projective;
mod sun;
mod z2;

pub use certificate::*;
pub use circuit::*;
pub use composite::*;
pub use dispatch::*;
pub use prime::*;
pub use projective::*;
pub use sun::*;
pub use z2::*;

use crate::error::{Error, Result};
use crate::graph::{HalfEdge, Orientation, SignedGraph};
use crate::group::EdgeMap;

fn check_inputs(g: &SignedGraph, tau: &Orientation, fbar: &EdgeMap) -> Result<()> {
    tau.validate(g)?;
    if fbar.len() != g.edge_count() {
        return Err(Error::pre("the forbidden map does not cover every edge"));
    }
    Ok(())
}

/// Rewrites `f`, given relative to `from`, relative to `to`. Both orientations must fit
/// the signature of `g`, so each edge is either kept or reversed as a whole.
pub fn transfer(g: &SignedGraph, from: &Orientation, to: &Orientation, f: &EdgeMap) -> Result<EdgeMap> {
    from.validate(g)?;
    to.validate(g)?;
    let a = &f.group;
    let values = g
        .edges()
        .map(|e| {
            let (h0, h1) = (HalfEdge::of(e, 0), HalfEdge::of(e, 1));
            let keep0 = from.get(h0) == to.get(h0);
            if keep0 != (from.get(h1) == to.get(h1)) {
                return Err(Error::internal(format!("orientations disagree on one end of edge {e}")));
            }
            Ok(if keep0 { f.get(e) } else { a.neg(f.get(e)) })
        })
        .collect::<Result<_>>()?;
    Ok(EdgeMap { group: a.clone(), values })
}
