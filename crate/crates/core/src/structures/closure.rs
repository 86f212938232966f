use crate::error::Result;
use crate::graph::{all_cycles, CycleRef, Edge, EdgeSet, SignedGraph};

/// One absorption: a positive cycle and the edges it added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureStep {
    pub cycle: CycleRef,
    pub added: Vec<Edge>,
}

/// A closure together with the absorptions that produced it, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub set: EdgeSet,
    pub steps: Vec<ClosureStep>,
}

/// The least superset of `seed` absorbing every positive cycle with between 1 and `k`
/// edges outside the current set.
pub fn k_closure(g: &SignedGraph, seed: &EdgeSet, k: usize) -> Result<EdgeSet> {
    Ok(k_closure_trace(g, seed, k)?.set)
}

/// [`k_closure`] with the absorbed cycles recorded, scanning cycles shortest first.
pub fn k_closure_trace(g: &SignedGraph, seed: &EdgeSet, k: usize) -> Result<Closure> {
    let cycles: Vec<CycleRef> = all_cycles(g)?.into_iter().filter(|c| !c.sign_unchecked(g).is_negative()).collect();
    Ok(closure_over(&cycles, seed, k))
}

/// Fixpoint over a given list of positive cycles, scanned in list order.
pub fn closure_over(positive_cycles: &[CycleRef], seed: &EdgeSet, k: usize) -> Closure {
    let mut set = seed.clone();
    let mut steps = Vec::new();
    let mut done = vec![false; positive_cycles.len()];
    loop {
        let mut changed = false;
        for (i, c) in positive_cycles.iter().enumerate() {
            if done[i] {
                continue;
            }
            let missing: Vec<Edge> = c.edges.iter().copied().filter(|&e| !set.contains(e)).collect();
            if missing.is_empty() {
                done[i] = true;
            } else if missing.len() <= k {
                for &e in &missing {
                    set.insert(e);
                }
                steps.push(ClosureStep { cycle: c.clone(), added: missing });
                done[i] = true;
                changed = true;
            }
        }
        if !changed {
            return Closure { set, steps };
        }
    }
}

pub fn is_k_base(g: &SignedGraph, set: &EdgeSet, k: usize) -> Result<bool> {
    Ok(k_closure(g, set, k)?.len() == g.edge_count())
}

/// Replays a closure trace: each step's cycle is positive and adds between 1 and `k` new edges.
pub fn check_closure_steps(g: &SignedGraph, seed: &EdgeSet, k: usize, steps: &[ClosureStep]) -> Option<EdgeSet> {
    let mut set = seed.clone();
    for s in steps {
        if s.cycle.sign(g).ok()?.is_negative() {
            return None;
        }
        let missing: Vec<Edge> = s.cycle.edges.iter().copied().filter(|&e| !set.contains(e)).collect();
        if missing.is_empty() || missing.len() > k || missing != s.added {
            return None;
        }
        for e in missing {
            set.insert(e);
        }
    }
    Some(set)
}
