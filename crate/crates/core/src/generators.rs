//! Named signed graphs and seeded random families.
//!
//! The Petersen graphs share one labelling: inner vertices `0..5` with inner edges
//! `i = (i, i+1)`, outer vertices `5..10` with spokes `5 + i = (i, 5+i)` and outer
//! edges `10 + i = (5+i, 5+(i+2)%5)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{is_k_connected, Sign, SignedGraph};

fn petersen_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, 5 + i));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    edges
}

pub fn petersen() -> SignedGraph {
    SignedGraph::unsigned(10, petersen_edges()).expect("valid")
}

/// Petersen with the inner 5-cycle negative: the dual of K6 on the projective plane.
pub fn petersen_ps() -> SignedGraph {
    petersen().with_negative_edges(&[0, 1, 2, 3, 4]).expect("valid")
}

/// Petersen with one negative inner edge and one negative outer edge.
pub fn petersen_two_negative() -> SignedGraph {
    petersen().with_negative_edges(&[0, 10]).expect("valid")
}

/// Every edge negative: each 5-cycle is negative and each 6-cycle positive.
pub fn petersen_all_negative() -> SignedGraph {
    let g = petersen();
    let all: Vec<usize> = g.edges().collect();
    g.with_negative_edges(&all).expect("valid")
}

/// The negative sun on `n` cycle vertices: cycle vertices `0..n`, pendant vertices `n..2n`,
/// cycle edges `i = (i, i+1)` with edge 0 negative, pendant edges `n + i = (i, n+i)`.
pub fn negative_sun(n: usize) -> Result<SignedGraph> {
    if n < 3 {
        return Err(Error::pre("a negative sun needs at least 3 cycle vertices"));
    }
    let mut g = SignedGraph::new(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, if i == 0 { Sign::Negative } else { Sign::Positive })?;
    }
    for i in 0..n {
        g.add_edge(i, n + i, Sign::Positive)?;
    }
    Ok(g)
}

/// K4 whose triangle on vertices 0, 1, 2 is all negative.
pub fn k4_negative_triangle() -> SignedGraph {
    SignedGraph::from_edges(
        4,
        [
            (0, 1, Sign::Negative),
            (1, 2, Sign::Negative),
            (2, 0, Sign::Negative),
            (0, 3, Sign::Positive),
            (1, 3, Sign::Positive),
            (2, 3, Sign::Positive),
        ],
    )
    .expect("valid")
}

pub fn complete(n: usize) -> SignedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    SignedGraph::unsigned(n, edges).expect("valid")
}

pub fn k33() -> SignedGraph {
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 3..6 {
            edges.push((i, j));
        }
    }
    SignedGraph::unsigned(6, edges).expect("valid")
}

/// Triangular prism: triangles 0-1-2 and 3-4-5 with rungs `i, i+3`.
pub fn prism() -> SignedGraph {
    SignedGraph::unsigned(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).expect("valid")
}

pub fn cube() -> SignedGraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    SignedGraph::unsigned(8, edges).expect("valid")
}

/// One vertex carrying two negative loops.
pub fn double_negative_loop() -> SignedGraph {
    SignedGraph::from_edges(1, [(0, 0, Sign::Negative), (0, 0, Sign::Negative)]).expect("valid")
}

/// Uniform random simple cubic 3-connected graph on `n` (even, ≥ 4) vertices by
/// rejection sampling from the pairing model, with every edge negative independently
/// with probability `p_negative`.
pub fn random_cubic(n: usize, p_negative: f64, seed: u64) -> Result<SignedGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::pre("cubic graphs need an even number of at least 4 vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut points: Vec<usize> = (0..3 * n).collect();
        points.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0] / 3, c[1] / 3)).collect();
        let Ok(g) = SignedGraph::unsigned(n, pairs) else { continue };
        if !g.is_simple() || !is_k_connected(&g, 3) {
            continue;
        }
        let signs = g.edges().map(|_| if rng.gen_bool(p_negative) { Sign::Negative } else { Sign::Positive }).collect();
        return g.with_signs(signs);
    }
}

/// Random signed multigraph with `n` vertices and `m` edges (loops and parallels allowed).
pub fn random_signed(n: usize, m: usize, seed: u64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = SignedGraph::new(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let s = if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive };
        g.add_edge(u, v, s).expect("in range");
    }
    g
}

/// The named graphs reachable from the command line, keyed by name.
pub fn by_name(name: &str, arg: Option<usize>) -> Result<SignedGraph> {
    match name {
        "petersen-ps" => Ok(petersen_ps()),
        "petersen-2neg" => Ok(petersen_two_negative()),
        "petersen" => Ok(petersen()),
        "negsun" => negative_sun(arg.ok_or_else(|| Error::pre("negsun needs a size"))?),
        "k4-negtri" => Ok(k4_negative_triangle()),
        _ => Err(Error::pre(format!("unknown graph `{name}`"))),
    }
}

/// The small-graph suite used for cross-checking constructors against the oracle.
pub fn suite() -> Vec<(String, SignedGraph)> {
    let mut out = vec![
        ("k4-negtri".to_string(), k4_negative_triangle()),
        ("double-negative-loop".to_string(), double_negative_loop()),
        ("negsun-3".to_string(), negative_sun(3).expect("valid")),
        ("negsun-4".to_string(), negative_sun(4).expect("valid")),
        ("k4".to_string(), complete(4)),
        ("k33-two-negative".to_string(), k33().with_negative_edges(&[0, 8]).expect("valid")),
        ("prism-two-negative".to_string(), prism().with_negative_edges(&[0, 3]).expect("valid")),
        ("k5-two-negative".to_string(), complete(5).with_negative_edges(&[0, 9]).expect("valid")),
        ("cube-two-negative".to_string(), cube().with_negative_edges(&[0, 11]).expect("valid")),
    ];
    out.push(("petersen-ps".to_string(), petersen_ps()));
    out.push(("petersen-2neg".to_string(), petersen_two_negative()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_cycles, edge_connectivity, is_balanced, is_two_unbalanced};

    #[test]
    fn petersen_shape() {
        let g = petersen();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 15));
        assert!(g.is_cubic() && g.is_simple());
        let cycles = all_cycles(&g).unwrap();
        assert_eq!(cycles.iter().filter(|c| c.len() == 5).count(), 12);
        assert_eq!(cycles.iter().filter(|c| c.len() == 6).count(), 10);
        assert_eq!(cycles.iter().filter(|c| c.len() < 5).count(), 0);
    }

    #[test]
    fn signed_petersens() {
        let ps = petersen_ps();
        assert_eq!(ps.negative_edges(), vec![0, 1, 2, 3, 4]);
        assert!(is_two_unbalanced(&ps));
        assert_eq!(edge_connectivity(&ps), Some(3));
        assert!(is_two_unbalanced(&petersen_two_negative()));
        assert!(!is_balanced(&petersen_all_negative()));
    }

    #[test]
    fn negative_sun_shape() {
        let h = negative_sun(3).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (6, 6));
        assert_eq!(h.negative_edges(), vec![0]);
        assert!(negative_sun(2).is_err());
    }

    #[test]
    fn random_cubic_is_cubic() {
        for seed in 0..5 {
            let g = random_cubic(10, 0.3, seed).unwrap();
            assert!(g.is_cubic() && g.is_simple() && is_k_connected(&g, 3));
        }
        assert_eq!(random_cubic(8, 0.5, 7).unwrap(), random_cubic(8, 0.5, 7).unwrap());
    }
}
