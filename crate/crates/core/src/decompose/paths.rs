use crate::error::{Error, Result};
use crate::graph::{components_within, touched_vertices, Edge, EdgeSet, PathRef, SignedGraph, Vertex};
use crate::structures::is_edge_set_balanced;

/// Most paths any search here will visit.
pub const PATH_LIMIT: usize = 1_000_000;

/// Degree of every vertex inside `c`.
pub fn degrees_within(g: &SignedGraph, c: &EdgeSet) -> Vec<usize> {
    let mut deg = vec![0; g.vertex_count()];
    for e in c.iter() {
        let [a, b] = g.endpoints(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    deg
}

/// Number of components of `rest` that are not isolated vertices.
pub fn bridge_count(g: &SignedGraph, rest: &EdgeSet) -> usize {
    let comps = components_within(g, rest);
    let touched = touched_vertices(g, rest);
    let mut labels: Vec<usize> = g.vertices().filter(|&v| touched[v]).map(|v| comps.label[v]).collect();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}

/// Calls `visit` on every path inside `c` joining two degree-1 vertices of `c`
/// (each unordered pair once), stopping early when it returns true.
fn for_each_leaf_path(g: &SignedGraph, c: &EdgeSet, mut visit: impl FnMut(&PathRef) -> bool) -> Result<Option<PathRef>> {
    let deg = degrees_within(g, c);
    let leaves: Vec<Vertex> = g.vertices().filter(|&v| deg[v] == 1).collect();
    let mut count = 0usize;
    for &start in &leaves {
        let mut on_path = vec![false; g.vertex_count()];
        on_path[start] = true;
        let mut path = PathRef::trivial(start);
        // Explicit DFS stack of candidate edge lists.
        let mut stack: Vec<Vec<Edge>> = vec![g.edges_at(start).into_iter().filter(|&e| c.contains(e)).collect()];
        while let Some(options) = stack.last_mut() {
            let Some(e) = options.pop() else {
                stack.pop();
                if let Some(v) = path.vertices.pop() {
                    on_path[v] = false;
                    path.edges.pop();
                }
                continue;
            };
            let u = *path.vertices.last().unwrap();
            let w = g.other_end(e, u);
            if on_path[w] {
                continue;
            }
            path.vertices.push(w);
            path.edges.push(e);
            on_path[w] = true;
            if deg[w] == 1 {
                if w > start {
                    count += 1;
                    if count > PATH_LIMIT {
                        return Err(Error::DeskScale { what: "path count", limit: PATH_LIMIT, actual: count });
                    }
                    if visit(&path) {
                        return Ok(Some(path));
                    }
                }
                path.vertices.pop();
                path.edges.pop();
                on_path[w] = false;
            } else {
                stack.push(g.edges_at(w).into_iter().filter(|&f| c.contains(f) && f != e).collect());
            }
        }
    }
    Ok(None)
}

/// A path between degree-1 vertices of `c` whose removal leaves exactly one bridge,
/// which must be unbalanced when `keep_unbalanced` is set.
///
/// When `c` is a single edge that edge is returned.
pub fn improving_path(g: &SignedGraph, c: &EdgeSet, keep_unbalanced: bool) -> Result<Option<PathRef>> {
    if c.len() == 1 {
        let e = c.iter().next().unwrap();
        let [a, b] = g.endpoints(e);
        return Ok((!keep_unbalanced && a != b).then(|| PathRef { vertices: vec![a, b], edges: vec![e] }));
    }
    for_each_leaf_path(g, c, |p| {
        let rest = c.difference(&EdgeSet::from_edges(c.capacity(), p.edges.iter().copied()));
        if rest.is_empty() || bridge_count(g, &rest) != 1 {
            return false;
        }
        !keep_unbalanced || !is_edge_set_balanced(g, &rest)
    })
}

/// Vertex-disjoint paths, one joining `x1` and `x2` and one joining two distinct vertices of `ys`.
pub fn two_disjoint_paths(g: &SignedGraph, x1: Vertex, x2: Vertex, ys: &[Vertex]) -> Result<Option<(PathRef, PathRef)>> {
    g.check_vertex(x1)?;
    g.check_vertex(x2)?;
    for &y in ys {
        g.check_vertex(y)?;
    }
    if !crate::graph::is_k_connected(g, 2) {
        return Err(Error::pre("two_disjoint_paths needs a 2-connected graph"));
    }
    let n = g.vertex_count();
    let mut count = 0usize;
    let mut result = None;
    let mut on_path = vec![false; n];
    let mut path = PathRef::trivial(x1);
    on_path[x1] = true;
    fn dfs(
        g: &SignedGraph,
        x2: Vertex,
        ys: &[Vertex],
        on_path: &mut Vec<bool>,
        path: &mut PathRef,
        count: &mut usize,
        result: &mut Option<(PathRef, PathRef)>,
    ) -> Result<()> {
        let u = *path.vertices.last().unwrap();
        if u == x2 {
            *count += 1;
            if *count > PATH_LIMIT {
                return Err(Error::DeskScale { what: "path count", limit: PATH_LIMIT, actual: *count });
            }
            if let Some(q) = path_between_avoiding(g, ys, on_path) {
                *result = Some((path.clone(), q));
            }
            return Ok(());
        }
        for e in g.edges_at(u) {
            let w = g.other_end(e, u);
            if on_path[w] {
                continue;
            }
            on_path[w] = true;
            path.vertices.push(w);
            path.edges.push(e);
            dfs(g, x2, ys, on_path, path, count, result)?;
            path.vertices.pop();
            path.edges.pop();
            on_path[w] = false;
            if result.is_some() {
                return Ok(());
            }
        }
        Ok(())
    }
    dfs(g, x2, ys, &mut on_path, &mut path, &mut count, &mut result)?;
    Ok(result)
}

/// A path between two distinct `ys` avoiding `blocked` vertices.
fn path_between_avoiding(g: &SignedGraph, ys: &[Vertex], blocked: &[bool]) -> Option<PathRef> {
    let free: Vec<Vertex> = ys.iter().copied().filter(|&y| !blocked[y]).collect();
    let all = EdgeSet::full(g.edge_count());
    for (i, &a) in free.iter().enumerate() {
        let mut targets = vec![false; g.vertex_count()];
        for &b in &free[i + 1..] {
            if b != a {
                targets[b] = true;
            }
        }
        if let Some(p) = crate::graph::shortest_path(g, a, &targets, &all, blocked) {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn single_edge() {
        let g = SignedGraph::unsigned(2, [(0, 1)]).unwrap();
        let p = improving_path(&g, &EdgeSet::full(1), false).unwrap().unwrap();
        assert_eq!(p.edges, vec![0]);
    }

    #[test]
    fn spider() {
        // centre 0 with legs to 1, 2, 3
        let g = SignedGraph::unsigned(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = EdgeSet::full(3);
        let p = improving_path(&g, &c, false).unwrap().unwrap();
        assert_eq!(p.len(), 2);
        let rest = c.difference(&EdgeSet::from_edges(3, p.edges.iter().copied()));
        assert_eq!(rest.len(), 1);
        assert_eq!(bridge_count(&g, &rest), 1);
    }

    #[test]
    fn protected_negative_cycle() {
        // negative triangle 0-1-2 with pendants to 3, 4, 5: every leaf path breaks the triangle
        let h = generators::negative_sun(3).unwrap();
        assert!(improving_path(&h, &EdgeSet::full(6), true).unwrap().is_none());
    }

    #[test]
    fn disjoint_path_pairs() {
        let c4 = SignedGraph::unsigned(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(two_disjoint_paths(&c4, 0, 2, &[1, 3]).unwrap().is_none());
        let (p, q) = two_disjoint_paths(&c4, 0, 1, &[2, 3]).unwrap().unwrap();
        assert_eq!((p.len(), q.len()), (1, 1));
        let k4 = generators::complete(4);
        assert!(two_disjoint_paths(&k4, 0, 2, &[1, 3]).unwrap().is_some());
        let path = SignedGraph::unsigned(3, [(0, 1), (1, 2)]).unwrap();
        assert!(two_disjoint_paths(&path, 0, 2, &[1]).is_err());
    }
}
