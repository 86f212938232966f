use std::collections::{BTreeSet, VecDeque};

use super::{SignedGraph, Vertex};

/// Planarity of the underlying graph, ignoring signs, loops and parallel edges.
///
/// Each biconnected block is embedded by repeatedly drawing a path of some
/// fragment into a face that contains all of its attachments, forced fragments first.
pub fn is_planar(g: &SignedGraph) -> bool {
    let n = g.vertex_count();
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    if n >= 3 && edges.len() > 3 * n - 6 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    blocks(&adj).iter().all(|block| block.len() < 9 || embeds(block))
}

/// Edge sets of the biconnected blocks.
fn blocks(adj: &[Vec<Vertex>]) -> Vec<Vec<(Vertex, Vertex)>> {
    struct State<'a> {
        adj: &'a [Vec<Vertex>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(Vertex, Vertex)>,
        out: Vec<Vec<(Vertex, Vertex)>>,
    }
    fn visit(s: &mut State, u: Vertex, parent: Option<Vertex>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.adj[u].len() {
            let w = s.adj[u][i];
            if s.disc[w] == 0 {
                s.stack.push((u, w));
                visit(s, w, Some(u));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if Some(w) != parent && s.disc[w] < s.disc[u] {
                s.stack.push((u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let n = adj.len();
    let mut s = State { adj, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            visit(&mut s, v, None);
        }
    }
    s.out
}

/// Path-embedding test on one 2-connected simple block.
fn embeds(block: &[(Vertex, Vertex)]) -> bool {
    let n = block.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
    let mut adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in block.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let vcount = adj.iter().filter(|a| !a.is_empty()).count();
    if block.len() > 3 * vcount - 6 {
        return false;
    }
    let mut in_h = vec![false; n];
    let mut edge_in_h = vec![false; block.len()];
    let cycle = find_cycle(&adj, block[0].0);
    for k in 0..cycle.len() {
        let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
        in_h[a] = true;
        let i = adj[a].iter().find(|&&(w, _)| w == b).unwrap().1;
        edge_in_h[i] = true;
    }
    let mut faces: Vec<Vec<Vertex>> = vec![cycle.clone(), cycle];
    while edge_in_h.iter().any(|&x| !x) {
        let fragments = fragments(&adj, block, &in_h, &edge_in_h);
        let mut choice = None;
        for (k, frag) in fragments.iter().enumerate() {
            let ok: Vec<usize> =
                (0..faces.len()).filter(|&f| frag.attachments.iter().all(|v| faces[f].contains(v))).collect();
            match ok.len() {
                0 => return false,
                1 => {
                    choice = Some((k, ok[0]));
                    break;
                }
                _ if choice.is_none() => choice = Some((k, ok[0])),
                _ => {}
            }
        }
        let (k, f) = choice.expect("some fragment remains");
        let path = fragment_path(&adj, &fragments[k], &in_h);
        for w in path.windows(2) {
            let i = adj[w[0]].iter().find(|&&(x, i)| x == w[1] && !edge_in_h[i]).unwrap().1;
            edge_in_h[i] = true;
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(f);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&v| v == a).unwrap();
        let j = face.iter().position(|&v| v == b).unwrap();
        let walk = |from: usize, to: usize| -> Vec<Vertex> {
            let mut out = vec![face[from]];
            let mut p = from;
            while p != to {
                p = (p + 1) % face.len();
                out.push(face[p]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut first = walk(i, j);
        first.extend(inner.iter().rev());
        let mut second = walk(j, i);
        second.extend(inner.iter());
        faces.push(first);
        faces.push(second);
    }
    true
}

fn find_cycle(adj: &[Vec<(Vertex, usize)>], start: Vertex) -> Vec<Vertex> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut stack = vec![start];
    parent[start] = start;
    while let Some(u) = stack.pop() {
        for &(w, _) in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            } else if w != parent[u] && parent[w] != u {
                // Non-tree edge u-w: join the two tree paths at their meeting point.
                let up = |mut x: Vertex| {
                    let mut p = vec![x];
                    while parent[x] != x {
                        x = parent[x];
                        p.push(x);
                    }
                    p
                };
                let (pu, pw) = (up(u), up(w));
                let meet = *pu.iter().find(|x| pw.contains(x)).unwrap();
                let mut cycle: Vec<Vertex> = pu.iter().copied().take_while(|&x| x != meet).collect();
                cycle.push(meet);
                let tail: Vec<Vertex> = pw.iter().copied().take_while(|&x| x != meet).collect();
                cycle.extend(tail.into_iter().rev());
                return cycle;
            }
        }
    }
    unreachable!("a 2-connected block has a cycle")
}

struct Fragment {
    /// Interior vertices (empty for a single chord).
    inner: Vec<Vertex>,
    chord: Option<(Vertex, Vertex)>,
    attachments: Vec<Vertex>,
}

fn fragments(adj: &[Vec<(Vertex, usize)>], block: &[(Vertex, Vertex)], in_h: &[bool], edge_in_h: &[bool]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (i, &(a, b)) in block.iter().enumerate() {
        if !edge_in_h[i] && in_h[a] && in_h[b] {
            out.push(Fragment { inner: Vec::new(), chord: Some((a, b)), attachments: vec![a, b] });
        }
    }
    let mut seen = vec![false; adj.len()];
    for root in 0..adj.len() {
        if in_h[root] || seen[root] || adj[root].is_empty() {
            continue;
        }
        seen[root] = true;
        let mut inner = vec![root];
        let mut att = BTreeSet::new();
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &adj[u] {
                if in_h[w] {
                    att.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { inner, chord: None, attachments: att.into_iter().collect() });
    }
    out
}

/// A path through the fragment between two distinct attachments.
fn fragment_path(adj: &[Vec<(Vertex, usize)>], frag: &Fragment, in_h: &[bool]) -> Vec<Vertex> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let a = frag.attachments[0];
    let mut inside = vec![false; adj.len()];
    for &v in &frag.inner {
        inside[v] = true;
    }
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &(w, _) in &adj[a] {
        if inside[w] && prev[w] == usize::MAX {
            prev[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &(w, _) in &adj[u] {
            if in_h[w] && w != a {
                let mut path = vec![w, u];
                let mut x = u;
                while prev[x] != a {
                    x = prev[x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if inside[w] && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a 2-connected block have two attachments")
}
