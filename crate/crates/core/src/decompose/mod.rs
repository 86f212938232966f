//! Edge partitions of cubic signed graphs into a tree or connected base and a
//! (nearly) 2-closed remainder, with certificates that can be re-checked.

mod build;
mod hypotheses;
mod paths;

pub use build::*;
pub use hypotheses::*;
pub use paths::*;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{io, is_edge_set_two_connected, EdgeSet, SignedGraph};
use crate::structures::{is_connected_base, is_edge_set_balanced, is_spanning_connected, k_closure, sun_shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `X1` a spanning tree, `X2` a 2-base.
    TreeTwoBase,
    /// `X1` a connected base containing the negative sun `F`, `X2` 2-closing to `E - F`.
    BaseSun,
    /// `X1` contains a connected base, `X2` 2-closes to `E - F`, `F` empty or a degenerate negative sun.
    General,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::TreeTwoBase => "tree-2base",
            Mode::BaseSun => "base-sun",
            Mode::General => "general",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        [Mode::TreeTwoBase, Mode::BaseSun, Mode::General].into_iter().find(|m| m.name() == s)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub mode: Mode,
    pub x1: EdgeSet,
    pub x2: EdgeSet,
    pub f: EdgeSet,
    /// The structural hypotheses were assumed rather than checked.
    pub assumed: bool,
}

impl PartitionCertificate {
    /// `part <mode>`, then `X1:`, `X2:`, `F:` lines of 0-based edge indices and an optional `flags:` line.
    pub fn to_text(&self) -> String {
        let mut s = format!("part {}\nX1: {}\nX2: {}\nF: {}\n", self.mode, self.x1, self.x2, self.f);
        if self.assumed {
            s.push_str("flags: assumed-hypotheses\n");
        }
        s.lines().map(|l| l.trim_end().to_string() + "\n").collect()
    }

    pub fn parse(text: &str, m: usize) -> Result<PartitionCertificate> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let Some(&(ln, head)) = lines.first() else {
            return Err(Error::parse(1, "empty certificate"));
        };
        let mode = head
            .strip_prefix("part ")
            .and_then(|m| Mode::from_name(m.trim()))
            .ok_or_else(|| Error::parse(ln, "expected `part <tree-2base|base-sun|general>`"))?;
        let mut sets: [Option<EdgeSet>; 3] = [None, None, None];
        let mut assumed = false;
        for &(ln, line) in &lines[1..] {
            let (key, rest) = line.split_once(':').ok_or_else(|| Error::parse(ln, "expected `<key>: ...`"))?;
            let slot = match key {
                "X1" => 0,
                "X2" => 1,
                "F" => 2,
                "flags" => {
                    assumed = rest.split_whitespace().any(|f| f == "assumed-hypotheses");
                    continue;
                }
                _ => return Err(Error::parse(ln, format!("unknown key `{key}`"))),
            };
            if sets[slot].is_some() {
                return Err(Error::parse(ln, format!("`{key}` given twice")));
            }
            let mut set = EdgeSet::empty(m);
            for tok in rest.split_whitespace() {
                let e = io::parse_usize(tok, ln, "an edge index")?;
                if e >= m {
                    return Err(Error::parse(ln, format!("edge {e} out of range")));
                }
                set.insert(e);
            }
            sets[slot] = Some(set);
        }
        let [x1, x2, f] = sets;
        let missing = |k: &str| Error::parse(ln, format!("missing `{k}:` line"));
        Ok(PartitionCertificate {
            mode,
            x1: x1.ok_or_else(|| missing("X1"))?,
            x2: x2.ok_or_else(|| missing("X2"))?,
            f: f.unwrap_or_else(|| EdgeSet::empty(m)),
            assumed,
        })
    }
}

/// Re-checks every conclusion of the certificate's mode from scratch.
pub fn verify_partition(g: &SignedGraph, cert: &PartitionCertificate) -> std::result::Result<(), String> {
    let m = g.edge_count();
    let all = EdgeSet::full(m);
    if [&cert.x1, &cert.x2, &cert.f].iter().any(|s| s.capacity() != m) {
        return Err("edge sets do not match the graph".into());
    }
    if !cert.x1.is_disjoint(&cert.x2) || cert.x1.union(&cert.x2) != all {
        return Err("X1 and X2 do not partition the edges".into());
    }
    let closure = k_closure(g, &cert.x2, 2).map_err(|e| e.to_string())?;
    let target = all.difference(&cert.f);
    match cert.mode {
        Mode::TreeTwoBase => {
            if cert.x1.len() + 1 != g.vertex_count() || !is_spanning_connected(g, &cert.x1) {
                return Err("X1 not spanning tree".into());
            }
            if !cert.f.is_empty() {
                return Err("F must be empty".into());
            }
            if closure != all {
                return Err("X2 not a 2-base".into());
            }
        }
        Mode::BaseSun => {
            if !is_connected_base(g, &cert.x1) {
                return Err("X1 not a connected base".into());
            }
            match sun_shape(g, &cert.f).map_err(|e| e.to_string())? {
                Some(s) if !s.is_degenerate() && s.len() >= 3 => {}
                _ => return Err("F not a negative sun".into()),
            }
            if !cert.f.is_subset(&cert.x1) {
                return Err("F not inside X1".into());
            }
            if closure != target {
                return Err("2-closure of X2 is not E - F".into());
            }
            if !is_edge_set_two_connected(g, &closure) {
                return Err("2-closure of X2 not 2-connected".into());
            }
            if is_edge_set_balanced(g, &cert.x2) {
                return Err("X2 balanced".into());
            }
        }
        Mode::General => {
            let unbalanced = !crate::graph::is_balanced(g);
            if !is_spanning_connected(g, &cert.x1) || (unbalanced && is_edge_set_balanced(g, &cert.x1)) {
                return Err("X1 contains no connected base".into());
            }
            if !cert.f.is_empty() && sun_shape(g, &cert.f).map_err(|e| e.to_string())?.is_none() {
                return Err("F neither empty nor a degenerate negative sun".into());
            }
            if closure != target {
                return Err("2-closure of X2 is not E - F".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let cert = PartitionCertificate {
            mode: Mode::BaseSun,
            x1: EdgeSet::from_edges(4, [0, 2]),
            x2: EdgeSet::from_edges(4, [1, 3]),
            f: EdgeSet::empty(4),
            assumed: true,
        };
        let text = cert.to_text();
        assert_eq!(text, "part base-sun\nX1: 0 2\nX2: 1 3\nF:\nflags: assumed-hypotheses\n");
        assert_eq!(PartitionCertificate::parse(&text, 4).unwrap(), cert);
        assert!(PartitionCertificate::parse("part nope\n", 4).is_err());
        assert!(PartitionCertificate::parse("part general\nX1: 9\nX2:\n", 4).is_err());
    }
}
