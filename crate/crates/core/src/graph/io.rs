//! The plain-text graph format:
//!
//! ```text
//! sg <n> <m>
//! e <u> <v> <+|->
//! ```
//!
//! Vertices are 1-based in the file, edges are numbered by their line order from 0.
//! Blank lines and lines starting with `#` are skipped.

use super::{Sign, SignedGraph};
use crate::error::{Error, Result};

/// Non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

pub(crate) fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

pub(crate) fn parse_i64(tok: &str, line: usize, what: &str) -> Result<i64> {
    tok.parse().map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

pub(crate) fn parse_sign(tok: &str, line: usize) -> Result<Sign> {
    match tok {
        "+" => Ok(Sign::Positive),
        "-" => Ok(Sign::Negative),
        _ => Err(Error::parse(line, format!("expected `+` or `-`, found `{tok}`"))),
    }
}

/// Parses a 1-based vertex reference into a 0-based index below `n`.
pub(crate) fn parse_vertex(tok: &str, line: usize, n: usize) -> Result<usize> {
    let v = parse_usize(tok, line, "a vertex number")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} is outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    if header.len() != 3 || header[0] != "sg" {
        return Err(Error::parse(hl, "expected header `sg <n> <m>`"));
    }
    let n = parse_usize(header[1], hl, "a vertex count")?;
    let m = parse_usize(header[2], hl, "an edge count")?;
    let mut g = SignedGraph::new(n);
    let mut last = hl;
    for (ln, toks) in lines {
        last = ln;
        if toks[0] != "e" || toks.len() != 4 {
            return Err(Error::parse(ln, "expected `e <u> <v> <+|->`"));
        }
        let u = parse_vertex(toks[1], ln, n)?;
        let v = parse_vertex(toks[2], ln, n)?;
        let s = parse_sign(toks[3], ln)?;
        if g.edge_count() == m {
            return Err(Error::parse(ln, format!("more than the declared {m} edges")));
        }
        g.add_edge(u, v, s)?;
    }
    if g.edge_count() != m {
        return Err(Error::parse(last, format!("declared {m} edges, found {}", g.edge_count())));
    }
    Ok(g)
}

pub fn write_graph(g: &SignedGraph) -> String {
    let mut out = format!("sg {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        out.push_str(&format!("e {} {} {}\n", a + 1, b + 1, g.sign(e)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# triangle\nsg 3 4\ne 1 2 +\ne 2 3 -\n\ne 3 1 +\ne 2 2 -\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_loop(3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_graph("sg 2 1\ne 1 3 +\n").unwrap_err(),
            Error::Parse { line: 2, msg: "vertex 3 is outside 1..=2".into() }
        );
        assert!(matches!(parse_graph("sg 2 2\ne 1 2 +\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("sg 2 1\ne 1 2 *\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("graph\n"), Err(Error::Parse { line: 1, .. })));
    }
}
