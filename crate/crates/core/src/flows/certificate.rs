use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{io, Orientation, SignedGraph};
use crate::group::{is_flow, AbelianGroup, EdgeMap, IntegerEdgeMap};

/// Which constructor produced a flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Composite,
    Prime,
    Projective,
    Oracle,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Composite => "composite",
            Strategy::Prime => "prime",
            Strategy::Projective => "projective",
            Strategy::Oracle => "oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Strategy> {
        [Strategy::Composite, Strategy::Prime, Strategy::Projective, Strategy::Oracle].into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named intermediate result kept for replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    /// A group-valued edge map such as the two partial flows of a construction.
    Map(String, EdgeMap),
    /// An integer edge map, e.g. the 3-flow added in the prime case.
    Integers(String, IntegerEdgeMap),
    /// Free text: edge lists, the special edge, the chosen sign.
    Note(String, String),
}

impl Artifact {
    pub fn key(&self) -> &str {
        match self {
            Artifact::Map(k, _) | Artifact::Integers(k, _) | Artifact::Note(k, _) => k,
        }
    }
}

/// A flow avoiding a forbidden map, with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceCertificate {
    pub strategy: Strategy,
    pub orientation: Orientation,
    pub flow: EdgeMap,
    pub fbar: EdgeMap,
    pub artifacts: Vec<Artifact>,
}

fn values_line(a: &AbelianGroup, f: &EdgeMap) -> String {
    f.values.iter().map(|&x| format!(" {}", a.format_element(x))).collect()
}

impl AvoidanceCertificate {
    pub fn map(&self, key: &str) -> Option<&EdgeMap> {
        self.artifacts.iter().find_map(|a| match a {
            Artifact::Map(k, m) if k == key => Some(m),
            _ => None,
        })
    }

    pub fn integers(&self, key: &str) -> Option<&IntegerEdgeMap> {
        self.artifacts.iter().find_map(|a| match a {
            Artifact::Integers(k, m) if k == key => Some(m),
            _ => None,
        })
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.artifacts.iter().find_map(|a| match a {
            Artifact::Note(k, m) if k == key => Some(m.as_str()),
            _ => None,
        })
    }

    /// Text form:
    ///
    /// ```text
    /// avoid <strategy> <group>
    /// tau <+|- per half-edge>
    /// flow <value per edge>
    /// fbar <value per edge>
    /// map <key> <value per edge>
    /// int <key> <integer per edge>
    /// note <key> <text>
    /// ```
    pub fn to_text(&self) -> String {
        let a = &self.flow.group;
        let tau: String = self.orientation.values().iter().map(|&t| if t > 0 { " +" } else { " -" }).collect();
        let mut s = format!("avoid {} {a}\ntau{tau}\nflow{}\nfbar{}\n", self.strategy, values_line(a, &self.flow), values_line(a, &self.fbar));
        for art in &self.artifacts {
            match art {
                Artifact::Map(k, m) => s += &format!("map {k}{}\n", values_line(a, m)),
                Artifact::Integers(k, m) => {
                    s += &format!("int {k}{}\n", m.values.iter().map(|x| format!(" {x}")).collect::<String>())
                }
                Artifact::Note(k, t) => s += &format!("note {k} {t}\n"),
            }
        }
        s.lines().map(|l| l.trim_end().to_string() + "\n").collect()
    }

    pub fn parse(text: &str, g: &SignedGraph) -> Result<AvoidanceCertificate> {
        let m = g.edge_count();
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let Some(&(ln, head)) = lines.first() else {
            return Err(Error::parse(1, "empty certificate"));
        };
        let mut it = head.split_whitespace();
        if it.next() != Some("avoid") {
            return Err(Error::parse(ln, "expected `avoid <strategy> <group>`"));
        }
        let strategy = it
            .next()
            .and_then(Strategy::from_name)
            .ok_or_else(|| Error::parse(ln, "unknown strategy"))?;
        let a = AbelianGroup::parse(it.next().ok_or_else(|| Error::parse(ln, "missing group"))?)
            .map_err(|e| Error::parse(ln, e.to_string()))?;
        let values = |ln: usize, toks: &[&str]| -> Result<EdgeMap> {
            if toks.len() != m {
                return Err(Error::parse(ln, format!("expected {m} values, found {}", toks.len())));
            }
            let values = toks
                .iter()
                .map(|t| a.parse_element(t).map_err(|e| Error::parse(ln, e.to_string())))
                .collect::<Result<_>>()?;
            Ok(EdgeMap { group: a.clone(), values })
        };
        let (mut tau, mut flow, mut fbar) = (None, None, None);
        let mut artifacts = Vec::new();
        for &(ln, line) in &lines[1..] {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "tau" => {
                    let t = toks[1..]
                        .iter()
                        .map(|t| match *t {
                            "+" => Ok(1),
                            "-" => Ok(-1),
                            _ => Err(Error::parse(ln, format!("bad direction `{t}`"))),
                        })
                        .collect::<Result<Vec<i8>>>()?;
                    tau = Some(Orientation::from_values(g, t).map_err(|e| Error::parse(ln, e.to_string()))?);
                }
                "flow" => flow = Some(values(ln, &toks[1..])?),
                "fbar" => fbar = Some(values(ln, &toks[1..])?),
                "map" if toks.len() >= 2 => artifacts.push(Artifact::Map(toks[1].into(), values(ln, &toks[2..])?)),
                "int" if toks.len() >= 2 => {
                    let v = toks[2..].iter().map(|t| io::parse_i64(t, ln, "an integer")).collect::<Result<Vec<i64>>>()?;
                    if v.len() != m {
                        return Err(Error::parse(ln, format!("expected {m} integers")));
                    }
                    artifacts.push(Artifact::Integers(toks[1].into(), IntegerEdgeMap { values: v }));
                }
                "note" if toks.len() >= 2 => artifacts.push(Artifact::Note(toks[1].into(), toks[2..].join(" "))),
                other => return Err(Error::parse(ln, format!("unknown line `{other}`"))),
            }
        }
        let missing = |k: &str| Error::parse(ln, format!("missing `{k}` line"));
        Ok(AvoidanceCertificate {
            strategy,
            orientation: tau.ok_or_else(|| missing("tau"))?,
            flow: flow.ok_or_else(|| missing("flow"))?,
            fbar: fbar.ok_or_else(|| missing("fbar"))?,
            artifacts,
        })
    }
}

/// Re-checks a certificate: a flow under its orientation avoiding `fbar` on every edge,
/// and agreeing with whichever replay artifacts it carries.
pub fn verify_avoidance(g: &SignedGraph, cert: &AvoidanceCertificate) -> std::result::Result<(), String> {
    let m = g.edge_count();
    let a = &cert.flow.group;
    cert.orientation.validate(g).map_err(|e| e.to_string())?;
    if cert.flow.len() != m || cert.fbar.len() != m || cert.fbar.group != *a {
        return Err("maps do not match the graph".into());
    }
    if !is_flow(g, &cert.orientation, &cert.flow).map_err(|e| e.to_string())? {
        return Err("not a flow".into());
    }
    if let Some(e) = g.edges().find(|&e| cert.flow.get(e) == cert.fbar.get(e)) {
        return Err(format!("edge {e} carries its forbidden value"));
    }
    match cert.strategy {
        Strategy::Composite => {
            if let (Some(p1), Some(p2)) = (cert.map("phi1"), cert.map("phi2")) {
                if p1.add(p2).map_err(|e| e.to_string())? != cert.flow {
                    return Err("flow is not phi1 + phi2".into());
                }
            }
        }
        Strategy::Prime => {
            if let (Some(p1), Some(psi), Some(sign)) = (cert.map("phi1"), cert.integers("psi"), cert.note("sign")) {
                let k = if sign == "-" { -3 } else { 3 };
                let rebuilt: Vec<_> = (0..m).map(|e| a.add(p1.get(e), a.from_int(k * psi.values[e]))).collect();
                if rebuilt != cert.flow.values {
                    return Err("flow is not phi1 + 3 psi".into());
                }
            }
        }
        Strategy::Projective | Strategy::Oracle => {}
    }
    Ok(())
}
