//! `sg`: checks, decompositions, flow constructions and exhaustive searches on signed graphs.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 input error,
//! 3 size limit reached.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sgflow::decompose::{decompose_base_sun, decompose_general, decompose_tree_2base, verify_partition, PartitionCertificate};
use sgflow::duality::{k6_projective, oriented_dual, EmbeddedGraph, FaceChoice};
use sgflow::flows::{connect, verify_avoidance, AvoidanceCertificate, ConnectOutcome, Hints};
use sgflow::graph::{
    balance, cyclic_edge_connectivity, edge_connectivity, is_k_connected, parse_graph, write_graph,
    is_two_unbalanced, single_negative_edge, Balance, EdgeSet, Orientation, Sign, SignedGraph,
};
use sgflow::group::{AbelianGroup, EdgeMap};
use sgflow::oracle::{has_nz_a_flow, has_nz_k_flow, is_a_connected, is_a_connected_sampled, Connectivity};
use sgflow::structures::{find_peripheral_cycle, k_closure_trace, PeripheralRequest};
use sgflow::{generators, Error, Limits};

#[derive(Parser)]
#[command(name = "sg", version, about = "Flows and group connectivity of signed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Vertex ceiling for exhaustive routines.
    #[arg(long, default_value_t = 16)]
    max_vertices: usize,
    /// Edge ceiling for exhaustive routines.
    #[arg(long, default_value_t = 32)]
    max_edges: usize,
}

impl From<LimitArgs> for Limits {
    fn from(l: LimitArgs) -> Limits {
        Limits { max_vertices: l.max_vertices, max_edges: l.max_edges }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks; exit 1 when the property fails.
    Check {
        what: CheckKind,
        /// Graph file; standard input when omitted or `-`.
        file: Option<String>,
    },
    /// Print a named graph, or the projective embedding of K6.
    Gen {
        name: GenName,
        /// Cycle length for `negsun`.
        n: Option<usize>,
    },
    /// The k-closure of a seed set, with the absorbed cycles.
    Closure {
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Comma-separated 0-based edge indices.
        #[arg(long, default_value = "")]
        seed_edges: String,
        file: Option<String>,
    },
    /// Edge partitions of a cubic graph; prints a partition certificate.
    Decompose {
        mode: DecomposeMode,
        /// Skip the exhaustive hypothesis scan of the base-sun and general modes.
        #[arg(long)]
        assume: bool,
        #[command(flatten)]
        limits: LimitArgs,
        file: Option<String>,
    },
    /// A flow avoiding a forbidden map; prints an avoidance certificate.
    Connect {
        #[arg(long)]
        group: String,
        /// Forbidden values, one `<edge> <coords>` line per edge; zero when omitted.
        #[arg(long)]
        forbidden: Option<String>,
        /// `projective:EMBFILE`, an embedding whose dual is the graph.
        #[arg(long)]
        hint: Option<String>,
        #[command(flatten)]
        limits: LimitArgs,
        file: Option<String>,
    },
    /// Exhaustive or sampled searches.
    Oracle {
        query: OracleQuery,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        k: Option<i64>,
        /// Exact verdict (the default).
        #[arg(long, conflicts_with = "samples")]
        exact: bool,
        /// Random boundaries and forbidden maps to try instead of the exact check.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        limits: LimitArgs,
        file: Option<String>,
    },
    /// The oriented dual of an embedding, every edge directed from its end 0 and every
    /// face in its traced direction.
    Dual { file: Option<String> },
    /// Re-check an avoidance or partition certificate against a graph.
    Verify { cert: String, graph: String },
    /// The shortest peripheral cycle, optionally of a given sign.
    Peripheral {
        #[arg(long)]
        sign: Option<SignArg>,
        /// Also require the graph minus the cycle's edges to be unbalanced.
        #[arg(long)]
        unbalanced_rest: bool,
        file: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Balance,
    Unbalanced,
    Connectivity,
    CyclicConnectivity,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenName {
    PetersenPs,
    #[value(name = "petersen-2neg")]
    Petersen2Neg,
    Petersen,
    Negsun,
    K4Negtri,
    K6Projective,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeMode {
    #[value(name = "tree-2base")]
    Tree2Base,
    BaseSun,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuery {
    #[value(name = "a-connected")]
    AConnected,
    NzFlow,
    KFlow,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

/// A failed run and its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::DeskScale { .. } => 3,
            Error::Unsat(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn input(msg: impl std::fmt::Display) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

type Run = Result<u8, Failure>;

fn read(path: Option<&str>) -> Result<String, Failure> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| input(format!("reading standard input: {e}")))?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| input(format!("{p}: {e}"))),
    }
}

fn read_graph(path: Option<&str>) -> Result<SignedGraph, Failure> {
    let text = read(path)?;
    parse_graph(&text).map_err(|e| input(format!("{}: {e}", path.unwrap_or("<stdin>"))))
}

fn list(items: impl IntoIterator<Item = usize>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("sg: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Run {
    match command {
        Command::Check { what, file } => check(what, &read_graph(file.as_deref())?),
        Command::Gen { name, n } => gen(name, n),
        Command::Closure { k, seed_edges, file } => closure(k, &seed_edges, &read_graph(file.as_deref())?),
        Command::Decompose { mode, assume, limits, file } => {
            let g = read_graph(file.as_deref())?;
            let cert = match mode {
                DecomposeMode::Tree2Base => decompose_tree_2base(&g)?,
                DecomposeMode::BaseSun => decompose_base_sun(&g, assume, &limits.into())?,
                DecomposeMode::General => decompose_general(&g, assume)?,
            };
            verify_partition(&g, &cert).map_err(|r| input(format!("internal: certificate failed to verify: {r}")))?;
            print!("{}", cert.to_text());
            Ok(0)
        }
        Command::Connect { group, forbidden, hint, limits, file } => {
            connect_cmd(&group, forbidden.as_deref(), hint.as_deref(), limits.into(), file.as_deref())
        }
        Command::Oracle { query, group, k, exact: _, samples, seed, limits, file } => {
            oracle(query, group.as_deref(), k, samples, seed, &limits.into(), &read_graph(file.as_deref())?)
        }
        Command::Dual { file } => {
            let eg = EmbeddedGraph::parse(&read(file.as_deref())?)?;
            let dual = oriented_dual(&eg, &vec![1; eg.graph.edge_count()], &FaceChoice::default())?;
            eprintln!("{} faces", dual.faces.len());
            print!("{}", write_graph(&dual.graph));
            Ok(0)
        }
        Command::Verify { cert, graph } => verify(&read(Some(&cert))?, &read_graph(Some(&graph))?),
        Command::Peripheral { sign, unbalanced_rest, file } => {
            let g = read_graph(file.as_deref())?;
            let req = PeripheralRequest {
                sign: sign.map(|s| match s {
                    SignArg::Plus => Sign::Positive,
                    SignArg::Minus => Sign::Negative,
                }),
                avoid: None,
                unbalanced_rest,
            };
            let c = find_peripheral_cycle(&g, &req)?;
            println!("cycle {}", c.sign(&g)?);
            println!("vertices {}", list(c.vertices.iter().map(|v| v + 1)));
            println!("edges {}", list(c.edges.iter().copied()));
            Ok(0)
        }
    }
}

fn check(what: CheckKind, g: &SignedGraph) -> Run {
    Ok(match what {
        CheckKind::Balance => match balance(g) {
            Balance::Balanced { switching } => {
                println!("balanced");
                println!("switch {}", list((0..switching.len()).filter(|&v| switching[v]).map(|v| v + 1)));
                0
            }
            Balance::Unbalanced { witness } => {
                println!("unbalanced");
                println!("negative-cycle {}", list(witness.edges.iter().copied()));
                1
            }
        },
        CheckKind::Unbalanced => {
            if is_two_unbalanced(g) {
                println!("2-unbalanced");
                0
            } else {
                match single_negative_edge(g) {
                    Some(e) => println!("not 2-unbalanced: switching leaves edge {e} alone negative"),
                    None => println!("not 2-unbalanced: balanced"),
                }
                1
            }
        }
        CheckKind::Connectivity => {
            let edge = edge_connectivity(g);
            match edge {
                Some(k) => println!("edge-connectivity {k}"),
                None => println!("edge-connectivity infinite"),
            }
            let vertex3 = is_k_connected(g, 3);
            println!("3-connected {}", if vertex3 { "yes" } else { "no" });
            if edge.is_none_or(|k| k >= 3) {
                0
            } else {
                1
            }
        }
        CheckKind::CyclicConnectivity => {
            println!("cyclic-edge-connectivity {}", cyclic_edge_connectivity(g, g.edge_count()));
            0
        }
    })
}

fn gen(name: GenName, n: Option<usize>) -> Run {
    let g = match name {
        GenName::PetersenPs => generators::petersen_ps(),
        GenName::Petersen2Neg => generators::petersen_two_negative(),
        GenName::Petersen => generators::petersen(),
        GenName::Negsun => generators::negative_sun(n.ok_or_else(|| input("negsun needs a cycle length"))?)?,
        GenName::K4Negtri => generators::k4_negative_triangle(),
        GenName::K6Projective => {
            print!("{}", k6_projective().to_text());
            return Ok(0);
        }
    };
    print!("{}", write_graph(&g));
    Ok(0)
}

fn closure(k: usize, seed: &str, g: &SignedGraph) -> Run {
    let m = g.edge_count();
    let mut set = EdgeSet::empty(m);
    for tok in seed.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let e: usize = tok.parse().map_err(|_| input(format!("bad edge `{tok}` in --seed-edges")))?;
        if e >= m {
            return Err(input(format!("edge {e} out of range (the graph has {m})")));
        }
        set.insert(e);
    }
    let trace = k_closure_trace(g, &set, k)?;
    println!("closure {}", trace.set);
    for step in &trace.steps {
        println!("step cycle {} added {}", list(step.cycle.edges.iter().copied()), list(step.added.iter().copied()));
    }
    Ok(if trace.set.len() == m { 0 } else { 1 })
}

fn connect_cmd(group: &str, forbidden: Option<&str>, hint: Option<&str>, limits: Limits, file: Option<&str>) -> Run {
    let g = read_graph(file)?;
    let a = AbelianGroup::parse(group).map_err(|e| input(format!("--group: {e}")))?;
    let fbar = match forbidden {
        Some(p) => EdgeMap::parse(&read(Some(p))?, &a, g.edge_count()).map_err(|e| input(format!("{p}: {e}")))?,
        None => EdgeMap::zero(&a, g.edge_count()),
    };
    let mut hints = Hints::default();
    if let Some(h) = hint {
        let path = h.strip_prefix("projective:").ok_or_else(|| input("--hint must be `projective:EMBFILE`"))?;
        let eg = EmbeddedGraph::parse(&read(Some(path))?).map_err(|e| input(format!("{path}: {e}")))?;
        hints.projective = Some(eg);
    }
    let tau = Orientation::default_for(&g);
    let (outcome, attempts) = connect(&g, &tau, &fbar, &hints, &limits)?;
    for (s, why) in &attempts.declined {
        eprintln!("{s}: {why}");
    }
    match outcome {
        ConnectOutcome::Flow(cert) => {
            print!("{}", cert.to_text());
            Ok(0)
        }
        ConnectOutcome::Unsat { fbar } => {
            println!("unsat {a}");
            println!("fbar {}", fbar.values.iter().map(|&x| a.format_element(x)).collect::<Vec<_>>().join(" "));
            Ok(1)
        }
    }
}

fn oracle(query: OracleQuery, group: Option<&str>, k: Option<i64>, samples: Option<usize>, seed: u64, limits: &Limits, g: &SignedGraph) -> Run {
    let group = || -> Result<AbelianGroup, Failure> {
        let spec = group.ok_or_else(|| input("this query needs --group"))?;
        AbelianGroup::parse(spec).map_err(|e| input(format!("--group: {e}")))
    };
    let tau_line = |t: &Orientation| t.values().iter().map(|&x| if x > 0 { "+" } else { "-" }).collect::<Vec<_>>().join(" ");
    match query {
        OracleQuery::AConnected => {
            let a = group()?;
            let verdict = match samples {
                Some(n) => is_a_connected_sampled(g, &a, n, seed, limits)?,
                None => is_a_connected(g, &a, limits)?,
            };
            match verdict {
                Connectivity::Yes => {
                    println!("connected {a}");
                    Ok(0)
                }
                Connectivity::SampledYes { samples, seed } => {
                    println!("connected-on-samples {a} samples {samples} seed {seed}");
                    Ok(0)
                }
                Connectivity::No { beta, fbar } => {
                    println!("not-connected {a}");
                    println!("beta {}", beta.values.iter().map(|&x| a.format_element(x)).collect::<Vec<_>>().join(" "));
                    if let Some(f) = fbar {
                        println!("fbar {}", f.values.iter().map(|&x| a.format_element(x)).collect::<Vec<_>>().join(" "));
                    }
                    Ok(1)
                }
            }
        }
        OracleQuery::NzFlow => {
            let a = group()?;
            match has_nz_a_flow(g, &a, limits)? {
                Some((tau, f)) => {
                    println!("flow {a}");
                    println!("tau {}", tau_line(&tau));
                    println!("values {}", f.values.iter().map(|&x| a.format_element(x)).collect::<Vec<_>>().join(" "));
                    Ok(0)
                }
                None => {
                    println!("no nowhere-zero {a}-flow");
                    Ok(1)
                }
            }
        }
        OracleQuery::KFlow => {
            let k = k.ok_or_else(|| input("k-flow needs --k"))?;
            match has_nz_k_flow(g, k, limits)? {
                Some((tau, f)) => {
                    println!("flow {k}");
                    println!("tau {}", tau_line(&tau));
                    println!("values {}", list_i64(&f.values));
                    Ok(0)
                }
                None => {
                    println!("no nowhere-zero {k}-flow");
                    Ok(1)
                }
            }
        }
    }
}

fn list_i64(xs: &[i64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn verify(cert: &str, g: &SignedGraph) -> Run {
    let head = cert.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    let verdict = if head.starts_with("avoid") {
        let c = AvoidanceCertificate::parse(cert, g)?;
        verify_avoidance(g, &c).map(|()| format!("valid {} certificate over {}", c.strategy, c.flow.group))
    } else if head.starts_with("part") {
        let c = PartitionCertificate::parse(cert, g.edge_count())?;
        verify_partition(g, &c).map(|()| format!("valid {} partition", c.mode))
    } else {
        return Err(input("unknown certificate kind: expected `avoid` or `part`"));
    };
    match verdict {
        Ok(msg) => {
            println!("{msg}");
            Ok(0)
        }
        Err(why) => {
            println!("invalid: {why}");
            Ok(1)
        }
    }
}
