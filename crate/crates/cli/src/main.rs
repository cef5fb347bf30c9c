use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kohnert::families::{checkered, key};
use kohnert::io::{self, Format};
use kohnert::report::{analyze, analyze_generic};
use kohnert::verify::{self, VerifyConfig};
use kohnert::{kd_closure, AnalysisReport, Composition, Diagram, Error, Family, Limits, Variant};
use serde_json::json;

#[derive(Parser)]
#[command(name = "kohnert", version, about = "Kohnert posets of cell diagrams: closures, Hasse diagrams, bounded and ranked verdicts")]
struct Cli {
    /// Input diagram format.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_format)]
    format: Format,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Out::Text)]
    out: Out,

    /// Largest closure to enumerate before giving up.
    #[arg(long, global = true, env = "KOHNERT_NODE_CAP", default_value_t = Limits::default().node_cap)]
    node_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Auto,
    #[value(name = "one-col")]
    OneCol,
    TwoRow,
    Key,
    Checkered,
    Generic,
}

impl FamilyArg {
    fn family(self) -> Option<Family> {
        match self {
            FamilyArg::Auto => None,
            FamilyArg::OneCol => Some(Family::OnePerColumn),
            FamilyArg::TwoRow => Some(Family::TwoRow),
            FamilyArg::Key => Some(Family::Key),
            FamilyArg::Checkered => Some(Family::Checkered),
            FamilyArg::Generic => Some(Family::Generic),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate KD(D) and report its size.
    Closure {
        #[command(flatten)]
        input: InputArgs,
        /// Print every diagram of the closure.
        #[arg(long)]
        list: bool,
    },
    /// Decide whether the Kohnert poset is bounded and ranked.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Enumerate the poset even when a closed form applies.
        #[arg(long)]
        force_generic: bool,
        /// Family to analyze with; `auto` picks the first match.
        #[arg(long, value_enum, default_value_t = FamilyArg::Auto)]
        family: FamilyArg,
    },
    /// Print the Hasse diagram (cover relations).
    Hasse {
        #[command(flatten)]
        input: InputArgs,
        /// Shorthand for `--out dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Cross-check the closed-form results by brute force.
    Verify {
        /// Claim ids, or `all`.
        claims: Vec<String>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
        /// Also report unranked grid diagrams without a known obstruction.
        #[arg(long)]
        probe: bool,
    },
    /// Print the Kohnert polynomial.
    Poly {
        #[command(flatten)]
        input: InputArgs,
        /// Shorthand for `--out json`.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Diagram: a file path, `-` for stdin, or the diagram text itself.
    input: Option<String>,
    /// Use the key diagram of a weak composition, e.g. `0,3,4,2,3`.
    #[arg(long, conflicts_with_all = ["input", "checkered"], value_parser = parse_key)]
    key: Option<Composition>,
    /// Use a checkered diagram, given as `n,variant` with variant 1 or 2.
    #[arg(long, conflicts_with = "input", value_parser = parse_checkered)]
    checkered: Option<(u32, Variant)>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_key(s: &str) -> Result<Composition, String> {
    io::parse_composition(s).map_err(|e| e.to_string())
}

fn parse_checkered(s: &str) -> Result<(u32, Variant), String> {
    let (n, v) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `n,variant`, got `{s}`"))?;
    let n: u32 = n.trim().parse().map_err(|_| format!("bad size `{n}`"))?;
    if n == 0 {
        return Err("size must be positive".into());
    }
    Ok((n, v.trim().parse()?))
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Where a diagram came from, so family analyzers can use the exact input.
enum Source {
    Diagram(Diagram),
    Key(Composition),
    Checkered(u32, Variant),
}

impl Source {
    fn diagram(&self) -> Diagram {
        match self {
            Source::Diagram(d) => d.clone(),
            Source::Key(a) => key::key_diagram(a),
            Source::Checkered(n, v) => checkered::checkered(*n, *v),
        }
    }
}

fn read_source(input: &InputArgs, format: Format) -> Result<Source, Failure> {
    if let Some(a) = &input.key {
        return Ok(Source::Key(a.clone()));
    }
    if let Some((n, v)) = input.checkered {
        return Ok(Source::Checkered(n, v));
    }
    let arg = input
        .input
        .as_deref()
        .ok_or_else(|| Failure::Usage("no diagram given (pass a file, `-`, inline text, --key or --checkered)".into()))?;
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        buf
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("reading {arg}: {e}")))?
    } else {
        arg.replace("\\n", "\n")
    };
    Ok(Source::Diagram(io::parse_diagram(&text, format)?))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = Limits::with_node_cap(cli.node_cap);
    if cli.node_cap == 0 {
        return Err(Failure::Usage("--node-cap must be positive".into()));
    }
    let format = cli.format;
    match cli.command {
        Command::Closure { input, list } => {
            let d = read_source(&input, format)?.diagram();
            limits.check(&d)?;
            let p = kd_closure(&d, &limits)?;
            match cli.out {
                Out::Json => {
                    let v = json!({
                        "diagram": d,
                        "count": p.len(),
                        "diagrams": p.nodes(),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
                _ => {
                    let n = p.len();
                    println!("{n} diagram{}", if n == 1 { "" } else { "s" });
                    if list {
                        let shown = if format == Format::Auto { Format::Pairs } else { format };
                        for x in p.nodes() {
                            if shown == Format::Grid {
                                println!();
                            }
                            print!("{}", ensure_newline(io::render_diagram(x, shown)));
                        }
                    }
                }
            }
        }
        Command::Analyze { input, force_generic, family } => {
            let source = read_source(&input, format)?;
            let d = source.diagram();
            limits.check(&d)?;
            let report = if force_generic || family == FamilyArg::Generic {
                analyze_generic(&d, &limits)?
            } else {
                match (&source, family.family()) {
                    (Source::Key(a), None | Some(Family::Key)) => key::key_report(a),
                    (Source::Checkered(n, v), None | Some(Family::Checkered)) => {
                        checkered::checkered_report(*n, *v)
                    }
                    (_, fam) => analyze(&d, fam, &limits)?,
                }
            };
            match cli.out {
                Out::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                _ => print!("{}", render_report(&report)),
            }
        }
        Command::Hasse { input, dot } => {
            let d = read_source(&input, format)?.diagram();
            limits.check(&d)?;
            let p = kd_closure(&d, &limits)?;
            let cert = p.is_ranked();
            let out = if dot { Out::Dot } else { cli.out };
            match out {
                Out::Dot => print!("{}", io::to_dot(&p, Some(&cert))),
                Out::Json => {
                    let v = json!({
                        "nodes": p.nodes(),
                        "edges": p.cover_edges(),
                        "ranked": cert.ranked,
                        "ranks": cert.ranks,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
                Out::Text => {
                    let edges = p.cover_edges();
                    println!("{} nodes, {} cover edges", p.len(), edges.len());
                    for (u, v) in edges {
                        println!("{} > {}", p.node(u), p.node(v));
                    }
                }
            }
        }
        Command::Verify { claims, list, probe } => {
            if list {
                for (id, about) in verify::CLAIMS {
                    println!("{id:<40} {about}");
                }
                return Ok(());
            }
            let cfg = VerifyConfig {
                limits,
                ..VerifyConfig::default()
            };
            let mut outcomes = verify::check_claims(&claims, &cfg).map_err(|e| match e {
                Error::UnknownClaim(id) => Failure::Usage(format!("unknown claim id `{id}` (see --list)")),
                e => Failure::Lib(e),
            })?;
            if probe {
                outcomes.push(verify::obstruction_gap_probe(&cfg.grid, &limits)?);
            }
            match cli.out {
                Out::Json => println!("{}", serde_json::to_string_pretty(&outcomes).unwrap()),
                _ => {
                    for o in &outcomes {
                        println!("{o}");
                    }
                    let failed = outcomes.iter().filter(|o| !o.passed).count();
                    println!("{} claims, {failed} failed", outcomes.len());
                }
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err(Failure::Verify);
            }
        }
        Command::Poly { input, json } => {
            let d = read_source(&input, format)?.diagram();
            limits.check(&d)?;
            let poly = kohnert::polynomial::kohnert_polynomial(&d, &limits)?;
            if json || cli.out == Out::Json {
                println!("{}", serde_json::to_string_pretty(&poly.to_json()).unwrap());
            } else {
                println!("{poly}");
            }
        }
    }
    Ok(())
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn render_report(r: &AnalysisReport) -> String {
    let mut lines = vec![
        format!("method: {}", r.method),
        format!("diagram: {}", r.diagram),
    ];
    if r.normalized {
        lines.push("normalized: empty columns removed".into());
    }
    if let Some(n) = r.node_count {
        lines.push(format!("nodes: {n}"));
    }
    lines.push(format!("min_count: {}", r.min_count));
    lines.push(format!("bounded: {}", r.bounded));
    lines.push(format!("ranked: {}", r.ranked));
    lines.push(format!("b: {}", r.b_value));
    if let Some(rank) = r.root_rank {
        lines.push(format!("root rank: {rank} (rank function rowsum - b)"));
    }
    if let Some(mins) = &r.minimal_elements {
        for m in mins {
            lines.push(format!("minimal: {m}"));
        }
    }
    if let Some(cert) = &r.rank_certificate {
        if let Some(w) = &cert.witness {
            lines.push(format!("not ranked: {}", serde_json::to_string(w).unwrap()));
        }
    }
    if let Some(w) = &r.obstruction {
        let params: Vec<String> = w.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        lines.push(format!(
            "obstruction: {} in {} ({})",
            serde_json::to_value(w.kind).unwrap().as_str().unwrap_or("?"),
            w.diagram,
            params.join(", ")
        ));
    }
    if let Some(dec) = &r.decomposition {
        let parts: Vec<String> = dec
            .parts
            .iter()
            .map(|p| format!("{} type {}", Composition::new(p.entries.clone()), p.kind.name()))
            .collect();
        lines.push(format!("decomposition: {}", parts.join(" | ")));
    }
    for note in &r.notes {
        lines.push(format!("note: {note}"));
    }
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}
