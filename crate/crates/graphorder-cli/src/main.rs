use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use graphorder::encodings::{decode, un, GraphCode};
use graphorder::fo::env::{builtin_corpus, load_corpus, Environment};
use graphorder::fo::eval::{free_variables, Evaluator};
use graphorder::graph::LabelledGraph;
use graphorder::orders::find_embedding;
use graphorder::fo::parser::parse;
use graphorder::harness::{self, Profile};
use graphorder::notation::parse_graph;
use graphorder::opres::{build_opres, recognize_opres};
use graphorder::{enumerate_universe, graph6, oracles, BigSequence, CanonicalGraph, OrderKind};

#[derive(Parser)]
#[command(name = "graphorder", version, about = "Graph orders, encodings and their first-order formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// subgraph
    S,
    /// induced subgraph
    I,
    /// minor
    M,
}

impl From<Kind> for OrderKind {
    fn from(k: Kind) -> OrderKind {
        match k {
            Kind::S => OrderKind::Subgraph,
            Kind::I => OrderKind::Induced,
            Kind::M => OrderKind::Minor,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the isomorphism types with at most N vertices
    Enumerate {
        n: usize,
        /// Print counts per vertex count only
        #[arg(long)]
        counts: bool,
        /// Also write the universe cache file here
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Compare graphs or print cover relations
    Order {
        #[command(subcommand)]
        op: OrderOp,
    },
    /// UN code of a graph
    Encode { graph: String },
    /// Graph with the given number representation
    Decode { code: String },
    /// Prime-exponent sequences
    Seq {
        #[command(subcommand)]
        op: SeqOp,
    },
    /// Registered predicate oracles
    Pred {
        #[command(subcommand)]
        op: PredOp,
    },
    /// Build or recognise o-presentations
    Opres {
        #[command(subcommand)]
        op: OpresOp,
    },
    /// Evaluate formulas of the corpus language
    Fo {
        #[command(subcommand)]
        op: FoOp,
    },
    /// Check corpus formulas against their oracles
    Verify {
        #[arg(long, default_value = "quick")]
        profile: String,
        /// Write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
        /// Leave wall-clock times out of the JSON report
        #[arg(long)]
        no_timing: bool,
        /// Check only these definitions, at their quick-profile bounds
        #[arg(long)]
        only: Vec<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Regression checks against the drawn examples
    Figures,
}

#[derive(Subcommand)]
enum OrderOp {
    /// Whether G <= H
    #[command(alias = "leq")]
    Check {
        #[arg(long, value_enum, default_value = "s")]
        kind: Kind,
        g: String,
        h: String,
    },
    /// Cover pairs among graphs with at most N vertices, one per line
    Hasse {
        #[arg(long, value_enum, default_value = "i")]
        kind: Kind,
        n: usize,
    },
    /// Comparability and cover tables of a universe as JSON
    Matrix {
        #[arg(long, value_enum, default_value = "i")]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PredOp {
    /// Decide a predicate, e.g. `pred eval csum "csum(2)" N2`; prints JSON
    Eval { name: String, args: Vec<String> },
    /// Names of the registered predicates
    List,
}

// Entries are given as `0,2,0,1,1` or as separate arguments.
#[derive(Subcommand)]
enum SeqOp {
    /// Pack entries into the product of prime powers
    Pack {
        #[arg(value_delimiter = ',', num_args = 0..)]
        entries: Vec<u64>,
    },
    /// Entries of a packed sequence
    Unpack { value: String },
    /// Apply f1
    F1 {
        #[arg(value_delimiter = ',', num_args = 0..)]
        entries: Vec<u64>,
    },
    /// Apply the inverse of f1
    F1Inv {
        #[arg(value_delimiter = ',', num_args = 0..)]
        entries: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum OpresOp {
    /// O-presentation of a graph; graph6 input keeps its own vertex order
    Build {
        graph: String,
        /// Label of each input vertex, a permutation of 1..n
        #[arg(long, value_delimiter = ',')]
        labelling: Vec<usize>,
    },
    /// Decode an o-presentation; prints JSON
    #[command(alias = "recognize")]
    Decode { graph: String },
}

#[derive(Subcommand)]
enum FoOp {
    /// Truth of a formula; graphs bind the free variables in order of appearance
    Eval {
        formula: String,
        graphs: Vec<String>,
        /// Explicit binding such as x=K3
        #[arg(long = "let", value_name = "VAR=GRAPH")]
        assign: Vec<String>,
        /// Universe bound
        #[arg(long, visible_alias = "n", default_value_t = 5)]
        universe: usize,
        #[arg(long, visible_alias = "corpus")]
        env: Option<PathBuf>,
    },
    /// All tuples of the universe satisfying a formula
    Extension {
        formula: String,
        /// Defaults to the number of free variables
        #[arg(long)]
        arity: Option<usize>,
        #[arg(long, visible_alias = "n", default_value_t = 4)]
        universe: usize,
        #[arg(long, visible_alias = "corpus")]
        env: Option<PathBuf>,
    },
    /// Parse and resolve a corpus file
    Check { corpus: PathBuf },
    /// List the definitions of the corpus
    List {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

fn graph(text: &str) -> Result<CanonicalGraph> {
    parse_graph(text).with_context(|| format!("reading graph {text:?}"))
}

fn g6(g: &CanonicalGraph) -> String {
    graph6::encode(g.repr())
}

/// Graph as typed, keeping the vertex order of graph6 input.
fn labelled(text: &str) -> Result<LabelledGraph> {
    match text.strip_prefix("g6:") {
        Some(code) => Ok(graph6::decode(code)?),
        None => Ok(graph(text)?.repr().clone()),
    }
}

fn labelled_edges(g: &LabelledGraph) -> Vec<[usize; 2]> {
    g.edges().iter().map(|&(u, v)| [u.min(v) + 1, u.max(v) + 1]).collect()
}

/// Evidence for a positive answer, where the predicate has a natural one.
fn witnesses(name: &str, gs: &[CanonicalGraph], result: bool) -> serde_json::Value {
    use serde_json::json;
    if !result {
        return json!([]);
    }
    match name {
        "leq_s" | "lt_s" | "cover_s" | "cover_se" | "cover_sv" => {
            match find_embedding(gs[0].repr(), gs[1].repr(), false) {
                Some(map) => json!([{ "embedding": map.iter().map(|v| v + 1).collect::<Vec<_>>() }]),
                None => json!([]),
            }
        }
        "Gt" | "psiOpres" | "psiEdgeOp" | "constructFromCycles" => match recognize_opres(&gs[0]) {
            Some(op) => json!([{ "n": op.base_order, "edges": labelled_edges(&op.labelled_base) }]),
            None => json!([]),
        },
        "countEdgesGadget" | "countEdgesGadgetP" => {
            json!([{ "components": gs[0].components().iter().map(g6).collect::<Vec<_>>() }])
        }
        "comp" | "maximalComp_s" | "maximalComp_i" | "maximumComp" => {
            json!([{ "components": gs[0].components().iter().map(g6).collect::<Vec<_>>() }])
        }
        _ => json!([]),
    }
}

fn corpus(path: &Option<PathBuf>) -> Result<Environment> {
    Ok(match path {
        Some(p) => load_corpus(p)?,
        None => builtin_corpus(),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate { n, counts, cache } => {
            let u = enumerate_universe(n)?;
            if let Some(path) = cache {
                let f = std::fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
                u.write_cache(std::io::BufWriter::new(f))?;
            }
            if counts {
                for (k, c) in u.counts_by_order().iter().enumerate() {
                    println!("{k}\t{c}");
                }
            } else {
                for g in u.members() {
                    println!("{}", g6(g));
                }
            }
        }
        Command::Order { op: OrderOp::Check { kind, g, h } } => {
            println!("{}", graphorder::orders::leq(kind.into(), &graph(&g)?, &graph(&h)?));
        }
        Command::Order { op: OrderOp::Hasse { kind, n } } => {
            let u = enumerate_universe(n)?;
            let m = u.matrix(kind.into());
            for j in 0..u.len() {
                for i in m.lower_covers(j) {
                    println!("{} {}", g6(u.get(i)), g6(u.get(j)));
                }
            }
        }
        Command::Order { op: OrderOp::Matrix { kind, n, out } } => {
            let u = enumerate_universe(n)?;
            let text = serde_json::to_string(&u.matrix(kind.into()).to_json(&u))? + "\n";
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Encode { graph: g } => println!("{}", un(&graph(&g)?)),
        Command::Decode { code } => {
            let code: GraphCode = code.parse()?;
            println!("{}", graph6::encode(&decode(&code)?));
        }
        Command::Seq { op } => {
            let show = |s: &BigSequence| {
                s.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            };
            let seq = |e: &[u64]| BigSequence::new(e.iter().map(|&v| v.into()).collect());
            match op {
                SeqOp::Pack { entries } => println!("{}", seq(&entries).packed()?),
                SeqOp::Unpack { value } => {
                    let v = value.parse().with_context(|| format!("reading {value:?}"))?;
                    println!("{}", show(&BigSequence::from_packed(&v)?));
                }
                SeqOp::F1 { entries } => println!("{}", show(&seq(&entries).f1())),
                SeqOp::F1Inv { entries } => println!("{}", show(&seq(&entries).f1_inv()?)),
            }
        }
        Command::Pred { op: PredOp::List } => {
            for name in oracles::NAMES {
                println!("{name}");
            }
        }
        Command::Pred { op: PredOp::Eval { name, args } } => {
            let entry = oracles::lookup(&name)?;
            if entry.arity != args.len() {
                bail!("{name} takes {} arguments, given {}", entry.arity, args.len());
            }
            let gs = args.iter().map(|a| graph(a)).collect::<Result<Vec<_>>>()?;
            let result = (entry.decide)(&gs);
            let out = serde_json::json!({
                "predicate": name,
                "args": gs.iter().map(g6).collect::<Vec<_>>(),
                "result": result,
                "witnesses": witnesses(&name, &gs, result),
            });
            println!("{out}");
        }
        Command::Opres { op: OpresOp::Build { graph: g, labelling } } => {
            let base = labelled(&g)?;
            let base = if labelling.is_empty() {
                base
            } else {
                let n = base.n();
                let mut seen = vec![false; n];
                for &l in &labelling {
                    if l == 0 || l > n || std::mem::replace(&mut seen[l - 1], true) {
                        bail!("labelling must be a permutation of 1..{n}");
                    }
                }
                if labelling.len() != n {
                    bail!("labelling must be a permutation of 1..{n}");
                }
                let perm: Vec<usize> = labelling.iter().map(|l| l - 1).collect();
                base.permuted(&perm)
            };
            let op = build_opres(&base)?;
            println!("{}", g6(&op.total));
        }
        Command::Opres { op: OpresOp::Decode { graph: g } } => match recognize_opres(&graph(&g)?) {
            Some(op) => println!("{}", serde_json::json!({ "n": op.base_order, "edges": labelled_edges(&op.labelled_base) })),
            None => {
                println!("{}", serde_json::json!({ "n": null, "edges": null }));
                return Ok(ExitCode::FAILURE);
            }
        },
        Command::Fo { op: FoOp::Eval { formula, graphs, assign, universe, env: c } } => {
            let env = corpus(&c)?;
            let u = enumerate_universe(universe)?;
            let ev = Evaluator::new(&env, &u)?;
            let f = parse(&formula)?;
            let mut assignment = assign
                .iter()
                .map(|a| {
                    let (v, g) = a.split_once('=').context("expected VAR=GRAPH")?;
                    Ok((v.trim().to_string(), graph(g.trim())?))
                })
                .collect::<Result<Vec<_>>>()?;
            let bound: Vec<String> = assignment.iter().map(|(v, _)| v.clone()).collect();
            let mut free = free_variables(&f, &env).into_iter().filter(|v| !bound.contains(v));
            for g in &graphs {
                let v = free.next().with_context(|| format!("no free variable left for {g}"))?;
                assignment.push((v, graph(g)?));
            }
            let t = ev.evaluate(&f, &assignment)?;
            println!("{}{}", t.value, if t.truncated { " (truncated)" } else { "" });
        }
        Command::Fo { op: FoOp::Extension { formula, arity, universe, env: c } } => {
            let env = corpus(&c)?;
            let u = enumerate_universe(universe)?;
            let ev = Evaluator::new(&env, &u)?;
            let f = parse(&formula)?;
            let arity = arity.unwrap_or_else(|| free_variables(&f, &env).len());
            let n = universe;
            let ext = ev.extension(&f, arity)?;
            for t in &ext.tuples {
                println!("{}", t.iter().map(g6).collect::<Vec<_>>().join(" "));
            }
            if ext.truncated {
                eprintln!("note: some values were truncated by U_{n}");
            }
        }
        Command::Fo { op: FoOp::Check { corpus: c } } => {
            let env = load_corpus(&c)?;
            println!("{} definitions", env.len());
        }
        Command::Fo { op: FoOp::List { corpus: c } } => {
            for d in corpus(&c)?.definitions() {
                println!("{}({}) := {}", d.name, d.params.join(", "), d.body);
            }
        }
        Command::Verify { profile, json, no_timing, only, corpus: c } => {
            let profile: Profile = profile.parse()?;
            let text = match &c {
                Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
                None => graphorder::fo::env::CORPUS.to_string(),
            };
            let env = Environment::parse_corpus(&text)?;
            let report = if only.is_empty() {
                harness::run_suite(&env, &text, profile)?
            } else {
                let us = harness::Universes::new();
                let h = harness::Harness::new(&env, &us);
                let mut reports = Vec::new();
                for name in &only {
                    let def = env.get(name).with_context(|| format!("unknown definition {name}"))?;
                    let (n, m, _) = harness::plan(def, profile, harness::universe_len);
                    reports.push(h.conformance(name, None, n, m)?);
                }
                let passed = reports.iter().all(|r| r.outcome.ok());
                harness::SuiteReport {
                    schema: harness::SCHEMA,
                    profile,
                    corpus: harness::corpus_fingerprint(&text),
                    reports,
                    figures: Vec::new(),
                    passed,
                }
            };
            for r in &report.reports {
                println!("{}", r.summary());
            }
            for f in &report.figures {
                println!("{:<22} {}  {}", f.id, if f.passed { "ok" } else { "FAIL" }, f.detail);
            }
            if let Some(path) = json {
                let v = report.to_json(!no_timing);
                std::fs::write(&path, serde_json::to_string_pretty(&v)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{}", if report.passed { "passed" } else { "FAILED" });
            if !report.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Figures => {
            let checks = harness::figure_regressions();
            for f in &checks {
                println!("{:<18} {:<5} {}  ({})", f.id, if f.passed { "ok" } else { "FAIL" }, f.description, f.detail);
            }
            if !checks.iter().all(|f| f.passed) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
