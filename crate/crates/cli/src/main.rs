use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sepgraph::context::{
    beta, bridges, build_from_word, enumerate_k_generators, Context, GeneratorAlphabet,
    ReachabilityType,
};
use sepgraph::decomp::{
    dealternate, pathwidth_exact_frame, two_bridge_decompose, DecompError, FactorKind, Frame,
    PathDecomposition,
};
use sepgraph::graph::PortGraph;
use sepgraph::logic::{eval_on_ports, parse_formula};
use sepgraph::monoid::oracles::Oracle;
use sepgraph::monoid::{
    audit_well_defined, beta_recognizer, certify_non_star_free, classify_infix_classes,
    decide_aperiodic_mod_reachability, syntactic_quotient, verify_witness, vertex_count_recognizer,
    Audit, Outcome, RecognizerFile,
};
use sepgraph::starfree::{compile_formula, member, parse_expr};
use sepgraph::words::encode_word;

#[derive(Parser)]
#[command(
    name = "sepgraph",
    version,
    about = "Separator logic and the pathwidth context algebra"
)]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a separator-logic sentence on a graph; free variables x1..xk name the ports.
    EvalFormula {
        graph: PathBuf,
        /// Formula text, or a file containing it.
        formula: String,
    },
    /// Test membership of a graph in a star-free expression.
    EvalExpr {
        graph: PathBuf,
        /// Expression text, or a file containing it.
        expr: String,
    },
    /// Compile a formula into an equivalent star-free expression.
    Compile {
        formula: String,
        #[arg(long)]
        arity: usize,
    },
    /// Reachability type of a context.
    Beta { context: PathBuf },
    /// Bridges of a context.
    Bridges { context: PathBuf },
    /// Exact pathwidth of a graph or context, with an optimal decomposition.
    Pathwidth { input: PathBuf },
    /// List the k-generators with their ids.
    Generators {
        #[arg(long)]
        arity: usize,
    },
    /// Compose generators, given by id, into a context.
    BuildWord {
        #[arg(long)]
        arity: usize,
        #[arg(required = true)]
        ids: Vec<String>,
    },
    /// Write the recognizer given by the reachability homomorphism.
    BetaRecognizer {
        #[arg(long)]
        arity: usize,
        /// Accepting types: `l1-r1` (left port 1 reaches right port 1), `persistent`, `none`.
        #[arg(long, default_value = "l1-r1")]
        accept: String,
    },
    /// Write the recognizer counting vertices modulo `q`.
    CountRecognizer {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        modulus: usize,
    },
    /// Decide whether a recognizer is aperiodic modulo reachability.
    Decide {
        #[arg(long)]
        recognizer: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Check that a recognizer is constant on isomorphic contexts up to a word length.
    Audit {
        #[arg(long)]
        recognizer: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Tag the infix classes of a recognizer by the bridges of the contexts reaching them.
    Classify {
        #[arg(long)]
        recognizer: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Classify the recognizer alone rather than its pairing with reachability types.
        #[arg(long)]
        no_beta: bool,
    },
    /// Look for an alternating membership sequence along powers of a context.
    Certify {
        #[arg(long)]
        oracle: Oracle,
        #[arg(long)]
        context: PathBuf,
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long)]
        right: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_power: usize,
    },
    /// Reorder a decomposition so that the two halves of a split alternate rarely.
    Dealternate {
        decomposition: PathBuf,
        context: PathBuf,
        /// JSON file `{"x": [...], "y": [...]}`; `y` defaults to the other non-port vertices.
        #[arg(long)]
        split: PathBuf,
    },
    /// Factor a context with two bridges into generators and more persistent contexts.
    TwoBridge {
        context: PathBuf,
        #[arg(long)]
        width: usize,
    },
    /// Path-graph encoding of a word: a black vertex, then one labeled vertex per letter.
    EncodeWord { letters: String },
}

/// A computed answer; `Negative` maps to exit code 1.
enum Status {
    Positive,
    Negative,
}

struct Output {
    text: String,
    json: Value,
    status: Status,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            status: Status::Positive,
        }
    }

    fn verdict(mut self, positive: bool) -> Self {
        if !positive {
            self.status = Status::Negative;
        }
        self
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Reads `arg` as a file when one exists at that path, otherwise uses it verbatim.
fn text_or_file(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.is_file() {
        Ok(read(p)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn load_graph(path: &Path) -> Result<PortGraph> {
    PortGraph::from_json(&read(path)?).with_context(|| format!("in graph file {}", path.display()))
}

fn load_context(path: &Path) -> Result<Context> {
    Context::from_json(&read(path)?).with_context(|| format!("in context file {}", path.display()))
}

fn alphabet(k: usize) -> Result<GeneratorAlphabet> {
    enumerate_k_generators(k).context("cannot enumerate generators")
}

fn load_recognizer(path: &Path, a: &GeneratorAlphabet) -> Result<sepgraph::monoid::Recognizer> {
    let file = RecognizerFile::from_json(&read(path)?)
        .with_context(|| format!("in recognizer file {}", path.display()))?;
    file.to_recognizer(a)
        .with_context(|| format!("in recognizer file {}", path.display()))
}

fn context_value(c: &Context) -> Value {
    serde_json::from_str(&c.to_json()).expect("context JSON")
}

fn edge_names(c: &Context, edges: &[(usize, usize)]) -> Vec<String> {
    edges
        .iter()
        .map(|&(a, b)| format!("{}-{}", c.name(a), c.name(b)))
        .collect()
}

fn ports_text(mask: u64, k: usize) -> String {
    let list: Vec<String> = (0..k)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    if list.is_empty() {
        "-".to_string()
    } else {
        list.join(" ")
    }
}

fn beta_output(t: &ReachabilityType) -> (String, Value) {
    let pairs: Vec<String> = t.pairs().iter().map(|(p, q)| format!("{p}-{q}")).collect();
    let text = format!(
        "defined left: {}\ndefined right: {}\npersistent: {}\nreach: {}",
        ports_text(t.defined_left, t.arity),
        ports_text(t.defined_right, t.arity),
        ports_text(t.persistent, t.arity),
        if pairs.is_empty() {
            "-".to_string()
        } else {
            pairs.join(" ")
        },
    );
    let mut v = serde_json::to_value(t).expect("serializable");
    v["pairs"] = json!(pairs);
    (text, v)
}

fn seq_text(seq: &[bool]) -> String {
    seq.iter()
        .map(|b| if *b { "true" } else { "false" })
        .collect::<Vec<_>>()
        .join(",")
}

fn names_to_mask(list: &Value, c: &Context, key: &str) -> Result<u64> {
    let arr = list
        .as_array()
        .ok_or_else(|| anyhow!("`{key}` must be a list of vertex names"))?;
    let mut m = 0u64;
    for v in arr {
        let name = v
            .as_str()
            .ok_or_else(|| anyhow!("`{key}` must be a list of vertex names"))?;
        let i = c
            .names()
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| anyhow!("unknown vertex `{name}` in `{key}`"))?;
        m |= 1 << i;
    }
    Ok(m)
}

fn run(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::EvalFormula { graph, formula } => {
            let g = load_graph(&graph)?;
            let f = parse_formula(&text_or_file(&formula)?).context("in formula")?;
            let v = eval_on_ports(&f, &g)?;
            Output::new(v.to_string(), json!({ "value": v })).verdict(v)
        }
        Command::EvalExpr { graph, expr } => {
            let g = load_graph(&graph)?;
            let e = parse_expr(&text_or_file(&expr)?).context("in expression")?;
            let v = member(&g, &e)?;
            Output::new(v.to_string(), json!({ "value": v })).verdict(v)
        }
        Command::Compile { formula, arity } => {
            let f = parse_formula(&text_or_file(&formula)?).context("in formula")?;
            let e = compile_formula(&f, arity)?.render();
            Output::new(e.clone(), json!({ "arity": arity, "expr": e }))
        }
        Command::Beta { context } => {
            let (text, v) = beta_output(&beta(&load_context(&context)?));
            Output::new(text, v)
        }
        Command::Bridges { context } => {
            let c = load_context(&context)?;
            let found: Vec<Vec<String>> = bridges(&c).iter().map(|b| edge_names(&c, b)).collect();
            let mut text = format!("{} bridges", found.len());
            for b in &found {
                text.push('\n');
                text.push_str(&b.join(" "));
            }
            Output::new(text, json!({ "count": found.len(), "bridges": found }))
        }
        Command::Pathwidth { input } => {
            let raw = read(&input)?;
            let (w, bags) = match Context::from_json(&raw) {
                Ok(c) => {
                    let (w, pd) = pathwidth_exact_frame(Frame::of_context(&c))?;
                    (w, pd.to_names(c.names()))
                }
                Err(ce) => {
                    let g = PortGraph::from_json(&raw).map_err(|ge| {
                        anyhow!(
                            "{} is neither a context ({ce}) nor a graph ({ge})",
                            input.display()
                        )
                    })?;
                    let (w, pd) = pathwidth_exact_frame(Frame::of_graph(&g))?;
                    (w, pd.to_names(g.names()))
                }
            };
            let mut text = format!("pathwidth {w}");
            for b in &bags {
                text.push_str(&format!("\n[{}]", b.join(" ")));
            }
            Output::new(
                text,
                json!({ "pathwidth": w, "decomposition": { "bags": bags } }),
            )
        }
        Command::Generators { arity } => {
            let a = alphabet(arity)?;
            let mut lines = Vec::new();
            let mut list = Vec::new();
            for (i, g) in a.generators().iter().enumerate() {
                let id = GeneratorAlphabet::id_name(i);
                let v = context_value(g);
                lines.push(format!("{id} {v}"));
                list.push(json!({ "id": id, "context": v }));
            }
            Output::new(
                lines.join("\n"),
                json!({ "arity": arity, "generators": list }),
            )
        }
        Command::BuildWord { arity, ids } => {
            let a = alphabet(arity)?;
            let word = ids
                .iter()
                .map(|s| a.parse_id(s))
                .collect::<Result<Vec<_>, _>>()?;
            let c = build_from_word(&a, &word)?;
            Output::new(c.to_json(), context_value(&c))
        }
        Command::BetaRecognizer { arity, accept } => {
            let a = alphabet(arity)?;
            let pred: Box<dyn Fn(&ReachabilityType) -> bool> = match accept.as_str() {
                "l1-r1" => Box::new(|t| {
                    use sepgraph::context::PortRef;
                    t.is_defined(PortRef::L(0))
                        && t.is_defined(PortRef::R(0))
                        && t.reaches(PortRef::L(0), PortRef::R(0))
                }),
                "persistent" => Box::new(|t| t.persistent != 0),
                "none" => Box::new(|_| false),
                other => bail!("unknown acceptance `{other}`, expected l1-r1, persistent or none"),
            };
            let (r, _) = beta_recognizer(&a, pred);
            let file = RecognizerFile::from_recognizer(&r);
            Output::new(file.to_json(), serde_json::from_str(&file.to_json())?)
        }
        Command::CountRecognizer { arity, modulus } => {
            if modulus == 0 {
                bail!("modulus must be at least 1");
            }
            let a = alphabet(arity)?;
            let file = RecognizerFile::from_recognizer(&vertex_count_recognizer(&a, modulus));
            Output::new(file.to_json(), serde_json::from_str(&file.to_json())?)
        }
        Command::Decide { recognizer, arity } => {
            let a = alphabet(arity)?;
            let r = load_recognizer(&recognizer, &a)?;
            let q = syntactic_quotient(&r).recognizer;
            let v = decide_aperiodic_mod_reachability(&q, &a)?;
            let name = match v.outcome {
                Outcome::AperiodicModReachability => "aperiodic-mod-reachability",
                Outcome::Violation => "violation",
            };
            let mut text = name.to_string();
            let mut out = json!({
                "outcome": name,
                "recognizer_size": r.monoid.size(),
                "quotient_size": q.monoid.size(),
                "pairs": v.pairs,
            });
            if let Some(w) = &v.witness {
                let check = verify_witness(&q, &a, &w.word)?;
                let word: Vec<String> = w
                    .word
                    .iter()
                    .map(|&g| GeneratorAlphabet::id_name(g))
                    .collect();
                text.push_str(&format!(
                    "\nwitness: {}\nbeta idempotent: {}\nalpha never stabilizes: {}",
                    word.join(" "),
                    check.beta_idempotent,
                    check.alpha_never_stabilizes
                ));
                out["witness"] = json!({
                    "word": word,
                    "alpha": w.alpha,
                    "powers": w.powers,
                    "beta": serde_json::to_value(&w.beta)?,
                    "check": serde_json::to_value(&check)?,
                });
            }
            Output::new(text, out).verdict(v.outcome == Outcome::AperiodicModReachability)
        }
        Command::Audit {
            recognizer,
            arity,
            max_len,
        } => {
            let a = alphabet(arity)?;
            let r = load_recognizer(&recognizer, &a)?;
            let audit = audit_well_defined(&r, &a, max_len)?;
            let ids = |w: &[usize]| {
                w.iter()
                    .map(|&g| GeneratorAlphabet::id_name(g))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let (text, ok) = match &audit {
                Audit::Consistent { words, contexts } => (
                    format!("consistent: {words} words, {contexts} contexts"),
                    true,
                ),
                Audit::Counterexample {
                    first,
                    second,
                    first_value,
                    second_value,
                } => (
                    format!(
                        "counterexample: [{}] -> {first_value}, [{}] -> {second_value}",
                        ids(first),
                        ids(second)
                    ),
                    false,
                ),
            };
            Output::new(text, serde_json::to_value(&audit)?).verdict(ok)
        }
        Command::Classify {
            recognizer,
            arity,
            samples,
            max_len,
            seed,
            no_beta,
        } => {
            let a = alphabet(arity)?;
            let r = load_recognizer(&recognizer, &a)?;
            let c = classify_infix_classes(&r, &a, !no_beta, samples, max_len, seed)?;
            let mut text = format!("{} elements, {} infix classes", c.size, c.classes.len());
            for (i, cl) in c.classes.iter().enumerate() {
                text.push_str(&format!(
                    "\nclass {i}: {} elements, {:?}, min bridges {}",
                    cl.elements.len(),
                    cl.tag,
                    cl.min_bridges.map_or("-".to_string(), |b| b.to_string())
                ));
            }
            Output::new(text, serde_json::to_value(&c)?)
        }
        Command::Certify {
            oracle,
            context,
            left,
            right,
            max_power,
        } => {
            let w = load_context(&context)?;
            let k = w.arity();
            let x = left
                .as_deref()
                .map(load_context)
                .transpose()?
                .unwrap_or_else(|| Context::identity(k));
            let y = right
                .as_deref()
                .map(load_context)
                .transpose()?
                .unwrap_or_else(|| Context::identity(k));
            let cert = certify_non_star_free(|c| oracle.holds(c), &w, &x, &y, max_power)?;
            match cert {
                Some(c) => {
                    let text = format!(
                        "certificate\noracle: {}\nbeta idempotent: true\nsequence: {}\nalternating from: {}",
                        oracle.name(),
                        seq_text(&c.sequence),
                        c.alternating_from
                    );
                    let (_, b) = beta_output(&c.beta);
                    Output::new(
                        text,
                        json!({
                            "certified": true,
                            "oracle": oracle.name(),
                            "beta": b,
                            "sequence": c.sequence,
                            "alternating_from": c.alternating_from,
                        }),
                    )
                }
                None => Output::new(
                    format!("no certificate\noracle: {}", oracle.name()),
                    json!({ "certified": false, "oracle": oracle.name() }),
                )
                .verdict(false),
            }
        }
        Command::Dealternate {
            decomposition,
            context,
            split,
        } => {
            let c = load_context(&context)?;
            let pd = PathDecomposition::from_json(&read(&decomposition)?, c.names())
                .with_context(|| format!("in decomposition file {}", decomposition.display()))?;
            let s: Value = serde_json::from_str(&read(&split)?)
                .with_context(|| format!("in split file {}", split.display()))?;
            let x = names_to_mask(s.get("x").unwrap_or(&Value::Null), &c, "x")?;
            let y = match s.get("y") {
                Some(v) => names_to_mask(v, &c, "y")?,
                None => c.all_mask() & !c.port_vertices() & !x,
            };
            let d = dealternate(&pd, Frame::of_context(&c), x, y)?;
            let names = c.names();
            let instrs: Vec<String> = d
                .instructions
                .iter()
                .map(|i| i.display(names).to_string())
                .collect();
            let intervals: Vec<Value> = d
                .intervals
                .iter()
                .map(
                    |iv| json!({ "label": iv.label.to_string(), "start": iv.start, "end": iv.end }),
                )
                .collect();
            let mut text = format!(
                "width {} (was {})\nintervals {} (was {})",
                d.width,
                d.original_width,
                d.interval_count(),
                d.original_interval_count
            );
            for iv in &d.intervals {
                text.push_str(&format!("\n{} {}..{}", iv.label, iv.start, iv.end));
            }
            for b in d.pd.to_names(names) {
                text.push_str(&format!("\n[{}]", b.join(" ")));
            }
            Output::new(
                text,
                json!({
                    "width": d.width,
                    "original_width": d.original_width,
                    "original_interval_count": d.original_interval_count,
                    "intervals": intervals,
                    "instructions": instrs,
                    "decomposition": { "bags": d.pd.to_names(names) },
                }),
            )
        }
        Command::TwoBridge { context, width } => {
            let c = load_context(&context)?;
            let t = match two_bridge_decompose(&c, width) {
                Ok(t) => t,
                Err(DecompError::NoFactorization(why)) => {
                    return Ok(Output::new(
                        format!("no factorization: {why}"),
                        json!({ "factorized": false, "reason": why }),
                    )
                    .verdict(false))
                }
                Err(e) => return Err(e.into()),
            };
            let kind = |k: &FactorKind| match k {
                FactorKind::Generator => "generator".to_string(),
                FactorKind::Persistent { gained } => format!("persistent +{gained}"),
            };
            let mut text = format!("{} factors, width {}", t.factors.len(), t.width);
            let mut factors = Vec::new();
            for (f, k) in t.factors.iter().zip(&t.kinds) {
                let v = context_value(f);
                text.push_str(&format!("\n{}: {v}", kind(k)));
                factors.push(json!({ "kind": serde_json::to_value(k)?, "context": v }));
            }
            Output::new(
                text,
                json!({
                    "factorized": true,
                    "width": t.width,
                    "direct_edge": t.direct_edge,
                    "cuts": t.cuts,
                    "factors": factors,
                }),
            )
        }
        Command::EncodeWord { letters } => {
            let g = encode_word(&letters)?;
            Output::new(g.to_json(), serde_json::from_str(&g.to_json())?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            match out.status {
                Status::Positive => ExitCode::SUCCESS,
                Status::Negative => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
