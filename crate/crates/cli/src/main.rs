use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use revspace::condensation::CondOrderDigraph;
use revspace::ramsey::{constant_or_increasing, constant_or_injective, homogeneous_pairs, Coloring};
use revspace::symbolic::{nonreversibility_witness, ordered_z_chain};
use revspace::{
    classify_strongly_reversible, condensational_order, enumerate_topologies, homeo_class, is_reversible,
    is_strongly_reversible, is_weakly_reversible, FiniteTopology, Limits, ReversibilityMethod, TopologyCatalog,
    TopologyError,
};
use serde::Serialize;
use serde_json::json;

mod suites;

#[derive(Parser)]
#[command(name = "revspace", version, about = "Reversibility of finite and finitely presented spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every topology on n points.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = EnumFormat::Summary)]
        format: EnumFormat,
    },
    /// Reversibility properties of one topology or of the whole catalog.
    Classify {
        /// Classify every topology on n points.
        #[arg(long, conflicts_with_all = ["topology", "input"])]
        n: Option<usize>,
        /// A topology as JSON, e.g. '{"n":2,"opens":[0,1,3]}'.
        #[arg(long, conflicts_with = "input")]
        topology: Option<String>,
        /// File with one JSON topology per line (`-` for standard input).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ClassifyFormat::Summary)]
        format: ClassifyFormat,
    },
    /// The condensational order on n points.
    Order {
        #[arg(long)]
        n: usize,
        /// Write the Hasse diagram as a DOT digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write nodes, order matrix and Hasse edges as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run exhaustive or sampled verification suites.
    Verify {
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        suite: Vec<suites::Suite>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled pairs for suites that sample above three points.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Symbolic non-reversibility witnesses.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Certificate suites for the refinement of the convergent sequence space.
    Ostar {
        #[arg(long, default_value_t = 8)]
        family_size: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = suites::OstarCheck::ALL)]
        check: Vec<suites::OstarCheck>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Homogeneous subsequences of a finite sequence.
    Ramsey {
        #[arg(long, value_enum)]
        mode: RamseyMode,
        /// Target size for `increasing`.
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Maximum number of values read by `increasing`.
        #[arg(long, default_value_t = 1000)]
        fuel: usize,
        #[arg(long, value_enum, default_value_t = ColoringArg::Increasing)]
        coloring: ColoringArg,
        /// Whitespace-separated integers; standard input when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// Shift witness for the ordered topology on `{z} ∪ ℤ`.
    OrderedZ {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c: i64,
        /// Also build the chain of this many shifted copies.
        #[arg(long)]
        iterate: Option<usize>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum EnumFormat {
    Json,
    Summary,
}

#[derive(Copy, Clone, ValueEnum)]
enum ClassifyFormat {
    Json,
    Csv,
    Summary,
}

#[derive(Copy, Clone, ValueEnum)]
enum RamseyMode {
    Pairs,
    Injective,
    Increasing,
}

#[derive(Copy, Clone, ValueEnum)]
enum ColoringArg {
    Increasing,
    Distinct,
}

/// Failures that are the caller's fault, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn catalog(n: usize) -> Result<TopologyCatalog> {
    let limits = Limits::from_env();
    enumerate_topologies(n, &limits).map_err(|e| match e {
        TopologyError::CapExceeded { .. } => UsageError(e.to_string()).into(),
        e => e.into(),
    })
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Enum { n, format } => {
            let cat = catalog(n)?;
            match format {
                EnumFormat::Summary => {
                    writeln!(out, "n={n} topologies={} orbits={}", cat.len(), cat.orbit_count())?
                }
                EnumFormat::Json => {
                    for t in cat.topologies() {
                        writeln!(out, "{}", serde_json::to_string(t)?)?;
                    }
                }
            }
            Ok(true)
        }
        Command::Classify {
            n,
            topology,
            input,
            format,
        } => {
            let targets = match (n, topology, input) {
                (Some(n), _, _) => catalog(n)?.topologies().to_vec(),
                (None, Some(text), _) => vec![parse_topology(&text)?],
                (None, None, Some(path)) => read_topologies(&path)?,
                (None, None, None) => bail!(UsageError("give one of --n, --topology or --input".into())),
            };
            classify(&mut out, &targets, format)?;
            Ok(true)
        }
        Command::Order { n, dot, json } => {
            let order = condensational_order(&catalog(n)?);
            if let Some(path) = dot {
                write_atomic(&path, render_dot(&order).as_bytes())?;
            }
            if let Some(path) = json {
                let mut text = serde_json::to_string_pretty(&order_json(&order))?;
                text.push('\n');
                write_atomic(&path, text.as_bytes())?;
            }
            writeln!(
                out,
                "n={n} nodes={} hasse_edges={} partial_order={}",
                order.nodes.len(),
                order.hasse.len(),
                order.is_partial_order()
            )?;
            Ok(order.is_partial_order())
        }
        Command::Verify {
            suite,
            n,
            seed,
            samples,
        } => {
            let cat = catalog(n)?;
            let mut all_pass = true;
            for s in suite {
                let report = suites::run_suite(s, &cat, seed, samples)?;
                writeln!(out, "{report}")?;
                all_pass &= report.passed();
            }
            Ok(all_pass)
        }
        Command::Witness {
            kind: WitnessKind::OrderedZ { c, iterate },
        } => {
            let w = nonreversibility_witness(c)?;
            let mut value = json!({
                "map": w.map,
                "image_c": w.image_c,
                "separator": w.separator,
                "separator_open_in_image": w.separator_open_in_image,
                "separator_open_in_original": w.separator_open_in_original,
                "certified": w.holds(),
            });
            let mut ok = w.holds();
            if let Some(k) = iterate {
                let chain = ordered_z_chain(c, k)?;
                ok &= chain.holds();
                value["chain"] = json!({
                    "levels": chain.levels(),
                    "homeomorphic": chain.homeomorphic,
                    "certified": chain.holds(),
                });
            }
            writeln!(out, "{}", serde_json::to_string(&value)?)?;
            Ok(ok)
        }
        Command::Ostar {
            family_size,
            check,
            samples,
            seed,
        } => {
            if family_size == 0 {
                bail!(UsageError("--family-size must be at least 1".into()));
            }
            let mut all_pass = true;
            for c in check {
                let report = suites::run_ostar(c, family_size, samples, seed)?;
                writeln!(out, "{report}")?;
                all_pass &= report.passed();
            }
            Ok(all_pass)
        }
        Command::Ramsey {
            mode,
            k,
            fuel,
            coloring,
            input,
        } => {
            let seq = read_sequence(input.as_deref())?;
            let value = match mode {
                RamseyMode::Pairs | RamseyMode::Injective if seq.is_empty() => {
                    bail!(UsageError("the sequence is empty".into()))
                }
                RamseyMode::Pairs => {
                    let coloring = match coloring {
                        ColoringArg::Increasing => Coloring::IncreasingPairs,
                        ColoringArg::Distinct => Coloring::DistinctPairs,
                    };
                    json!({ "found": true, "result": homogeneous_pairs(&seq, coloring) })
                }
                RamseyMode::Injective => json!({ "found": true, "result": constant_or_injective(&seq) }),
                RamseyMode::Increasing => match constant_or_increasing(seq.iter().copied(), k, fuel) {
                    Some(h) => json!({ "found": true, "result": h }),
                    None => json!({ "found": false, "reads": fuel.min(seq.len()) }),
                },
            };
            writeln!(out, "{}", serde_json::to_string(&value)?)?;
            Ok(true)
        }
    }
}

fn parse_topology(text: &str) -> Result<FiniteTopology> {
    let t: FiniteTopology = serde_json::from_str(text)
        .map_err(|e| UsageError(format!("invalid topology {text:?}: {e}")))?;
    Limits::from_env()
        .check(t.n())
        .map_err(|e| UsageError(e.to_string()))?;
    Ok(t)
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(text)
}

fn read_topologies(path: &Path) -> Result<Vec<FiniteTopology>> {
    read_input(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_topology)
        .collect()
}

fn read_sequence(path: Option<&Path>) -> Result<Vec<u64>> {
    let text = read_input(path.unwrap_or(Path::new("-")))?;
    text.split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| UsageError(format!("not a non-negative integer: {w:?}")).into())
        })
        .collect()
}

#[derive(Serialize)]
struct Classification {
    topology: FiniteTopology,
    reversible: bool,
    weakly_reversible: bool,
    strongly_reversible: bool,
    class: revspace::StrongClass,
    orbit_size: usize,
}

fn classify(out: &mut impl Write, targets: &[FiniteTopology], format: ClassifyFormat) -> Result<()> {
    let mut catalogs: std::collections::BTreeMap<usize, TopologyCatalog> = Default::default();
    let mut rows = Vec::with_capacity(targets.len());
    for t in targets {
        if let std::collections::btree_map::Entry::Vacant(slot) = catalogs.entry(t.n()) {
            slot.insert(catalog(t.n())?);
        }
        let cat = &catalogs[&t.n()];
        rows.push(Classification {
            topology: t.clone(),
            reversible: ReversibilityMethod::ALL.iter().all(|&m| is_reversible(t, m)),
            weakly_reversible: is_weakly_reversible(t, cat)?,
            strongly_reversible: is_strongly_reversible(t),
            class: classify_strongly_reversible(t),
            orbit_size: homeo_class(t).len(),
        });
    }
    match format {
        ClassifyFormat::Json => {
            for r in &rows {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
        ClassifyFormat::Csv => {
            writeln!(out, "n,opens,reversible,weakly_reversible,strongly_reversible,class,orbit_size")?;
            for r in &rows {
                let opens: Vec<String> = r.topology.opens().iter().map(|o| o.0.to_string()).collect();
                let class = serde_json::to_value(r.class)?;
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.topology.n(),
                    opens.join(" "),
                    r.reversible,
                    r.weakly_reversible,
                    r.strongly_reversible,
                    class.as_str().unwrap_or("co_small"),
                    r.orbit_size
                )?;
            }
        }
        ClassifyFormat::Summary => {
            let count = |f: fn(&Classification) -> bool| rows.iter().filter(|r| f(r)).count();
            writeln!(
                out,
                "topologies={} reversible={} weakly_reversible={} strongly_reversible={}",
                rows.len(),
                count(|r| r.reversible),
                count(|r| r.weakly_reversible),
                count(|r| r.strongly_reversible)
            )?;
        }
    }
    Ok(())
}

fn render_dot(order: &CondOrderDigraph) -> String {
    let mut s = format!("digraph condensational_order_{} {{\n  rankdir=BT;\n", order.n);
    for (i, node) in order.nodes.iter().enumerate() {
        s.push_str(&format!(
            "  n{i} [label=\"orbit {}\\nopens {}\"];\n",
            node.members.len(),
            node.open_count()
        ));
    }
    for (a, b) in &order.hasse {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    s
}

fn order_json(order: &CondOrderDigraph) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = order
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            json!({
                "id": i,
                "representative": node.representative,
                "orbit_size": node.members.len(),
                "open_count": node.open_count(),
            })
        })
        .collect();
    json!({
        "n": order.n,
        "nodes": nodes,
        "leq": order.leq,
        "hasse": order.hasse,
    })
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
