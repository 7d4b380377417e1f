//! Command-line surface for the flowvol toolkit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use flowvol::io::{
    dag_to_dot, dag_to_json, dual_to_dot, flow_tree_to_dot, lattice_to_dot, DagDocument, Report,
};
use flowvol::{
    dag_from_word, dual, family, flow, proof, BinaryWord, Dag, ExtensionMethod, FlowTree,
    KostantMethod, NetflowVector, VolumeFormula,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "flowvol",
    version,
    about = "Exact flow-polytope volumes, interchange lattices, and linear-extension duals for full DAGs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized volume of the unit flow polytope of a member or DAG file
    Volume(VolumeArgs),
    /// Kostant partition function value at a netflow
    Kostant(KostantArgs),
    /// The Boolean lattice with volumes, with optional verification suites
    Lattice(LatticeArgs),
    /// Truncated dual poset of a family member
    Dual(DualArgs),
    /// Linear extension count of a member's truncated dual
    Extensions(ExtensionsArgs),
    /// Export a dag, dual, lattice, or flowtree as DOT or JSON
    Export(ExportArgs),
    /// Run every verification suite for all sizes up to n
    Verify(VerifyArgs),
}

/// Where the DAG comes from: a binary word or a JSON document.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct DagInput {
    /// Binary word b_1..b_{n-2} selecting a family member
    #[arg(long)]
    bits: Option<String>,
    /// Path to a DAG document (JSON)
    #[arg(long, value_name = "PATH")]
    dag_file: Option<PathBuf>,
}

#[derive(Args)]
struct VolumeArgs {
    #[command(flatten)]
    input: DagInput,
    /// Expected n, checked against the input
    #[arg(short)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormulaArg::Reversal)]
    formula: FormulaArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Args)]
struct KostantArgs {
    #[command(flatten)]
    input: DagInput,
    #[arg(short)]
    n: Option<usize>,
    /// Comma-separated netflow entries summing to zero; defaults to the
    /// interior-ones vector (0,1,...,1,-(n-1))
    #[arg(long, value_name = "a1,a2,...")]
    netflow: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
    method: MethodArg,
    /// Node cap for the tree method (also FLOWVOL_MAX_NODES)
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(short)]
    n: usize,
    /// Verification suite to run over the lattice
    #[arg(long, value_enum)]
    check: Option<CheckArg>,
    #[arg(long, default_value_t = family::MAX_LATTICE_N)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Args)]
struct DualArgs {
    #[command(flatten)]
    input: DagInput,
    #[arg(short)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Args)]
struct ExtensionsArgs {
    #[command(flatten)]
    input: DagInput,
    #[arg(short)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Args)]
struct ExportArgs {
    /// Object to export
    #[arg(long, value_enum)]
    what: WhatArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long)]
    bits: Option<String>,
    #[arg(long, value_name = "PATH")]
    dag_file: Option<PathBuf>,
    #[arg(short)]
    n: Option<usize>,
    #[arg(long, value_name = "a1,a2,...")]
    netflow: Option<String>,
    /// Output path; stdout when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long, default_value_t = family::MAX_LATTICE_N)]
    max_n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run all suites for sizes 3..=n
    #[arg(short)]
    n: usize,
    #[arg(long, default_value_t = family::MAX_LATTICE_N)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    /// Interior-ones specialization (family members only)
    W,
    /// Single Kostant evaluation from the edge and degree counts
    Lidskii,
    /// Flow-reversal form
    Reversal,
    /// Full dominance sum at (1,0,...,0,-1)
    Sum,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Tree,
    Dp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    /// Volumes weakly decrease along every cover
    Volumes,
    /// Volumes equal dual extension counts; extensions decrease along flips
    Duality,
    /// Transfer bijection, partner injection, and leaf identities
    Proof,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    Dag,
    Dual,
    Lattice,
    Flowtree,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Volume(args) => cmd_volume(args),
        Command::Kostant(args) => cmd_kostant(args),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Dual(args) => cmd_dual(args),
        Command::Extensions(args) => cmd_extensions(args),
        Command::Export(args) => cmd_export(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Loads the DAG and, when it is a family member, its word.
fn load_input(input: &DagInput, n: Option<usize>) -> Result<(Dag, Option<BinaryWord>), String> {
    let (dag, word) = if let Some(bits) = &input.bits {
        let word = BinaryWord::parse(bits).map_err(fail)?;
        (dag_from_word(&word), Some(word))
    } else {
        let path = input.dag_file.as_ref().expect("clap enforces the group");
        let text = std::fs::read_to_string(path).map_err(fail)?;
        let dag = flowvol::io::dag_from_json(&text).map_err(fail)?;
        let word = flowvol::word_from_dag(&dag).ok();
        (dag, word)
    };
    if let Some(n) = n {
        if n != dag.n() {
            return Err(format!("-n {n} does not match the input (n = {})", dag.n()));
        }
    }
    Ok((dag, word))
}

fn parse_netflow(text: Option<&str>, dag: &Dag) -> Result<NetflowVector, String> {
    match text {
        None => NetflowVector::w(dag.n()).map_err(fail),
        Some(text) => {
            let entries = text
                .split(',')
                .map(|part| part.trim().parse::<i64>().map_err(fail))
                .collect::<Result<Vec<i64>, String>>()?;
            if entries.len() != dag.vertex_count() {
                return Err(format!(
                    "netflow has {} entries, the graph needs {}",
                    entries.len(),
                    dag.vertex_count()
                ));
            }
            NetflowVector::new(entries).map_err(fail)
        }
    }
}

fn max_nodes(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("FLOWVOL_MAX_NODES")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(flow::DEFAULT_MAX_TREE_NODES)
}

fn input_label(word: &Option<BinaryWord>, dag: &Dag) -> String {
    match word {
        Some(w) => w.to_string(),
        None => format!("dag(n={})", dag.n()),
    }
}

fn emit(report: &Report, format: FormatArg, table: String) -> bool {
    match format {
        FormatArg::Json => print!("{}", report.to_json()),
        _ => print!("{table}"),
    }
    report.all_passed()
}

fn cmd_volume(args: VolumeArgs) -> Result<bool, String> {
    let (dag, word) = load_input(&args.input, args.n)?;
    let (volume, name) = match args.formula {
        FormulaArg::W => (flow::volume_f1(&dag, VolumeFormula::WSpecial), "w"),
        FormulaArg::Lidskii => (
            flow::volume_f1(&dag, VolumeFormula::LidskiiSimple),
            "lidskii",
        ),
        FormulaArg::Reversal => (
            flow::volume_f1(&dag, VolumeFormula::FlowReversal),
            "reversal",
        ),
        FormulaArg::Sum => {
            let unit = NetflowVector::unit(dag.vertex_count()).map_err(fail)?;
            (flow::lidskii_volume(&dag, &unit), "sum")
        }
    };
    let volume = volume.map_err(fail)?;
    let label = input_label(&word, &dag);
    let mut report = Report::new(format!("volume --formula {name}"));
    report.push(
        serde_json::json!({ "input": label, "formula": name, "volume": volume }),
        true,
    );
    let table = format!("input formula volume\n{label} {name} {volume}\n");
    Ok(emit(&report, args.format, table))
}

fn cmd_kostant(args: KostantArgs) -> Result<bool, String> {
    let (dag, word) = load_input(&args.input, args.n)?;
    let netflow = parse_netflow(args.netflow.as_deref(), &dag)?;
    let (count, name) = match args.method {
        MethodArg::Dp => (
            flow::kostant(&dag, &netflow, KostantMethod::FrontierDp).map_err(fail)?,
            "dp",
        ),
        MethodArg::Tree => (
            FlowTree::build_with_limit(&dag, &netflow, max_nodes(args.max_nodes))
                .map_err(fail)?
                .leaf_count(),
            "tree",
        ),
    };
    let label = input_label(&word, &dag);
    let mut report = Report::new(format!("kostant --method {name}"));
    report.push(
        serde_json::json!({
            "input": label,
            "netflow": netflow.to_string(),
            "method": name,
            "count": count
        }),
        true,
    );
    let table = format!("input netflow method count\n{label} {netflow} {name} {count}\n");
    Ok(emit(&report, args.format, table))
}

fn cmd_lattice(args: LatticeArgs) -> Result<bool, String> {
    let lattice = family::hasse_lattice_with_limit(args.n, args.max_n).map_err(fail)?;
    let order = proof::verify_order_reversal(args.n).map_err(fail)?;
    let mut report = Report::new(format!("lattice -n {}", args.n));
    let mut table = format!(
        "n={}: {} nodes, {} covers\nword volume\n",
        args.n,
        lattice.nodes().len(),
        lattice.covers().len()
    );
    for (word, volume) in &order.volumes {
        table.push_str(&format!("{word} {volume}\n"));
        report.push(
            serde_json::json!({ "word": word.to_string(), "volume": volume }),
            true,
        );
    }

    match args.check {
        None => {}
        Some(CheckArg::Volumes) => {
            table.push_str("lower upper lower_volume upper_volume status\n");
            for cover in &order.covers {
                let ok = cover.holds();
                table.push_str(&format!(
                    "{} {} {} {} {}\n",
                    cover.lower,
                    cover.upper,
                    cover.lower_volume,
                    cover.upper_volume,
                    status(ok)
                ));
                report.push(
                    serde_json::json!({
                        "lower": cover.lower.to_string(),
                        "upper": cover.upper.to_string(),
                        "lower_volume": cover.lower_volume,
                        "upper_volume": cover.upper_volume,
                    }),
                    ok,
                );
            }
            table.push_str(&format!(
                "covers: {}  violations: {}\n",
                order.covers.len(),
                order.violations()
            ));
        }
        Some(CheckArg::Duality) => {
            let duality = dual::verify_duality(args.n).map_err(fail)?;
            table.push_str("word volume extensions status\n");
            for member in &duality.members {
                let ok = member.holds();
                table.push_str(&format!(
                    "{} {} {} {}\n",
                    member.word,
                    member.volume,
                    member.extensions,
                    status(ok)
                ));
                report.push(
                    serde_json::json!({
                        "word": member.word.to_string(),
                        "volume": member.volume,
                        "extensions": member.extensions,
                    }),
                    ok,
                );
            }
            for flip in &duality.flips {
                let ok = flip.holds();
                report.push(
                    serde_json::json!({
                        "lower": flip.lower.to_string(),
                        "upper": flip.upper.to_string(),
                        "lower_extensions": flip.lower_extensions,
                        "upper_extensions": flip.upper_extensions,
                    }),
                    ok,
                );
            }
            table.push_str(&format!(
                "equalities: {}  flips: {}  violations: {}\n",
                duality.members.len(),
                duality.flips.len(),
                duality.violations()
            ));
        }
        Some(CheckArg::Proof) => {
            let sweep = proof::verify_proof_machinery(args.n).map_err(fail)?;
            let ok = sweep.all_hold();
            table.push_str(&format!(
                "proof sweep: covers={} nodes={} bad={} violations={} {}\n",
                sweep.covers_checked,
                sweep.nodes_checked,
                sweep.bad_nodes,
                sweep.violations.len(),
                status(ok)
            ));
            for violation in &sweep.violations {
                table.push_str(&format!("violation: {violation}\n"));
            }
            report.push(
                serde_json::json!({
                    "covers_checked": sweep.covers_checked,
                    "nodes_checked": sweep.nodes_checked,
                    "bad_nodes": sweep.bad_nodes,
                    "violations": sweep.violations,
                }),
                ok,
            );
        }
    }
    Ok(emit(&report, args.format, table))
}

fn cmd_dual(args: DualArgs) -> Result<bool, String> {
    let (dag, word) = load_input(&args.input, args.n)?;
    let poset = dual::truncated_dual(&dag).map_err(fail)?;
    if args.format == FormatArg::Dot {
        print!("{}", dual_to_dot(&poset));
        return Ok(true);
    }
    let label = input_label(&word, &dag);
    let mut report = Report::new("dual");
    report.push(
        serde_json::json!({
            "input": label,
            "lower_count": poset.lower_count(),
            "upper_count": poset.upper_count(),
            "relations": poset.relations(),
        }),
        true,
    );
    let table = format!(
        "input: {label}\nelements: {} lower, {} upper\nrelations: {poset}\n",
        poset.lower_count(),
        poset.upper_count()
    );
    Ok(emit(&report, args.format, table))
}

fn cmd_extensions(args: ExtensionsArgs) -> Result<bool, String> {
    let (dag, word) = load_input(&args.input, args.n)?;
    let poset = dual::truncated_dual(&dag).map_err(fail)?;
    let count = dual::linear_extensions(&poset, ExtensionMethod::DownsetDp).map_err(fail)?;
    let label = input_label(&word, &dag);
    let mut report = Report::new("extensions");
    report.push(
        serde_json::json!({ "input": label, "extensions": count }),
        true,
    );
    let table = format!("input extensions\n{label} {count}\n");
    Ok(emit(&report, args.format, table))
}

fn cmd_export(args: ExportArgs) -> Result<bool, String> {
    let input = DagInput {
        bits: args.bits.clone(),
        dag_file: args.dag_file.clone(),
    };
    let text = match args.what {
        WhatArg::Dag => {
            let (dag, _) = load_input(&input, args.n)?;
            match args.format {
                FormatArg::Dot => dag_to_dot(&dag),
                _ => dag_to_json(&dag),
            }
        }
        WhatArg::Dual => {
            let (dag, _) = load_input(&input, args.n)?;
            let poset = dual::truncated_dual(&dag).map_err(fail)?;
            match args.format {
                FormatArg::Dot => dual_to_dot(&poset),
                _ => pretty_json(&serde_json::json!({
                    "schema_version": flowvol::io::SCHEMA_VERSION,
                    "lower_count": poset.lower_count(),
                    "upper_count": poset.upper_count(),
                    "relations": poset.relations(),
                })),
            }
        }
        WhatArg::Lattice => {
            let n = args.n.ok_or("lattice export needs -n")?;
            let lattice = family::hasse_lattice_with_limit(n, args.max_n).map_err(fail)?;
            match args.format {
                FormatArg::Dot => lattice_to_dot(&lattice),
                _ => {
                    let covers: Vec<serde_json::Value> = lattice
                        .covers()
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "lower": lattice.word(c.lower).to_string(),
                                "upper": lattice.word(c.upper).to_string(),
                                "pair": c.pair.to_string(),
                            })
                        })
                        .collect();
                    pretty_json(&serde_json::json!({
                        "schema_version": flowvol::io::SCHEMA_VERSION,
                        "n": n,
                        "nodes": lattice.nodes().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                        "covers": covers,
                    }))
                }
            }
        }
        WhatArg::Flowtree => {
            let (dag, _) = load_input(&input, args.n)?;
            let netflow = parse_netflow(args.netflow.as_deref(), &dag)?;
            let tree = FlowTree::build_with_limit(&dag, &netflow, max_nodes(args.max_nodes))
                .map_err(fail)?;
            match args.format {
                FormatArg::Dot => flow_tree_to_dot(&tree),
                _ => {
                    let nodes: Vec<serde_json::Value> = (0..tree.node_count())
                        .map(|id| {
                            let node = tree.node(id);
                            serde_json::json!({
                                "address": tree.address(id),
                                "values": node.partial.values(),
                                "leaf_count": node.leaf_count,
                            })
                        })
                        .collect();
                    pretty_json(&serde_json::json!({
                        "schema_version": flowvol::io::SCHEMA_VERSION,
                        "dag": DagDocument::from_dag(&dag),
                        "netflow": netflow.entries(),
                        "nodes": nodes,
                    }))
                }
            }
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(fail)?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, String> {
    if args.n < 3 {
        return Err(format!("verification needs n >= 3, got {}", args.n));
    }
    let mut report = Report::new(format!("verify -n {}", args.n));
    let mut table = String::new();
    for n in 3..=args.n.min(args.max_n) {
        let order = proof::verify_order_reversal(n).map_err(fail)?;
        let ok = order.all_hold();
        table.push_str(&format!(
            "n={n} volumes covers={} violations={} {}\n",
            order.covers.len(),
            order.violations(),
            status(ok)
        ));
        report.push(
            serde_json::json!({
                "n": n, "suite": "volumes",
                "covers": order.covers.len(),
                "violations": order.violations(),
            }),
            ok,
        );

        let duality = dual::verify_duality(n).map_err(fail)?;
        let ok = duality.all_hold();
        table.push_str(&format!(
            "n={n} duality members={} flips={} violations={} {}\n",
            duality.members.len(),
            duality.flips.len(),
            duality.violations(),
            status(ok)
        ));
        report.push(
            serde_json::json!({
                "n": n, "suite": "duality",
                "members": duality.members.len(),
                "flips": duality.flips.len(),
                "violations": duality.violations(),
            }),
            ok,
        );

        let sweep = proof::verify_proof_machinery(n).map_err(fail)?;
        let ok = sweep.all_hold();
        table.push_str(&format!(
            "n={n} proof covers={} nodes={} bad={} violations={} {}\n",
            sweep.covers_checked,
            sweep.nodes_checked,
            sweep.bad_nodes,
            sweep.violations.len(),
            status(ok)
        ));
        report.push(
            serde_json::json!({
                "n": n, "suite": "proof",
                "covers": sweep.covers_checked,
                "nodes": sweep.nodes_checked,
                "bad_nodes": sweep.bad_nodes,
                "violations": sweep.violations,
            }),
            ok,
        );
    }
    let all = report.all_passed();
    table.push_str(if all {
        "all checks passed\n"
    } else {
        "CHECKS FAILED\n"
    });
    Ok(emit(&report, args.format, table))
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "VIOLATION"
    }
}

fn pretty_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}
