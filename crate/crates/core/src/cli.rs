//! Command-line front end.
//!
//! Every subcommand produces a [`CommandResult`]. With `--json` the payload is
//! printed as one line of JSON; otherwise a short text report. Diagnostics go
//! to standard error. Exit codes: 0 ok, 1 no, 2 error, 3 indeterminate.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::graph::{generate, Family, MultiGraph};
use crate::pot::{parse_pot, Pot};
use crate::realize::{enumerate_realizable, find_realization, RealizationCertificate};
use crate::reduction::{reduction_pot, subdivided_target, Variant};
use crate::scenario::{
    check_scenario, results_registry, search_optimum, Limits, OptimaValue, Quantity, Verdict,
    VerificationStatus, Violation,
};
use crate::spectrum::{min_order_budgeted, spectrum, SpectrumError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    No,
    Indeterminate,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::No => 1,
            Status::Error => 2,
            Status::Indeterminate => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

impl CommandResult {
    fn new(status: Status, payload: Value, text: String) -> Self {
        CommandResult {
            status,
            payload,
            diagnostics: Vec::new(),
            text,
        }
    }

    fn error(message: impl Into<String>) -> Self {
        let message = message.into();
        CommandResult {
            status: Status::Error,
            payload: json!({ "error": message }),
            diagnostics: vec![message.clone()],
            text: format!("error: {message}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tilepot", version, about = "Pot spectra, realizations and scenario checks for flexible-tile assembly")]
pub struct Cli {
    /// Print the payload as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Node budget for every exhaustive search.
    #[arg(long, global = true, env = "TILEPOT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the construction matrix of a pot.
    Spectrum(PotArg),
    /// Orders at which a pot can assemble a complete complex.
    MinOrder {
        #[command(flatten)]
        pot: PotArg,
        #[arg(long)]
        max: u64,
        /// Enumerate compositions when the spectrum has more than two free variables.
        #[arg(long)]
        fallback: bool,
    },
    /// Find a design realizing a graph.
    Realize {
        #[command(flatten)]
        pot: PotArg,
        #[arg(long)]
        graph: PathBuf,
    },
    /// All graphs of one order in the output of a pot, up to isomorphism.
    Enumerate {
        #[command(flatten)]
        pot: PotArg,
        #[arg(long)]
        order: u64,
        /// Keep disconnected outputs too.
        #[arg(long)]
        all_components: bool,
    },
    /// Check Scenario 1, 2 or 3 for a pot and target graph.
    Scenario {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        level: u8,
        #[command(flatten)]
        pot: PotArg,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Search for the least number of tile or bond-edge types.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_quantity)]
        quantity: Quantity,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        level: u8,
        #[arg(long, default_value_t = 6)]
        max_tiles: usize,
        #[arg(long, default_value_t = 4)]
        max_bonds: usize,
    },
    /// Generate a graph from a named family.
    Graph(GraphArgs),
    /// Build a 3-coloring reduction pot.
    Reduce {
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long)]
        graph: PathBuf,
        /// Where to write the pot (text form).
        #[arg(long)]
        out: PathBuf,
        /// Where to write the subdivided target graph (JSON).
        #[arg(long)]
        emit_target: Option<PathBuf>,
    },
    /// The table of known optima.
    Registry {
        /// Check every entry that has a witness pot or a search.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Args)]
pub struct PotArg {
    /// Pot file, text grammar or JSON.
    #[arg(long)]
    pub pot: PathBuf,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// complete, cycle, square_lattice, triangle_lattice, square_tube,
    /// triangle_tube, or a Platonic solid name.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Vertex count for complete and cycle.
    #[arg(long)]
    pub n: Option<usize>,
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    Quantity::parse(s).ok_or_else(|| format!("expected T or B, got {s:?}"))
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::parse(s).ok_or_else(|| format!("expected prp or srp, got {s:?}"))
}

/// Parses `args`, runs the command and prints its output. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let json = cli.json;
    let result = execute(cli);
    if json {
        println!("{}", result.payload);
        for d in &result.diagnostics {
            eprintln!("{d}");
        }
    } else if result.status == Status::Error {
        eprintln!("{}", result.text);
    } else if !result.text.is_empty() {
        println!("{}", result.text);
    }
    result.status.exit_code()
}

pub fn execute(cli: Cli) -> CommandResult {
    let budget = cli.budget;
    let r = match cli.command {
        Command::Spectrum(p) => read_pot(&p.pot).map(|pot| cmd_spectrum(&pot)),
        Command::MinOrder { pot, max, fallback } => {
            read_pot(&pot.pot).map(|pot| cmd_min_order(&pot, max, fallback, budget))
        }
        Command::Realize { pot, graph } => read_pot(&pot.pot)
            .and_then(|p| Ok((p, read_graph(&graph)?)))
            .map(|(p, g)| cmd_realize(&p, &g, budget)),
        Command::Enumerate {
            pot,
            order,
            all_components,
        } => read_pot(&pot.pot).map(|p| cmd_enumerate(&p, order, !all_components, budget)),
        Command::Scenario { level, pot, graph } => read_pot(&pot.pot)
            .and_then(|p| Ok((p, read_graph(&graph)?)))
            .map(|(p, g)| cmd_scenario(&p, &g, level, budget)),
        Command::Search {
            graph,
            quantity,
            level,
            max_tiles,
            max_bonds,
        } => read_graph(&graph).map(|g| {
            let limits = Limits {
                max_tiles,
                max_bonds,
                budget,
            };
            cmd_search(&g, quantity, level, limits)
        }),
        Command::Graph(args) => cmd_graph(&args),
        Command::Reduce {
            variant,
            graph,
            out,
            emit_target,
        } => read_graph(&graph).and_then(|g| cmd_reduce(&g, variant, &out, emit_target.as_deref())),
        Command::Registry { verify } => Ok(cmd_registry(verify, budget)),
    };
    r.unwrap_or_else(CommandResult::error)
}

fn read_pot(path: &Path) -> Result<Pot, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_pot(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<MultiGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    MultiGraph::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn certificate_json(cert: &RealizationCertificate, graph: &MultiGraph) -> Value {
    serde_json::to_value(cert.to_json(graph)).expect("certificates serialize")
}

fn graph_json(graph: &MultiGraph) -> Value {
    serde_json::to_value(graph.to_json()).expect("graphs serialize")
}

fn cmd_spectrum(pot: &Pot) -> CommandResult {
    let s = spectrum(pot);
    let strings = |v: &[crate::spectrum::Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let payload = json!({
        "tiles": pot.render(),
        "consistent": s.consistent,
        "free_count": s.free_count(),
        "constants": strings(&s.constants),
        "basis": s.basis.iter().map(|b| strings(b)).collect::<Vec<_>>(),
        "free_columns": s.free_columns,
        "spectrum": s.render(),
    });
    let status = if s.consistent { Status::Ok } else { Status::No };
    CommandResult::new(status, payload, format!("S(P) = {}", s.render()))
}

fn cmd_min_order(pot: &Pot, max: u64, fallback: bool, budget: u64) -> CommandResult {
    match min_order_budgeted(pot, max, fallback, &mut Budget::new(budget)) {
        Ok(m) => {
            let status = if m.witnesses.is_empty() { Status::No } else { Status::Ok };
            let text = match m.witnesses.first() {
                None => format!("no complete complex of order <= {max}"),
                Some(_) => m
                    .witnesses
                    .iter()
                    .map(|w| format!("order {} counts {:?}", w.order, w.counts))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            CommandResult::new(status, serde_json::to_value(&m).unwrap(), text)
        }
        Err(SpectrumError::Budget(b)) => indeterminate(b.to_string()),
        Err(e) => CommandResult::error(e.to_string()),
    }
}

fn indeterminate(message: String) -> CommandResult {
    let text = format!("indeterminate: {message}");
    let mut r = CommandResult::new(Status::Indeterminate, json!({ "indeterminate": message }), text);
    r.diagnostics.push(message);
    r
}

fn cmd_realize(pot: &Pot, graph: &MultiGraph, budget: u64) -> CommandResult {
    match find_realization(pot, graph, &mut Budget::new(budget)) {
        Ok(Some(cert)) => {
            let text = format!("realized; tiles per vertex {:?}", cert.tile_of);
            CommandResult::new(
                Status::Ok,
                json!({ "realized": true, "certificate": certificate_json(&cert, graph) }),
                text,
            )
        }
        Ok(None) => CommandResult::new(
            Status::No,
            json!({ "realized": false }),
            "not realized".to_string(),
        ),
        Err(b) => indeterminate(b.to_string()),
    }
}

fn cmd_enumerate(pot: &Pot, order: u64, connected: bool, budget: u64) -> CommandResult {
    let e = match enumerate_realizable(pot, order, connected, &mut Budget::new(budget)) {
        Ok(e) => e,
        Err(err) => return CommandResult::error(err.to_string()),
    };
    let graphs: Vec<Value> = e
        .graphs
        .iter()
        .map(|g| {
            json!({
                "graph": graph_json(&g.graph),
                "certificate": certificate_json(&g.certificate, &g.graph),
                "counts": g.certificate.counts,
            })
        })
        .collect();
    let status = if !e.complete {
        Status::Indeterminate
    } else if e.graphs.is_empty() {
        Status::No
    } else {
        Status::Ok
    };
    let mut text = format!(
        "{} isomorphism class(es) of order {order}{}",
        e.graphs.len(),
        if e.complete { "" } else { " (incomplete: budget exhausted)" }
    );
    for g in &e.graphs {
        text.push_str(&format!("\n  counts {:?} edges {:?}", g.certificate.counts, g.graph.edges()));
    }
    CommandResult::new(
        status,
        json!({ "complete": e.complete, "explored": e.explored, "graphs": graphs }),
        text,
    )
}

fn cmd_scenario(pot: &Pot, graph: &MultiGraph, level: u8, budget: u64) -> CommandResult {
    let report = match check_scenario(pot, graph, level, &mut Budget::new(budget)) {
        Ok(r) => r,
        Err(e) => return CommandResult::error(e.to_string()),
    };
    let violation = match &report.violation {
        None => Value::Null,
        Some(Violation::NotRealizable) => json!({ "kind": "not_realizable" }),
        Some(Violation::SmallerOrder(w)) => json!({ "kind": "smaller_order", "witness": w }),
        Some(Violation::NonIsomorphic { graph: h, certificate }) => json!({
            "kind": "non_isomorphic",
            "graph": graph_json(h),
            "certificate": certificate_json(certificate, h),
        }),
    };
    let status = match report.verdict {
        Verdict::Holds => Status::Ok,
        Verdict::Fails => Status::No,
        Verdict::Indeterminate => Status::Indeterminate,
    };
    let payload = json!({
        "level": level,
        "verdict": report.verdict,
        "violation": violation,
        "certificate": report.certificate.as_ref().map(|c| certificate_json(c, graph)),
        "note": report.note,
    });
    let mut text = format!("scenario {level}: {:?}", report.verdict).to_lowercase();
    match &report.violation {
        Some(Violation::NotRealizable) => text.push_str("\n  the pot does not realize the graph"),
        Some(Violation::SmallerOrder(w)) => {
            text.push_str(&format!("\n  complete complex of order {} with counts {:?}", w.order, w.counts))
        }
        Some(Violation::NonIsomorphic { graph: h, .. }) => {
            text.push_str(&format!("\n  non-isomorphic graph of the same order: {:?}", h.edges()))
        }
        None => {}
    }
    if let Some(n) = &report.note {
        text.push_str(&format!("\n  {n}"));
    }
    CommandResult::new(status, payload, text)
}

fn cmd_search(graph: &MultiGraph, quantity: Quantity, level: u8, limits: Limits) -> CommandResult {
    let r = match search_optimum(graph, quantity, level, limits) {
        Ok(r) => r,
        Err(e) => return CommandResult::error(e.to_string()),
    };
    let status = match r.value {
        OptimaValue::Exact(_) => Status::Ok,
        OptimaValue::Interval { .. } => Status::Indeterminate,
    };
    let name = match quantity {
        Quantity::T => "T",
        Quantity::B => "B",
    };
    let mut text = match r.value {
        OptimaValue::Exact(v) => format!("{name}{level} = {v}"),
        OptimaValue::Interval { lo, hi: Some(h) } => format!("{lo} <= {name}{level} <= {h}"),
        OptimaValue::Interval { lo, hi: None } => format!("{name}{level} >= {lo}"),
    };
    if let Some(p) = &r.witness_pot {
        text.push_str(&format!("\n  witness: {}", p.render()));
    }
    text.push_str(&format!("\n  {} candidate pots checked", r.candidates_checked));
    let payload = json!({
        "quantity": name,
        "level": level,
        "value": r.value,
        "witness_pot": r.witness_pot.as_ref().map(|p| p.render()),
        "witness_certificate": r.witness_certificate.as_ref().map(|c| certificate_json(c, graph)),
        "space": r.space,
        "candidates_checked": r.candidates_checked,
        "budget_exhausted": r.budget_exhausted,
    });
    CommandResult::new(status, payload, text)
}

fn cmd_graph(args: &GraphArgs) -> Result<CommandResult, String> {
    let dims: Vec<usize> = [args.n, args.rows, args.cols].into_iter().flatten().collect();
    let family = Family::parse(&args.family, &dims).map_err(|e| e.to_string())?;
    let g = generate(&family).map_err(|e| e.to_string())?;
    let payload = graph_json(&g);
    let text = payload.to_string();
    Ok(CommandResult::new(Status::Ok, payload, text))
}

fn cmd_reduce(
    graph: &MultiGraph,
    variant: Variant,
    out: &Path,
    emit_target: Option<&Path>,
) -> Result<CommandResult, String> {
    let a = reduction_pot(graph, variant).map_err(|e| e.to_string())?;
    fs::write(out, a.pot.render() + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
    if let Some(path) = emit_target {
        let target = subdivided_target(graph, variant).map_err(|e| e.to_string())?;
        let text = serde_json::to_string(&target.to_json()).expect("graphs serialize");
        fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let payload = json!({
        "variant": variant,
        "tiles": a.pot.len(),
        "symbols": a.pot.symbol_count(),
        "target_order": a.target_order,
        "provenance": a.provenance,
        "host_vertices": a.host.as_ref().map(|h| h.graph.vertex_count()),
    });
    let text = format!(
        "{} tiles over {} symbols written to {}; target order {}",
        a.pot.len(),
        a.pot.symbol_count(),
        out.display(),
        a.target_order
    );
    Ok(CommandResult::new(Status::Ok, payload, text))
}

fn cmd_registry(verify: bool, budget: u64) -> CommandResult {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut statuses = Vec::new();
    for entry in results_registry() {
        let mut row = serde_json::to_value(&entry).expect("entries serialize");
        let mut line = format!(
            "{:<22} {:<20} S{} {:?} {:?}",
            entry.family, entry.instance, entry.scenario, entry.quantity, entry.claim
        );
        if verify {
            let v = entry.verify(budget);
            row["verification"] = serde_json::to_value(&v).expect("verifications serialize");
            line.push_str(&format!("  {:?}", v.status).to_lowercase());
            statuses.push(v.status);
        }
        rows.push(row);
        lines.push(line);
    }
    let status = if statuses.contains(&VerificationStatus::Fail) {
        Status::No
    } else if statuses.contains(&VerificationStatus::Indeterminate) {
        Status::Indeterminate
    } else {
        Status::Ok
    };
    CommandResult::new(status, json!({ "entries": rows }), lines.join("\n"))
}
