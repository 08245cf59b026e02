//! Subcommand implementations.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage error, 2 input outside the
//! requested minor-closed family, 3 a flow or audit check failed.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use minorflow::decomp::{
    decompose_k33_free, decompose_k5_free, is_planar, DecompError, DecompositionTree, Label,
    SimpleGraph,
};
use minorflow::flow::{
    cut_table, verify_flow, CutMode, EdgeId, FlowAssignment, FlowNetwork, FreshIds, TerminalSet,
    VertexId,
};
use minorflow::mimic::{
    build_mimic4_single_source, build_mimic_general, build_small_mimic, Mimic4SSSpec,
};
use minorflow::solver::{max_flow_decomposed, max_flow_decomposed_traced, SolveError};
use minorflow::testkit::{audit_step_values, gen_instance, oracle_max_flow, Family, GenConfig};

use crate::dimacs::{self, NetworkFile, Role};
use crate::treefile::{DecompositionFile, TreeFileError};
use crate::{flowfile, ParseError};

/// Largest network on which `solve --audit` re-solves every step.
pub const AUDIT_STEP_LIMIT: usize = 200;

pub const SEED_ENV: &str = "MINORFLOW_SEED";

#[derive(Debug, Parser)]
#[command(name = "minorflow", version, about = "Exact maximum flow on clique-sum decomposed networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    K33,
    K5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamilyArg {
    Planar,
    K33free,
    K5free,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum flow value, optionally with the flow itself.
    Solve {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, conflicts_with = "family")]
        decomposition: Option<PathBuf>,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Defaults to the `n <id> s` line of the network file.
        #[arg(long)]
        source: Option<u32>,
        /// Defaults to the `n <id> t` line of the network file.
        #[arg(long)]
        sink: Option<u32>,
        #[arg(long)]
        emit_flow: Option<PathBuf>,
        /// Verify the flow, and on small inputs every intermediate network.
        #[arg(long)]
        audit: bool,
    },
    /// Clique-sum decomposition for a minor-closed family.
    Decompose {
        #[arg(long)]
        network: PathBuf,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Mimicking network on the vertices named by node lines (at most four).
    Mimic {
        #[arg(long)]
        network: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Random instance with a known decomposition.
    Gen {
        #[arg(long, value_enum)]
        family: GenFamilyArg,
        #[arg(long)]
        n: usize,
        /// Overridden by the MINORFLOW_SEED environment variable.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        max_cap: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Also write the generating decomposition.
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Checks that a flow file is a feasible s-t flow.
    Verify {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        flow: PathBuf,
        #[arg(long)]
        source: Option<u32>,
        #[arg(long)]
        sink: Option<u32>,
    },
    /// Maximum flow value by the reference augmenting-path search.
    Oracle {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        source: Option<u32>,
        #[arg(long)]
        sink: Option<u32>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    TreeFile {
        path: PathBuf,
        source: TreeFileError,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotInFamily(DecompError),
    #[error("{0}")]
    CheckFailed(String),
    #[error(transparent)]
    Solve(SolveError),
    #[error("writing output: {0}")]
    Output(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::NotInFamily(_) => 2,
            CliError::CheckFailed(_) => 3,
            _ => 1,
        }
    }
}

fn family_error(e: DecompError) -> CliError {
    match e {
        DecompError::NotK33MinorFree { .. } | DecompError::NotK5MinorFree { .. } => {
            CliError::NotInFamily(e)
        }
        other => CliError::Solve(SolveError::Decomp(other)),
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Decomp(d) => family_error(d),
            other => CliError::Solve(other),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Writes to `path`, or to `out` when no path is given.
fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(CliError::Output),
    }
}

pub fn read_network(path: &Path) -> Result<NetworkFile, CliError> {
    dimacs::parse(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

pub fn read_tree(path: &Path) -> Result<DecompositionTree, CliError> {
    let tree_err = |source| CliError::TreeFile {
        path: path.to_owned(),
        source,
    };
    DecompositionFile::parse(&read(path)?)
        .and_then(|f| f.to_tree())
        .map_err(tree_err)
}

fn terminals(
    file: &NetworkFile,
    source: Option<u32>,
    sink: Option<u32>,
) -> Result<(VertexId, VertexId), CliError> {
    let pick = |flag: Option<u32>, fallback: Option<VertexId>, what: &str| {
        let v = flag.map(VertexId).or(fallback).ok_or_else(|| {
            CliError::Usage(format!("no {what}: pass --{what} or add a node line"))
        })?;
        if !file.network.contains_vertex(v) {
            return Err(CliError::Usage(format!("{what} {v} is not a vertex")));
        }
        Ok(v)
    };
    let s = pick(source, file.source(), "source")?;
    let t = pick(sink, file.sink(), "sink")?;
    if s == t {
        return Err(CliError::Usage(format!("source and sink are both {s}")));
    }
    Ok((s, t))
}

/// A planar network is returned whole as one planar component.
fn decompose(net: &FlowNetwork, family: FamilyArg) -> Result<DecompositionTree, CliError> {
    if is_planar(&SimpleGraph::from_network(net)) {
        return Ok(DecompositionTree::single(net.clone(), Label::Planar));
    }
    match family {
        FamilyArg::K33 => decompose_k33_free(net),
        FamilyArg::K5 => decompose_k5_free(net),
    }
    .map_err(family_error)
}

/// One component holding the whole network.
fn whole_network_tree(net: &FlowNetwork) -> DecompositionTree {
    let label = if is_planar(&SimpleGraph::from_network(net)) {
        Label::Planar
    } else {
        Label::BoundedTW
    };
    DecompositionTree::single(net.clone(), label)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            network,
            decomposition,
            family,
            source,
            sink,
            emit_flow,
            audit,
        } => {
            let file = read_network(&network)?;
            let (s, t) = terminals(&file, source, sink)?;
            let net = &file.network;
            let tree = match (decomposition, family) {
                (Some(path), _) => read_tree(&path)?,
                (None, Some(f)) => decompose(net, f)?,
                (None, None) => whole_network_tree(net),
            };
            let (value, flow) = if audit {
                let (value, flow, trace) = max_flow_decomposed_traced(net, &tree, s, t)?;
                let v = value as i64;
                let check = verify_flow(net, &[s, t], &[v, -v], &flow);
                if let Some(bad) = check.violations.first() {
                    return Err(CliError::CheckFailed(format!("audit: {bad}")));
                }
                if net.num_vertices() <= AUDIT_STEP_LIMIT && !audit_step_values(&trace) {
                    return Err(CliError::CheckFailed(
                        "audit: an intermediate network changed the flow value".into(),
                    ));
                }
                (value, flow)
            } else {
                max_flow_decomposed(net, &tree, s, t)?
            };
            if let Some(path) = emit_flow {
                write_file(&path, &flowfile::print(&complete_flow(net, &flow)))?;
            }
            writeln!(out, "value {value}").map_err(CliError::Output)?;
            if audit {
                let steps = if net.num_vertices() <= AUDIT_STEP_LIMIT {
                    "checked"
                } else {
                    "skipped"
                };
                writeln!(out, "audit ok (steps {steps})").map_err(CliError::Output)?;
            }
            Ok(())
        }
        Command::Decompose {
            network,
            family,
            output,
        } => {
            let file = read_network(&network)?;
            let tree = decompose(&file.network, family)?;
            let doc = DecompositionFile::from_tree(&tree).map_err(|source| CliError::TreeFile {
                path: output.clone().unwrap_or_default(),
                source,
            })?;
            emit(output.as_deref(), &doc.print(), out)
        }
        Command::Mimic { network, output } => {
            let file = read_network(&network)?;
            emit(output.as_deref(), &mimic_text(&file)?, out)
        }
        Command::Gen {
            family,
            n,
            seed,
            max_cap,
            output,
            decomposition,
        } => {
            let seed = match std::env::var(SEED_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{SEED_ENV}='{v}' is not a u64")))?,
                Err(_) => seed,
            };
            if n < 2 {
                return Err(CliError::Usage("--n must be at least 2".into()));
            }
            if max_cap < 1 {
                return Err(CliError::Usage("--max-cap must be at least 1".into()));
            }
            let family = match family {
                GenFamilyArg::Planar => Family::Planar,
                GenFamilyArg::K33free => Family::K33Free,
                GenFamilyArg::K5free => Family::K5Free,
            };
            let mut cfg = GenConfig::new(family, n, seed);
            cfg.max_cap = max_cap;
            let (net, tree) = gen_instance(&cfg);
            let mut file = NetworkFile::new(net);
            file.terminals = vec![
                (VertexId(1), Role::Source),
                (VertexId(n as u32), Role::Sink),
            ];
            if let Some(path) = decomposition {
                let doc = DecompositionFile::from_tree(&tree)
                    .map_err(|source| CliError::TreeFile {
                        path: path.clone(),
                        source,
                    })?;
                write_file(&path, &doc.print())?;
            }
            emit(output.as_deref(), &dimacs::print(&file), out)
        }
        Command::Verify {
            network,
            flow,
            source,
            sink,
        } => {
            let file = read_network(&network)?;
            let (s, t) = terminals(&file, source, sink)?;
            let assignment = flowfile::parse(&read(&flow)?).map_err(|source| CliError::Parse {
                path: flow.clone(),
                source,
            })?;
            let net = &file.network;
            let value = assignment.imbalance(net, s);
            let check = verify_flow(net, &[s, t], &[value, -value], &assignment);
            if !check.is_valid() {
                let lines: Vec<String> = check.violations.iter().map(|v| v.to_string()).collect();
                return Err(CliError::CheckFailed(format!(
                    "invalid flow: {}",
                    lines.join("; ")
                )));
            }
            writeln!(out, "valid value {value}").map_err(CliError::Output)
        }
        Command::Oracle {
            network,
            source,
            sink,
        } => {
            let file = read_network(&network)?;
            let (s, t) = terminals(&file, source, sink)?;
            writeln!(out, "value {}", oracle_max_flow(&file.network, s, t))
                .map_err(CliError::Output)
        }
    }
}

/// The flow with an explicit zero on every edge it leaves unset.
fn complete_flow(net: &FlowNetwork, flow: &FlowAssignment) -> FlowAssignment {
    let mut full = FlowAssignment::zero(net);
    full.extend(flow);
    full
}

/// Builds the mimic and renders it with terminals renumbered `1..=k` in
/// node-line order and the remaining vertices after them.
pub fn mimic_text(file: &NetworkFile) -> Result<String, CliError> {
    let net = &file.network;
    let terminals: Vec<VertexId> = file.terminals.iter().map(|(v, _)| *v).collect();
    let sources: Vec<usize> = file
        .terminals
        .iter()
        .enumerate()
        .filter(|(_, (_, r))| *r == Role::Source)
        .map(|(i, _)| i)
        .collect();
    if let Some(v) = terminals
        .iter()
        .enumerate()
        .find_map(|(i, v)| terminals[..i].contains(v).then_some(v))
    {
        return Err(CliError::Usage(format!("vertex {v} has two node lines")));
    }
    let mut ids = FreshIds::after(net);
    let solve_err = |e: minorflow::mimic::MimicError| CliError::Solve(SolveError::Mimic(e));
    let (mimic, kind) = match terminals.len() {
        0 => return Err(CliError::Usage("no terminals: add node lines".into())),
        1..=3 => (
            build_small_mimic(net, &terminals, &mut ids).map_err(solve_err)?,
            "full",
        ),
        4 => match sources.as_slice() {
            &[src] => {
                let set = TerminalSet::with_source(terminals.clone(), src)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let table = cut_table(net, &set, CutMode::SingleSource)
                    .map_err(|e| CliError::Solve(e.into()))?;
                let spec = Mimic4SSSpec::from_table(&table).map_err(solve_err)?;
                let (m, _) = build_mimic4_single_source(&spec, &mut ids).map_err(solve_err)?;
                (m, "single-source")
            }
            _ => {
                let set = TerminalSet::new(terminals.clone())
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                (
                    build_mimic_general(net, &set, &mut ids).map_err(solve_err)?,
                    "full",
                )
            }
        },
        k => {
            return Err(CliError::Usage(format!(
                "{k} terminals; at most 4 are supported"
            )))
        }
    };
    let mut order = terminals.clone();
    order.extend(mimic.vertices().filter(|v| !terminals.contains(v)));
    let new_id: BTreeMap<VertexId, VertexId> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, VertexId(i as u32 + 1)))
        .collect();
    let mut relabelled = FlowNetwork::new();
    for i in 0..order.len() {
        relabelled.add_vertex(VertexId(i as u32 + 1));
    }
    for (i, e) in mimic.edges().enumerate() {
        relabelled
            .add_edge(EdgeId(i as u32 + 1), new_id[&e.tail], new_id[&e.head], e.capacity)
            .map_err(|e| CliError::Solve(e.into()))?;
    }
    let mut result = NetworkFile::new(relabelled);
    result.terminals = file
        .terminals
        .iter()
        .map(|&(v, r)| (new_id[&v], r))
        .collect();
    let mut text = format!("c {kind} mimic on {} terminals\n", terminals.len());
    for (i, v) in terminals.iter().enumerate() {
        text.push_str(&format!("c terminal {} is input vertex {v}\n", i + 1));
    }
    text.push_str(&dimacs::print(&result));
    Ok(text)
}
