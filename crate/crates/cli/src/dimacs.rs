//! `p max` network files.
//!
//! ```text
//! c comment
//! p max <n> <m>
//! n <id> s
//! n <id> t
//! a <tail> <head> <capacity>
//! ```
//!
//! Vertices are `1..=n`. Edge ids follow arc order, starting at 1.

use std::fmt::Write as _;

use minorflow::flow::{EdgeId, FlowNetwork, VertexId};

use crate::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Source,
    Sink,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkFile {
    pub network: FlowNetwork,
    /// Node designations in file order.
    pub terminals: Vec<(VertexId, Role)>,
}

impl NetworkFile {
    pub fn new(network: FlowNetwork) -> Self {
        Self {
            network,
            terminals: Vec::new(),
        }
    }

    pub fn source(&self) -> Option<VertexId> {
        self.role(Role::Source).next()
    }

    pub fn sink(&self) -> Option<VertexId> {
        self.role(Role::Sink).next()
    }

    pub fn role(&self, role: Role) -> impl Iterator<Item = VertexId> + '_ {
        self.terminals
            .iter()
            .filter(move |(_, r)| *r == role)
            .map(|(v, _)| *v)
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("bad {what} '{tok}'")))
}

pub fn parse(text: &str) -> Result<NetworkFile, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut file = NetworkFile::new(FlowNetwork::new());
    let mut arcs = 0usize;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "c" {
            continue;
        }
        let vertex = |tok: Option<&str>, n: u32, what: &str| -> Result<VertexId, ParseError> {
            let id: u32 = number(tok, line, what)?;
            if id == 0 || id > n {
                return Err(ParseError::new(line, format!("{what} {id} outside 1..={n}")));
            }
            Ok(VertexId(id))
        };
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(line, "second problem line"));
                }
                if toks.next() != Some("max") {
                    return Err(ParseError::new(line, "expected 'p max <n> <m>'"));
                }
                let n: u32 = number(toks.next(), line, "vertex count")?;
                let m: usize = number(toks.next(), line, "arc count")?;
                for v in 1..=n {
                    file.network.add_vertex(VertexId(v));
                }
                header = Some((n, m));
            }
            "n" | "a" => {
                let (n, m) =
                    header.ok_or_else(|| ParseError::new(line, "line before the problem line"))?;
                if kind == "n" {
                    let v = vertex(toks.next(), n, "node id")?;
                    let role = match toks.next() {
                        Some("s") => Role::Source,
                        Some("t") => Role::Sink,
                        other => {
                            return Err(ParseError::new(
                                line,
                                format!("node role must be s or t, got {other:?}"),
                            ))
                        }
                    };
                    file.terminals.push((v, role));
                } else {
                    let tail = vertex(toks.next(), n, "tail")?;
                    let head = vertex(toks.next(), n, "head")?;
                    let cap: u64 = number(toks.next(), line, "capacity")?;
                    arcs += 1;
                    if arcs > m {
                        return Err(ParseError::new(line, format!("more than {m} arcs")));
                    }
                    file.network
                        .add_edge(EdgeId(arcs as u32), tail, head, cap)
                        .map_err(|e| ParseError::new(line, e.to_string()))?;
                }
            }
            other => return Err(ParseError::new(line, format!("unknown line type '{other}'"))),
        }
        if let Some(extra) = toks.next() {
            return Err(ParseError::new(line, format!("unexpected '{extra}'")));
        }
    }
    let (_, m) = header.ok_or_else(|| ParseError::new(last.max(1), "no problem line"))?;
    if arcs != m {
        return Err(ParseError::new(last.max(1), format!("expected {m} arcs, found {arcs}")));
    }
    Ok(file)
}

/// Canonical text. Requires vertices `1..=n` and edge ids `1..=m`.
pub fn print(file: &NetworkFile) -> String {
    let net = &file.network;
    let n = net.max_vertex_id().map_or(0, |v| v.0);
    let mut out = format!("p max {} {}\n", n, net.num_edges());
    for (v, role) in &file.terminals {
        let r = match role {
            Role::Source => 's',
            Role::Sink => 't',
        };
        let _ = writeln!(out, "n {v} {r}");
    }
    for e in net.edges() {
        let _ = writeln!(out, "a {} {} {}", e.tail, e.head, e.capacity);
    }
    out
}

/// Renumbers vertices to `1..=n` (in id order) and edges to `1..=m` (in id
/// order), returning the renumbered network and the old vertex ids.
pub fn compact(net: &FlowNetwork) -> (FlowNetwork, Vec<VertexId>) {
    let old: Vec<VertexId> = net.vertices().collect();
    let new_id = |v: VertexId| VertexId(old.binary_search(&v).expect("own vertex") as u32 + 1);
    let mut out = FlowNetwork::new();
    for i in 0..old.len() {
        out.add_vertex(VertexId(i as u32 + 1));
    }
    for (i, e) in net.edges().enumerate() {
        out.add_edge(EdgeId(i as u32 + 1), new_id(e.tail), new_id(e.head), e.capacity)
            .expect("renumbering keeps edges valid");
    }
    (out, old)
}
