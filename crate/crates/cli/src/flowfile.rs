//! Flow files: one `f <edge_id> <flow>` line per edge, sorted by edge id.

use std::fmt::Write as _;

use minorflow::flow::{EdgeId, FlowAssignment};

use crate::ParseError;

pub fn print(flow: &FlowAssignment) -> String {
    let mut out = String::new();
    let mut entries: Vec<(EdgeId, u64)> = flow.iter().collect();
    entries.sort();
    for (e, f) in entries {
        let _ = writeln!(out, "f {e} {f}");
    }
    out
}

pub fn parse(text: &str) -> Result<FlowAssignment, ParseError> {
    let mut flow = FlowAssignment::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] | ["c", ..] => {}
            ["f", e, f] => {
                let e: u32 = e.parse().map_err(|_| ParseError::new(line, format!("bad edge id '{e}'")))?;
                let f: u64 = f.parse().map_err(|_| ParseError::new(line, format!("bad flow '{f}'")))?;
                if flow.contains(EdgeId(e)) {
                    return Err(ParseError::new(line, format!("edge {e} listed twice")));
                }
                flow.set(EdgeId(e), f);
            }
            _ => return Err(ParseError::new(line, "expected 'f <edge_id> <flow>'")),
        }
    }
    Ok(flow)
}
