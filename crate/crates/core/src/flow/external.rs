use std::fmt;

use super::maxflow::{DenseNetwork, Dinic, MaxFlowBackend};
use super::{CutMode, CutTable, EdgeId, FlowAssignment, FlowError, FlowNetwork, VertexId};

/// Prescribed net outflow per terminal, aligned with a terminal order.
///
/// Positive values are supplies, negative values demands. A single-source
/// demand allows a positive value only at its source index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalFlowDemand {
    values: Vec<i64>,
    source: Option<usize>,
}

impl ExternalFlowDemand {
    pub fn new(values: Vec<i64>) -> Result<Self, FlowError> {
        let sum: i64 = values.iter().sum();
        if sum != 0 {
            return Err(FlowError::UnbalancedDemand(sum));
        }
        Ok(Self {
            values,
            source: None,
        })
    }

    pub fn single_source(values: Vec<i64>, source: usize) -> Result<Self, FlowError> {
        if source >= values.len() {
            return Err(FlowError::SourceIndex(source));
        }
        if let Some(i) = (0..values.len()).find(|&i| i != source && values[i] > 0) {
            return Err(FlowError::SupplyAtSink(i));
        }
        let mut d = Self::new(values)?;
        d.source = Some(source);
        Ok(d)
    }

    pub fn zero(k: usize) -> Self {
        Self {
            values: vec![0; k],
            source: None,
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn source(&self) -> Option<usize> {
        self.source
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Decides realizability from the cut table alone, via the Gale conditions.
///
/// A full table accepts any demand. A single-source table requires a demand
/// built with [`ExternalFlowDemand::single_source`] for the same source.
pub fn check_external_realizable(
    table: &CutTable,
    demand: &ExternalFlowDemand,
) -> Result<bool, FlowError> {
    let terminals = table.terminals();
    if demand.len() != terminals.len() {
        return Err(FlowError::DemandLength {
            expected: terminals.len(),
            got: demand.len(),
        });
    }
    let x = demand.values();
    if x.iter().sum::<i64>() != 0 {
        return Ok(false);
    }
    let sum_over = |mask: u32, sign: i64| -> i64 {
        (0..x.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| sign * x[i])
            .sum()
    };
    match table.mode() {
        CutMode::Full => {
            for mask in 1..terminals.all_mask() {
                let cap = table.get(mask).ok_or(FlowError::MissingEntry(mask))?;
                if sum_over(mask, 1) > cap as i64 {
                    return Ok(false);
                }
            }
        }
        CutMode::SingleSource => {
            if demand.source() != terminals.source_index() {
                return Err(FlowError::ModeMismatch);
            }
            for mask in table.expected_keys() {
                let cap = table.get(mask).ok_or(FlowError::MissingEntry(mask))?;
                if sum_over(mask, -1) > cap as i64 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Routes a flow whose net outflow at terminal `i` is exactly `demand[i]` and
/// which is balanced everywhere else.
pub fn route_external_flow(
    net: &FlowNetwork,
    terminals: &[VertexId],
    demand: &[i64],
) -> Result<FlowAssignment, FlowError> {
    if terminals.len() != demand.len() {
        return Err(FlowError::DemandLength {
            expected: terminals.len(),
            got: demand.len(),
        });
    }
    let sum: i64 = demand.iter().sum();
    if sum != 0 {
        return Err(FlowError::UnbalancedDemand(sum));
    }
    let mut dense = DenseNetwork::new(net);
    let sigma = dense.graph.add_node();
    let tau = dense.graph.add_node();
    let mut supply = 0u64;
    for (&q, &x) in terminals.iter().zip(demand) {
        let i = dense.node(q)?;
        if x > 0 {
            dense.graph.add_arc(sigma, i, x as u64);
            supply += x as u64;
        } else if x < 0 {
            dense.graph.add_arc(i, tau, x.unsigned_abs());
        }
    }
    let routed = Dinic.augment(&mut dense.graph, sigma, tau);
    if routed < supply {
        return Err(FlowError::InfeasibleDemand {
            routed,
            required: supply,
        });
    }
    Ok(dense.assignment())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownEdge(EdgeId),
    OverCapacity {
        edge: EdgeId,
        flow: u64,
        capacity: u64,
    },
    Unbalanced {
        vertex: VertexId,
        imbalance: i64,
    },
    WrongImbalance {
        terminal: VertexId,
        expected: i64,
        actual: i64,
    },
    UnknownTerminal(VertexId),
    DemandLength,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownEdge(e) => write!(f, "flow on unknown edge {e}"),
            Violation::OverCapacity {
                edge,
                flow,
                capacity,
            } => write!(f, "edge {edge} carries {flow} > capacity {capacity}"),
            Violation::Unbalanced { vertex, imbalance } => {
                write!(f, "vertex {vertex} has imbalance {imbalance}")
            }
            Violation::WrongImbalance {
                terminal,
                expected,
                actual,
            } => write!(
                f,
                "terminal {terminal} has imbalance {actual}, expected {expected}"
            ),
            Violation::UnknownTerminal(v) => write!(f, "terminal {v} not in network"),
            Violation::DemandLength => write!(f, "demand length differs from terminal count"),
        }
    }
}

/// Outcome of [`verify_flow`]; valid when no violation was found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowCheck {
    pub violations: Vec<Violation>,
}

impl FlowCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks capacity bounds, conservation away from the terminals, and the
/// exact prescribed imbalance at each terminal.
pub fn verify_flow(
    net: &FlowNetwork,
    terminals: &[VertexId],
    demand: &[i64],
    flow: &FlowAssignment,
) -> FlowCheck {
    let mut violations = Vec::new();
    if terminals.len() != demand.len() {
        violations.push(Violation::DemandLength);
    }
    for (id, _) in flow.iter() {
        if !net.contains_edge(id) {
            violations.push(Violation::UnknownEdge(id));
        }
    }
    for e in net.edges() {
        let f = flow.get(e.id);
        if f > e.capacity {
            violations.push(Violation::OverCapacity {
                edge: e.id,
                flow: f,
                capacity: e.capacity,
            });
        }
    }
    let imbalances = flow.imbalances(net);
    for (&v, &imb) in &imbalances {
        match terminals.iter().position(|&q| q == v) {
            Some(i) => {
                let expected = demand.get(i).copied().unwrap_or(0);
                if imb != expected {
                    violations.push(Violation::WrongImbalance {
                        terminal: v,
                        expected,
                        actual: imb,
                    });
                }
            }
            None if imb != 0 => violations.push(Violation::Unbalanced {
                vertex: v,
                imbalance: imb,
            }),
            None => {}
        }
    }
    for &q in terminals {
        if !net.contains_vertex(q) {
            violations.push(Violation::UnknownTerminal(q));
        }
    }
    FlowCheck { violations }
}
