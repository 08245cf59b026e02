use crate::flow::verify_flow;
use crate::solver::SolveTrace;

use super::oracle_max_flow;

/// Re-solves every recorded working network with the oracle; true iff the
/// value never changes and every recorded flow is a valid flow of that value.
pub fn audit_step_values(trace: &SolveTrace) -> bool {
    let (s, t) = (trace.source, trace.sink);
    let Some(first) = trace.steps.first() else {
        return true;
    };
    let value = oracle_max_flow(&first.network, s, t);
    let v = value as i64;
    trace.steps.iter().all(|step| {
        oracle_max_flow(&step.network, s, t) == value
            && step
                .flow
                .as_ref()
                .map_or(true, |f| verify_flow(&step.network, &[s, t], &[v, -v], f).is_valid())
    })
}
