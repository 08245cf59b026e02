use crate::flow::{CutMode, CutTable, FlowError};

use super::MimicError;

/// Every ordered partition of a `k`-bit terminal mask into `parts` nonempty
/// masks.
fn ordered_partitions(k: usize, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = parts.pow(k as u32);
    for code in 0..total {
        let mut masks = vec![0u32; parts];
        let mut c = code;
        for i in 0..k {
            masks[c % parts] |= 1 << i;
            c /= parts;
        }
        if masks.iter().all(|&m| m != 0) {
            out.push(masks);
        }
    }
    out
}

fn lookup(table: &CutTable, mask: u32) -> Result<i128, MimicError> {
    table
        .get(mask)
        .map(i128::from)
        .ok_or(MimicError::Flow(FlowError::MissingEntry(mask)))
}

fn require_full(table: &CutTable) -> Result<(), MimicError> {
    match table.mode() {
        CutMode::Full => Ok(()),
        got => Err(MimicError::WrongMode {
            expected: CutMode::Full,
            got,
        }),
    }
}

/// For every partition `P, Q, R` of the terminals:
/// `P -/-> QR <= PQ -/-> R + PR -/-> Q` and `PQ -/-> R <= P -/-> QR + Q -/-> PR`.
///
/// Tables with fewer than three terminals hold vacuously.
pub fn check_three_way(table: &CutTable) -> Result<bool, MimicError> {
    require_full(table)?;
    let k = table.terminals().len();
    if k < 3 {
        return Ok(true);
    }
    for parts in ordered_partitions(k, 3) {
        let (p, q, r) = (parts[0], parts[1], parts[2]);
        let f_p = lookup(table, p)?;
        let f_q = lookup(table, q)?;
        let f_pq = lookup(table, p | q)?;
        let f_pr = lookup(table, p | r)?;
        if f_p > f_pq + f_pr || f_pq > f_p + f_q {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full mode: for every partition `P, Q, R, S` of the terminals,
/// `P -/-> QRS + PQR -/-> S <= PQ -/-> RS + PR -/-> QS`.
///
/// Single-source mode: the sink-set function `B -> s -/-> B` is submodular,
/// `f(X|Y) + f(X&Y) <= f(X) + f(Y)` with `f(empty) = 0`.
pub fn check_four_way(table: &CutTable) -> Result<bool, MimicError> {
    let k = table.terminals().len();
    match table.mode() {
        CutMode::Full => {
            if k < 4 {
                return Ok(true);
            }
            for parts in ordered_partitions(k, 4) {
                let (p, q, r) = (parts[0], parts[1], parts[2]);
                let lhs = lookup(table, p)? + lookup(table, p | q | r)?;
                let rhs = lookup(table, p | q)? + lookup(table, p | r)?;
                if lhs > rhs {
                    return Ok(false);
                }
            }
        }
        CutMode::SingleSource => {
            let sinks = table.terminals().sink_mask();
            let f = |m: u32| if m == 0 { Ok(0) } else { lookup(table, m) };
            let subsets: Vec<u32> = (1..=sinks).filter(|m| m & !sinks == 0).collect();
            for &x in &subsets {
                for &y in &subsets {
                    if f(x | y)? + f(x & y)? > f(x)? + f(y)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{TerminalSet, VertexId};

    fn terminals(k: u32) -> TerminalSet {
        TerminalSet::new((0..k).map(VertexId).collect()).unwrap()
    }

    fn table(k: u32, values: &[u64]) -> CutTable {
        let mut t = CutTable::new(terminals(k), CutMode::Full).unwrap();
        for (mask, &v) in (1..(1u32 << k) - 1).zip(values) {
            t.insert(mask, v);
        }
        t
    }

    #[test]
    fn partition_counts() {
        assert_eq!(ordered_partitions(3, 3).len(), 6);
        assert_eq!(ordered_partitions(4, 3).len(), 36);
        assert_eq!(ordered_partitions(4, 4).len(), 24);
    }

    #[test]
    fn synthetic_violation_detected() {
        // a -/-> bc = 5 while ab -/-> c = ac -/-> b = 1.
        let t = table(3, &[5, 1, 1, 1, 1, 1]);
        assert!(!check_three_way(&t).unwrap());
    }

    #[test]
    fn all_equal_table_passes() {
        assert!(check_three_way(&table(3, &[4; 6])).unwrap());
        assert!(check_four_way(&table(4, &[4; 14])).unwrap());
    }

    #[test]
    fn four_way_violation_detected() {
        let mut t = table(4, &[1; 14]);
        t.insert(0b0001, 9);
        assert!(!check_four_way(&t).unwrap());
    }

    #[test]
    fn fewer_terminals_hold_vacuously() {
        assert!(check_four_way(&table(3, &[1, 2, 3, 4, 5, 6])).unwrap());
        assert!(check_three_way(&table(2, &[1, 2])).unwrap());
    }

    #[test]
    fn single_source_submodularity() {
        let q = TerminalSet::with_source((0..4).map(VertexId).collect(), 0).unwrap();
        let mut t = CutTable::new(q.clone(), CutMode::SingleSource).unwrap();
        for m in t.expected_keys() {
            t.insert(m, 3);
        }
        assert!(check_four_way(&t).unwrap());
        assert!(matches!(
            check_three_way(&t),
            Err(MimicError::WrongMode { .. })
        ));
        // Make the union of two disjoint sinks far more expensive than both.
        t.insert(0b0110, 10);
        assert!(!check_four_way(&t).unwrap());
    }

    #[test]
    fn missing_entry_is_an_error() {
        let mut t = CutTable::new(terminals(3), CutMode::Full).unwrap();
        t.insert(1, 1);
        assert!(check_three_way(&t).is_err());
    }
}
