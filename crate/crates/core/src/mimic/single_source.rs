use crate::flow::{CutMode, CutTable, FlowError, FlowNetwork, FreshIds, VertexId};

use super::MimicError;

/// Sink masks over `(a, b, c)` in the order the values are listed:
/// `a, b, c, ab, ac, bc, abc`.
const ORDER: [u32; 7] = [0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

/// Single-source cut values `s -/-> B` for the seven nonempty `B` over
/// `a, b, c`, listed as `a, b, c, ab, ac, bc, abc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mimic4SSSpec {
    pub source: VertexId,
    pub terminals: [VertexId; 3],
    pub values: [u64; 7],
}

impl Mimic4SSSpec {
    pub fn new(
        source: VertexId,
        terminals: [VertexId; 3],
        values: [i64; 7],
    ) -> Result<Self, MimicError> {
        let mut out = [0u64; 7];
        for (slot, v) in out.iter_mut().zip(values) {
            *slot = u64::try_from(v).map_err(|_| MimicError::NegativeValue(v))?;
        }
        Ok(Self {
            source,
            terminals,
            values: out,
        })
    }

    /// Reads a 4-terminal single-source table; `a, b, c` are the non-source
    /// terminals in table order.
    pub fn from_table(table: &CutTable) -> Result<Self, MimicError> {
        if table.mode() != CutMode::SingleSource {
            return Err(MimicError::WrongMode {
                expected: CutMode::SingleSource,
                got: table.mode(),
            });
        }
        let q = table.terminals();
        if q.len() != 4 {
            return Err(MimicError::TerminalCount {
                expected: 4,
                got: q.len(),
            });
        }
        let s = q.source_index().ok_or(FlowError::MissingSource)?;
        let others: Vec<usize> = (0..4).filter(|&i| i != s).collect();
        let mut values = [0u64; 7];
        for (slot, local) in values.iter_mut().zip(ORDER) {
            let mask = (0..3)
                .filter(|j| local >> j & 1 == 1)
                .fold(0u32, |m, j| m | 1 << others[j]);
            *slot = table.get(mask).ok_or(FlowError::MissingEntry(mask))?;
        }
        Ok(Self {
            source: q.get(s),
            terminals: [q.get(others[0]), q.get(others[1]), q.get(others[2])],
            values,
        })
    }

    /// `s -/-> B` for a mask over `(a, b, c)`.
    pub fn value(&self, mask: u32) -> u64 {
        ORDER
            .iter()
            .position(|&m| m == mask)
            .map_or(0, |i| self.values[i])
    }

    /// Order in which the terminals play the roles `a, b, c`: `a` has the
    /// largest single cut, and the pair cut containing `a` and the second
    /// role is at least the one with the third. Ties keep listed order.
    pub fn canonical_permutation(&self) -> [usize; 3] {
        let single = |i: usize| self.value(1 << i);
        let mut a = 0;
        for i in 1..3 {
            if single(i) > single(a) {
                a = i;
            }
        }
        let rest: Vec<usize> = (0..3).filter(|&i| i != a).collect();
        let (mut r1, mut r2) = (rest[0], rest[1]);
        if self.value(1 << a | 1 << r2) > self.value(1 << a | 1 << r1) {
            std::mem::swap(&mut r1, &mut r2);
        }
        [a, r1, r2]
    }
}

/// The 5-vertex, 7-edge single-source mimic on a fresh hub `x`.
///
/// Edge order is `s->a, s->b, s->c, a->x, b->x, x->b, x->c` after applying
/// the returned permutation (`perm[role]` is the listed terminal index).
pub fn build_mimic4_single_source(
    spec: &Mimic4SSSpec,
    ids: &mut FreshIds,
) -> Result<(FlowNetwork, [usize; 3]), MimicError> {
    let perm = spec.canonical_permutation();
    let f = |roles: &[usize]| -> i64 {
        let mask = roles.iter().fold(0u32, |m, &r| m | 1 << perm[r]);
        spec.value(mask) as i64
    };
    let (a, b, c) = (0, 1, 2);
    let caps: [(&'static str, i64); 7] = [
        ("s->a", f(&[a])),
        ("s->b", f(&[a, b]) - f(&[a])),
        ("s->c", f(&[a, b, c]) - f(&[a, b])),
        ("a->x", f(&[b, c]) + f(&[a]) - f(&[a, b, c])),
        ("b->x", f(&[a, c]) + f(&[a, b]) - f(&[a]) - f(&[a, b, c])),
        ("x->b", f(&[b]) + f(&[a]) - f(&[a, b])),
        ("x->c", f(&[c]) + f(&[a, b]) - f(&[a, b, c])),
    ];
    if let Some(&(edge, value)) = caps.iter().find(|(_, v)| *v < 0) {
        return Err(MimicError::NegativeCapacity { edge, value });
    }
    let s = spec.source;
    let [va, vb, vc] = perm.map(|i| spec.terminals[i]);
    let x = ids.vertex();
    let arcs = [
        (s, va),
        (s, vb),
        (s, vc),
        (va, x),
        (vb, x),
        (x, vb),
        (x, vc),
    ];
    let mut net = FlowNetwork::new();
    for ((tail, head), (_, cap)) in arcs.into_iter().zip(caps) {
        net.add_edge(ids.edge(), tail, head, cap as u64)?;
    }
    Ok((net, perm))
}
