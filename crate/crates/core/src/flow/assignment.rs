use std::collections::BTreeMap;

use super::{EdgeId, FlowNetwork, VertexId};

/// Flow value per edge id. Missing edges carry zero flow.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowAssignment(BTreeMap<EdgeId, u64>);

impl FlowAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zero(net: &FlowNetwork) -> Self {
        net.edges().map(|e| (e.id, 0)).collect()
    }

    pub fn get(&self, id: EdgeId) -> u64 {
        self.0.get(&id).copied().unwrap_or(0)
    }

    pub fn set(&mut self, id: EdgeId, flow: u64) {
        self.0.insert(id, flow);
    }

    pub fn remove(&mut self, id: EdgeId) -> Option<u64> {
        self.0.remove(&id)
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.0.contains_key(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, u64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn extend(&mut self, other: &FlowAssignment) {
        self.0.extend(other.iter());
    }

    /// Net outflow at `v` over the edges of `net`: out minus in.
    pub fn imbalance(&self, net: &FlowNetwork, v: VertexId) -> i64 {
        net.edges().fold(0i64, |acc, e| {
            let f = self.get(e.id) as i64;
            if e.tail == v {
                acc + f
            } else if e.head == v {
                acc - f
            } else {
                acc
            }
        })
    }

    /// Net outflow at every vertex of `net` in one pass.
    pub fn imbalances(&self, net: &FlowNetwork) -> BTreeMap<VertexId, i64> {
        let mut out: BTreeMap<VertexId, i64> = net.vertices().map(|v| (v, 0)).collect();
        for e in net.edges() {
            let f = self.get(e.id) as i64;
            *out.entry(e.tail).or_default() += f;
            *out.entry(e.head).or_default() -= f;
        }
        out
    }
}

impl FromIterator<(EdgeId, u64)> for FlowAssignment {
    fn from_iter<I: IntoIterator<Item = (EdgeId, u64)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}
