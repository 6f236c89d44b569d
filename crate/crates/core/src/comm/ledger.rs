use std::fmt;

use serde::Serialize;

/// Who a simulated node is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NodeRole {
    /// The undistributed reference solver.
    Single,
    RowWorker(usize),
    ColWorker(usize),
    GridWorker(usize, usize),
    /// Consensus hub of the row split.
    Central,
    /// Consensus hub of one image segment in the grid split.
    SegmentCentral(usize),
}

impl NodeRole {
    /// Workers are the nodes whose traffic the per-node formulas describe.
    pub fn is_worker(self) -> bool {
        matches!(
            self,
            NodeRole::RowWorker(_) | NodeRole::ColWorker(_) | NodeRole::GridWorker(..)
        )
    }
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRole::Single => write!(f, "single"),
            NodeRole::RowWorker(i) => write!(f, "row-{i}"),
            NodeRole::ColWorker(j) => write!(f, "col-{j}"),
            NodeRole::GridWorker(i, j) => write!(f, "grid-{i}-{j}"),
            NodeRole::Central => write!(f, "central"),
            NodeRole::SegmentCentral(j) => write!(f, "central-{j}"),
        }
    }
}

/// How a broadcast counts on the sender.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// A broadcast to k peers costs its length once. Matches the per-node
    /// exchange counts `2 N_p`, `N N_m`, `N N_m / M + 2 N_p / N`.
    SenderOnceBroadcast,
    /// A broadcast to k peers costs k times its length (physical links).
    PerLink,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::SenderOnceBroadcast => "sender-once",
            Convention::PerLink => "per-link",
        }
    }
}

/// Complex elements moved by one node during one iteration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Traffic {
    pub received: u64,
    pub sent_once: u64,
    pub sent_links: u64,
}

impl Traffic {
    pub fn sent(&self, convention: Convention) -> u64 {
        match convention {
            Convention::SenderOnceBroadcast => self.sent_once,
            Convention::PerLink => self.sent_links,
        }
    }

    pub fn total(&self, convention: Convention) -> u64 {
        self.received + self.sent(convention)
    }
}

/// Per-node, per-iteration element counts. Iterations are numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CommLedger {
    nodes: Vec<NodeRole>,
    iterations: Vec<Vec<Traffic>>,
}

impl CommLedger {
    pub fn new(nodes: Vec<NodeRole>) -> Self {
        Self {
            nodes,
            iterations: Vec::new(),
        }
    }

    pub fn nodes(&self) -> &[NodeRole] {
        &self.nodes
    }

    pub fn iterations(&self) -> usize {
        self.iterations.len()
    }

    pub(crate) fn open_iteration(&mut self) {
        self.iterations
            .push(vec![Traffic::default(); self.nodes.len()]);
    }

    fn current(&mut self) -> &mut [Traffic] {
        self.iterations
            .last_mut()
            .expect("traffic recorded outside an iteration")
    }

    pub(crate) fn record_send(&mut self, node: usize, len: u64, fanout: u64) {
        let t = &mut self.current()[node];
        t.sent_once += len;
        t.sent_links += len * fanout;
    }

    pub(crate) fn record_receive(&mut self, node: usize, len: u64) {
        self.current()[node].received += len;
    }

    /// Traffic of `node` (index into `nodes()`) at 1-based `iteration`.
    pub fn traffic(&self, node: usize, iteration: usize) -> Traffic {
        self.iterations[iteration - 1][node]
    }

    /// Every `(iteration, node, traffic)` triple in iteration-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, NodeRole, Traffic)> + '_ {
        self.iterations
            .iter()
            .enumerate()
            .flat_map(move |(k, row)| {
                row.iter()
                    .zip(&self.nodes)
                    .map(move |(t, role)| (k + 1, *role, *t))
            })
    }

    /// Sum over all iterations for one node.
    pub fn node_total(&self, node: usize, convention: Convention) -> u64 {
        self.iterations
            .iter()
            .map(|row| row[node].total(convention))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions_differ_only_for_broadcasts() {
        let mut l = CommLedger::new(vec![NodeRole::ColWorker(0), NodeRole::ColWorker(1)]);
        l.open_iteration();
        l.record_send(0, 10, 3);
        l.record_receive(1, 10);
        let t = l.traffic(0, 1);
        assert_eq!(t.total(Convention::SenderOnceBroadcast), 10);
        assert_eq!(t.total(Convention::PerLink), 30);
        assert_eq!(l.traffic(1, 1).received, 10);
        assert_eq!(l.entries().count(), 2);
    }

    #[test]
    fn role_labels() {
        assert_eq!(NodeRole::GridWorker(1, 2).to_string(), "grid-1-2");
        assert_eq!(NodeRole::SegmentCentral(0).to_string(), "central-0");
        assert!(!NodeRole::Central.is_worker());
    }
}
