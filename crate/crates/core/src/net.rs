//! In-process message layer for the simulated nodes.
//!
//! Nodes never touch each other's state. During a compute phase each node
//! returns an [`Outbox`]; the driver posts outboxes in ascending node order
//! and the network appends to recipients' mailboxes and meters every
//! element in the [`CommLedger`]. Delivery order is therefore a pure
//! function of the node order, whatever thread ran each node.

use std::sync::Arc;

use crate::comm::{CommLedger, NodeRole};
use crate::linalg::CVector;

pub type NodeId = usize;

/// What a payload means to its receiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topic {
    /// Consensus value `v` (or segment `v_j`) from a hub.
    Consensus { segment: usize },
    /// A worker's local `u` (or `u_j^i`) for its hub.
    Replica { replica: usize, segment: usize },
    /// Estimated data `H_ij u_j^i` for same-replica peers.
    Estimate { replica: usize, segment: usize },
}

#[derive(Clone, Debug)]
pub struct Message {
    pub from: NodeId,
    pub topic: Topic,
    pub payload: Arc<CVector>,
}

#[derive(Debug)]
struct Envelope {
    to: Vec<NodeId>,
    topic: Topic,
    payload: Arc<CVector>,
}

/// Messages produced by one node in one phase.
#[derive(Debug, Default)]
pub struct Outbox {
    envelopes: Vec<Envelope>,
}

impl Outbox {
    pub fn send(&mut self, to: NodeId, topic: Topic, payload: CVector) {
        self.envelopes.push(Envelope {
            to: vec![to],
            topic,
            payload: Arc::new(payload),
        });
    }

    /// One payload to several peers; the sender pays once under the
    /// sender-once convention and once per peer under per-link. An empty
    /// peer list still counts as one transmission under sender-once.
    pub fn broadcast(&mut self, to: Vec<NodeId>, topic: Topic, payload: CVector) {
        self.envelopes.push(Envelope {
            to,
            topic,
            payload: Arc::new(payload),
        });
    }
}

pub struct Network {
    mailboxes: Vec<Vec<Message>>,
    ledger: CommLedger,
}

impl Network {
    pub fn new(roles: Vec<NodeRole>) -> Self {
        Self {
            mailboxes: vec![Vec::new(); roles.len()],
            ledger: CommLedger::new(roles),
        }
    }

    pub fn begin_iteration(&mut self) {
        self.ledger.open_iteration();
    }

    pub fn post(&mut self, from: NodeId, outbox: Outbox) {
        for env in outbox.envelopes {
            let len = env.payload.len() as u64;
            self.ledger.record_send(from, len, env.to.len() as u64);
            for &to in &env.to {
                self.ledger.record_receive(to, len);
                self.mailboxes[to].push(Message {
                    from,
                    topic: env.topic,
                    payload: Arc::clone(&env.payload),
                });
            }
        }
    }

    /// Posts outboxes in the order given (callers pass ascending node ids).
    pub fn post_all(&mut self, outboxes: impl IntoIterator<Item = (NodeId, Outbox)>) {
        for (from, ob) in outboxes {
            self.post(from, ob);
        }
    }

    pub fn take_inbox(&mut self, node: NodeId) -> Vec<Message> {
        std::mem::take(&mut self.mailboxes[node])
    }

    pub fn into_ledger(self) -> CommLedger {
        self.ledger
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comm::Convention;

    #[test]
    fn broadcast_is_metered_per_convention() {
        let roles = vec![
            NodeRole::ColWorker(0),
            NodeRole::ColWorker(1),
            NodeRole::ColWorker(2),
        ];
        let mut net = Network::new(roles);
        net.begin_iteration();
        let mut ob = Outbox::default();
        ob.broadcast(
            vec![1, 2],
            Topic::Estimate {
                replica: 0,
                segment: 0,
            },
            CVector::zeros(5),
        );
        net.post(0, ob);
        let ledger = {
            assert_eq!(net.take_inbox(1).len(), 1);
            assert_eq!(net.take_inbox(2).len(), 1);
            assert!(net.take_inbox(1).is_empty());
            net.into_ledger()
        };
        let t0 = ledger.traffic(0, 1);
        assert_eq!(t0.total(Convention::SenderOnceBroadcast), 5);
        assert_eq!(t0.total(Convention::PerLink), 10);
        assert_eq!(ledger.traffic(2, 1).received, 5);
    }
}
