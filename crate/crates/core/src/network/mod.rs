//! Networks, scalar linear codes and exhaustive solving.
//!
//! A network is a finite acyclic directed multigraph. Messages originate at
//! nodes; every edge carries a linear combination of its tail's inputs, and
//! every receiver recovers its demands as a linear combination of its own
//! inputs. The inputs of a node are the messages originating there (sorted
//! by id) followed by its incoming edges (sorted by id).

mod code;
mod generators;
mod solve;
mod transform;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::algo::toposort;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::RingError;

pub use code::{
    decode_search, transfer, verify, ScalarLinearCode, TransferVector, DECODE_SEARCH_LIMIT,
};
pub use generators::{
    broadcast, butterfly, choose_two, choose_two_field_solution, direct, relay, two_six,
    CHOOSE_TWO_LIMIT,
};
pub use solve::{solve_brute, SolveOptions, DEFAULT_BUDGET};
pub use transform::{lift_subring, map_code, product_code};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("invalid network: {}", join_defects(.0))]
    Invalid(Vec<Defect>),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("code does not match the network: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("search space {required} exceeds the budget {budget}")]
    Budget { required: String, budget: u64 },
    #[error("decoding search over {size}^{rows} candidates exceeds the guard")]
    DecodeGuard { size: u64, rows: usize },
    #[error("input code is not a verified solution{0}")]
    NotVerified(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("parameter out of range: {0}")]
    Range(String),
}

fn join_defects(ds: &[Defect]) -> String {
    ds.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub id: String,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Receiver {
    pub node: String,
    pub demands: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Network {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub messages: Vec<Message>,
    pub receivers: Vec<Receiver>,
}

/// One violated network invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    DuplicateNode(String),
    DuplicateEdge(String),
    DuplicateMessage(String),
    /// An edge endpoint, message source or receiver naming a missing node.
    UnknownNode {
        location: String,
        node: String,
    },
    UnknownDemand {
        receiver: String,
        message: String,
    },
    DuplicateReceiver(String),
    Cycle {
        node: String,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::DuplicateNode(n) => write!(f, "node {n:?} listed twice"),
            Defect::DuplicateEdge(e) => write!(f, "edge id {e:?} used twice"),
            Defect::DuplicateMessage(m) => write!(f, "message id {m:?} used twice"),
            Defect::UnknownNode { location, node } => {
                write!(f, "{location} refers to unknown node {node:?}")
            }
            Defect::UnknownDemand { receiver, message } => {
                write!(
                    f,
                    "receiver {receiver:?} demands unknown message {message:?}"
                )
            }
            Defect::DuplicateReceiver(n) => write!(f, "receiver {n:?} listed twice"),
            Defect::Cycle { node } => write!(f, "cycle through node {node:?}"),
        }
    }
}

/// A node input: a message (index into `messages`) or an incoming edge (index into `edges`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Input {
    Message(usize),
    Edge(usize),
}

/// Lookup structure for a validated network.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    /// Edges in an order where every edge follows the incoming edges of its tail.
    pub order: Vec<usize>,
    /// Inputs per node index.
    pub inputs: Vec<Vec<Input>>,
    pub node_index: BTreeMap<String, usize>,
    pub edge_index: BTreeMap<String, usize>,
    pub message_index: BTreeMap<String, usize>,
}

impl Network {
    pub fn from_json(s: &str) -> Result<Self, NetworkError> {
        serde_json::from_str(s).map_err(|e| NetworkError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serializes")
    }

    /// Every violated invariant; empty iff the network is valid.
    pub fn validate(&self) -> Vec<Defect> {
        let mut defects = Vec::new();
        let mut nodes = BTreeSet::new();
        for n in &self.nodes {
            if !nodes.insert(n.as_str()) {
                defects.push(Defect::DuplicateNode(n.clone()));
            }
        }
        let unknown = |location: String, node: &str, defects: &mut Vec<Defect>| {
            if !nodes.contains(node) {
                defects.push(Defect::UnknownNode {
                    location,
                    node: node.to_string(),
                });
            }
        };
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert(e.id.as_str()) {
                defects.push(Defect::DuplicateEdge(e.id.clone()));
            }
            unknown(format!("tail of edge {:?}", e.id), &e.tail, &mut defects);
            unknown(format!("head of edge {:?}", e.id), &e.head, &mut defects);
        }
        let mut msgs = BTreeSet::new();
        for m in &self.messages {
            if !msgs.insert(m.id.as_str()) {
                defects.push(Defect::DuplicateMessage(m.id.clone()));
            }
            unknown(
                format!("source of message {:?}", m.id),
                &m.source,
                &mut defects,
            );
        }
        let mut receivers = BTreeSet::new();
        for r in &self.receivers {
            if !receivers.insert(r.node.as_str()) {
                defects.push(Defect::DuplicateReceiver(r.node.clone()));
            }
            unknown("receiver".to_string(), &r.node, &mut defects);
            for d in &r.demands {
                if !msgs.contains(d.as_str()) {
                    defects.push(Defect::UnknownDemand {
                        receiver: r.node.clone(),
                        message: d.clone(),
                    });
                }
            }
        }
        if defects.is_empty() {
            if let Err(node) = self.node_order() {
                defects.push(Defect::Cycle { node });
            }
        }
        defects
    }

    /// Node indices in topological order, or a node on a cycle.
    fn node_order(&self) -> Result<Vec<usize>, String> {
        let mut g = DiGraph::<usize, ()>::new();
        let ids: Vec<_> = (0..self.nodes.len()).map(|i| g.add_node(i)).collect();
        let pos: BTreeMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        for e in &self.edges {
            g.add_edge(ids[pos[e.tail.as_str()]], ids[pos[e.head.as_str()]], ());
        }
        toposort(&g, None)
            .map(|v| v.into_iter().map(|n| g[n]).collect())
            .map_err(|c| self.nodes[g[c.node_id()]].clone())
    }

    pub(crate) fn layout(&self) -> Result<Layout, NetworkError> {
        let defects = self.validate();
        if !defects.is_empty() {
            return Err(NetworkError::Invalid(defects));
        }
        let node_index: BTreeMap<String, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let edge_index = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        let message_index = self
            .messages
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), i))
            .collect();

        let mut msgs_at: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (i, m) in self.messages.iter().enumerate() {
            msgs_at[node_index[&m.source]].push(i);
        }
        let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            in_edges[node_index[&e.head]].push(i);
            out_edges[node_index[&e.tail]].push(i);
        }
        let inputs = (0..self.nodes.len())
            .map(|v| {
                msgs_at[v].sort_by(|&a, &b| self.messages[a].id.cmp(&self.messages[b].id));
                in_edges[v].sort_by(|&a, &b| self.edges[a].id.cmp(&self.edges[b].id));
                msgs_at[v]
                    .iter()
                    .map(|&m| Input::Message(m))
                    .chain(in_edges[v].iter().map(|&e| Input::Edge(e)))
                    .collect()
            })
            .collect();
        let mut order = Vec::with_capacity(self.edges.len());
        for v in self.node_order().expect("validated") {
            out_edges[v].sort_by(|&a, &b| self.edges[a].id.cmp(&self.edges[b].id));
            order.extend(&out_edges[v]);
        }
        Ok(Layout {
            order,
            inputs,
            node_index,
            edge_index,
            message_index,
        })
    }

    /// Input labels of `node`: message ids, then incoming edge ids.
    pub fn inputs(&self, node: &str) -> Result<Vec<String>, NetworkError> {
        let l = self.layout()?;
        let v = *l
            .node_index
            .get(node)
            .ok_or_else(|| NetworkError::Mismatch(format!("no node {node:?}")))?;
        Ok(l.inputs[v]
            .iter()
            .map(|i| match *i {
                Input::Message(m) => self.messages[m].id.clone(),
                Input::Edge(e) => self.edges[e].id.clone(),
            })
            .collect())
    }
}
