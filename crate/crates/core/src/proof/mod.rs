//! Proof DAGs and the transforms deriving training targets from them:
//! compaction, nested-list representations, respecting sequences, the
//! ATP-induced premise order and subproof extraction.

mod dag;
mod io;
mod nested;
mod order;
mod subproof;

pub use dag::{NodeKind, ProofDag, ProofNode};
pub use io::{read_proofs, tstp_to_proof, write_proofs, LoadedProof};
pub use nested::{nested_list, respecting_sequences, respects, NestedList};
pub use order::atp_order;
pub use subproof::{extract_subproofs, Subproof};

use std::fmt;

#[derive(Debug)]
pub enum ProofError {
    /// A DAG invariant is violated; names the offending node.
    Invalid { node: String, msg: String },
    /// ATP-induced ordering requested but a lemma carries no index.
    MissingLemmaIndex { node: String },
    /// Malformed proof-file line.
    Format { line: usize, msg: String },
    Io(std::io::Error),
}

impl ProofError {
    fn invalid(node: &str, msg: impl Into<String>) -> Self {
        ProofError::Invalid {
            node: node.to_string(),
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofError::Invalid { node, msg } => write!(f, "node {node:?}: {msg}"),
            ProofError::MissingLemmaIndex { node } => {
                write!(f, "lemma {node:?} has no lemma_index")
            }
            ProofError::Format { line, msg } => write!(f, "line {line}: {msg}"),
            ProofError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for ProofError {}

impl From<std::io::Error> for ProofError {
    fn from(e: std::io::Error) -> Self {
        ProofError::Io(e)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::{NodeKind, ProofDag, ProofNode};

    /// The compacted worked example: FALSE derived from two branches,
    /// `c_0_15 <- {t123, t72}` and `c_0_14 <- {c_0_13 <- {t72, t113}, t107}`.
    pub(crate) fn figure_tree() -> ProofDag {
        ProofDag::new(vec![
            ProofNode::leaf("t123", NodeKind::Premise),
            ProofNode::leaf("t72", NodeKind::Premise),
            ProofNode::leaf("t113", NodeKind::Premise),
            ProofNode::leaf("t107", NodeKind::Premise),
            ProofNode::lemma("c_0_13", &["t72", "t113"], 13),
            ProofNode::lemma("c_0_14", &["c_0_13", "t107"], 14),
            ProofNode::lemma("c_0_15", &["t123", "t72"], 15),
            ProofNode::false_node("false", &["c_0_15", "c_0_14"]),
        ])
        .unwrap()
    }

    /// A one-premise refutation.
    pub(crate) fn single_premise_proof() -> ProofDag {
        ProofDag::new(vec![
            ProofNode::leaf("neg_conj", NodeKind::NegatedConjecture),
            ProofNode::leaf("p", NodeKind::Premise),
            ProofNode::false_node("false", &["neg_conj", "p"]),
        ])
        .unwrap()
    }
}
