//! Training-data construction: proofs to source/target examples under the
//! supported ordering variants, subproof augmentation, occurrence-rate
//! oversampling, the train/test split protocol and vocabularies.

mod builder;
mod io;
mod oversample;
mod split;
mod vocab;

pub use builder::{BuildReport, DatasetBuilder, ProofRecord, SubproofExample};
pub use io::{read_lines, write_examples, write_sources};
pub use oversample::{occurrence_rate, occurrence_rates, oversample, oversample_plan, OversampleWeight};
pub use split::{split_train_test, SplitResult};
pub use vocab::{build_vocab, VocabSide, Vocabulary, BOS_ID, EOS_ID, PAD_ID, UNK_ID};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::proof::ProofError;
use crate::tptp::TokenSeq;

/// Serialization chosen for source sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceFormat {
    Standard,
    Prefix,
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceFormat::Standard => f.write_str("standard"),
            SourceFormat::Prefix => f.write_str("prefix"),
        }
    }
}

/// How target premise sequences are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetOrdering {
    /// One uniform permutation of the deduplicated premise set.
    Permuted,
    /// Up to `cap` distinct permutations.
    Permuted100,
    /// One sequence respecting the compacted proof tree.
    PermutedTree,
    /// Up to `cap` distinct respecting sequences.
    PermutedTree100,
    /// The ATP-induced order.
    OrderFromProof,
}

impl fmt::Display for TargetOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TargetOrdering::Permuted => "permuted",
            TargetOrdering::Permuted100 => "permuted_100",
            TargetOrdering::PermutedTree => "permuted_tree",
            TargetOrdering::PermutedTree100 => "permuted_tree_100",
            TargetOrdering::OrderFromProof => "order_from_proof",
        };
        f.write_str(s)
    }
}

/// Where an example came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub theorem: String,
    pub proof_id: String,
    pub ordering: TargetOrdering,
    pub format: SourceFormat,
    pub is_subproof: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma: Option<String>,
}

/// One source/target pair with provenance metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingExample {
    pub source: TokenSeq,
    pub target: Vec<String>,
    pub provenance: Provenance,
}

impl TrainingExample {
    /// Deduplicated set of target premises.
    pub fn premise_set(&self) -> std::collections::BTreeSet<&str> {
        self.target.iter().map(|t| t.as_str()).collect()
    }
}

#[derive(Debug)]
pub enum DatasetError {
    /// A proof references a theorem absent from the statements file.
    UnknownTheorem { theorem: String },
    /// A tree-based ordering was requested but the proof data cannot
    /// support it.
    OrderingUnavailable { proof_id: String, source: ProofError },
    EmptyCorpus,
    Io(std::io::Error),
}

impl fmt::Display for DatasetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatasetError::UnknownTheorem { theorem } => {
                write!(f, "unknown theorem statement {theorem:?}")
            }
            DatasetError::OrderingUnavailable { proof_id, source } => {
                write!(f, "proof {proof_id:?} cannot provide the requested ordering: {source}")
            }
            DatasetError::EmptyCorpus => f.write_str("no usable examples in the corpus"),
            DatasetError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for DatasetError {}

impl From<std::io::Error> for DatasetError {
    fn from(e: std::io::Error) -> Self {
        DatasetError::Io(e)
    }
}

/// Stable 64-bit mix of a base seed and string parts, for per-item rngs.
pub(crate) fn mix_seed(base: u64, parts: &[&str]) -> u64 {
    // FNV-1a; kept local so outputs never depend on std's hasher.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ base.rotate_left(17);
    for part in parts {
        for b in part.as_bytes() {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}
