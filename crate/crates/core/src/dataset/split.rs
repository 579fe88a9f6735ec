//! Theorem-level train/test split with the training-premise filter.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::proof::LoadedProof;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub train: Vec<String>,
    pub test: Vec<String>,
    /// Test theorems dropped because every one of their proofs uses a
    /// premise that never appears in a training proof.
    pub dropped: Vec<String>,
}

/// Seeded random split of the theorems carrying proofs, `ratio` of them
/// into training. A test theorem survives the filter iff at least one of
/// its proofs uses only premises seen in training proofs. Outputs are
/// sorted.
pub fn split_train_test(proofs: &[LoadedProof], ratio: f64, seed: u64) -> SplitResult {
    let mut theorems: Vec<String> = proofs
        .iter()
        .map(|p| p.theorem.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    theorems.shuffle(&mut rng);
    let n_train = (ratio * theorems.len() as f64).floor() as usize;
    let mut train: Vec<String> = theorems[..n_train].to_vec();
    let mut test_candidates: Vec<String> = theorems[n_train..].to_vec();
    train.sort();
    test_candidates.sort();

    let train_set: BTreeSet<&str> = train.iter().map(|s| s.as_str()).collect();
    let mut training_premises: BTreeSet<String> = BTreeSet::new();
    let mut by_theorem: BTreeMap<&str, Vec<&LoadedProof>> = BTreeMap::new();
    for proof in proofs {
        if train_set.contains(proof.theorem.as_str()) {
            training_premises.extend(proof.dag.premises());
        } else {
            by_theorem.entry(proof.theorem.as_str()).or_default().push(proof);
        }
    }

    let mut test = Vec::new();
    let mut dropped = Vec::new();
    for theorem in test_candidates {
        let covered = by_theorem
            .get(theorem.as_str())
            .into_iter()
            .flatten()
            .any(|proof| {
                proof
                    .dag
                    .premises()
                    .iter()
                    .all(|p| training_premises.contains(p))
            });
        if covered {
            test.push(theorem);
        } else {
            dropped.push(theorem);
        }
    }
    SplitResult {
        train,
        test,
        dropped,
    }
}
