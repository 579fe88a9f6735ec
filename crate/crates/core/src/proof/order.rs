//! ATP-induced premise order: premises compared by the linearization
//! position of their earliest child in the compacted DAG, ties broken by a
//! seeded shuffle.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::dag::{NodeKind, ProofDag};
use super::ProofError;

/// Premises sorted by their minimal child's lemma index. The FALSE node
/// sorts after every lemma (it closes the prover's output). Errors when a
/// premise's lemma child carries no index.
pub fn atp_order(dag: &ProofDag, seed: u64) -> Result<Vec<String>, ProofError> {
    let children = dag.children_map();
    let mut keyed: Vec<(u64, String)> = Vec::new();
    for premise in dag.premises() {
        let mut key = u64::MAX;
        for child in children.get(&premise).into_iter().flatten() {
            let node = dag.node(child).expect("child id from the same dag");
            let child_key = match node.kind {
                NodeKind::FalseNode => u64::MAX,
                NodeKind::Lemma => node.lemma_index.ok_or(ProofError::MissingLemmaIndex {
                    node: child.clone(),
                })?,
                NodeKind::Premise | NodeKind::NegatedConjecture => continue,
            };
            key = key.min(child_key);
        }
        keyed.push((key, premise));
    }
    keyed.sort();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(keyed.len());
    let mut i = 0;
    while i < keyed.len() {
        let mut j = i;
        while j < keyed.len() && keyed[j].0 == keyed[i].0 {
            j += 1;
        }
        let mut tie_class: Vec<String> = keyed[i..j].iter().map(|(_, p)| p.clone()).collect();
        tie_class.shuffle(&mut rng);
        out.extend(tie_class);
        i = j;
    }
    Ok(out)
}
