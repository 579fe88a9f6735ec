//! Turning proofs into training examples.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::proof::{
    atp_order, extract_subproofs, respecting_sequences, LoadedProof, NodeKind, ProofDag,
};
use crate::tptp::{parse, to_prefix, tokenize, StatementSet, TokenSeq};

use super::{mix_seed, DatasetError, Provenance, SourceFormat, TargetOrdering, TrainingExample};

/// One distinct (theorem, premise-set) pair with its representative proof.
#[derive(Debug, Clone)]
pub struct ProofRecord {
    pub theorem: String,
    pub proof_id: String,
    /// Deduplicated premise names, sorted.
    pub premises: Vec<String>,
    /// Compacted DAG of the representative proof.
    pub dag: ProofDag,
}

/// Counters for what the builder saw and skipped.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct BuildReport {
    pub proofs_seen: usize,
    pub distinct_pairs: usize,
    pub skipped_no_premises: usize,
    /// Subproof pipeline only: lemmas without usable clause text.
    pub skipped_missing_formula: usize,
    /// Subproof pipeline only: lemmas with no premise ancestors.
    pub skipped_empty_premises: usize,
}

/// A subproof training example plus the lemma identity and tree height
/// needed by the standalone subproof experiment.
#[derive(Debug, Clone)]
pub struct SubproofExample {
    pub example: TrainingExample,
    /// Lemma identity across proofs: the clause text.
    pub lemma_key: String,
    pub height: u32,
}

/// Builds examples from a statement set and ingested proofs.
pub struct DatasetBuilder<'a> {
    statements: &'a StatementSet,
    proofs: &'a [LoadedProof],
}

impl<'a> DatasetBuilder<'a> {
    pub fn new(statements: &'a StatementSet, proofs: &'a [LoadedProof]) -> Self {
        DatasetBuilder { statements, proofs }
    }

    /// Distinct (theorem, premise-set) pairs in input order, first proof
    /// winning, with premise-less proofs dropped.
    pub fn proof_records(&self) -> (Vec<ProofRecord>, BuildReport) {
        let mut report = BuildReport::default();
        let mut seen: BTreeSet<(String, Vec<String>)> = BTreeSet::new();
        let mut records = Vec::new();
        for proof in self.proofs {
            report.proofs_seen += 1;
            let premises = proof.dag.premises();
            if premises.is_empty() {
                report.skipped_no_premises += 1;
                continue;
            }
            if !seen.insert((proof.theorem.clone(), premises.clone())) {
                continue;
            }
            records.push(ProofRecord {
                theorem: proof.theorem.clone(),
                proof_id: proof.proof_id.clone(),
                premises,
                dag: proof.dag.compact(),
            });
        }
        report.distinct_pairs = records.len();
        (records, report)
    }

    /// Examples for every distinct pair under one (format, ordering)
    /// combination. `cap` bounds the `_100` variants.
    pub fn build_examples(
        &self,
        format: SourceFormat,
        ordering: TargetOrdering,
        cap: usize,
        seed: u64,
    ) -> Result<(Vec<TrainingExample>, BuildReport), DatasetError> {
        let (records, report) = self.proof_records();
        let mut examples = Vec::new();
        for record in &records {
            let source = self.source_tokens(&record.theorem, format)?;
            let pair_seed = mix_seed(seed, &[&record.theorem, &record.proof_id]);
            let targets = targets_for(record, ordering, cap, pair_seed)?;
            for target in targets {
                examples.push(TrainingExample {
                    source: source.clone(),
                    target,
                    provenance: Provenance {
                        theorem: record.theorem.clone(),
                        proof_id: record.proof_id.clone(),
                        ordering,
                        format,
                        is_subproof: false,
                        lemma: None,
                    },
                });
            }
        }
        Ok((examples, report))
    }

    /// Subproof examples: one per distinct (lemma statement, premise set)
    /// over the given proofs, targets in the ATP-induced order restricted
    /// to the subproof.
    pub fn subproof_examples(
        &self,
        format: SourceFormat,
        seed: u64,
    ) -> (Vec<SubproofExample>, BuildReport) {
        let mut report = BuildReport::default();
        let mut seen: BTreeSet<(String, BTreeSet<String>)> = BTreeSet::new();
        let mut out = Vec::new();
        for proof in self.proofs {
            report.proofs_seen += 1;
            let dag = proof.dag.compact();
            for sub in extract_subproofs(&dag) {
                if sub.premises.is_empty() {
                    report.skipped_empty_premises += 1;
                    continue;
                }
                let Some(text) = dag.node(&sub.lemma_id).and_then(|n| n.formula.clone()) else {
                    report.skipped_missing_formula += 1;
                    continue;
                };
                let Some(source) = clause_source(&text, format) else {
                    report.skipped_missing_formula += 1;
                    continue;
                };
                let key = (text.clone(), sub.premises.clone());
                if !seen.insert(key) {
                    continue;
                }
                let sub_seed = mix_seed(seed, &[&proof.proof_id, &sub.lemma_id]);
                let target = subproof_order(&dag, &sub.lemma_id, &sub.premises, sub_seed);
                out.push(SubproofExample {
                    example: TrainingExample {
                        source,
                        target,
                        provenance: Provenance {
                            theorem: proof.theorem.clone(),
                            proof_id: proof.proof_id.clone(),
                            ordering: TargetOrdering::OrderFromProof,
                            format,
                            is_subproof: true,
                            lemma: Some(sub.lemma_id.clone()),
                        },
                    },
                    lemma_key: text,
                    height: sub.height,
                });
            }
        }
        report.distinct_pairs = out.len();
        (out, report)
    }

    /// Subproof examples flattened to plain training examples, for the
    /// `augmented` data sets.
    pub fn augment_with_subproofs(
        &self,
        format: SourceFormat,
        seed: u64,
    ) -> (Vec<TrainingExample>, BuildReport) {
        let (subs, report) = self.subproof_examples(format, seed);
        (subs.into_iter().map(|s| s.example).collect(), report)
    }

    pub fn source_tokens(
        &self,
        theorem: &str,
        format: SourceFormat,
    ) -> Result<TokenSeq, DatasetError> {
        let stmt = self
            .statements
            .get(theorem)
            .ok_or_else(|| DatasetError::UnknownTheorem {
                theorem: theorem.to_string(),
            })?;
        Ok(match format {
            SourceFormat::Standard => tokenize(&stmt.body).expect("statement parsed at load"),
            SourceFormat::Prefix => to_prefix(&stmt.ast),
        })
    }
}

fn targets_for(
    record: &ProofRecord,
    ordering: TargetOrdering,
    cap: usize,
    pair_seed: u64,
) -> Result<Vec<Vec<String>>, DatasetError> {
    let mut rng = ChaCha8Rng::seed_from_u64(pair_seed);
    match ordering {
        TargetOrdering::Permuted => {
            let mut target = record.premises.clone();
            target.shuffle(&mut rng);
            Ok(vec![target])
        }
        TargetOrdering::Permuted100 => Ok(distinct_permutations(&record.premises, cap, &mut rng)),
        TargetOrdering::PermutedTree => Ok(respecting_sequences(&record.dag, 1, pair_seed)),
        TargetOrdering::PermutedTree100 => Ok(respecting_sequences(&record.dag, cap, pair_seed)),
        TargetOrdering::OrderFromProof => {
            atp_order(&record.dag, pair_seed).map(|o| vec![o]).map_err(|source| {
                DatasetError::OrderingUnavailable {
                    proof_id: record.proof_id.clone(),
                    source,
                }
            })
        }
    }
}

/// Up to `cap` distinct permutations: all of them (in lexicographic order)
/// when n! fits under the cap, otherwise sampled without repetition.
fn distinct_permutations(
    items: &[String],
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<String>> {
    if cap == 0 || items.is_empty() {
        return Vec::new();
    }
    let mut total: u128 = 1;
    for k in 1..=items.len() as u128 {
        total = total.saturating_mul(k);
        if total > cap as u128 {
            break;
        }
    }
    if total <= cap as u128 {
        return itertools::Itertools::permutations(items.iter().cloned(), items.len()).collect();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < cap && attempts < cap.saturating_mul(50).max(1000) {
        attempts += 1;
        let mut perm = items.to_vec();
        perm.shuffle(rng);
        if seen.insert(perm.clone()) {
            out.push(perm);
        }
    }
    out
}

/// ATP-induced premise order computed inside the subproof: each premise is
/// keyed by the smallest lemma index among its children that stay within
/// the lemma's ancestor cone, ties broken by a seeded shuffle.
fn subproof_order(
    dag: &ProofDag,
    lemma_id: &str,
    premises: &BTreeSet<String>,
    seed: u64,
) -> Vec<String> {
    let mut cone: BTreeSet<&str> = BTreeSet::new();
    collect_cone(dag, lemma_id, &mut cone);
    let children = dag.children_map();
    let mut keyed: Vec<(u64, String)> = premises
        .iter()
        .map(|p| {
            let key = children
                .get(p)
                .into_iter()
                .flatten()
                .filter(|c| cone.contains(c.as_str()))
                .filter_map(|c| dag.node(c).and_then(|n| n.lemma_index))
                .min()
                .unwrap_or(u64::MAX);
            (key, p.clone())
        })
        .collect();
    keyed.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(keyed.len());
    let mut i = 0;
    while i < keyed.len() {
        let mut j = i;
        while j < keyed.len() && keyed[j].0 == keyed[i].0 {
            j += 1;
        }
        let mut tie: Vec<String> = keyed[i..j].iter().map(|(_, p)| p.clone()).collect();
        tie.shuffle(&mut rng);
        out.extend(tie);
        i = j;
    }
    out
}

fn collect_cone<'a>(dag: &'a ProofDag, id: &'a str, cone: &mut BTreeSet<&'a str>) {
    if !cone.insert(id) {
        return;
    }
    if let Some(node) = dag.node(id) {
        for parent in &node.parents {
            collect_cone(dag, parent, cone);
        }
    }
}

/// Tokenize a clause for use as a subproof source sequence.
fn clause_source(text: &str, format: SourceFormat) -> Option<TokenSeq> {
    let trimmed = strip_outer_parens(text.trim());
    match format {
        SourceFormat::Standard => tokenize(trimmed).ok(),
        SourceFormat::Prefix => {
            let tokens = tokenize(trimmed).ok()?;
            parse(&tokens).ok().map(|ast| to_prefix(&ast))
        }
    }
}

fn strip_outer_parens(text: &str) -> &str {
    let bytes = text.as_bytes();
    if bytes.first() != Some(&b'(') || bytes.last() != Some(&b')') {
        return text;
    }
    let mut depth = 0i64;
    for (i, b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 && i != bytes.len() - 1 {
                    return text;
                }
            }
            _ => {}
        }
    }
    text[1..text.len() - 1].trim()
}
