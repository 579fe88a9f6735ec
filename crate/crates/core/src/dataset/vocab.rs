//! Source and target vocabularies with reserved tokens.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TrainingExample;

pub const PAD_ID: u32 = 0;
pub const BOS_ID: u32 = 1;
pub const EOS_ID: u32 = 2;
pub const UNK_ID: u32 = 3;

pub const RESERVED: [&str; 4] = ["<pad>", "<bos>", "<eos>", "<unk>"];

/// One side's token table; ids 0..4 are reserved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct VocabSide {
    tokens: Vec<String>,
    #[serde(skip)]
    index: BTreeMap<String, u32>,
}

impl VocabSide {
    /// Build from (token, frequency) counts: tokens below `min_freq` are
    /// left out and encode to UNK; ids are assigned by descending
    /// frequency, then lexicographically.
    pub fn from_counts(counts: &BTreeMap<String, usize>, min_freq: usize) -> Self {
        let mut entries: Vec<(&String, &usize)> =
            counts.iter().filter(|(_, &c)| c >= min_freq).collect();
        entries.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        let tokens: Vec<String> = RESERVED
            .iter()
            .map(|s| s.to_string())
            .chain(entries.into_iter().map(|(t, _)| t.clone()))
            .collect();
        Self::from(tokens)
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn id(&self, token: &str) -> u32 {
        self.index.get(token).copied().unwrap_or(UNK_ID)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    pub fn token(&self, id: u32) -> &str {
        self.tokens
            .get(id as usize)
            .map(|s| s.as_str())
            .unwrap_or(RESERVED[UNK_ID as usize])
    }

    pub fn encode(&self, tokens: &[String]) -> Vec<u32> {
        tokens.iter().map(|t| self.id(t)).collect()
    }

    pub fn decode(&self, ids: &[u32]) -> Vec<String> {
        ids.iter().map(|&id| self.token(id).to_string()).collect()
    }

    /// Non-reserved tokens in id order.
    pub fn content_tokens(&self) -> &[String] {
        &self.tokens[RESERVED.len()..]
    }
}

impl From<Vec<String>> for VocabSide {
    fn from(tokens: Vec<String>) -> Self {
        let index = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        VocabSide { tokens, index }
    }
}

impl From<VocabSide> for Vec<String> {
    fn from(side: VocabSide) -> Self {
        side.tokens
    }
}

/// Separate source and target vocabularies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub source: VocabSide,
    pub target: VocabSide,
}

/// Count tokens on both sides of the examples and build the tables.
pub fn build_vocab(examples: &[TrainingExample], min_freq: usize) -> Vocabulary {
    let mut src_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut tgt_counts: BTreeMap<String, usize> = BTreeMap::new();
    for ex in examples {
        for tok in &ex.source.tokens {
            *src_counts.entry(tok.clone()).or_insert(0) += 1;
        }
        for tok in &ex.target {
            *tgt_counts.entry(tok.clone()).or_insert(0) += 1;
        }
    }
    Vocabulary {
        source: VocabSide::from_counts(&src_counts, min_freq),
        target: VocabSide::from_counts(&tgt_counts, min_freq),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Provenance, SourceFormat, TargetOrdering};
    use crate::tptp::{TokenFormat, TokenSeq};

    fn example(source: &[&str], target: &[&str]) -> TrainingExample {
        TrainingExample {
            source: TokenSeq::new(
                source.iter().map(|s| s.to_string()).collect(),
                TokenFormat::Standard,
            ),
            target: target.iter().map(|s| s.to_string()).collect(),
            provenance: Provenance {
                theorem: "t".to_string(),
                proof_id: "t#0".to_string(),
                ordering: TargetOrdering::Permuted,
                format: SourceFormat::Standard,
                is_subproof: false,
                lemma: None,
            },
        }
    }

    #[test]
    fn reserved_tokens_come_first() {
        let vocab = build_vocab(&[example(&["a", "b"], &["x"])], 1);
        assert_eq!(vocab.source.size(), 6);
        assert_eq!(vocab.source.token(PAD_ID), "<pad>");
        assert_eq!(vocab.source.token(BOS_ID), "<bos>");
        assert_eq!(vocab.source.token(EOS_ID), "<eos>");
        assert_eq!(vocab.source.token(UNK_ID), "<unk>");
        assert_eq!(vocab.source.content_tokens(), &["a", "b"]);
    }

    #[test]
    fn ids_ordered_by_frequency_then_lexicographic() {
        let examples = vec![
            example(&["b", "b", "c", "a"], &["x"]),
            example(&["c"], &["x"]),
        ];
        let vocab = build_vocab(&examples, 1);
        // b and c both occur twice, a once: b, c (lex), then a.
        assert_eq!(vocab.source.content_tokens(), &["b", "c", "a"]);
        assert_eq!(vocab.source.id("b"), 4);
        assert_eq!(vocab.source.id("a"), 6);
    }

    #[test]
    fn below_min_freq_encodes_to_unk() {
        let examples = vec![example(&["a", "a", "b"], &["x", "x"])];
        let vocab = build_vocab(&examples, 2);
        assert!(!vocab.source.contains("b"));
        assert_eq!(
            vocab.source.encode(&["a".to_string(), "b".to_string()]),
            vec![4, UNK_ID]
        );
    }

    #[test]
    fn serde_roundtrip_rebuilds_the_index() {
        let vocab = build_vocab(&[example(&["a"], &["x", "y"])], 1);
        let json = serde_json::to_string(&vocab).unwrap();
        let back: Vocabulary = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vocab);
        assert_eq!(back.target.id("y"), vocab.target.id("y"));
    }
}
