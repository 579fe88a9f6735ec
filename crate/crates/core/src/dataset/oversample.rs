//! Occurrence-rate oversampling: examples with rare target premises are
//! repeated more often.

use num_rational::Ratio;

use super::TrainingExample;

/// Exact occurrence rate of one example within a corpus: the average, over
/// its premise set P, of how often each premise appears across all corpus
/// premise sets, normalized by the total premise count.
pub fn occurrence_rate(example: &TrainingExample, corpus: &[TrainingExample]) -> Ratio<u64> {
    let sets: Vec<std::collections::BTreeSet<&str>> =
        corpus.iter().map(|e| e.premise_set()).collect();
    let total: u64 = sets.iter().map(|s| s.len() as u64).sum();
    rate_of(&example.premise_set(), &sets, total)
}

/// Occurrence rates for every example of the corpus, aligned by index.
pub fn occurrence_rates(corpus: &[TrainingExample]) -> Vec<Ratio<u64>> {
    let sets: Vec<std::collections::BTreeSet<&str>> =
        corpus.iter().map(|e| e.premise_set()).collect();
    let total: u64 = sets.iter().map(|s| s.len() as u64).sum();
    sets.iter().map(|s| rate_of(s, &sets, total)).collect()
}

fn rate_of(
    premises: &std::collections::BTreeSet<&str>,
    sets: &[std::collections::BTreeSet<&str>],
    total: u64,
) -> Ratio<u64> {
    assert!(total > 0, "corpus premise sets must be nonempty");
    assert!(!premises.is_empty(), "example has an empty premise set");
    let appearance_sum: u64 = premises
        .iter()
        .map(|p| sets.iter().filter(|s| s.contains(p)).count() as u64)
        .sum();
    Ratio::new(appearance_sum, premises.len() as u64 * total)
}

/// One example's place in the oversampling plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OversampleWeight {
    /// Index into the input corpus.
    pub index: usize,
    pub occurrence_rate: Ratio<u64>,
    /// 1-based chunk; chunk i is repeated i times.
    pub chunk_index: usize,
    pub copies: usize,
}

/// Sort by occurrence rate descending (stable, so corpus order breaks
/// ties), split into 10 contiguous chunks whose sizes differ by at most
/// one with earlier chunks taking the extra element, and repeat chunk i's
/// examples i times.
pub fn oversample_plan(corpus: &[TrainingExample]) -> Vec<OversampleWeight> {
    let rates = occurrence_rates(corpus);
    let mut order: Vec<usize> = (0..corpus.len()).collect();
    order.sort_by(|&a, &b| rates[b].cmp(&rates[a]).then(a.cmp(&b)));

    let n = corpus.len();
    let base = n / 10;
    let extra = n % 10;
    let mut plan = Vec::with_capacity(n);
    let mut cursor = 0;
    for chunk_index in 1..=10usize {
        let size = base + usize::from(chunk_index <= extra);
        for &index in &order[cursor..cursor + size] {
            plan.push(OversampleWeight {
                index,
                occurrence_rate: rates[index],
                chunk_index,
                copies: chunk_index,
            });
        }
        cursor += size;
    }
    plan
}

/// The oversampled multiset: chunk i's examples appear i times.
pub fn oversample(corpus: &[TrainingExample]) -> Vec<TrainingExample> {
    let plan = oversample_plan(corpus);
    let mut out = Vec::new();
    for weight in &plan {
        for _ in 0..weight.copies {
            out.push(corpus[weight.index].clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{Provenance, SourceFormat, TargetOrdering};
    use crate::tptp::{TokenFormat, TokenSeq};

    fn example(theorem: &str, premises: &[&str]) -> TrainingExample {
        TrainingExample {
            source: TokenSeq::new(vec!["p".to_string()], TokenFormat::Standard),
            target: premises.iter().map(|p| p.to_string()).collect(),
            provenance: Provenance {
                theorem: theorem.to_string(),
                proof_id: format!("{theorem}#0"),
                ordering: TargetOrdering::Permuted,
                format: SourceFormat::Standard,
                is_subproof: false,
                lemma: None,
            },
        }
    }

    #[test]
    fn hand_computed_rates() {
        // Corpus {(t1,{a}), (t2,{a,b})}: rate(a)=2/3, rate(b)=1/3,
        // so OR(e1)=2/3 and OR(e2)=(2/3+1/3)/2=1/2.
        let corpus = vec![example("t1", &["a"]), example("t2", &["a", "b"])];
        assert_eq!(occurrence_rate(&corpus[0], &corpus), Ratio::new(2, 3));
        assert_eq!(occurrence_rate(&corpus[1], &corpus), Ratio::new(1, 2));
    }

    #[test]
    fn single_example_has_rate_one() {
        let corpus = vec![example("t1", &["a"])];
        assert_eq!(occurrence_rate(&corpus[0], &corpus), Ratio::new(1, 1));
    }

    #[test]
    fn repetitions_in_targets_count_once() {
        let corpus = vec![example("t1", &["a", "a", "b"]), example("t2", &["b"])];
        // Sets {a,b} and {b}: total 3, rate(a)=1/3, rate(b)=2/3.
        assert_eq!(occurrence_rate(&corpus[0], &corpus), Ratio::new(1, 2));
    }

    #[test]
    fn ten_strictly_decreasing_examples_expand_to_55() {
        // Example k shares premises with exactly the later ones, giving
        // strictly decreasing rates down the corpus.
        let mut corpus = Vec::new();
        for k in 0..10usize {
            let premises: Vec<String> = (0..=k).map(|j| format!("p{j}")).collect();
            let refs: Vec<&str> = premises.iter().map(|s| s.as_str()).collect();
            corpus.push(example(&format!("t{k}"), &refs));
        }
        let rates = occurrence_rates(&corpus);
        for w in rates.windows(2) {
            assert!(w[0] > w[1], "rates must strictly decrease");
        }
        let expanded = oversample(&corpus);
        assert_eq!(expanded.len(), 55);
        let plan = oversample_plan(&corpus);
        for (k, weight) in plan.iter().enumerate() {
            assert_eq!(weight.index, k);
            assert_eq!(weight.chunk_index, k + 1);
            assert_eq!(weight.copies, k + 1);
        }
    }

    #[test]
    fn single_example_lands_in_chunk_one() {
        let corpus = vec![example("t1", &["a"])];
        let plan = oversample_plan(&corpus);
        assert_eq!(plan.len(), 1);
        assert_eq!(plan[0].chunk_index, 1);
        assert_eq!(oversample(&corpus).len(), 1);
    }

    #[test]
    fn tied_rates_split_by_corpus_order() {
        // Twelve identical examples: all rates tie, chunks 1 and 2 take
        // two examples each by input order, the rest one each.
        let corpus: Vec<TrainingExample> =
            (0..12).map(|k| example(&format!("t{k}"), &["a"])).collect();
        let plan = oversample_plan(&corpus);
        let chunk_sizes: Vec<usize> = (1..=10)
            .map(|c| plan.iter().filter(|w| w.chunk_index == c).count())
            .collect();
        assert_eq!(chunk_sizes, vec![2, 2, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(plan[0].index, 0);
        assert_eq!(plan[1].index, 1);
        let expected: usize = plan.iter().map(|w| w.copies).sum();
        assert_eq!(oversample(&corpus).len(), expected);
    }
}
