//! Subproof extraction: intermediate lemmas of a compacted proof that are
//! not derived from the negated conjecture, with their premise ancestors.

use std::collections::{BTreeMap, BTreeSet};

use super::dag::{ancestor_sets, NodeKind, ProofDag};

/// A lemma together with all premise ancestors and the height of the
/// subproof tree rooted at it (leaves have height 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subproof {
    pub lemma_id: String,
    pub premises: BTreeSet<String>,
    pub height: u32,
}

/// One subproof per lemma with no negated conjecture among its ancestors,
/// in lemma-id order.
pub fn extract_subproofs(dag: &ProofDag) -> Vec<Subproof> {
    let ancestors = ancestor_sets(dag);
    let mut heights: BTreeMap<&str, u32> = BTreeMap::new();
    let mut out = Vec::new();
    for node in dag.nodes() {
        if node.kind != NodeKind::Lemma {
            continue;
        }
        let derived_from_conjecture = ancestors[&node.id].iter().any(|a| {
            dag.node(a).map(|n| n.kind == NodeKind::NegatedConjecture) == Some(true)
        });
        if derived_from_conjecture {
            continue;
        }
        let premises: BTreeSet<String> = ancestors[&node.id]
            .iter()
            .filter(|a| dag.node(a).map(|n| n.kind == NodeKind::Premise) == Some(true))
            .cloned()
            .collect();
        out.push(Subproof {
            lemma_id: node.id.clone(),
            premises,
            height: height_of(dag, &node.id, &mut heights),
        });
    }
    out
}

fn height_of<'a>(dag: &'a ProofDag, id: &'a str, memo: &mut BTreeMap<&'a str, u32>) -> u32 {
    if let Some(&h) = memo.get(id) {
        return h;
    }
    let node = dag.node(id).expect("node id from the same dag");
    let h = if node.is_leaf() {
        0
    } else {
        1 + node
            .parents
            .iter()
            .map(|p| {
                let p = dag.node(p).expect("parent id resolves").id.as_str();
                height_of(dag, p, memo)
            })
            .max()
            .unwrap_or(0)
    };
    memo.insert(id, h);
    h
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::figure_tree;
    use super::super::{ProofDag, ProofNode};
    use super::*;

    fn premise_set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn figure_tree_subproofs() {
        let subproofs = extract_subproofs(&figure_tree());
        assert_eq!(subproofs.len(), 3);
        assert_eq!(
            subproofs[0],
            Subproof {
                lemma_id: "c_0_13".to_string(),
                premises: premise_set(&["t72", "t113"]),
                height: 1,
            }
        );
        assert_eq!(
            subproofs[1],
            Subproof {
                lemma_id: "c_0_14".to_string(),
                premises: premise_set(&["t72", "t113", "t107"]),
                height: 2,
            }
        );
        assert_eq!(
            subproofs[2],
            Subproof {
                lemma_id: "c_0_15".to_string(),
                premises: premise_set(&["t123", "t72"]),
                height: 1,
            }
        );
    }

    #[test]
    fn lemmas_above_the_conjecture_are_excluded() {
        let dag = ProofDag::new(vec![
            ProofNode::leaf("nc", super::NodeKind::NegatedConjecture),
            ProofNode::leaf("p", super::NodeKind::Premise),
            ProofNode::leaf("q", super::NodeKind::Premise),
            ProofNode::lemma("good", &["p", "q"], 1),
            ProofNode::lemma("tainted", &["nc", "good"], 2),
            ProofNode::false_node("false", &["tainted"]),
        ])
        .unwrap();
        let subproofs = extract_subproofs(&dag);
        assert_eq!(subproofs.len(), 1);
        assert_eq!(subproofs[0].lemma_id, "good");
        assert_eq!(subproofs[0].height, 1);
    }

    #[test]
    fn height_one_subproofs_have_only_leaf_parents() {
        let subproofs = extract_subproofs(&figure_tree());
        for sp in subproofs.iter().filter(|s| s.height == 1) {
            let dag = figure_tree();
            let node = dag.node(&sp.lemma_id).unwrap();
            assert!(node
                .parents
                .iter()
                .all(|p| dag.node(p).unwrap().is_leaf()));
        }
    }
}
