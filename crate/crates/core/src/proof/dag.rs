//! Refutational proofs as DAGs: premises and the negated conjecture in the
//! leaves, FALSE in the root, children derived from their parents.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ProofError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Premise,
    NegatedConjecture,
    Lemma,
    FalseNode,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProofNode {
    pub id: String,
    pub kind: NodeKind,
    /// Nodes this one was derived from; empty for leaves.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parents: Vec<String>,
    /// Position in the prover's linearized output; required on lemma nodes
    /// when the ATP-induced ordering is requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma_index: Option<u64>,
    /// Clause/formula text, when known; used as the source statement of
    /// subproof training examples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
}

impl ProofNode {
    pub fn leaf(id: &str, kind: NodeKind) -> Self {
        ProofNode {
            id: id.to_string(),
            kind,
            parents: Vec::new(),
            lemma_index: None,
            formula: None,
        }
    }

    pub fn lemma(id: &str, parents: &[&str], index: u64) -> Self {
        ProofNode {
            id: id.to_string(),
            kind: NodeKind::Lemma,
            parents: parents.iter().map(|p| p.to_string()).collect(),
            lemma_index: Some(index),
            formula: None,
        }
    }

    pub fn false_node(id: &str, parents: &[&str]) -> Self {
        ProofNode {
            id: id.to_string(),
            kind: NodeKind::FalseNode,
            parents: parents.iter().map(|p| p.to_string()).collect(),
            lemma_index: None,
            formula: None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Premise | NodeKind::NegatedConjecture)
    }
}

/// A validated derivation DAG with a unique FALSE root.
#[derive(Debug, Clone)]
pub struct ProofDag {
    nodes: BTreeMap<String, ProofNode>,
    false_id: String,
}

impl ProofDag {
    /// Build and validate. Every invariant violation names the offending node.
    pub fn new(nodes: Vec<ProofNode>) -> Result<Self, ProofError> {
        let mut map = BTreeMap::new();
        for node in nodes {
            let id = node.id.clone();
            if map.insert(id.clone(), node).is_some() {
                return Err(ProofError::invalid(&id, "duplicate node id"));
            }
        }

        let mut false_id = None;
        for node in map.values() {
            for parent in &node.parents {
                if !map.contains_key(parent) {
                    return Err(ProofError::invalid(
                        &node.id,
                        format!("unknown parent {parent:?}"),
                    ));
                }
            }
            match node.kind {
                NodeKind::FalseNode => {
                    if false_id.replace(node.id.clone()).is_some() {
                        return Err(ProofError::invalid(&node.id, "second false node"));
                    }
                    if node.parents.is_empty() {
                        return Err(ProofError::invalid(&node.id, "false node has no parents"));
                    }
                }
                NodeKind::Premise | NodeKind::NegatedConjecture => {
                    if !node.parents.is_empty() {
                        return Err(ProofError::invalid(&node.id, "leaf node has parents"));
                    }
                }
                NodeKind::Lemma => {
                    if node.parents.is_empty() {
                        return Err(ProofError::invalid(&node.id, "lemma node has no parents"));
                    }
                }
            }
        }
        let false_id = false_id.ok_or_else(|| ProofError::invalid("<none>", "no false node"))?;

        let dag = ProofDag {
            nodes: map,
            false_id,
        };
        dag.check_false_is_childless()?;
        dag.check_acyclic_and_reaching()?;
        dag.check_lemma_indices()?;
        Ok(dag)
    }

    fn check_false_is_childless(&self) -> Result<(), ProofError> {
        for node in self.nodes.values() {
            if node.parents.iter().any(|p| *p == self.false_id) {
                return Err(ProofError::invalid(&node.id, "false node used as parent"));
            }
        }
        Ok(())
    }

    /// DFS from FALSE through parent links: rejects cycles and nodes that
    /// never reach FALSE.
    fn check_acyclic_and_reaching(&self) -> Result<(), ProofError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Unseen,
            Active,
            Done,
        }
        let mut marks: BTreeMap<&str, Mark> =
            self.nodes.keys().map(|k| (k.as_str(), Mark::Unseen)).collect();
        // Iterative DFS with an explicit stack.
        let mut stack: Vec<(&str, usize)> = vec![(self.false_id.as_str(), 0)];
        marks.insert(&self.false_id, Mark::Active);
        while let Some((id, child_idx)) = stack.pop() {
            let node = &self.nodes[id];
            if child_idx >= node.parents.len() {
                marks.insert(id, Mark::Done);
                continue;
            }
            stack.push((id, child_idx + 1));
            let parent = node.parents[child_idx].as_str();
            match marks[parent] {
                Mark::Active => return Err(ProofError::invalid(parent, "cycle through node")),
                Mark::Unseen => {
                    marks.insert(parent, Mark::Active);
                    stack.push((parent, 0));
                }
                Mark::Done => {}
            }
        }
        for (id, mark) in marks {
            if mark != Mark::Done {
                return Err(ProofError::invalid(id, "node does not reach the false node"));
            }
        }
        Ok(())
    }

    fn check_lemma_indices(&self) -> Result<(), ProofError> {
        let mut seen = BTreeMap::new();
        for node in self.nodes.values() {
            let (NodeKind::Lemma, Some(idx)) = (node.kind, node.lemma_index) else {
                continue;
            };
            if let Some(other) = seen.insert(idx, node.id.clone()) {
                return Err(ProofError::invalid(
                    &node.id,
                    format!("lemma_index {idx} also used by {other:?}"),
                ));
            }
            for parent in &node.parents {
                let p = &self.nodes[parent];
                if let (NodeKind::Lemma, Some(pidx)) = (p.kind, p.lemma_index) {
                    if pidx >= idx {
                        return Err(ProofError::invalid(
                            &node.id,
                            format!("lemma_index {idx} not above parent {parent:?} ({pidx})"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn false_id(&self) -> &str {
        &self.false_id
    }

    pub fn node(&self, id: &str) -> Option<&ProofNode> {
        self.nodes.get(id)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in id order.
    pub fn nodes(&self) -> impl Iterator<Item = &ProofNode> {
        self.nodes.values()
    }

    /// Premise ids in id order.
    pub fn premises(&self) -> Vec<String> {
        self.nodes
            .values()
            .filter(|n| n.kind == NodeKind::Premise)
            .map(|n| n.id.clone())
            .collect()
    }

    /// Map from node id to the ids deriving from it, in id order.
    pub fn children_map(&self) -> BTreeMap<String, Vec<String>> {
        let mut children: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for node in self.nodes.values() {
            for parent in &node.parents {
                children.entry(parent.clone()).or_default().push(node.id.clone());
            }
        }
        children
    }

    /// Splice out every lemma that has exactly one parent, repeating until
    /// none remains. Leaves and the FALSE node are never removed.
    pub fn compact(&self) -> ProofDag {
        let mut nodes = self.nodes.clone();
        loop {
            let target = nodes
                .values()
                .find(|n| n.kind == NodeKind::Lemma && n.parents.len() == 1)
                .map(|n| (n.id.clone(), n.parents[0].clone()));
            let Some((removed, replacement)) = target else {
                break;
            };
            nodes.remove(&removed);
            for node in nodes.values_mut() {
                for parent in node.parents.iter_mut() {
                    if *parent == removed {
                        *parent = replacement.clone();
                    }
                }
            }
        }
        ProofDag {
            nodes,
            false_id: self.false_id.clone(),
        }
    }

    /// Multiset of leaf labels reachable from FALSE in the unshared tree.
    pub fn leaf_multiset(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        self.count_leaves(&self.false_id, &mut counts);
        counts
    }

    fn count_leaves(&self, id: &str, counts: &mut BTreeMap<String, usize>) {
        let node = &self.nodes[id];
        if node.is_leaf() {
            *counts.entry(node.id.clone()).or_insert(0) += 1;
        } else {
            for parent in &node.parents {
                self.count_leaves(parent, counts);
            }
        }
    }
}

/// Transitive parent closures, in dependency order (memoized bottom-up).
pub(crate) fn ancestor_sets(dag: &ProofDag) -> BTreeMap<String, BTreeSet<String>> {
    let mut sets: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    // Repeated passes settle because the DAG is acyclic and small.
    let mut order: Vec<&ProofNode> = dag.nodes().collect();
    order.sort_by_key(|n| n.parents.len());
    let mut pending: Vec<&ProofNode> = order;
    while !pending.is_empty() {
        let mut next = Vec::new();
        for node in pending {
            if node.parents.iter().all(|p| sets.contains_key(p)) {
                let mut set = BTreeSet::new();
                for parent in &node.parents {
                    set.insert(parent.clone());
                    set.extend(sets[parent].iter().cloned());
                }
                sets.insert(node.id.clone(), set);
            } else {
                next.push(node);
            }
        }
        pending = next;
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Left-hand tree of the worked compaction example: clausification
    /// chains under each premise and chains above the two surviving
    /// derivations, all of which splice away.
    pub(crate) fn figure_tree_uncompacted() -> ProofDag {
        ProofDag::new(vec![
            ProofNode::leaf("t123", NodeKind::Premise),
            ProofNode::leaf("t72", NodeKind::Premise),
            ProofNode::leaf("t113", NodeKind::Premise),
            ProofNode::leaf("t107", NodeKind::Premise),
            ProofNode::lemma("c_0_1", &["t123"], 1),
            ProofNode::lemma("c_0_2", &["t72"], 2),
            ProofNode::lemma("c_0_3", &["t113"], 3),
            ProofNode::lemma("c_0_4", &["t107"], 4),
            ProofNode::lemma("c_0_13", &["c_0_2", "c_0_3"], 13),
            ProofNode::lemma("c_0_14", &["c_0_13", "c_0_4"], 14),
            ProofNode::lemma("c_0_15", &["c_0_1", "c_0_2"], 15),
            ProofNode::lemma("c_0_16", &["c_0_15"], 16),
            ProofNode::lemma("c_0_17", &["c_0_14"], 17),
            ProofNode::false_node("false", &["c_0_16", "c_0_17"]),
        ])
        .unwrap()
    }

    #[test]
    fn compaction_reproduces_the_right_hand_tree() {
        let compacted = figure_tree_uncompacted().compact();
        assert_eq!(compacted.len(), 8);
        assert_eq!(compacted.node("false").unwrap().parents, vec!["c_0_15", "c_0_14"]);
        assert_eq!(compacted.node("c_0_15").unwrap().parents, vec!["t123", "t72"]);
        assert_eq!(compacted.node("c_0_14").unwrap().parents, vec!["c_0_13", "t107"]);
        assert_eq!(compacted.node("c_0_13").unwrap().parents, vec!["t72", "t113"]);
    }

    #[test]
    fn compaction_is_idempotent_and_preserves_leaf_multiset() {
        let dag = figure_tree_uncompacted();
        let once = dag.compact();
        let twice = once.compact();
        assert_eq!(once.len(), twice.len());
        assert_eq!(dag.leaf_multiset(), once.leaf_multiset());
        let expected: BTreeMap<String, usize> = [("t123", 1), ("t72", 2), ("t113", 1), ("t107", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(once.leaf_multiset(), expected);
    }

    #[test]
    fn trivial_dag_is_unchanged_by_compaction() {
        let dag = ProofDag::new(vec![
            ProofNode::leaf("nc", NodeKind::NegatedConjecture),
            ProofNode::leaf("p", NodeKind::Premise),
            ProofNode::false_node("false", &["nc", "p"]),
        ])
        .unwrap();
        let compacted = dag.compact();
        assert_eq!(compacted.len(), 3);
        assert_eq!(compacted.node("false").unwrap().parents, vec!["nc", "p"]);
    }

    #[test]
    fn duplicate_false_node_rejected() {
        let err = ProofDag::new(vec![
            ProofNode::leaf("p", NodeKind::Premise),
            ProofNode::false_node("f1", &["p"]),
            ProofNode::false_node("f2", &["p"]),
        ])
        .unwrap_err();
        assert!(err.to_string().contains("second false node"));
    }

    #[test]
    fn unreachable_node_rejected() {
        let err = ProofDag::new(vec![
            ProofNode::leaf("p", NodeKind::Premise),
            ProofNode::leaf("q", NodeKind::Premise),
            ProofNode::lemma("stray", &["q"], 1),
            ProofNode::false_node("false", &["p"]),
        ])
        .unwrap_err();
        assert!(err.to_string().contains("does not reach the false node"));
    }

    #[test]
    fn cycle_rejected() {
        let err = ProofDag::new(vec![
            ProofNode::leaf("p", NodeKind::Premise),
            ProofNode::lemma("a", &["b"], 1),
            ProofNode::lemma("b", &["a", "p"], 2),
            ProofNode::false_node("false", &["a"]),
        ])
        .unwrap_err();
        assert!(err.to_string().contains("cycle"));
    }

    #[test]
    fn leaf_with_parents_rejected() {
        let err = ProofDag::new(vec![
            ProofNode {
                id: "p".to_string(),
                kind: NodeKind::Premise,
                parents: vec!["q".to_string()],
                lemma_index: None,
                formula: None,
            },
            ProofNode::leaf("q", NodeKind::Premise),
            ProofNode::false_node("false", &["p"]),
        ])
        .unwrap_err();
        assert!(err.to_string().contains("leaf node has parents"));
    }

    #[test]
    fn inconsistent_lemma_indices_rejected() {
        let err = ProofDag::new(vec![
            ProofNode::leaf("p", NodeKind::Premise),
            ProofNode::lemma("a", &["p"], 5),
            ProofNode::lemma("b", &["a"], 3),
            ProofNode::false_node("false", &["b"]),
        ])
        .unwrap_err();
        assert!(err.to_string().contains("not above parent"));
    }

    #[test]
    fn ancestor_sets_cover_transitive_parents() {
        let dag = figure_tree_uncompacted().compact();
        let sets = ancestor_sets(&dag);
        let c14: Vec<&str> = sets["c_0_14"].iter().map(|s| s.as_str()).collect();
        assert_eq!(c14, vec!["c_0_13", "t107", "t113", "t72"]);
    }
}
