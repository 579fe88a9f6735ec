//! Nested-list representations of a proof tree and the sequences that
//! respect it.
//!
//! The list representation of a tree rooted in a non-leaf node is a list
//! of list representations of its parents; the representation of a leaf is
//! its label. Shared nodes are duplicated per occurrence before listing,
//! which is where leaf repetitions come from.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dag::{NodeKind, ProofDag};

/// Recursive list-or-label structure over leaf node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestedList {
    Leaf(String),
    List(Vec<NestedList>),
}

impl NestedList {
    /// Leaf labels in left-to-right order.
    pub fn flatten(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<String>) {
        match self {
            NestedList::Leaf(label) => out.push(label.clone()),
            NestedList::List(items) => {
                for item in items {
                    item.flatten_into(out);
                }
            }
        }
    }
}

impl fmt::Display for NestedList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedList::Leaf(label) => f.write_str(label),
            NestedList::List(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Unshared view of the DAG: every occurrence of a shared node becomes its
/// own subtree.
#[derive(Debug, Clone)]
enum Tree {
    Leaf { label: String, kind: NodeKind },
    Node(Vec<Tree>),
}

impl Tree {
    fn premise_leaf_count(&self) -> usize {
        match self {
            Tree::Leaf { kind, .. } => usize::from(*kind != NodeKind::NegatedConjecture),
            Tree::Node(children) => children.iter().map(Tree::premise_leaf_count).sum(),
        }
    }
}

fn unshare(dag: &ProofDag, id: &str) -> Tree {
    let node = dag.node(id).expect("node id from the same dag");
    if node.is_leaf() {
        Tree::Leaf {
            label: node.id.clone(),
            kind: node.kind,
        }
    } else {
        Tree::Node(node.parents.iter().map(|p| unshare(dag, p)).collect())
    }
}

/// One seed-determined nested-list representation, rooted at the FALSE node.
pub fn nested_list(dag: &ProofDag, seed: u64) -> NestedList {
    let tree = unshare(dag, dag.false_id());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_list(&tree, &mut rng)
}

fn build_list<R: Rng>(tree: &Tree, rng: &mut R) -> NestedList {
    match tree {
        Tree::Leaf { label, .. } => NestedList::Leaf(label.clone()),
        Tree::Node(children) => {
            let mut order: Vec<usize> = (0..children.len()).collect();
            order.shuffle(rng);
            NestedList::List(order.iter().map(|&i| build_list(&children[i], rng)).collect())
        }
    }
}

/// Above this many candidate orderings, sequences are sampled instead of
/// enumerated.
const ENUMERATION_LIMIT: u64 = 20_000;

/// Up to `count` distinct flattenings of nested-list representations, with
/// negated-conjecture occurrences removed. Returns fewer than `count` only
/// when fewer distinct sequences exist.
pub fn respecting_sequences(dag: &ProofDag, count: usize, seed: u64) -> Vec<Vec<String>> {
    if count == 0 {
        return Vec::new();
    }
    let tree = unshare(dag, dag.false_id());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if ordering_bound(&tree) <= ENUMERATION_LIMIT {
        let mut all: Vec<Vec<String>> = enumerate_flattenings(&tree)
            .into_iter()
            .map(|f| strip_conjecture(dag, f))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        all.shuffle(&mut rng);
        all.truncate(count);
        return all;
    }

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let max_attempts = count.saturating_mul(50).max(1000);
    for _ in 0..max_attempts {
        let list = build_list(&tree, &mut rng);
        let seq = strip_conjecture(dag, list.flatten());
        if seen.insert(seq.clone()) {
            out.push(seq);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

fn strip_conjecture(dag: &ProofDag, seq: Vec<String>) -> Vec<String> {
    seq.into_iter()
        .filter(|label| {
            dag.node(label)
                .map(|n| n.kind != NodeKind::NegatedConjecture)
                .unwrap_or(true)
        })
        .collect()
}

/// Product of `|parents|!` over the internal nodes of the unshared tree,
/// saturating.
fn ordering_bound(tree: &Tree) -> u64 {
    match tree {
        Tree::Leaf { .. } => 1,
        Tree::Node(children) => {
            let mut bound: u64 = 1;
            for k in 1..=children.len() as u64 {
                bound = bound.saturating_mul(k);
            }
            for child in children {
                bound = bound.saturating_mul(ordering_bound(child));
            }
            bound
        }
    }
}

/// All distinct flattenings (conjecture occurrences still included).
fn enumerate_flattenings(tree: &Tree) -> BTreeSet<Vec<String>> {
    match tree {
        Tree::Leaf { label, .. } => BTreeSet::from([vec![label.clone()]]),
        Tree::Node(children) => {
            let child_sets: Vec<Vec<Vec<String>>> = children
                .iter()
                .map(|c| enumerate_flattenings(c).into_iter().collect())
                .collect();
            let mut out = BTreeSet::new();
            let indices: Vec<usize> = (0..children.len()).collect();
            permute(&indices, &mut Vec::new(), &mut |perm| {
                let mut partials: Vec<Vec<String>> = vec![Vec::new()];
                for &i in perm {
                    let mut next = Vec::new();
                    for partial in &partials {
                        for option in &child_sets[i] {
                            let mut seq = partial.clone();
                            seq.extend(option.iter().cloned());
                            next.push(seq);
                        }
                    }
                    partials = next;
                }
                out.extend(partials);
            });
            out
        }
    }
}

fn permute(rest: &[usize], chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if rest.is_empty() {
        visit(chosen);
        return;
    }
    for (i, &x) in rest.iter().enumerate() {
        let mut remaining = rest.to_vec();
        remaining.remove(i);
        chosen.push(x);
        permute(&remaining, chosen, visit);
        chosen.pop();
    }
}

/// Does the sequence (negated-conjecture occurrences removed) arise as the
/// flattening of some list representation? Decided by recursive interval
/// matching against the unshared tree.
pub fn respects(dag: &ProofDag, sequence: &[String]) -> bool {
    let tree = unshare(dag, dag.false_id());
    let seq: Vec<&str> = sequence
        .iter()
        .map(|s| s.as_str())
        .filter(|label| {
            dag.node(label)
                .map(|n| n.kind != NodeKind::NegatedConjecture)
                .unwrap_or(true)
        })
        .collect();
    if seq.len() != tree.premise_leaf_count() {
        return false;
    }
    matches(&tree, &seq)
}

fn matches(tree: &Tree, seq: &[&str]) -> bool {
    match tree {
        Tree::Leaf { label, kind } => {
            if *kind == NodeKind::NegatedConjecture {
                seq.is_empty()
            } else {
                seq.len() == 1 && seq[0] == label
            }
        }
        Tree::Node(children) => {
            let remaining: Vec<usize> = (0..children.len()).collect();
            assign(children, &remaining, seq)
        }
    }
}

/// Try to lead the sequence with each unused child's block, recursing on
/// the rest.
fn assign(children: &[Tree], remaining: &[usize], seq: &[&str]) -> bool {
    if remaining.is_empty() {
        return seq.is_empty();
    }
    for (slot, &child_idx) in remaining.iter().enumerate() {
        let child = &children[child_idx];
        let width = child.premise_leaf_count();
        if width > seq.len() {
            continue;
        }
        if matches(child, &seq[..width]) {
            let mut rest = remaining.to_vec();
            rest.remove(slot);
            if assign(children, &rest, &seq[width..]) {
                return true;
            }
        }
    }
    false
}
