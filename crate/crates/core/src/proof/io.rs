//! Proof files: newline-delimited JSON, one proof per line, plus a
//! best-effort converter from E-prover TSTP derivations.

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dag::{NodeKind, ProofDag, ProofNode};
use super::ProofError;

/// One ingested proof with its provenance ids.
#[derive(Debug, Clone)]
pub struct LoadedProof {
    pub theorem: String,
    pub proof_id: String,
    pub dag: ProofDag,
}

#[derive(Serialize, Deserialize)]
struct ProofLine {
    theorem: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    proof_id: Option<String>,
    nodes: Vec<ProofNode>,
}

/// Read a JSONL proof file. Proofs without an explicit id are numbered
/// `<theorem>#<n>` in order of appearance.
pub fn read_proofs(path: &Path) -> Result<Vec<LoadedProof>, ProofError> {
    let file = std::fs::File::open(path)?;
    read_proofs_from(BufReader::new(file))
}

pub fn read_proofs_from<R: Read>(reader: BufReader<R>) -> Result<Vec<LoadedProof>, ProofError> {
    let mut proofs = Vec::new();
    let mut per_theorem = std::collections::BTreeMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: ProofLine = serde_json::from_str(&line).map_err(|e| ProofError::Format {
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        let dag = ProofDag::new(parsed.nodes).map_err(|e| ProofError::Format {
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        let count = per_theorem.entry(parsed.theorem.clone()).or_insert(0usize);
        let proof_id = parsed
            .proof_id
            .unwrap_or_else(|| format!("{}#{}", parsed.theorem, count));
        *count += 1;
        proofs.push(LoadedProof {
            theorem: parsed.theorem,
            proof_id,
            dag,
        });
    }
    Ok(proofs)
}

pub fn write_proofs(path: &Path, proofs: &[LoadedProof]) -> Result<(), ProofError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for proof in proofs {
        let line = ProofLine {
            theorem: proof.theorem.clone(),
            proof_id: Some(proof.proof_id.clone()),
            nodes: proof.dag.nodes().cloned().collect(),
        };
        serde_json::to_writer(&mut file, &line).map_err(|e| ProofError::Format {
            line: 0,
            msg: e.to_string(),
        })?;
        file.write_all(b"\n")?;
    }
    Ok(())
}

/// Best-effort conversion of an E-prover TSTP derivation into a proof DAG.
/// Inference-rule details are dropped: a record derived by `inference(...)`
/// becomes a lemma whose parents are the referenced record names, a record
/// with a `file(...)` source becomes a premise (or the negated conjecture,
/// for the conjecture record), and a `$false` formula becomes the FALSE
/// node. Lemma indices follow the order of appearance.
pub fn tstp_to_proof(text: &str, theorem_hint: Option<&str>) -> Result<LoadedProof, ProofError> {
    let records = collect_records(text);
    if records.is_empty() {
        return Err(ProofError::Format {
            line: 0,
            msg: "no fof/cnf records found".to_string(),
        });
    }

    let mut names = BTreeSet::new();
    let mut parsed = Vec::new();
    for (lineno, record) in records {
        let fields = split_record(&record).ok_or_else(|| ProofError::Format {
            line: lineno,
            msg: "malformed fof/cnf record".to_string(),
        })?;
        names.insert(fields.0.clone());
        parsed.push((lineno, fields));
    }

    let mut theorem = theorem_hint.map(|s| s.to_string());
    let mut nodes = Vec::new();
    let mut next_index = 0u64;
    for (_lineno, (name, role, formula, source)) in parsed {
        let is_false = formula.trim_matches(|c| c == '(' || c == ')' || c == ' ') == "$false";
        let kind = if is_false {
            NodeKind::FalseNode
        } else if source.trim_start().starts_with("file(") || source.trim().is_empty() {
            if role == "conjecture" || role == "negated_conjecture" {
                theorem.get_or_insert_with(|| name.clone());
                NodeKind::NegatedConjecture
            } else {
                NodeKind::Premise
            }
        } else {
            NodeKind::Lemma
        };
        let parents = if kind == NodeKind::Premise || kind == NodeKind::NegatedConjecture {
            Vec::new()
        } else {
            referenced_names(&source, &names)
        };
        let lemma_index = if kind == NodeKind::Lemma {
            next_index += 1;
            Some(next_index)
        } else {
            None
        };
        nodes.push(ProofNode {
            id: name,
            kind,
            parents,
            lemma_index,
            formula: Some(formula),
        });
    }

    let theorem = theorem.unwrap_or_else(|| "unknown".to_string());
    let dag = ProofDag::new(nodes).map_err(|e| ProofError::Format {
        line: 0,
        msg: e.to_string(),
    })?;
    Ok(LoadedProof {
        theorem: theorem.clone(),
        proof_id: format!("{theorem}#tstp"),
        dag,
    })
}

/// Accumulate `fof(`/`cnf(`-led records, which may span lines, until their
/// parentheses balance and the trailing `).` appears.
fn collect_records(text: &str) -> Vec<(usize, String)> {
    let mut records = Vec::new();
    let mut buffer = String::new();
    let mut start_line = 0;
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        if buffer.is_empty() {
            if !(trimmed.starts_with("fof(") || trimmed.starts_with("cnf(")) {
                continue;
            }
            start_line = lineno + 1;
        }
        if !buffer.is_empty() {
            buffer.push(' ');
        }
        buffer.push_str(trimmed);
        if buffer.ends_with(").") && balanced(&buffer) {
            records.push((start_line, std::mem::take(&mut buffer)));
        }
    }
    records
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i64;
    let mut quoted = false;
    for ch in s.chars() {
        match ch {
            '\'' => quoted = !quoted,
            '(' | '[' if !quoted => depth += 1,
            ')' | ']' if !quoted => depth -= 1,
            _ => {}
        }
    }
    depth == 0
}

/// (name, role, formula, source) of one record; source is empty when the
/// record has only three fields.
fn split_record(record: &str) -> Option<(String, String, String, String)> {
    let inner = record
        .strip_prefix("fof(")
        .or_else(|| record.strip_prefix("cnf("))?
        .strip_suffix(").")?;
    let mut fields = Vec::new();
    let mut depth = 0i64;
    let mut quoted = false;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '\'' => quoted = !quoted,
            '(' | '[' if !quoted => depth += 1,
            ')' | ']' if !quoted => depth -= 1,
            ',' if depth == 0 && !quoted => {
                fields.push(inner[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
    }
    fields.push(inner[start..].trim().to_string());
    if fields.len() < 3 {
        return None;
    }
    let name = fields[0].clone();
    let role = fields[1].clone();
    let formula = fields[2].clone();
    let source = fields.get(3).cloned().unwrap_or_default();
    Some((name, role, formula, source))
}

/// Record names mentioned anywhere in an inference source expression.
fn referenced_names(source: &str, names: &BTreeSet<String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut token = String::new();
    for ch in source.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            token.push(ch);
        } else {
            if !token.is_empty() && names.contains(&token) && !out.contains(&token) {
                out.push(token.clone());
            }
            token.clear();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_roundtrip() {
        let line = r#"{"theorem":"t1","nodes":[
            {"id":"p","kind":"premise"},
            {"id":"nc","kind":"negated_conjecture"},
            {"id":"l","kind":"lemma","parents":["p","nc"],"lemma_index":1},
            {"id":"false","kind":"false_node","parents":["l"]}]}"#
            .replace('\n', "");
        let proofs = read_proofs_from(BufReader::new(line.as_bytes())).unwrap();
        assert_eq!(proofs.len(), 1);
        assert_eq!(proofs[0].theorem, "t1");
        assert_eq!(proofs[0].proof_id, "t1#0");
        assert_eq!(proofs[0].dag.len(), 4);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("proofs.jsonl");
        write_proofs(&path, &proofs).unwrap();
        let reread = read_proofs(&path).unwrap();
        assert_eq!(reread[0].proof_id, "t1#0");
        assert_eq!(reread[0].dag.len(), 4);
    }

    #[test]
    fn invalid_dag_reports_line() {
        let line = r#"{"theorem":"t1","nodes":[{"id":"p","kind":"premise"}]}"#;
        let err = read_proofs_from(BufReader::new(line.as_bytes())).unwrap_err();
        assert!(matches!(err, ProofError::Format { line: 1, .. }));
    }

    const TSTP: &str = r#"
# SZS output start CNFRefutation
fof(t1_test, conjecture, (p => q), file('test.p', t1_test)).
fof(ax_p, axiom, p, file('test.p', ax_p)).
fof(ax_pq, axiom, (p => q), file('test.p', ax_pq)).
fof(c_0_3, negated_conjecture, ~(p => q),
    inference(assume_negation,[status(cth)],[t1_test])).
cnf(c_0_4, negated_conjecture, (~q), inference(split_conjunct,[status(thm)],[c_0_3])).
cnf(c_0_5, plain, (q), inference(mp,[status(thm)],[inference(x,[status(thm)],[ax_p]), ax_pq])).
cnf(c_0_6, negated_conjecture, ($false),
    inference(cn,[status(cth)],[c_0_4, c_0_5])).
# SZS output end CNFRefutation
"#;

    #[test]
    fn tstp_converter_builds_a_valid_dag() {
        let proof = tstp_to_proof(TSTP, None).unwrap();
        assert_eq!(proof.theorem, "t1_test");
        let dag = &proof.dag;
        assert_eq!(dag.node("ax_p").unwrap().kind, NodeKind::Premise);
        assert_eq!(dag.node("t1_test").unwrap().kind, NodeKind::NegatedConjecture);
        assert_eq!(dag.node("c_0_6").unwrap().kind, NodeKind::FalseNode);
        // Nested inference sources contribute all referenced parents.
        assert_eq!(dag.node("c_0_5").unwrap().parents, vec!["ax_p", "ax_pq"]);
        assert_eq!(dag.node("c_0_4").unwrap().parents, vec!["c_0_3"]);
        // Compaction then splices the single-parent chain under the conjecture.
        let compacted = dag.compact();
        assert_eq!(compacted.node("c_0_6").unwrap().parents, vec!["t1_test", "c_0_5"]);
    }

    #[test]
    fn empty_tstp_is_an_error() {
        assert!(tstp_to_proof("% nothing here", None).is_err());
    }
}
