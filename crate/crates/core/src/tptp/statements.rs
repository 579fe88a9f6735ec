//! Statements file: one `fof(<name>, <role>, <formula>).` record per line.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use super::{parse, render_standard, to_prefix, tokenize, FormulaAst, TokenSeq, TptpError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Axiom,
    Conjecture,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Axiom => f.write_str("axiom"),
            Role::Conjecture => f.write_str("conjecture"),
        }
    }
}

/// One named fof record: the raw formula body plus its parse tree.
#[derive(Debug, Clone)]
pub struct Statement {
    pub name: String,
    pub role: Role,
    /// Formula body exactly as it appeared in the file (trimmed).
    pub body: String,
    pub ast: FormulaAst,
}

impl Statement {
    pub fn tokens_standard(&self) -> TokenSeq {
        render_standard(&self.ast)
    }

    pub fn tokens_prefix(&self) -> TokenSeq {
        to_prefix(&self.ast)
    }
}

/// All statements of a corpus, keyed by name.
#[derive(Debug, Clone, Default)]
pub struct StatementSet {
    statements: BTreeMap<String, Statement>,
}

impl StatementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_path(path: &Path) -> Result<Self, TptpError> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(BufReader::new(file))
    }

    pub fn from_reader<R: Read>(reader: BufReader<R>) -> Result<Self, TptpError> {
        let mut set = StatementSet::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            let stmt = parse_record(trimmed, lineno + 1)?;
            set.statements.insert(stmt.name.clone(), stmt);
        }
        Ok(set)
    }

    pub fn from_str_records(text: &str) -> Result<Self, TptpError> {
        Self::from_reader(BufReader::new(text.as_bytes()))
    }

    pub fn get(&self, name: &str) -> Option<&Statement> {
        self.statements.get(name)
    }

    pub fn insert(&mut self, stmt: Statement) {
        self.statements.insert(stmt.name.clone(), stmt);
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Statement> {
        self.statements.values()
    }
}

fn parse_record(line: &str, lineno: usize) -> Result<Statement, TptpError> {
    let record_err = |msg: String| TptpError::Record { line: lineno, msg };
    let inner = line
        .strip_prefix("fof(")
        .and_then(|rest| rest.strip_suffix(")."))
        .ok_or_else(|| record_err("expected `fof(<name>, <role>, <formula>).`".to_string()))?;

    let (name, rest) = split_top_level_comma(inner)
        .ok_or_else(|| record_err("missing `,` after the record name".to_string()))?;
    let (role, body) = split_top_level_comma(rest)
        .ok_or_else(|| record_err("missing `,` after the role".to_string()))?;

    let role = match role.trim() {
        "axiom" => Role::Axiom,
        "conjecture" => Role::Conjecture,
        other => return Err(record_err(format!("unsupported role {other:?}"))),
    };
    let body = body.trim().to_string();
    let tokens = tokenize(&body).map_err(|e| record_err(e.to_string()))?;
    let ast = parse(&tokens).map_err(|e| record_err(e.to_string()))?;
    Ok(Statement {
        name: name.trim().to_string(),
        role,
        body,
        ast,
    })
}

/// Split at the first comma not nested inside parentheses or brackets.
fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
% a comment line
fof(t1_test, conjecture, ![A] : (v1_xboole_0(A) => v1_finset_1(A))).

fof(ax1, axiom, p(a, b)).
";

    #[test]
    fn reads_records_and_skips_comments() {
        let set = StatementSet::from_str_records(SAMPLE).unwrap();
        assert_eq!(set.len(), 2);
        let t1 = set.get("t1_test").unwrap();
        assert_eq!(t1.role, Role::Conjecture);
        assert_eq!(
            t1.tokens_standard().joined(),
            "! [ A ] : ( v1_xboole_0 ( A ) => v1_finset_1 ( A ) )"
        );
        assert_eq!(set.get("ax1").unwrap().role, Role::Axiom);
    }

    #[test]
    fn body_commas_do_not_break_record_splitting() {
        let set = StatementSet::from_str_records("fof(a, axiom, p(f(x, y), z)).").unwrap();
        assert_eq!(set.get("a").unwrap().body, "p(f(x, y), z)");
    }

    #[test]
    fn bad_role_is_an_error_with_line_number() {
        let err = StatementSet::from_str_records("fof(a, lemma, p).").unwrap_err();
        assert!(matches!(err, TptpError::Record { line: 1, .. }));
    }

    #[test]
    fn malformed_record_is_an_error() {
        assert!(StatementSet::from_str_records("fof(a, axiom, p)").is_err());
    }
}
