//! Parse tree of an untyped first-order TPTP formula.

/// Universal or existential binder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn token(self) -> &'static str {
        match self {
            Quantifier::Forall => "!",
            Quantifier::Exists => "?",
        }
    }
}

/// The four binary connectives, loosest-binding last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Implies,
    Iff,
    And,
    Or,
}

impl BinaryOp {
    pub fn token(self) -> &'static str {
        match self {
            BinaryOp::Implies => "=>",
            BinaryOp::Iff => "<=>",
            BinaryOp::And => "&",
            BinaryOp::Or => "|",
        }
    }
}

/// Parse tree of a first-order formula (quantifiers, the four binary
/// connectives, negation, equality/disequality and application).
///
/// Disequality is kept as its own node (semantically a negated equality) so
/// that `a != b` serializes back to the infix form it was read from.
/// Quantifier nodes bind one or more variables; variable names are kept
/// verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FormulaAst {
    Quantified {
        quantifier: Quantifier,
        vars: Vec<String>,
        body: Box<FormulaAst>,
    },
    Binary {
        op: BinaryOp,
        left: Box<FormulaAst>,
        right: Box<FormulaAst>,
    },
    Negation(Box<FormulaAst>),
    Equality {
        negated: bool,
        left: Box<FormulaAst>,
        right: Box<FormulaAst>,
    },
    /// Predicate applied to zero or more terms.
    Atom { name: String, args: Vec<FormulaAst> },
    /// Term-level variable occurrence.
    Variable(String),
    /// Term-level function application; a constant has no arguments.
    Function { name: String, args: Vec<FormulaAst> },
}

impl FormulaAst {
    /// Variable occurrences not bound by any enclosing quantifier.
    pub fn free_variables(&self) -> Vec<String> {
        let mut free = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut free);
        free.dedup();
        free
    }

    fn collect_free(&self, bound: &mut Vec<String>, free: &mut Vec<String>) {
        match self {
            FormulaAst::Quantified { vars, body, .. } => {
                bound.extend(vars.iter().cloned());
                body.collect_free(bound, free);
                bound.truncate(bound.len() - vars.len());
            }
            FormulaAst::Binary { left, right, .. }
            | FormulaAst::Equality { left, right, .. } => {
                left.collect_free(bound, free);
                right.collect_free(bound, free);
            }
            FormulaAst::Negation(inner) => inner.collect_free(bound, free),
            FormulaAst::Atom { args, .. } | FormulaAst::Function { args, .. } => {
                for arg in args {
                    arg.collect_free(bound, free);
                }
            }
            FormulaAst::Variable(name) => {
                if !bound.iter().any(|b| b == name) && !free.contains(name) {
                    free.push(name.clone());
                }
            }
        }
    }
}
