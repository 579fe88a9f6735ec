//! Serialization of formula ASTs back to token sequences.

use super::ast::FormulaAst;
use super::{TokenFormat, TokenSeq};

/// Canonical standard-format tokenization. `parse(render_standard(a))`
/// is structurally identical to `a` for every valid AST.
pub fn render_standard(ast: &FormulaAst) -> TokenSeq {
    let mut tokens = Vec::new();
    standard(ast, &mut tokens);
    TokenSeq::new(tokens, TokenFormat::Standard)
}

fn standard(ast: &FormulaAst, out: &mut Vec<String>) {
    match ast {
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => {
            out.push(quantifier.token().to_string());
            out.push("[".to_string());
            for (i, v) in vars.iter().enumerate() {
                if i > 0 {
                    out.push(",".to_string());
                }
                out.push(v.clone());
            }
            out.push("]".to_string());
            out.push(":".to_string());
            standard_child(body, matches!(**body, FormulaAst::Binary { .. }), out);
        }
        FormulaAst::Binary { op, left, right } => {
            standard_child(left, needs_parens_in_binary(left), out);
            out.push(op.token().to_string());
            standard_child(right, needs_parens_in_binary(right), out);
        }
        FormulaAst::Negation(inner) => {
            out.push("~".to_string());
            standard_child(inner, matches!(**inner, FormulaAst::Binary { .. }), out);
        }
        FormulaAst::Equality {
            negated,
            left,
            right,
        } => {
            standard(left, out);
            out.push(if *negated { "!=" } else { "=" }.to_string());
            standard(right, out);
        }
        FormulaAst::Atom { name, args } | FormulaAst::Function { name, args } => {
            out.push(name.clone());
            if !args.is_empty() {
                out.push("(".to_string());
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(",".to_string());
                    }
                    standard(arg, out);
                }
                out.push(")".to_string());
            }
        }
        FormulaAst::Variable(name) => out.push(name.clone()),
    }
}

fn standard_child(child: &FormulaAst, parens: bool, out: &mut Vec<String>) {
    if parens {
        out.push("(".to_string());
        standard(child, out);
        out.push(")".to_string());
    } else {
        standard(child, out);
    }
}

/// A binary operand needs parentheses when it is itself a connective, or
/// when it ends in a quantifier whose body would otherwise swallow the
/// rest of the enclosing formula.
fn needs_parens_in_binary(child: &FormulaAst) -> bool {
    match child {
        FormulaAst::Binary { .. } => true,
        _ => ends_in_quantifier(child),
    }
}

fn ends_in_quantifier(ast: &FormulaAst) -> bool {
    match ast {
        FormulaAst::Quantified { .. } => true,
        FormulaAst::Negation(inner) => ends_in_quantifier(inner),
        _ => false,
    }
}

/// Polish prefix notation: operator first, then operand serializations.
/// A quantifier over k variables expands to k nested single-variable
/// binders; the output contains no brackets or commas.
pub fn to_prefix(ast: &FormulaAst) -> TokenSeq {
    let mut tokens = Vec::new();
    prefix(ast, &mut tokens);
    TokenSeq::new(tokens, TokenFormat::Prefix)
}

fn prefix(ast: &FormulaAst, out: &mut Vec<String>) {
    match ast {
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => {
            for v in vars {
                out.push(quantifier.token().to_string());
                out.push(v.clone());
            }
            prefix(body, out);
        }
        FormulaAst::Binary { op, left, right } => {
            out.push(op.token().to_string());
            prefix(left, out);
            prefix(right, out);
        }
        FormulaAst::Negation(inner) => {
            out.push("~".to_string());
            prefix(inner, out);
        }
        FormulaAst::Equality {
            negated,
            left,
            right,
        } => {
            out.push(if *negated { "!=" } else { "=" }.to_string());
            prefix(left, out);
            prefix(right, out);
        }
        FormulaAst::Atom { name, args } | FormulaAst::Function { name, args } => {
            out.push(name.clone());
            for arg in args {
                prefix(arg, out);
            }
        }
        FormulaAst::Variable(name) => out.push(name.clone()),
    }
}
