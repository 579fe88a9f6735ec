//! Recursive-descent parser for standard-format token sequences.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `=>`, `<=>`; `&` and `|`
//! associate left, the arrows associate right, and a quantifier body
//! extends maximally to the right.

use super::ast::{BinaryOp, FormulaAst, Quantifier};
use super::{TokenSeq, TptpError};

pub fn parse(tokens: &TokenSeq) -> Result<FormulaAst, TptpError> {
    let mut p = Parser {
        tokens: &tokens.tokens,
        pos: 0,
    };
    let ast = p.formula()?;
    if p.pos != p.tokens.len() {
        return Err(p.error(&["<end>"]));
    }
    Ok(ast)
}

struct Parser<'a> {
    tokens: &'a [String],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.pos).map(|s| s.as_str())
    }

    fn bump(&mut self) -> Option<&'a str> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &'static str) -> Result<(), TptpError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[tok]))
        }
    }

    fn error(&self, expected: &[&'static str]) -> TptpError {
        TptpError::Parse {
            index: self.pos,
            found: self
                .peek()
                .map(|t| t.to_string())
                .unwrap_or_else(|| "<end>".to_string()),
            expected: expected.to_vec(),
        }
    }

    fn formula(&mut self) -> Result<FormulaAst, TptpError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<FormulaAst, TptpError> {
        let left = self.implies()?;
        if self.peek() == Some("<=>") {
            self.pos += 1;
            let right = self.iff()?;
            return Ok(FormulaAst::Binary {
                op: BinaryOp::Iff,
                left: Box::new(left),
                right: Box::new(right),
            });
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<FormulaAst, TptpError> {
        let left = self.disjunction()?;
        if self.peek() == Some("=>") {
            self.pos += 1;
            let right = self.implies()?;
            return Ok(FormulaAst::Binary {
                op: BinaryOp::Implies,
                left: Box::new(left),
                right: Box::new(right),
            });
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<FormulaAst, TptpError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some("|") {
            self.pos += 1;
            let right = self.conjunction()?;
            left = FormulaAst::Binary {
                op: BinaryOp::Or,
                left: Box::new(left),
                right: Box::new(right),
            };
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<FormulaAst, TptpError> {
        let mut left = self.unit()?;
        while self.peek() == Some("&") {
            self.pos += 1;
            let right = self.unit()?;
            left = FormulaAst::Binary {
                op: BinaryOp::And,
                left: Box::new(left),
                right: Box::new(right),
            };
        }
        Ok(left)
    }

    fn unit(&mut self) -> Result<FormulaAst, TptpError> {
        match self.peek() {
            Some("~") => {
                self.pos += 1;
                let inner = self.unit()?;
                Ok(FormulaAst::Negation(Box::new(inner)))
            }
            Some("!") | Some("?") => self.quantified(),
            Some("(") => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some(t) if is_name(t) || is_variable(t) => self.atomic(),
            _ => Err(self.error(&["~", "!", "?", "(", "<name>", "<variable>"])),
        }
    }

    fn quantified(&mut self) -> Result<FormulaAst, TptpError> {
        let quantifier = match self.bump() {
            Some("!") => Quantifier::Forall,
            Some("?") => Quantifier::Exists,
            _ => unreachable!(),
        };
        self.expect("[")?;
        let mut vars = Vec::new();
        loop {
            match self.peek() {
                Some(t) if is_variable(t) => {
                    vars.push(t.to_string());
                    self.pos += 1;
                }
                _ => return Err(self.error(&["<variable>"])),
            }
            match self.peek() {
                Some(",") => self.pos += 1,
                Some("]") => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error(&[",", "]"])),
            }
        }
        self.expect(":")?;
        let body = self.formula()?;
        Ok(FormulaAst::Quantified {
            quantifier,
            vars,
            body: Box::new(body),
        })
    }

    /// An atom, or an equality/disequality between two terms.
    fn atomic(&mut self) -> Result<FormulaAst, TptpError> {
        let left = self.term()?;
        match self.peek() {
            Some("=") | Some("!=") => {
                let negated = self.bump() == Some("!=");
                let right = self.term()?;
                Ok(FormulaAst::Equality {
                    negated,
                    left: Box::new(left),
                    right: Box::new(right),
                })
            }
            _ => match left {
                FormulaAst::Function { name, args } => Ok(FormulaAst::Atom { name, args }),
                // A bare variable is a term, not a formula.
                FormulaAst::Variable(_) => Err(self.error(&["=", "!="])),
                _ => unreachable!("term() only returns functions and variables"),
            },
        }
    }

    fn term(&mut self) -> Result<FormulaAst, TptpError> {
        match self.peek() {
            Some(t) if is_variable(t) => {
                self.pos += 1;
                Ok(FormulaAst::Variable(t.to_string()))
            }
            Some(t) if is_name(t) => {
                self.pos += 1;
                let name = t.to_string();
                let mut args = Vec::new();
                if self.peek() == Some("(") {
                    self.pos += 1;
                    loop {
                        args.push(self.term()?);
                        match self.peek() {
                            Some(",") => self.pos += 1,
                            Some(")") => {
                                self.pos += 1;
                                break;
                            }
                            _ => return Err(self.error(&[",", ")"])),
                        }
                    }
                }
                Ok(FormulaAst::Function { name, args })
            }
            _ => Err(self.error(&["<name>", "<variable>"])),
        }
    }
}

fn is_variable(tok: &str) -> bool {
    tok.chars().next().is_some_and(|c| c.is_ascii_uppercase())
        && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_name(tok: &str) -> bool {
    tok.chars()
        .next()
        .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}
