//! Tokenizer for the formula body of a TPTP `fof` record.

use super::{TokenFormat, TokenSeq, TptpError};

/// Split a formula body into tokens: every name, variable, bracket, comma
/// and connective becomes exactly one token.
pub fn tokenize(input: &str) -> Result<TokenSeq, TptpError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' | b')' | b'[' | b']' | b',' | b':' | b'~' | b'&' | b'|' | b'?' => {
                tokens.push((b as char).to_string());
                i += 1;
            }
            b'!' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    tokens.push("!=".to_string());
                    i += 2;
                } else {
                    tokens.push("!".to_string());
                    i += 1;
                }
            }
            b'=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push("=>".to_string());
                    i += 2;
                } else {
                    tokens.push("=".to_string());
                    i += 1;
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'=') && bytes.get(i + 2) == Some(&b'>') {
                    tokens.push("<=>".to_string());
                    i += 3;
                } else {
                    return Err(lex_err(input, i));
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push(input[start..i].to_string());
            }
            _ => return Err(lex_err(input, i)),
        }
    }
    Ok(TokenSeq::new(tokens, TokenFormat::Standard))
}

fn lex_err(input: &str, offset: usize) -> TptpError {
    let ch = input[offset..].chars().next().unwrap_or('\u{fffd}');
    TptpError::Lexical { offset, ch }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_statement_tokenizes_to_standard_row() {
        let seq = tokenize("![A] : (v1_xboole_0(A) => v1_finset_1(A))").unwrap();
        assert_eq!(
            seq.joined(),
            "! [ A ] : ( v1_xboole_0 ( A ) => v1_finset_1 ( A ) )"
        );
    }

    #[test]
    fn single_atom() {
        assert_eq!(tokenize("p").unwrap().tokens, vec!["p"]);
    }

    #[test]
    fn two_constant_equality() {
        assert_eq!(tokenize("a = b").unwrap().tokens, vec!["a", "=", "b"]);
    }

    #[test]
    fn disequality_is_one_token() {
        assert_eq!(tokenize("a != b").unwrap().tokens, vec!["a", "!=", "b"]);
    }

    #[test]
    fn illegal_character_reports_byte_offset() {
        match tokenize("p & $true") {
            Err(TptpError::Lexical { offset, ch }) => {
                assert_eq!(offset, 4);
                assert_eq!(ch, '$');
            }
            other => panic!("expected lexical error, got {other:?}"),
        }
    }

    #[test]
    fn lone_angle_bracket_is_lexical_error() {
        assert!(matches!(
            tokenize("a <= b"),
            Err(TptpError::Lexical { offset: 2, .. })
        ));
    }
}
