//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | "(" formula ")" | "false" | "true" | ATOM
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end of
//! the line.

use std::fmt;

use super::formula::{is_keyword, Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken(char),
    Unexpected { found: String, expected: &'static str },
    InvalidAtom(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnknownToken(c) => write!(f, "unknown token {c:?}"),
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::InvalidAtom(s) => write!(f, "invalid atom name {s:?}"),
        }
    }
}

impl ParseError {
    pub(crate) fn invalid_atom(name: &str) -> ParseError {
        ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::InvalidAtom(name.to_string()),
        }
    }

    /// Shifts the position by a line offset, for errors inside multi-line files.
    pub fn offset_lines(mut self, lines: usize) -> ParseError {
        self.line += lines;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    False,
    True,
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Not => f.write_str("'!'"),
            Tok::And => f.write_str("'&'"),
            Tok::Or => f.write_str("'|'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::False => f.write_str("'false'"),
            Tok::True => f.write_str("'true'"),
            Tok::Ident(s) => write!(f, "atom '{s}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let single = |tok| Spanned {
            tok,
            line: start_line,
            column: start_col,
        };
        match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '!' => {
                bump(&mut chars);
                out.push(single(Tok::Not));
            }
            '&' => {
                bump(&mut chars);
                out.push(single(Tok::And));
            }
            '|' => {
                bump(&mut chars);
                out.push(single(Tok::Or));
            }
            '(' => {
                bump(&mut chars);
                out.push(single(Tok::LParen));
            }
            ')' => {
                bump(&mut chars);
                out.push(single(Tok::RParen));
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push(single(Tok::Arrow));
                } else {
                    return Err(ParseError {
                        line: start_line,
                        column: start_col,
                        kind: ParseErrorKind::UnknownToken('-'),
                    });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                let tok = match ident.as_str() {
                    "false" => Tok::False,
                    "true" => Tok::True,
                    _ => Tok::Ident(ident),
                };
                out.push(single(tok));
            }
            other => {
                return Err(ParseError {
                    line: start_line,
                    column: start_col,
                    kind: ParseErrorKind::UnknownToken(other),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> &Spanned {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            kind: ParseErrorKind::Unexpected {
                found: t.tok.to_string(),
                expected,
            },
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.advance();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.advance();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("')'"));
                }
                self.advance();
                Ok(inner)
            }
            Tok::False => {
                self.advance();
                Ok(Formula::Falsum)
            }
            Tok::True => {
                self.advance();
                Ok(Formula::True)
            }
            Tok::Ident(name) => {
                debug_assert!(!is_keyword(&name));
                self.advance();
                Ok(Formula::Atom(Atom::new_unchecked(&name)))
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses one formula; the whole input must be consumed.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.implication()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn observation_of_the_small_circuit() {
        assert_eq!(
            parse_formula("!C & !F").unwrap(),
            Formula::and(Formula::not(v("C")), Formula::not(v("F")))
        );
    }

    #[test]
    fn falsum_constant() {
        assert_eq!(parse_formula("false").unwrap(), Formula::Falsum);
        assert_eq!(parse_formula(" true ").unwrap(), Formula::True);
    }

    #[test]
    fn gate_rule() {
        assert_eq!(
            parse_formula("(A & B) & okX -> D").unwrap(),
            Formula::implies(Formula::and(Formula::and(v("A"), v("B")), v("okX")), v("D"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("a | b & c").unwrap(),
            Formula::or(v("a"), Formula::and(v("b"), v("c")))
        );
        assert_eq!(
            parse_formula("a -> b -> c").unwrap(),
            Formula::implies(v("a"), Formula::implies(v("b"), v("c")))
        );
        assert_eq!(
            parse_formula("!a & b").unwrap(),
            Formula::and(Formula::not(v("a")), v("b"))
        );
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(parse_formula("p # a comment\n").unwrap(), v("p"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("p &\n  $").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownToken('$'));

        let e = parse_formula("(p & q").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { .. }));

        let e = parse_formula("p q").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));

        assert!(parse_formula("").is_err());
        assert!(parse_formula("p - q").is_err());
    }
}
