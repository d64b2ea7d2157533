//! Tokenizer and recursive-descent parser for the arithmetic text syntax
//! shared by field elements (`w+1`) and forms (`(x0+x1)^2 + w*x0*x2`).
//!
//! Grammar:
//!
//! ```text
//! sum     := ['-'] product (('+' | '-') product)*
//! product := power ('*' power)*
//! power   := atom ('^' integer)?
//! atom    := integer | 'w' | 'x' integer | '(' sum ')'
//! ```

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    /// The extension-field generator `w`.
    Gen,
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character '{ch}' at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token at offset {pos}: expected {expected}")]
    Unexpected { pos: usize, expected: &'static str },
    #[error("integer literal too large at offset {pos}")]
    Overflow { pos: usize },
    #[error("trailing input at offset {pos}")]
    Trailing { pos: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Gen,
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let read_int = |i: &mut usize| -> Result<u64, ParseError> {
        let start = *i;
        let mut v: u64 = 0;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(bytes[*i] - b'0')))
                .ok_or(ParseError::Overflow { pos: start })?;
            *i += 1;
        }
        Ok(v)
    };
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let v = read_int(&mut i)?;
                out.push((pos, Tok::Int(v)));
                continue;
            }
            b'x' | b'X' => {
                i += 1;
                if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                    return Err(ParseError::Unexpected {
                        pos: i,
                        expected: "variable index after 'x'",
                    });
                }
                let v = read_int(&mut i)?;
                out.push((pos, Tok::Var(v as usize)));
                continue;
            }
            b'w' => out.push((pos, Tok::Gen)),
            b'+' => out.push((pos, Tok::Plus)),
            b'-' => out.push((pos, Tok::Minus)),
            b'*' => out.push((pos, Tok::Star)),
            b'^' => out.push((pos, Tok::Caret)),
            b'(' => out.push((pos, Tok::LParen)),
            b')' => out.push((pos, Tok::RParen)),
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(ParseError::UnexpectedChar { ch, pos });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.peek() == Some(Tok::Minus) {
            self.at += 1;
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.product()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(Tok::Star) {
            self.at += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.at += 1;
            match self.peek() {
                Some(Tok::Int(k)) => {
                    self.at += 1;
                    let k = u32::try_from(k).map_err(|_| ParseError::Overflow { pos: self.pos() })?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                Some(_) => Err(ParseError::Unexpected {
                    pos: self.pos(),
                    expected: "integer exponent",
                }),
                None => Err(ParseError::UnexpectedEnd),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let tok = self.peek().ok_or(ParseError::UnexpectedEnd)?;
        self.at += 1;
        match tok {
            Tok::Int(v) => Ok(Expr::Int(v)),
            Tok::Gen => Ok(Expr::Gen),
            Tok::Var(i) => Ok(Expr::Var(i)),
            Tok::LParen => {
                let inner = self.sum()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    Some(_) => Err(ParseError::Unexpected {
                        pos: self.pos(),
                        expected: "')'",
                    }),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            _ => Err(ParseError::Unexpected {
                pos,
                expected: "number, 'w', variable or '('",
            }),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let e = p.sum()?;
    if p.at != p.toks.len() {
        return Err(ParseError::Trailing { pos: p.pos() });
    }
    Ok(e)
}
