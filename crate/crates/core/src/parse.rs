//! Text input for polynomials.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! poly   := [+|-] term ((+|-) term)*
//! term   := factor (* factor)*
//! factor := integer [^ integer] | variable [^ integer]
//! ```
//!
//! Integers may be arbitrarily large (reduced into the coefficient field);
//! variables must belong to the target ring. Errors carry the byte offset
//! of the offending token.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRc;
use num::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(String),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(src[start..i].to_string())));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Var(src[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Token)>,
    pos: usize,
    ring: &'a RingRc,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<(usize, Token)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse_exponent(&mut self) -> Result<u32> {
        // Caller consumed '^'.
        match self.bump() {
            Some((p, Token::Int(s))) => {
                let e: u32 = s.parse().map_err(|_| Error::Parse {
                    pos: p,
                    msg: "exponent too large".into(),
                })?;
                if e > u16::MAX as u32 {
                    return Err(Error::Parse {
                        pos: p,
                        msg: "exponent too large".into(),
                    });
                }
                Ok(e)
            }
            Some((p, _)) => Err(Error::Parse {
                pos: p,
                msg: "expected integer exponent after `^`".into(),
            }),
            None => Err(Error::Parse {
                pos: self.end,
                msg: "expected integer exponent after `^`".into(),
            }),
        }
    }

    /// One term: a product of integer and variable factors.
    fn parse_term(&mut self) -> Result<(Scalar, Monomial)> {
        let field = self.ring.field();
        let mut coeff = field.one();
        let mut mono = Monomial::one();
        loop {
            match self.bump() {
                Some((p, Token::Int(s))) => {
                    let n: BigInt = s.parse().map_err(|_| Error::Parse {
                        pos: p,
                        msg: "bad integer literal".into(),
                    })?;
                    let mut c = field.from_bigint(&n);
                    if matches!(self.peek(), Some(Token::Caret)) {
                        self.bump();
                        let e = self.parse_exponent()?;
                        let base = c.clone();
                        c = field.one();
                        for _ in 0..e {
                            c = field.mul(&c, &base);
                        }
                    }
                    coeff = field.mul(&coeff, &c);
                }
                Some((p, Token::Var(name))) => {
                    let idx = self.ring.var_index(&name).map_err(|_| Error::Parse {
                        pos: p,
                        msg: format!("unknown variable `{name}`"),
                    })?;
                    let mut e = 1u32;
                    if matches!(self.peek(), Some(Token::Caret)) {
                        self.bump();
                        e = self.parse_exponent()?;
                    }
                    mono = mono.mul(&Monomial::from_exponents(&[(idx, e as u16)]));
                }
                Some((p, _)) => {
                    return Err(Error::Parse {
                        pos: p,
                        msg: "expected integer or variable".into(),
                    })
                }
                None => {
                    return Err(Error::Parse {
                        pos: self.end,
                        msg: "expected integer or variable".into(),
                    })
                }
            }
            if matches!(self.peek(), Some(Token::Star)) {
                self.bump();
                continue;
            }
            break;
        }
        Ok((coeff, mono))
    }
}

/// Parse one polynomial into the given ring.
pub fn parse_polynomial(src: &str, ring: &RingRc) -> Result<Polynomial> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        end: src.len(),
    };
    let field = *ring.field();
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut negate = false;
    match p.peek() {
        Some(Token::Plus) => {
            p.bump();
        }
        Some(Token::Minus) => {
            p.bump();
            negate = true;
        }
        _ => {}
    }
    loop {
        let (c, m) = p.parse_term()?;
        let c = if negate { field.neg(&c) } else { c };
        terms.push((m, c));
        match p.bump() {
            None => break,
            Some((_, Token::Plus)) => negate = false,
            Some((_, Token::Minus)) => negate = true,
            Some((pos, _)) => {
                return Err(Error::Parse {
                    pos,
                    msg: "expected `+` or `-` between terms".into(),
                })
            }
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}
