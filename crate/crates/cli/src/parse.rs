//! Expression parser for rational functions in `x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | 'x' | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! vector := '[' expr (',' expr)* ']'
//! matrix := '[' vector (',' vector)* ']'
//! ```
//!
//! Rational literals like `3/4` parse as a division of integers, which is
//! the same value.

use std::fmt;

use diffalg_core::num::rat::Rat;
use diffalg_core::RatFun;
use num_bigint::BigInt;

/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based character offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(n) => return write!(f, "number {n}"),
            Tok::X => "'x'",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::LBracket => "'['",
            Tok::RBracket => "']'",
            Tok::Comma => "','",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                continue;
            }
            'x' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => return err(i, format!("unexpected character '{other}' (only x, integers and + - * / ^ ( ) [ ] , are allowed)")),
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(text)?, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if t != Tok::End {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), format!("expected {want}, found {}", self.peek()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            t => err(self.pos(), format!("unexpected {t} after complete expression")),
        }
    }

    fn expr(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return err(at, "division by zero");
                    }
                    acc = acc.checked_div(&d).expect("nonzero divisor");
                }
                Tok::Int(_) | Tok::X | Tok::LParen => {
                    return err(self.pos(), "missing operator (write multiplication explicitly with '*')");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.pos();
        let e = self.exponent()?;
        if e.unsigned_abs() > MAX_EXPONENT {
            return err(at, format!("exponent {e} exceeds the supported magnitude {MAX_EXPONENT}"));
        }
        base.pow(e).or_else(|_| err(at, "negative power of zero"))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let parens = *self.peek() == Tok::LParen;
        if parens {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let at = self.pos();
        let Tok::Int(n) = self.bump() else {
            return err(at, "exponent must be an integer literal");
        };
        let Ok(v) = i64::try_from(&n) else {
            return err(at, "exponent too large");
        };
        if parens {
            self.expect(Tok::RParen)?;
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<RatFun, ParseError> {
        let at = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(RatFun::constant(Rat::from_integer(n))),
            Tok::X => Ok(RatFun::x()),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            t => err(at, format!("expected a number, 'x' or '(', found {t}")),
        }
    }

    fn vector(&mut self) -> Result<Vec<RatFun>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut out = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            out.push(self.expr()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<RatFun>>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut rows = vec![self.vector()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            let at = self.pos();
            let row = self.vector()?;
            if row.len() != rows[0].len() {
                return err(at, format!("row has {} entries, expected {}", row.len(), rows[0].len()));
            }
            rows.push(row);
        }
        self.expect(Tok::RBracket)?;
        Ok(rows)
    }
}

pub fn parse_ratfun(text: &str) -> Result<RatFun, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// A constant expression such as `-3` or `1/4`.
pub fn parse_rat(text: &str) -> Result<Rat, ParseError> {
    let f = parse_ratfun(text)?;
    f.as_constant().ok_or(ParseError { position: 0, message: format!("expected a rational constant, got {f}") })
}

pub fn parse_vector(text: &str) -> Result<Vec<RatFun>, ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.vector()?;
    p.finish()?;
    Ok(v)
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<RatFun>>, ParseError> {
    let mut p = Parser::new(text)?;
    let m = p.matrix()?;
    p.finish()?;
    Ok(m)
}
