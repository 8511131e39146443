//! A small expression grammar for Laurent polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | integer '/' integer | 'q' | 'p' | '(' expr ')'
//! ```
//!
//! The whole input may also be the preset `hecke`, meaning `q - q^-1`.

use num::{BigInt, Zero};

use super::{LaurentQP, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Q,
    P,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

pub(super) fn parse_laurent(input: &str) -> Result<LaurentQP> {
    if input.trim().eq_ignore_ascii_case("hecke") {
        return Ok(LaurentQP::q_minus_q_inv());
    }
    let tokens = lex(input)?;
    let mut parser = Parser {
        input,
        tokens,
        pos: 0,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let err = |reason: String| Error::Parse {
        input: input.to_string(),
        reason,
    };
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' => {}
            'q' => tokens.push(Token::Q),
            'p' => tokens.push(Token::P),
            '+' => tokens.push(Token::Plus),
            '-' => tokens.push(Token::Minus),
            '*' => tokens.push(Token::Star),
            '^' => tokens.push(Token::Caret),
            '(' => tokens.push(Token::LParen),
            ')' => tokens.push(Token::RParen),
            '0'..='9' => {
                let start = i;
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = input[start..=i].parse().map_err(|_| err("bad integer".into()))?;
                // `a/b` directly after an integer is a rational literal
                if bytes.get(i + 1) == Some(&b'/') {
                    let dstart = i + 2;
                    let mut j = dstart;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(err("expected denominator after '/'".into()));
                    }
                    let denom: BigInt = input[dstart..j].parse().map_err(|_| err("bad denominator".into()))?;
                    if denom.is_zero() {
                        return Err(err("zero denominator".into()));
                    }
                    tokens.push(Token::Num(Rational::new(numer, denom)));
                    i = j - 1;
                } else {
                    tokens.push(Token::Num(Rational::from_integer(numer)));
                }
            }
            other => return Err(err(format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    Ok(tokens)
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentQP> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                acc += self.term()?;
            } else if self.eat(&Token::Minus) {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentQP> {
        let mut acc = self.factor()?;
        while self.eat(&Token::Star) {
            acc *= self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentQP> {
        if self.eat(&Token::Minus) {
            return Ok(-self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentQP> {
        let base = self.atom()?;
        if !self.eat(&Token::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Token::Minus);
        let e = match self.tokens.get(self.pos) {
            Some(Token::Num(e)) if e.is_integer() => i64::try_from(e.numer())
                .map_err(|_| self.error("exponent out of range"))?,
            _ => return Err(self.error("expected an integer exponent after '^'")),
        };
        self.pos += 1;
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<LaurentQP> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(c)) => Ok(LaurentQP::constant(c)),
            Some(Token::Q) => Ok(LaurentQP::q()),
            Some(Token::P) => Ok(LaurentQP::p()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("missing ')'"));
                }
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("expected a number, q, p or '('"))
            }
        }
    }
}
