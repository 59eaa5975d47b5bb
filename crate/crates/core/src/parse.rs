//! Polynomial text grammar.
//!
//! Terms joined by `+`/`-`, coefficients as integers or `p/q`, variables by
//! name (`x1`, `t2`, `u3`, ...), powers via `^`, products via `*`:
//! `-3/2*x1^2*x2 + 1`. Printing and parsing round-trip exactly.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, PartialEq)]
enum Token {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Int(s));
            }
            'a'..='z' | 'A'..='Z' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Name(s));
            }
            _ => return Err(Error::parse(format!("unexpected character '{c}'"))),
        }
    }
    Ok(tokens)
}

/// Parses a polynomial over the named variables.
pub fn parse_poly<S: Scalar>(input: &str, vars: &[String]) -> Result<Polynomial<S>> {
    let tokens = tokenize(input)?;
    let nvars = vars.len();
    let var_index = |name: &str| -> Result<usize> {
        vars.iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::parse(format!("unknown variable '{name}'")))
    };

    let mut out = Polynomial::zero(nvars);
    let mut pos = 0usize;
    if tokens.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    loop {
        // sign
        let mut negative = false;
        while pos < tokens.len() {
            match tokens[pos] {
                Token::Plus => pos += 1,
                Token::Minus => {
                    negative = !negative;
                    pos += 1;
                }
                _ => break,
            }
        }
        if pos >= tokens.len() {
            return Err(Error::parse("dangling sign"));
        }
        // term: factors joined by '*'
        let mut coeff = if negative { -S::one() } else { S::one() };
        let mut mono = Monomial::unit(nvars);
        loop {
            match &tokens[pos] {
                Token::Int(digits) => {
                    let num = S::from_int_str(digits)
                        .ok_or_else(|| Error::parse(format!("bad integer '{digits}'")))?;
                    pos += 1;
                    if pos < tokens.len() && tokens[pos] == Token::Slash {
                        pos += 1;
                        match tokens.get(pos) {
                            Some(Token::Int(den)) => {
                                let den = S::from_int_str(den).ok_or_else(|| {
                                    Error::parse(format!("bad denominator '{den}'"))
                                })?;
                                if den.is_zero() {
                                    return Err(Error::parse("zero denominator"));
                                }
                                coeff = coeff * num.div_exact(&den);
                                pos += 1;
                            }
                            _ => return Err(Error::parse("expected denominator after '/'")),
                        }
                    } else {
                        coeff = coeff * num;
                    }
                }
                Token::Name(name) => {
                    let idx = var_index(name)?;
                    pos += 1;
                    let mut exp = 1u32;
                    if pos < tokens.len() && tokens[pos] == Token::Caret {
                        pos += 1;
                        match tokens.get(pos) {
                            Some(Token::Int(digits)) => {
                                exp = digits.parse::<u32>().map_err(|_| {
                                    Error::parse(format!("bad exponent '{digits}'"))
                                })?;
                                pos += 1;
                            }
                            _ => return Err(Error::parse("expected exponent after '^'")),
                        }
                    }
                    mono = mono.mul(&Monomial::var_pow(nvars, idx, exp));
                }
                t => return Err(Error::parse(format!("unexpected token {t:?}"))),
            }
            if pos < tokens.len() && tokens[pos] == Token::Star {
                pos += 1;
                continue;
            }
            break;
        }
        out.add_term(mono, coeff);
        if pos >= tokens.len() {
            break;
        }
        match tokens[pos] {
            Token::Plus | Token::Minus => continue,
            _ => return Err(Error::parse("expected '+' or '-' between terms")),
        }
    }
    Ok(out)
}

fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in vars.iter().zip(m.exps()) {
        if e == 1 {
            parts.push(name.clone());
        } else if e > 1 {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Prints a polynomial with terms in descending `order`.
pub fn format_poly<S: Scalar>(p: &Polynomial<S>, vars: &[String], order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &S)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));

    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mono = format_monomial(m, vars);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}
