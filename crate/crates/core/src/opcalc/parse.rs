//! Text grammar for operator expressions.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := power (['*'] power)*
//! power   := primary ['^' integer]
//! primary := integer ['/' integer] | 'i' | 'unit' | generator
//!          | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//! ```
//!
//! Whitespace is ignored everywhere. Identifiers are split by longest match
//! against the generator table, so `x1p1` and `x1 * p1` are the same
//! product; `[A, B]` expands to `AB - BA` and `{A, B}` to `AB + BA`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Expr, Generator, OpcalcError};
use crate::exact::ExactComplex;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Atom(Atom),
    Sym(char),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Atom {
    I,
    Unit,
    Gen(Generator),
}

fn atom_table() -> Vec<(&'static str, Atom)> {
    let mut table: Vec<(&'static str, Atom)> = Generator::ALL
        .iter()
        .map(|&g| (g.symbol(), Atom::Gen(g)))
        .collect();
    table.push(("i", Atom::I));
    table.push(("unit", Atom::Unit));
    table.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
    table
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, OpcalcError> {
    let table = atom_table();
    let chars: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let compact: String = chars.iter().map(|(_, c)| *c).collect();
    let offsets: Vec<usize> = compact.char_indices().map(|(k, _)| k).collect();
    let mut toks = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|(_, c)| *c).collect();
            toks.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() {
            let rest = &compact[offsets[k]..];
            match table.iter().find(|(s, _)| rest.starts_with(s)) {
                Some((s, atom)) => {
                    toks.push((pos, Tok::Atom(*atom)));
                    k += s.len();
                }
                None => {
                    let name: String = rest
                        .chars()
                        .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
                        .collect();
                    return Err(OpcalcError::UnknownGenerator(name));
                }
            }
        } else if "+-*/^()[]{},".contains(c) {
            toks.push((pos, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(OpcalcError::Parse {
                position: pos,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err(&self, message: impl Into<String>) -> OpcalcError {
        OpcalcError::Parse {
            position: self.pos(),
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), OpcalcError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr, OpcalcError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_)) | Some(Tok::Atom(_)) | Some(Tok::Sym('(' | '[' | '{'))
        )
    }

    fn term(&mut self) -> Result<Expr, OpcalcError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') || self.starts_primary() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, OpcalcError> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let n: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(n))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr, OpcalcError> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::Int(num) => {
                let den = if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.at += 1;
                            d
                        }
                        _ => return Err(self.err("expected nonzero integer denominator")),
                    }
                } else {
                    BigInt::from(1)
                };
                Ok(Expr::scalar(ExactComplex::real(BigRational::new(num, den))))
            }
            Tok::Atom(Atom::I) => Ok(Expr::i()),
            Tok::Atom(Atom::Unit) => Ok(Expr::unit()),
            Tok::Atom(Atom::Gen(g)) => Ok(Expr::gen(g)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(open @ ('[' | '{')) => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if open == '[' {
                    self.expect(']')?;
                    Ok(Expr::raw_commutator(&a, &b))
                } else {
                    self.expect('}')?;
                    Ok(Expr::raw_anticommutator(&a, &b))
                }
            }
            Tok::Sym(c) => {
                self.at -= 1;
                Err(self.err(format!("unexpected '{c}'")))
            }
        }
    }
}

/// Parses an operator expression. The result is not normalized.
pub fn parse(src: &str) -> Result<Expr, OpcalcError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
