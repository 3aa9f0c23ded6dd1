//! The expression grammar: rational and Gaussian literals (`3/2`, `I`, the
//! exact root `r2`), indexed symbols (`theta_1`, `thetab_d1`, `x_1d2`,
//! `nu^1`), operators `+ - * / ^` and parentheses. Juxtaposition is not
//! multiplication. Precedence: `^` over `*` `/` over `+` `-`.
//!
//! The printer (the `Display` impl on expressions) emits this grammar, and
//! `parse(print(e)) == e` on normal forms.

use crate::error::Error;
use crate::generator::{Family, Generator, IndexShape};
use crate::scalar::{Qis, Rational};
use crate::spinor::gen_up;
use crate::Expr;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    ImagUnit,
    Root2,
    Symbol {
        family: Family,
        up: bool,
        c1: u8,
        c2: u8,
    },
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a [u8],
    at: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            at: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::SyntaxError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.at += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn index_atom(&mut self) -> Result<(bool, u8), Error> {
        let dotted = self.peek() == Some(b'd');
        if dotted {
            self.bump();
        }
        match self.peek() {
            Some(c @ (b'1' | b'2')) => {
                self.bump();
                Ok((dotted, c - b'0'))
            }
            _ => Err(self.err("expected index component 1 or 2")),
        }
    }

    fn symbol(&mut self, name: String, name_pos: Pos) -> Result<Tok, Error> {
        let family = Family::from_grammar_name(&name)
            .ok_or(Error::UnknownSymbolFamily(name.clone()))?;
        let shape = family.index_shape();
        if shape == IndexShape::None {
            return Ok(Tok::Symbol {
                family,
                up: false,
                c1: 0,
                c2: 0,
            });
        }
        // An index group is mandatory for indexed families.
        let up = match self.peek() {
            Some(b'_') => {
                self.bump();
                false
            }
            Some(b'^') if self.index_follows() => {
                self.bump();
                true
            }
            _ => {
                return Err(Error::SyntaxError {
                    line: name_pos.line,
                    col: name_pos.col,
                    msg: format!("symbol `{}` requires an index", name),
                })
            }
        };
        match shape {
            IndexShape::Undotted => {
                let (dotted, c) = self.index_atom()?;
                if dotted {
                    return Err(self.err(format!("`{}` carries an undotted index", name)));
                }
                Ok(Tok::Symbol {
                    family,
                    up,
                    c1: c,
                    c2: 0,
                })
            }
            IndexShape::Dotted => {
                let (dotted, c) = self.index_atom()?;
                if !dotted {
                    return Err(self.err(format!(
                        "`{}` carries a dotted index (write {}_d{})",
                        name, name, c
                    )));
                }
                Ok(Tok::Symbol {
                    family,
                    up,
                    c1: c,
                    c2: 0,
                })
            }
            IndexShape::Pair => {
                if up {
                    return Err(self.err(format!("`{}` uses lower pair indices", name)));
                }
                let (d1, c1) = self.index_atom()?;
                if d1 {
                    return Err(self.err("the first pair index is undotted"));
                }
                let (d2, c2) = self.index_atom()?;
                if !d2 {
                    return Err(self.err("the second pair index is dotted (prefix d)"));
                }
                Ok(Tok::Symbol {
                    family,
                    up: false,
                    c1,
                    c2,
                })
            }
            IndexShape::None => unreachable!(),
        }
    }

    /// True when a `^` at the cursor is followed by an index atom, which
    /// disambiguates position markers from the power operator.
    fn index_follows(&self) -> bool {
        let mut k = self.at + 1;
        if self.src.get(k) == Some(&b'd') {
            k += 1;
        }
        matches!(self.src.get(k), Some(b'1' | b'2'))
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, Error> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
                self.bump();
            }
            let pos = self.pos();
            let c = match self.peek() {
                None => return Ok(out),
                Some(c) => c,
            };
            let tok = match c {
                b'0'..=b'9' => {
                    let mut digits = String::new();
                    while matches!(self.peek(), Some(b'0'..=b'9')) {
                        digits.push(self.bump().unwrap() as char);
                    }
                    Tok::Int(BigInt::parse_bytes(digits.as_bytes(), 10).unwrap())
                }
                b'I' => {
                    self.bump();
                    Tok::ImagUnit
                }
                b'a'..=b'z' => {
                    let mut name = String::new();
                    while matches!(self.peek(), Some(b'a'..=b'z' | b'0'..=b'9')) {
                        name.push(self.bump().unwrap() as char);
                    }
                    if name == "r2" {
                        Tok::Root2
                    } else {
                        self.symbol(name, pos)?
                    }
                }
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'/' => {
                    self.bump();
                    Tok::Slash
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                other => {
                    return Err(self.err(format!("unexpected character `{}`", other as char)))
                }
            };
            out.push((tok, pos));
        }
    }
}

/// Syntax tree kept around so division can walk the divisor's product
/// structure and register denominator factors one by one.
enum Node {
    Leaf(Expr),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let p = self.pos();
        Error::SyntaxError {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expression(&mut self) -> Result<Node, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Node::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Node::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Node, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = Node::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = Node::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Node, Error> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Node::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        while let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(n).map_err(|_| self.err("exponent out of range"))?;
                    base = Node::Pow(Box::new(base), e);
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, Error> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Node::Leaf(Expr::constant(Qis::from_rational(
                Rational::from(n),
            )))),
            Some(Tok::ImagUnit) => Ok(Node::Leaf(Expr::constant(Qis::imag_unit()))),
            Some(Tok::Root2) => Ok(Node::Leaf(Expr::constant(Qis::sqrt2()))),
            Some(Tok::Symbol { family, up, c1, c2 }) => Ok(Node::Leaf(match family.index_shape()
            {
                IndexShape::None => Expr::gen(Generator::scalar_sym(family)),
                IndexShape::Pair => Expr::gen(Generator::pair(family, c1, c2)),
                _ if up => gen_up(family, c1),
                _ => Expr::gen(Generator::indexed(family, c1)),
            })),
            Some(Tok::LParen) => {
                let inner = self.expression()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(other) => Err(self.err(format!("unexpected token {:?}", other))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn eval(node: &Node) -> Result<Expr, Error> {
    Ok(match node {
        Node::Leaf(e) => e.clone(),
        Node::Neg(a) => eval(a)?.neg(),
        Node::Add(a, b) => eval(a)?.add(&eval(b)?),
        Node::Sub(a, b) => eval(a)?.sub(&eval(b)?),
        Node::Mul(a, b) => eval(a)?.mul(&eval(b)?),
        Node::Pow(a, e) => eval(a)?.pow(*e),
        Node::Div(a, b) => divide(eval(a)?, b)?,
    })
}

/// Divides `acc` by the divisor node, descending through products, powers
/// and nested quotients so each base registers as its own denominator
/// factor.
fn divide(acc: Expr, divisor: &Node) -> Result<Expr, Error> {
    Ok(match divisor {
        Node::Mul(a, b) => divide(divide(acc, a)?, b)?,
        Node::Pow(base, e) => acc.div_factor(&eval(base)?, *e)?,
        Node::Neg(inner) => divide(acc, inner)?.neg(),
        Node::Div(num, den) => divide(acc, num)?.mul(&eval(den)?),
        other => acc.div(&eval(other)?)?,
    })
}

/// Parses an expression in the grammar above and normalizes it.
pub fn parse(text: &str) -> Result<Expr, Error> {
    let end = {
        let mut probe = Lexer::new(text);
        while probe.bump().is_some() {}
        probe.pos()
    };
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, at: 0, end };
    let node = p.expression()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    eval(&node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::{theta, thetabar, x};
    use crate::Scalar;

    #[test]
    fn anticommutator_normalizes_to_zero() {
        let e = parse("theta_1*theta_2 + theta_2*theta_1").unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn chiral_coordinate_literal() {
        let e = parse("x_1d1 - 2*I*theta_1*thetab_d1").unwrap();
        let y = crate::superspace::SuperPoint::standard().chiral_y(1, 1);
        assert!(e.sub(&y).is_zero());
    }

    #[test]
    fn trailing_star_errors_at_column_nine() {
        let err = parse("theta_1*").unwrap_err();
        match err {
            Error::SyntaxError { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 9);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(
            parse("bogus_1"),
            Err(Error::UnknownSymbolFamily(_))
        ));
    }

    #[test]
    fn literals_and_precedence() {
        assert_eq!(parse("3/2").unwrap(), Expr::constant(Scalar::rat(3, 2)));
        assert_eq!(parse("I^2").unwrap(), Expr::int(-1));
        assert_eq!(parse("r2^2").unwrap(), Expr::int(2));
        // ^ binds tighter than *, which binds tighter than +.
        let e = parse("2*a^2 + b").unwrap();
        let a = Expr::gen(Generator::scalar_sym(Family::Sym(0)));
        let b = Expr::gen(Generator::scalar_sym(Family::Sym(1)));
        assert_eq!(e, a.pow(2).scale(&Scalar::int(2)).add(&b));
    }

    #[test]
    fn raised_indices_expand_through_epsilon() {
        // nu^1 = nu_2, nu^2 = -nu_1 under the fixed conventions.
        assert_eq!(
            parse("nu^1").unwrap(),
            Expr::gen(Generator::indexed(Family::Nu, 2))
        );
        assert_eq!(
            parse("nu^2").unwrap(),
            Expr::gen(Generator::indexed(Family::Nu, 1)).neg()
        );
        assert_eq!(
            parse("nub^d1").unwrap(),
            Expr::gen(Generator::indexed(Family::NuBar, 2))
        );
    }

    #[test]
    fn division_produces_rational_normal_form() {
        let e = parse("(a^2 - b^2)/(a - b)").unwrap();
        let a = Expr::gen(Generator::scalar_sym(Family::Sym(0)));
        let b = Expr::gen(Generator::scalar_sym(Family::Sym(1)));
        assert_eq!(e, a.add(&b));
        assert!(matches!(
            parse("1/theta_1"),
            Err(Error::ParityMismatch(_))
        ));
        assert!(matches!(parse("1/0"), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn juxtaposition_is_rejected() {
        assert!(parse("2 theta_1").is_err());
        assert!(parse("theta_1 theta_2").is_err());
    }

    #[test]
    fn factored_denominators_survive_parsing() {
        let e = parse("1/((z - a)^2*(z - b))").unwrap();
        assert_eq!(e.den_factors().len(), 2);
        let printed = e.to_string();
        assert_eq!(parse(&printed).unwrap(), e);
    }

    #[test]
    fn print_parse_round_trip_on_samples() {
        let samples = vec![
            theta(1).mul(&theta(2)).scale(&Scalar::rat(-3, 7)),
            x(1, 2)
                .pow(2)
                .mul(&thetabar(1))
                .add(&theta(2).scale(&Qis::int_i(5))),
            Expr::one()
                .div(&x(1, 1).sub(&Expr::int(2)))
                .unwrap()
                .mul(&theta(1))
                .add(&Expr::constant(Scalar::sqrt2())),
            Expr::zero(),
            Expr::constant(Scalar::rat(1, 2) + Qis::int_i(3)),
        ];
        for e in samples {
            let printed = e.to_string();
            let back = parse(&printed).unwrap();
            assert_eq!(back, e, "round trip failed for `{}`", printed);
        }
    }
}
