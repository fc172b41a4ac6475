//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' posint)?
//! base   := variable | number | 'i' | '(' expr ')'
//! number := int ('/' posint)?
//! ```
//!
//! Whitespace is ignored; implicit multiplication is rejected. The optional
//! leading sign is what lets printed polynomials such as `-x + y` round-trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Polynomial, Variables};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < bytes.len() {
        let (pos, ch) = bytes[k];
        match ch {
            c if c.is_whitespace() => {
                k += 1;
            }
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].1.is_ascii_digit() {
                    k += 1;
                }
                let digits: String = bytes[start..k].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Int(digits.parse().expect("digits"))));
            }
            c if c.is_ascii_alphabetic() => {
                let start = k;
                while k < bytes.len() && bytes[k].1.is_ascii_alphanumeric() {
                    k += 1;
                }
                let ident: String = bytes[start..k].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Ident(ident)));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((
                    pos,
                    match ch {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '/' => Tok::Slash,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                k += 1;
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    names: Vec<String>,
    _text: &'a str,
}

type P = Polynomial<GaussianRational>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<P> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<P> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let k = n.to_u32().filter(|&k| k >= 1).ok_or(Error::Syntax {
                        pos,
                        msg: "exponent must be a positive integer".into(),
                    })?;
                    return Ok(base.pow(k));
                }
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        msg: "expected exponent after '^'".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<P> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut value = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(Error::ZeroDenominator { pos: dpos });
                            }
                            value /= BigRational::from_integer(d);
                        }
                        _ => {
                            return Err(Error::Syntax {
                                pos: dpos,
                                msg: "expected integer denominator after '/'".into(),
                            })
                        }
                    }
                }
                Ok(P::constant(self.nvars(), GaussianRational::real(value)))
            }
            Some(Tok::Ident(name)) => {
                if name == "i" {
                    return Ok(P::constant(self.nvars(), GaussianRational::i()));
                }
                match self.names.iter().position(|n| *n == name) {
                    Some(idx) => Ok(P::var(self.nvars(), idx)),
                    None => Err(Error::UnknownVariable { pos, name }),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let cpos = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos: cpos,
                        msg: "expected ')'".into(),
                    }),
                }
            }
            Some(t) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse `text` as a polynomial in the variables of `vars`.
pub fn parse(text: &str, vars: &Variables) -> Result<Polynomial<GaussianRational>> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        end: text.len(),
        names: vars.names(),
        _text: text,
    };
    if parser.peek().is_none() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let poly = parser.expr()?;
    if parser.at < parser.toks.len() {
        let pos = parser.pos();
        let what = match parser.peek() {
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                "implicit multiplication is not allowed"
            }
            _ => "trailing input",
        };
        return Err(Error::Syntax {
            pos,
            msg: what.into(),
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianRational as G;

    fn plane(s: &str) -> Result<P> {
        parse(s, &Variables::Plane)
    }

    #[test]
    fn reads_cusp() {
        let f = plane("y^2 - x^3").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&[0, 2]), Some(&G::from_integer(1)));
        assert_eq!(f.coefficient(&[3, 0]), Some(&G::from_integer(-1)));
    }

    #[test]
    fn literal_complex_coefficients() {
        let f = plane("i*x + 1/2*y").unwrap();
        assert_eq!(f.coefficient(&[1, 0]), Some(&G::i()));
        assert_eq!(f.coefficient(&[0, 1]), Some(&G::from_ratio(1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        match plane("y^2 -") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match plane("x + w") {
            Err(Error::UnknownVariable { pos, name }) => {
                assert_eq!(pos, 4);
                assert_eq!(name, "w");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            plane("1/0*x"),
            Err(Error::ZeroDenominator { pos: 2 })
        ));
        assert!(matches!(plane("2x"), Err(Error::Syntax { .. })));
        assert!(matches!(plane("x y"), Err(Error::Syntax { .. })));
        assert!(matches!(plane("x^0"), Err(Error::Syntax { .. })));
        assert!(matches!(plane("x / y"), Err(Error::Syntax { .. })));
        assert!(matches!(plane(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn indexed_variables() {
        let f = parse("z1^3 - z2^2 - z3^2 - z4^2", &Variables::Indexed(4)).unwrap();
        assert_eq!(f.nvars(), 4);
        assert_eq!(f.order_at_origin().unwrap(), 2);
    }
}
