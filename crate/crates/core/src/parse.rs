//! Text parser for phase-space polynomials and exact scalars.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*        juxtaposition means '*'
//! factor := atom ['^' integer]
//! atom   := number | 'x' | 'p' | 'i' | '√2' | 'sqrt2' | 'sqrt(2)' | 'r2' | '(' expr ')'
//! ```
//!
//! Numbers may be integers or decimals (`0.05` is read as `1/20`). Division
//! is only allowed by constants.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::PhasePoly;
use crate::scalar::{CycloScalar, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    X,
    P,
    I,
    Sqrt2,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut k = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while k < bytes.len() {
        let (pos, ch) = bytes[k];
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        let rest = &src[pos..];
        let simple = match ch {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'x' => Some(Tok::X),
            'p' => Some(Tok::P),
            'i' => Some(Tok::I),
            _ => None,
        };
        if rest.starts_with("√2") {
            out.push((pos, Tok::Sqrt2));
            k += 2;
            continue;
        }
        for (word, skip) in [("sqrt(2)", 7), ("sqrt2", 5), ("r2", 2)] {
            if rest.starts_with(word) {
                out.push((pos, Tok::Sqrt2));
                k += skip;
                break;
            }
        }
        if out.last().map(|(p, _)| *p) == Some(pos) {
            continue;
        }
        if let Some(t) = simple {
            out.push((pos, t));
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() || ch == '.' {
            while k < bytes.len() && (bytes[k].1.is_ascii_digit() || bytes[k].1 == '.') {
                k += 1;
            }
            let end = if k < bytes.len() { bytes[k].0 } else { src.len() };
            let text = &src[pos..end];
            out.push((pos, Tok::Num(parse_decimal(text).ok_or_else(|| err(pos, "bad number"))?)));
            continue;
        }
        return Err(err(pos, &format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    match text.split_once('.') {
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((int, frac)) => {
            if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
                return None;
            }
            let digits = format!("{int}{frac}");
            let n: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().ok()?
            };
            let d = num_traits::pow(BigInt::from(10), frac.len());
            Some(Rational::new(n, d))
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    k: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<PhasePoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.k += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.k += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.k += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.k += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PhasePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.k += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.k += 1;
                    let at = self.pos();
                    let d = self.factor()?;
                    let c = d.as_constant().and_then(|c| c.inv()).ok_or(Error::Parse {
                        pos: at,
                        msg: "division only by nonzero constants".into(),
                    })?;
                    acc = acc.scale(&c);
                }
                Some(Tok::Num(_) | Tok::X | Tok::P | Tok::I | Tok::Sqrt2 | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PhasePoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.k += 1;
            let e = match self.peek() {
                Some(Tok::Num(r)) if r.is_integer() => {
                    let e: u32 = match r.numer().try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    e
                }
                _ => return self.err("expected non-negative integer exponent"),
            };
            self.k += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PhasePoly> {
        let t = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.k += 1;
        match t {
            Tok::Num(r) => Ok(PhasePoly::constant(CycloScalar::from_rational(r))),
            Tok::X => Ok(PhasePoly::x()),
            Tok::P => Ok(PhasePoly::p()),
            Tok::I => Ok(PhasePoly::constant(CycloScalar::i())),
            Tok::Sqrt2 => Ok(PhasePoly::constant(CycloScalar::sqrt2())),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.k += 1;
                Ok(e)
            }
            Tok::Minus => Ok(-self.factor()?),
            _ => {
                self.k -= 1;
                self.err("unexpected token")
            }
        }
    }
}

/// Parse a polynomial in `x`, `p` with coefficients in ℚ(i,√2).
pub fn parse_poly(src: &str) -> Result<PhasePoly> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        k: 0,
        len: src.len(),
    };
    let out = p.expr()?;
    if p.k != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parse an exact scalar such as `3/2`, `-1/2*sqrt2`, `1 + i*r2` or `0.05`.
pub fn parse_scalar(src: &str) -> Result<CycloScalar> {
    parse_poly(src)?.as_constant().ok_or(Error::Parse {
        pos: 0,
        msg: format!("`{src}` is not a constant"),
    })
}

/// Parse an exact real scalar (no `i` component).
pub fn parse_real(src: &str) -> Result<CycloScalar> {
    let s = parse_scalar(src)?;
    if s.is_real() {
        Ok(s)
    } else {
        Err(Error::Parse {
            pos: 0,
            msg: format!("`{src}` is not real"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::mono;

    #[test]
    fn accepts_any_term_order() {
        let a = parse_poly("p^3 - 2*p + p*x^2").unwrap();
        let b = parse_poly("x^2*p + p^3 - 2p").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, mono(1, 0, 3) - mono(2, 0, 1) + mono(1, 2, 1));
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("3/2").unwrap(), CycloScalar::ratio(3, 2));
        assert_eq!(parse_scalar("0.05").unwrap(), CycloScalar::ratio(1, 20));
        assert_eq!(parse_scalar("-1/2*r2").unwrap(), CycloScalar::sqrt2() * CycloScalar::ratio(-1, 2));
        assert_eq!(parse_scalar("sqrt2*sqrt2").unwrap(), CycloScalar::from_int(2));
        assert_eq!(parse_scalar("√2 / 2").unwrap(), CycloScalar::sqrt2() * CycloScalar::ratio(1, 2));
        assert!(parse_real("2*i").is_err());
    }

    #[test]
    fn complex_coefficients() {
        let f = parse_poly("1/2(x^2+p^2-1) + i(x^3 + p^2 x - 2x)").unwrap();
        assert_eq!(f.coeff(3, 0), CycloScalar::i());
        assert_eq!(f.coeff(1, 2), CycloScalar::i());
        assert_eq!(f.coeff(0, 0), CycloScalar::ratio(-1, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x/p").is_err());
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("y").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x / 0").is_err());
    }

    #[test]
    fn render_round_trip() {
        let f = parse_poly("(1 + √2)*x^2*p - i*p^3/3 + 7/5").unwrap();
        assert_eq!(parse_poly(&f.render()).unwrap(), f);
    }
}
