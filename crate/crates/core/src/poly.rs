//! Sparse polynomials in the commuting phase-space symbols `x` and `p`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, CycloScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    P,
}

/// `x^x_deg p^p_deg`.
///
/// Ordering is graded lexicographic, largest first: higher total degree
/// sorts earlier, ties broken by the higher power of `x`. Iterating a
/// [`PhasePoly`] therefore yields terms in rendering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x_deg: u32,
    pub p_deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x_deg: 0, p_deg: 0 };

    pub fn new(x_deg: u32, p_deg: u32) -> Self {
        Self { x_deg, p_deg }
    }

    pub fn degree(&self) -> u32 {
        self.x_deg + self.p_deg
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.x_deg + o.x_deg, self.p_deg + o.p_deg)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.x_deg <= o.x_deg && self.p_deg <= o.p_deg
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (other.degree(), other.x_deg).cmp(&(self.degree(), self.x_deg))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |sym: &str, e: u32| match e {
            0 => None,
            1 => Some(sym.to_string()),
            _ => Some(format!("{sym}^{e}")),
        };
        let parts: Vec<String> = [part("x", self.x_deg), part("p", self.p_deg)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse map from monomials to nonzero coefficients in ℚ(i,√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhasePoly {
    terms: BTreeMap<Monomial, CycloScalar>,
}

/// Machine-readable term record. Rationals are `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub x_deg: u32,
    pub p_deg: u32,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

fn rational_record(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

// a! / (a-k)!
fn falling(a: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(a - j))
}

impl PhasePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CycloScalar::one())
    }

    pub fn constant(c: CycloScalar) -> Self {
        Self::term(0, 0, c)
    }

    pub fn x() -> Self {
        Self::term(1, 0, CycloScalar::one())
    }

    pub fn p() -> Self {
        Self::term(0, 1, CycloScalar::one())
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::x(),
            Var::P => Self::p(),
        }
    }

    /// Single term `c·x^x_deg·p^p_deg`.
    pub fn term(x_deg: u32, p_deg: u32, c: CycloScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(Monomial::new(x_deg, p_deg), c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, CycloScalar)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PhasePoly, s: &CycloScalar) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, c * s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x_deg: u32, p_deg: u32) -> CycloScalar {
        self.terms
            .get(&Monomial::new(x_deg, p_deg))
            .cloned()
            .unwrap_or_else(CycloScalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::X => m.x_deg,
                Var::P => m.p_deg,
            })
            .max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &CycloScalar)> {
        self.terms.iter().next()
    }

    pub fn constant_term(&self) -> CycloScalar {
        self.coeff(0, 0)
    }

    pub fn as_constant(&self) -> Option<CycloScalar> {
        match self.degree() {
            None => Some(CycloScalar::zero()),
            Some(0) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn scale(&self, s: &CycloScalar) -> PhasePoly {
        if s.is_zero() {
            return PhasePoly::zero();
        }
        PhasePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> PhasePoly {
        self.scale(&CycloScalar::from_rational(r.clone()))
    }

    pub fn pow(&self, e: u32) -> PhasePoly {
        let mut acc = PhasePoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in `v`, applied `times` times.
    pub fn differentiate(&self, v: Var, times: u32) -> PhasePoly {
        match v {
            Var::X => self.partial(times, 0),
            Var::P => self.partial(0, times),
        }
    }

    /// `∂ₓ^dx ∂ₚ^dp`.
    pub fn partial(&self, dx: u32, dp: u32) -> PhasePoly {
        if dx == 0 && dp == 0 {
            return self.clone();
        }
        let mut out = PhasePoly::zero();
        for (m, c) in &self.terms {
            if m.x_deg < dx || m.p_deg < dp {
                continue;
            }
            let k = falling(m.x_deg, dx) * falling(m.p_deg, dp);
            let kr = Rational::from_integer(k);
            out.add_term(Monomial::new(m.x_deg - dx, m.p_deg - dp), c.scale(&kr));
        }
        out
    }

    /// Multiply each `x^m p^n` by `x_factor^m · p_factor^n`.
    pub fn substitute_scaled(&self, x_factor: &CycloScalar, p_factor: &CycloScalar) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (m, c) in &self.terms {
            let f = x_factor.pow(m.x_deg) * p_factor.pow(m.p_deg);
            out.add_term(*m, c * &f);
        }
        out
    }

    /// Complex conjugation of the coefficients; `x` and `p` are real symbols.
    pub fn conjugate_scalarfn(&self) -> PhasePoly {
        PhasePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// `f(−x, p)`.
    pub fn reflect_x(&self) -> PhasePoly {
        self.substitute_scaled(&CycloScalar::from_int(-1), &CycloScalar::one())
    }

    /// `f(x, −p)`.
    pub fn reflect_p(&self) -> PhasePoly {
        self.substitute_scaled(&CycloScalar::one(), &CycloScalar::from_int(-1))
    }

    /// PT invariance of a scalar symbol: `f*(x,p) = f(−x,p)`.
    pub fn pt_check(&self) -> bool {
        self.conjugate_scalarfn() == self.reflect_x()
    }

    pub fn is_real_poly(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn is_even_in(&self, v: Var) -> bool {
        self.terms.keys().all(|m| match v {
            Var::X => m.x_deg % 2 == 0,
            Var::P => m.p_deg % 2 == 0,
        })
    }

    pub fn is_odd_in(&self, v: Var) -> bool {
        self.terms.keys().all(|m| match v {
            Var::X => m.x_deg % 2 == 1,
            Var::P => m.p_deg % 2 == 1,
        })
    }

    /// True if no monomial contains the other variable.
    pub fn depends_only_on(&self, v: Var) -> bool {
        self.terms.keys().all(|m| match v {
            Var::X => m.p_deg == 0,
            Var::P => m.x_deg == 0,
        })
    }

    /// Real part, as a real polynomial.
    pub fn real_part(&self) -> PhasePoly {
        PhasePoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c.re())))
    }

    /// Imaginary part, as a real polynomial.
    pub fn imag_part(&self) -> PhasePoly {
        PhasePoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c.im())))
    }

    /// Multivariate long division in grlex order. Returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &PhasePoly) -> Option<(PhasePoly, PhasePoly)> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc_inv) = (*lm, lc.inv()?);
        let mut rem = self.clone();
        let mut quo = PhasePoly::zero();
        let mut out_rem = PhasePoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if lm.divides(&m) {
                let qm = Monomial::new(m.x_deg - lm.x_deg, m.p_deg - lm.p_deg);
                let qc = &c * &lc_inv;
                let step = PhasePoly::from_terms([(qm, qc.clone())]);
                rem = &rem - &(&step * divisor);
                quo.add_term(qm, qc);
            } else {
                out_rem.add_term(m, c.clone());
                rem.terms.remove(&m);
            }
        }
        Some((quo, out_rem))
    }

    /// Exact quotient, or an error if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &PhasePoly) -> Result<PhasePoly> {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::NotDivisible),
        }
    }

    /// Keep only terms of total degree ≤ `d`.
    pub fn truncate_degree(&self, d: u32) -> PhasePoly {
        PhasePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> PhasePoly {
        PhasePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Substitute `x ↦ sx`, `p ↦ sp` where `sx`, `sp` are polynomials.
    pub fn compose(&self, sx: &PhasePoly, sp: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (m, c) in &self.terms {
            let t = &sx.pow(m.x_deg) * &sp.pow(m.p_deg);
            out.add_scaled(&t, c);
        }
        out
    }

    /// Evaluate at complex values of `x` and `p` in double precision.
    pub fn eval_complex(
        &self,
        x: num_complex::Complex64,
        p: num_complex::Complex64,
    ) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex() * x.powu(m.x_deg) * p.powu(m.p_deg))
            .sum()
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                x_deg: m.x_deg,
                p_deg: m.p_deg,
                a: rational_record(c.a()),
                b: rational_record(c.b()),
                c: rational_record(c.c()),
                d: rational_record(c.d()),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<PhasePoly> {
        let mut out = PhasePoly::zero();
        for r in records {
            let field = |s: &str| {
                parse_rational(s).ok_or(Error::Parse {
                    pos: 0,
                    msg: format!("bad rational `{s}`"),
                })
            };
            let c = CycloScalar::new(field(&r.a)?, field(&r.b)?, field(&r.c)?, field(&r.d)?);
            out.add_term(Monomial::new(r.x_deg, r.p_deg), c);
        }
        Ok(out)
    }

    /// Canonical text form, e.g. `x^2*p + p^3 - 2*p`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = match c.signed_single() {
                Some((neg, body)) => (neg, body),
                None => (false, format!("({c})")),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.degree() == 0;
            match (body.as_str(), is_const) {
                ("1", false) => out.push_str(&m.to_string()),
                (_, true) => out.push_str(&body),
                (_, false) => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&m.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhasePoly({})", self.render())
    }
}

impl From<CycloScalar> for PhasePoly {
    fn from(c: CycloScalar) -> Self {
        PhasePoly::constant(c)
    }
}

impl<'a> Add<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn add(self, o: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn sub(self, o: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn mul(self, o: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        PhasePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        -&self
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<PhasePoly> for PhasePoly {
            type Output = PhasePoly;
            fn $m(self, o: PhasePoly) -> PhasePoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a PhasePoly> for PhasePoly {
            type Output = PhasePoly;
            fn $m(self, o: &PhasePoly) -> PhasePoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<PhasePoly> for &'a PhasePoly {
            type Output = PhasePoly;
            fn $m(self, o: PhasePoly) -> PhasePoly {
                self.$m(&o)
            }
        }
    };
}

forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

/// `n·x^a·p^b` with an integer coefficient; handy for building goldens.
pub fn mono(n: i64, x_deg: u32, p_deg: u32) -> PhasePoly {
    PhasePoly::term(x_deg, p_deg, CycloScalar::from_int(n))
}

/// `(num/den)·x^a·p^b`.
pub fn mono_q(num: i64, den: i64, x_deg: u32, p_deg: u32) -> PhasePoly {
    PhasePoly::term(x_deg, p_deg, CycloScalar::ratio(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1() -> PhasePoly {
        mono(1, 0, 3) - mono(2, 0, 1) + mono(1, 2, 1)
    }

    #[test]
    fn difference_of_squares() {
        let a = PhasePoly::x() + PhasePoly::p();
        let b = PhasePoly::x() - PhasePoly::p();
        assert_eq!(&a * &b, mono(1, 2, 0) - mono(1, 0, 2));
        assert!((mono(1, 2, 0) * PhasePoly::zero()).is_zero());
    }

    #[test]
    fn square_of_c1_by_hand() {
        // p⁶ − 4p⁴ + 4p² + 2p⁴x² − 4p²x² + p²x⁴
        let want = mono(1, 0, 6) - mono(4, 0, 4) + mono(4, 0, 2) + mono(2, 2, 4)
            - mono(4, 2, 2)
            + mono(1, 4, 2);
        assert_eq!(c1().pow(2), want);
        assert_eq!(c1().pow(2).degree(), Some(6));
    }

    #[test]
    fn derivatives() {
        assert_eq!(mono(1, 1, 2).differentiate(Var::P, 1), mono(2, 1, 1));
        assert!(mono(1, 2, 0).differentiate(Var::X, 3).is_zero());
        assert_eq!(c1().partial(1, 1), mono(2, 1, 0));
    }

    #[test]
    fn ds_ads_substitution() {
        let i = CycloScalar::i();
        let mi = -CycloScalar::i();
        assert_eq!(mono(1, 2, 0).substitute_scaled(&i, &mi), mono(-1, 2, 0));
        assert_eq!(mono(1, 1, 1).substitute_scaled(&i, &mi), mono(1, 1, 1));
        // odd total degree picks up i^m (−i)^n = −i for both monomials
        let f = mono(1, 1, 2) + mono(1, 3, 0);
        assert_eq!(f.substitute_scaled(&i, &mi), f.scale(&-CycloScalar::i()));
    }

    #[test]
    fn conjugation_and_pt() {
        let ix3 = PhasePoly::term(3, 0, CycloScalar::i());
        assert_eq!(ix3.conjugate_scalarfn(), -&ix3);
        assert!(ix3.pt_check());
        assert!(!mono(1, 3, 0).pt_check());
        let osc = mono(1, 2, 0) + mono(1, 0, 2);
        assert_eq!(osc.conjugate_scalarfn(), osc);
    }

    #[test]
    fn render_order() {
        assert_eq!(c1().render(), "x^2*p + p^3 - 2*p");
        assert_eq!(PhasePoly::zero().render(), "0");
        let f = PhasePoly::term(0, 0, CycloScalar::ratio(-1, 2)) + PhasePoly::term(1, 0, CycloScalar::i());
        assert_eq!(f.render(), "i*x - 1/2");
        let s = CycloScalar::one() + CycloScalar::sqrt2();
        assert_eq!(PhasePoly::term(1, 0, s).render(), "(1 + √2)*x");
    }

    #[test]
    fn records_round_trip() {
        let f = c1().scale(&(CycloScalar::ratio(3, 2) + CycloScalar::i() * CycloScalar::sqrt2()));
        let back = PhasePoly::from_records(&f.to_records()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn exact_division() {
        let a = PhasePoly::p() + mono(2, 0, 0);
        let b = mono(1, 0, 2) - mono(3, 0, 1) + mono(1, 2, 0);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(b.div_exact(&a).is_err());
    }
}
