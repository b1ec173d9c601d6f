//! Normal-ordered polynomials in `a†`, `a`.
//!
//! This is an operator-level algebra that never touches the star product,
//! so it serves as an independent check on everything done with symbols.
//! `x̂ = (a + a†)/√2`, `p̂ = −i(a − a†)/√2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::PhasePoly;
use crate::scalar::{binomial, factorial, rat, CycloScalar, Rational};

/// `Σ c_{mn} a†^m aⁿ`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NormalOrdered {
    terms: BTreeMap<(u32, u32), CycloScalar>,
}

impl NormalOrdered {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: CycloScalar) -> Self {
        Self::term(0, 0, c)
    }

    pub fn one() -> Self {
        Self::scalar(CycloScalar::one())
    }

    /// `c · a†^m aⁿ`.
    pub fn term(m: u32, n: u32, c: CycloScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, n, c);
        out
    }

    pub fn a() -> Self {
        Self::term(0, 1, CycloScalar::one())
    }

    pub fn adag() -> Self {
        Self::term(1, 0, CycloScalar::one())
    }

    pub fn x() -> Self {
        let s = CycloScalar::sqrt2().inv().unwrap();
        (Self::a() + Self::adag()).scale(&s)
    }

    pub fn p() -> Self {
        let s = -(CycloScalar::i() * CycloScalar::sqrt2().inv().unwrap());
        (Self::a() - Self::adag()).scale(&s)
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((m, n)).or_insert_with(CycloScalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(m, n));
        }
    }

    pub fn coeff(&self, m: u32, n: u32) -> CycloScalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CycloScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            out.add_term(m, n, c * s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Hermitian adjoint.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            out.add_term(n, m, c.conj());
        }
        out
    }

    /// Maximal total ladder degree.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(m, n)| m + n).max().unwrap_or(0)
    }

    /// Operator of the Weyl-ordered symbol `f`.
    ///
    /// Uses `x^m pⁿ ↦ 2^{−m} Σ_k C(m,k) x̂ᵏ p̂ⁿ x̂^{m−k}`, which is the fully
    /// symmetrized product.
    pub fn from_weyl(f: &PhasePoly) -> Self {
        let xh = Self::x();
        let ph = Self::p();
        let max_x = f.terms().map(|(m, _)| m.x_deg).max().unwrap_or(0);
        let max_p = f.terms().map(|(m, _)| m.p_deg).max().unwrap_or(0);
        let xpow: Vec<Self> = (0..=max_x).map(|k| xh.pow(k)).collect();
        let ppow: Vec<Self> = (0..=max_p).map(|k| ph.pow(k)).collect();
        let mut out = Self::zero();
        for (mono, c) in f.terms() {
            let (m, n) = (mono.x_deg, mono.p_deg);
            let mut sym = Self::zero();
            for k in 0..=m {
                let w = CycloScalar::from_rational(Rational::from_integer(binomial(m, k)));
                let t = &(&xpow[k as usize] * &ppow[n as usize]) * &xpow[(m - k) as usize];
                sym = &sym + &t.scale(&w);
            }
            let norm = CycloScalar::from_rational(Rational::new(1.into(), BigInt::from(2).pow(m)));
            out = &out + &sym.scale(&(&norm * c));
        }
        out
    }

    /// Weyl symbol of the operator.
    ///
    /// `a†^m aⁿ ↦ Σ_k k! C(m,k) C(n,k) (−½)ᵏ ᾱ^{m−k} α^{n−k}` with
    /// `α = (x + ip)/√2`.
    pub fn weyl_symbol(&self) -> PhasePoly {
        let r = CycloScalar::sqrt2().inv().unwrap();
        let alpha = (PhasePoly::x() + PhasePoly::p().scale(&CycloScalar::i())).scale(&r);
        let alpha_bar = alpha.conjugate_scalarfn();
        let mut out = PhasePoly::zero();
        for (&(m, n), c) in &self.terms {
            for k in 0..=m.min(n) {
                let w = factorial(k) * binomial(m, k) * binomial(n, k);
                let mut q = Rational::from_integer(w);
                q *= num_traits::pow(rat(-1, 2), k as usize);
                let t = &alpha_bar.pow(m - k) * &alpha.pow(n - k);
                out.add_scaled(&t, &c.scale(&q));
            }
        }
        out
    }

    /// Render as `c a†^m a^n` terms, ordered by total ladder degree.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let parts: Vec<String> = keys
            .iter()
            .map(|&(m, n)| {
                let c = &self.terms[&(m, n)];
                let op = match (m, n) {
                    (0, 0) => String::new(),
                    _ => {
                        let mut s = String::new();
                        if m > 0 {
                            s.push_str(&format!("a†^{m}"));
                        }
                        if n > 0 {
                            if m > 0 {
                                s.push(' ');
                            }
                            s.push_str(&format!("a^{n}"));
                        }
                        s
                    }
                };
                if op.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {op}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for NormalOrdered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalOrdered({})", self.render())
    }
}

impl<'a> Add<&'a NormalOrdered> for &'a NormalOrdered {
    type Output = NormalOrdered;
    fn add(self, o: &NormalOrdered) -> NormalOrdered {
        let mut out = self.clone();
        for (&(m, n), c) in &o.terms {
            out.add_term(m, n, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NormalOrdered> for &'a NormalOrdered {
    type Output = NormalOrdered;
    fn sub(self, o: &NormalOrdered) -> NormalOrdered {
        let mut out = self.clone();
        for (&(m, n), c) in &o.terms {
            out.add_term(m, n, -c);
        }
        out
    }
}

impl<'a> Mul<&'a NormalOrdered> for &'a NormalOrdered {
    type Output = NormalOrdered;
    /// `a†^m aⁿ · a†^k a^l = Σ_j C(n,j) C(k,j) j! a†^{m+k−j} a^{n+l−j}`.
    fn mul(self, o: &NormalOrdered) -> NormalOrdered {
        let mut out = NormalOrdered::zero();
        for (&(m, n), c1) in &self.terms {
            for (&(k, l), c2) in &o.terms {
                let base = c1 * c2;
                for j in 0..=n.min(k) {
                    let w = binomial(n, j) * binomial(k, j) * factorial(j);
                    if w.is_zero() {
                        continue;
                    }
                    out.add_term(m + k - j, n + l - j, base.scale(&Rational::from_integer(w)));
                }
            }
        }
        out
    }
}

impl Neg for &NormalOrdered {
    type Output = NormalOrdered;
    fn neg(self) -> NormalOrdered {
        self.scale(&CycloScalar::from_int(-1))
    }
}

macro_rules! forward_owned_no {
    ($tr:ident, $m:ident) => {
        impl $tr<NormalOrdered> for NormalOrdered {
            type Output = NormalOrdered;
            fn $m(self, o: NormalOrdered) -> NormalOrdered {
                (&self).$m(&o)
            }
        }
    };
}

forward_owned_no!(Add, add);
forward_owned_no!(Sub, sub);
forward_owned_no!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moyal::star;
    use crate::parse::parse_poly;

    #[test]
    fn canonical_commutator() {
        let a = NormalOrdered::a();
        let ad = NormalOrdered::adag();
        assert_eq!(&(&a * &ad) - &(&ad * &a), NormalOrdered::one());
        let xp = &NormalOrdered::x() * &NormalOrdered::p();
        let px = &NormalOrdered::p() * &NormalOrdered::x();
        assert_eq!(&xp - &px, NormalOrdered::scalar(CycloScalar::i()));
    }

    #[test]
    fn worked_symbols() {
        let r = CycloScalar::sqrt2().inv().unwrap();
        let alpha = (PhasePoly::x() + PhasePoly::p().scale(&CycloScalar::i())).scale(&r);
        let ab = alpha.conjugate_scalarfn();
        let half = PhasePoly::constant(CycloScalar::ratio(1, 2));
        assert_eq!(NormalOrdered::term(1, 1, CycloScalar::one()).weyl_symbol(), &(&ab * &alpha) - &half);
        assert_eq!(
            NormalOrdered::term(2, 1, CycloScalar::one()).weyl_symbol(),
            &(&ab.pow(2) * &alpha) - &ab
        );
        assert_eq!(
            NormalOrdered::term(1, 2, CycloScalar::one()).weyl_symbol(),
            &(&ab * &alpha.pow(2)) - &alpha
        );
    }

    #[test]
    fn weyl_round_trip() {
        for src in ["x^3 p^2 - 2 i x p + 7", "p^4 x^2", "x^2 p - 3/2 p^3 + i x^3"] {
            let f = parse_poly(src).unwrap();
            assert_eq!(NormalOrdered::from_weyl(&f).weyl_symbol(), f, "{src}");
        }
    }

    #[test]
    fn operator_product_matches_star() {
        let f = parse_poly("x^2 p + i p^3").unwrap();
        let g = parse_poly("x p^2 - 2 x^3").unwrap();
        let lhs = &NormalOrdered::from_weyl(&f) * &NormalOrdered::from_weyl(&g);
        assert_eq!(lhs, NormalOrdered::from_weyl(&star(&f, &g)));
    }

    #[test]
    fn dagger_matches_conjugation() {
        let f = parse_poly("x^2 p + i p^3 - x").unwrap();
        let op = NormalOrdered::from_weyl(&f);
        assert_eq!(op.dagger(), NormalOrdered::from_weyl(&f.conjugate_scalarfn()));
    }
}
