//! Exact arithmetic in the field ℚ(i, √2).
//!
//! Every element is stored as `a + b·√2 + c·i + d·i·√2` with rational
//! coordinates. The four coordinates are unique, so structural equality is
//! field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `n` or `n/d` (no whitespace inside).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Element `a + b√2 + c·i + d·i√2` of ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

// (a + b√2)(e + f√2) in ℚ(√2)
fn surd_mul(a: &Rational, b: &Rational, e: &Rational, f: &Rational) -> (Rational, Rational) {
    let two = rat_int(2);
    let mut re = Rational::zero();
    let mut sq = Rational::zero();
    if !a.is_zero() {
        if !e.is_zero() {
            re += a * e;
        }
        if !f.is_zero() {
            sq += a * f;
        }
    }
    if !b.is_zero() {
        if !f.is_zero() {
            re += b * f * &two;
        }
        if !e.is_zero() {
            sq += b * e;
        }
    }
    (re, sq)
}

impl CycloScalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        Self::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// `√2`
    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// Real element `a + b√2`.
    pub fn surd(a: Rational, b: Rational) -> Self {
        Self::new(a, b, Rational::zero(), Rational::zero())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// True when the value is a plain rational number.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.is_real()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Complex conjugation (negates the `i` components).
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d)
    }

    /// Real part `a + b√2`.
    pub fn re(&self) -> Self {
        Self::surd(self.a.clone(), self.b.clone())
    }

    /// Imaginary part `c + d√2` as a real element.
    pub fn im(&self) -> Self {
        Self::surd(self.c.clone(), self.d.clone())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // |z|² = re² + im² lies in ℚ(√2) and is positive under the real embedding.
        let (r1, r2) = surd_mul(&self.a, &self.b, &self.a, &self.b);
        let (i1, i2) = surd_mul(&self.c, &self.d, &self.c, &self.d);
        let (n1, n2) = (r1 + i1, r2 + i2);
        // (n1 + n2√2)⁻¹ = (n1 − n2√2)/(n1² − 2n2²)
        let norm = &n1 * &n1 - rat_int(2) * &n2 * &n2;
        let inv_mod = Self::surd(&n1 / &norm, -(&n2 / &norm));
        Some(self.conj() * inv_mod)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiply by `iᵏ`, which only permutes and negates coordinates.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self::new(-&self.c, -&self.d, self.a.clone(), self.b.clone()),
            2 => -self,
            _ => Self::new(self.c.clone(), self.d.clone(), -&self.a, -&self.b),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    pub fn to_complex(&self) -> Complex64 {
        let s2 = std::f64::consts::SQRT_2;
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        Complex64::new(f(&self.a) + s2 * f(&self.b), f(&self.c) + s2 * f(&self.d))
    }

    /// The nonzero coordinates paired with their basis label.
    fn components(&self) -> Vec<(&Rational, &'static str)> {
        [(&self.a, ""), (&self.b, "√2"), (&self.c, "i"), (&self.d, "i*√2")]
            .into_iter()
            .filter(|(r, _)| !r.is_zero())
            .collect()
    }

    /// For single-component values: (is_negative, rendering of the absolute value).
    pub(crate) fn signed_single(&self) -> Option<(bool, String)> {
        let comps = self.components();
        if comps.len() != 1 {
            return None;
        }
        let (r, basis) = comps[0];
        let abs = r.abs();
        let body = match (abs.is_one(), basis) {
            (true, "") => "1".to_string(),
            (true, b) => b.to_string(),
            (false, "") => fmt_rational(&abs),
            (false, b) => format!("{}*{}", fmt_rational(&abs), b),
        };
        Some((r.is_negative(), body))
    }
}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (r, basis)) in comps.iter().enumerate() {
            let neg = r.is_negative();
            let abs = r.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (abs.is_one(), *basis) {
                (true, "") => write!(f, "1")?,
                (true, b) => write!(f, "{b}")?,
                (false, "") => write!(f, "{}", fmt_rational(&abs))?,
                (false, b) => write!(f, "{}*{}", fmt_rational(&abs), b)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloScalar({self})")
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, o: &CycloScalar) -> CycloScalar {
        CycloScalar::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, o: &CycloScalar) -> CycloScalar {
        CycloScalar::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, o: &CycloScalar) -> CycloScalar {
        // (R1 + i I1)(R2 + i I2) with R, I ∈ ℚ(√2)
        let (rr1, rr2) = surd_mul(&self.a, &self.b, &o.a, &o.b);
        let (ii1, ii2) = surd_mul(&self.c, &self.d, &o.c, &o.d);
        let (ri1, ri2) = surd_mul(&self.a, &self.b, &o.c, &o.d);
        let (ir1, ir2) = surd_mul(&self.c, &self.d, &o.a, &o.b);
        CycloScalar::new(rr1 - ii1, rr2 - ii2, ri1 + ir1, ri2 + ir2)
    }
}

impl<'a> Div<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    /// Panics on division by zero, like the integer types.
    fn div(self, o: &CycloScalar) -> CycloScalar {
        self * &o.inv().expect("division by zero in ℚ(i,√2)")
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, o: CycloScalar) -> CycloScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, o: &CycloScalar) -> CycloScalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<CycloScalar> for &'a CycloScalar {
            type Output = CycloScalar;
            fn $m(self, o: CycloScalar) -> CycloScalar {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, o: &CycloScalar) {
        self.a += &o.a;
        self.b += &o.b;
        self.c += &o.c;
        self.d += &o.d;
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, o: &CycloScalar) {
        self.a -= &o.a;
        self.b -= &o.b;
        self.c -= &o.c;
        self.d -= &o.d;
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, o: &CycloScalar) {
        *self = &*self * o;
    }
}

impl Zero for CycloScalar {
    fn zero() -> Self {
        CycloScalar::zero()
    }
    fn is_zero(&self) -> bool {
        CycloScalar::is_zero(self)
    }
}

impl One for CycloScalar {
    fn one() -> Self {
        CycloScalar::one()
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64, c: i64, d: i64) -> CycloScalar {
        CycloScalar::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d))
    }

    #[test]
    fn sqrt2_and_i_square() {
        assert_eq!(CycloScalar::sqrt2().pow(2), CycloScalar::from_int(2));
        assert_eq!(CycloScalar::i().pow(2), CycloScalar::from_int(-1));
        let i_sqrt2 = CycloScalar::i() * CycloScalar::sqrt2();
        assert_eq!(i_sqrt2, s(0, 0, 0, 1));
        assert_eq!(i_sqrt2.pow(2), CycloScalar::from_int(-2));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let z = s(1, 2, -3, 1);
        let w = z.inv().unwrap();
        assert!((z * w).is_one());
        assert!(CycloScalar::zero().inv().is_none());
    }

    #[test]
    fn conjugation_and_reality() {
        let z = s(1, 1, 2, -1);
        assert!(!z.is_real());
        assert_eq!(z.conj(), s(1, 1, -2, 1));
        assert!((&z * &z.conj()).is_real());
        assert_eq!(z.re() + CycloScalar::i() * z.im(), z);
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloScalar::ratio(3, 2).to_string(), "3/2");
        assert_eq!((-CycloScalar::sqrt2()).to_string(), "-√2");
        assert_eq!(s(1, 0, -2, 0).to_string(), "1 - 2*i");
        assert_eq!(CycloScalar::zero().to_string(), "0");
    }

    #[test]
    fn i_rotation() {
        let z = s(1, 2, 3, 4);
        for k in 0..6 {
            assert_eq!(z.mul_i_pow(k), &z * &CycloScalar::i().pow(k));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn to_complex_matches() {
        let z = s(1, 1, 0, 1).to_complex();
        assert!((z.re - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-15);
        assert!((z.im - std::f64::consts::SQRT_2).abs() < 1e-15);
    }
}
