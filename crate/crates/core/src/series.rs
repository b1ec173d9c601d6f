//! Truncated power series in the coupling `g` with polynomial coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::PhasePoly;
use crate::scalar::{rat, CycloScalar};

/// `Σ_{n=0}^{K} gⁿ cₙ(x,p)`, everything beyond `g^K` discarded.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSeries {
    coeffs: Vec<PhasePoly>,
}

impl GSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![PhasePoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(PhasePoly::one(), order)
    }

    /// `f` at `g⁰`, zero above.
    pub fn constant(f: PhasePoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = f;
        s
    }

    /// Build from `c₀..c_K`; the order is `coeffs.len() − 1`.
    pub fn from_coeffs(coeffs: Vec<PhasePoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the g^0 coefficient");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &PhasePoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[PhasePoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, f: PhasePoly) {
        self.coeffs[n] = f;
    }

    /// Truncate to a lower order or pad with zeros to a higher one.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs: Vec<PhasePoly> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, PhasePoly::zero());
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_order(&self, o: &GSeries) -> Result<()> {
        if self.order() != o.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: o.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &GSeries) -> Result<GSeries> {
        self.check_order(o)?;
        Ok(GSeries {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &GSeries) -> Result<GSeries> {
        self.check_order(o)?;
        Ok(GSeries {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> GSeries {
        GSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &CycloScalar) -> GSeries {
        self.map(|c| c.scale(s))
    }

    pub fn map<F: Fn(&PhasePoly) -> PhasePoly>(&self, f: F) -> GSeries {
        GSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Cauchy product with an arbitrary coefficient product.
    pub fn cauchy<F>(&self, o: &GSeries, prod: F) -> Result<GSeries>
    where
        F: Fn(&PhasePoly, &PhasePoly) -> PhasePoly,
    {
        self.check_order(o)?;
        let k = self.order();
        let mut coeffs = vec![PhasePoly::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(k + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &prod(a, b);
            }
        }
        Ok(GSeries { coeffs })
    }

    /// Commutative (pointwise) product, truncated.
    pub fn mul(&self, o: &GSeries) -> Result<GSeries> {
        self.cauchy(o, |a, b| a * b)
    }

    /// Multiply by `g^k`, dropping what falls off the end.
    pub fn shift(&self, k: usize) -> GSeries {
        let mut out = GSeries::zero(self.order());
        for n in 0..=self.order() {
            if n + k <= self.order() {
                out.coeffs[n + k] = self.coeffs[n].clone();
            }
        }
        out
    }

    /// `g ↦ −g`.
    pub fn flip_g(&self) -> GSeries {
        GSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real_poly())
    }

    pub fn imag_part(&self) -> GSeries {
        self.map(|c| c.imag_part())
    }

    pub fn real_part(&self) -> GSeries {
        self.map(|c| c.real_part())
    }

    pub fn conjugate_scalarfn(&self) -> GSeries {
        self.map(|c| c.conjugate_scalarfn())
    }

    /// Substitute a numeric value for `g` and collapse to one polynomial.
    pub fn evaluate(&self, g: &CycloScalar) -> PhasePoly {
        let mut out = PhasePoly::zero();
        let mut gn = CycloScalar::one();
        for c in &self.coeffs {
            out.add_scaled(c, &gn);
            gn = &gn * g;
        }
        out
    }

    /// Taylor expansion of `exp(g·q)` through `order`.
    pub fn exp_of(q: &PhasePoly, order: usize) -> GSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = PhasePoly::one();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = (&term * q).scale_rational(&rat(1, n as i64));
            coeffs.push(term.clone());
        }
        GSeries { coeffs }
    }

    /// `exp(arg)` for a series whose `g⁰` coefficient vanishes.
    pub fn exp_series(arg: &GSeries) -> Result<GSeries> {
        if !arg.coeffs[0].is_zero() {
            return Err(Error::NonUnitLeading);
        }
        let k = arg.order();
        let mut out = GSeries::one(k);
        let mut power = GSeries::one(k);
        for n in 1..=k {
            power = power.mul(arg)?.scale(&CycloScalar::from_rational(rat(1, n as i64)));
            out = out.add(&power)?;
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gpow = match n {
                0 => String::new(),
                1 => "g*".to_string(),
                _ => format!("g^{n}*"),
            };
            parts.push(format!("{gpow}({})", c.render()));
        }
        if parts.is_empty() {
            format!("0 + O(g^{})", self.order() + 1)
        } else {
            format!("{} + O(g^{})", parts.join(" + "), self.order() + 1)
        }
    }
}

impl fmt::Display for GSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for GSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSeries({})", self.render())
    }
}
