//! The symmetric Moyal star product and constructions built on it.
//!
//! ```text
//! F ⋆ G = Σ_s (−i/2)^s / s! Σ_t (−1)^t C(s,t) ∂ₓᵗ∂ₚ^{s−t}F · ∂ₓ^{s−t}∂ₚᵗG
//! ```
//!
//! For polynomials the outer sum stops at `s = min(deg F, deg G)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, PhasePoly};
use crate::scalar::{binomial, factorial, CycloScalar, Rational};
use crate::series::GSeries;

fn falling(a: u32, k: u32) -> BigInt {
    if k > a {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(a - j))
}

/// Weight of the order-`s` term for `x^a p^b ⋆ x^c p^d`, without the `(−i/2)^s`.
///
/// Every `t` lands on the same monomial `x^{a+c−s} p^{b+d−s}`, so the inner
/// sum collapses to a single integer.
fn pair_weight(a: u32, b: u32, c: u32, d: u32, s: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for t in 0..=s {
        let u = s - t;
        if t > a || t > d || u > b || u > c {
            continue;
        }
        let term = binomial(s, t) * falling(a, t) * falling(d, t) * falling(b, u) * falling(c, u);
        if t % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `f ⋆ g` for polynomials, exact.
pub fn star(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    let mut out = PhasePoly::zero();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let base = c1 * c2;
            let smax = m1.degree().min(m2.degree());
            for s in 0..=smax {
                let w = pair_weight(m1.x_deg, m1.p_deg, m2.x_deg, m2.p_deg, s);
                if w.is_zero() {
                    continue;
                }
                // (−i/2)^s = (−i)^s / 2^s and (−i)^s = i^{3s}
                let den = factorial(s) * BigInt::from(2).pow(s);
                let r = Rational::new(w, den);
                let coeff = base.scale(&r).mul_i_pow(3 * s);
                let (Some(x), Some(p)) = (
                    (m1.x_deg + m2.x_deg).checked_sub(s),
                    (m1.p_deg + m2.p_deg).checked_sub(s),
                ) else {
                    continue;
                };
                out.add_term(Monomial::new(x, p), coeff);
            }
        }
    }
    out
}

/// `f ⋆ g − g ⋆ f`.
pub fn star_commutator(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    &star(f, g) - &star(g, f)
}

/// `f ⋆ g + g ⋆ f`.
pub fn star_anticommutator(f: &PhasePoly, g: &PhasePoly) -> PhasePoly {
    &star(f, g) + &star(g, f)
}

/// Cauchy product in `g` with `⋆` on the coefficients.
pub fn star_series(f: &GSeries, g: &GSeries) -> Result<GSeries> {
    f.cauchy(g, star)
}

fn check_unit(s: &GSeries) -> Result<()> {
    if s.coeff(0).is_one() {
        Ok(())
    } else {
        Err(Error::NonUnitLeading)
    }
}

/// Solve `η ⋆ η = η²` order by order with `η = 1 + Σ gⁿ qₙ`.
///
/// `qₙ = ½(eₙ − Σ_{k=1}^{n−1} q_k ⋆ q_{n−k})`, where `eₙ` is the `gⁿ`
/// coefficient of the input.
pub fn star_sqrt(eta2: &GSeries) -> Result<GSeries> {
    check_unit(eta2)?;
    let order = eta2.order();
    let half = CycloScalar::ratio(1, 2);
    let mut q = vec![PhasePoly::one()];
    for n in 1..=order {
        let mut rhs = eta2.coeff(n).clone();
        for k in 1..n {
            rhs = &rhs - &star(&q[k], &q[n - k]);
        }
        q.push(rhs.scale(&half));
    }
    Ok(GSeries::from_coeffs(q))
}

/// Two-sided inverse of a series with unit leading term.
pub fn star_inverse(eta: &GSeries) -> Result<GSeries> {
    check_unit(eta)?;
    let order = eta.order();
    let mut r = vec![PhasePoly::one()];
    for n in 1..=order {
        let mut acc = PhasePoly::zero();
        for k in 1..=n {
            acc = &acc - &star(eta.coeff(k), &r[n - k]);
        }
        r.push(acc);
    }
    Ok(GSeries::from_coeffs(r))
}

/// `η ⋆ H ⋆ η⁻¹`, truncated at the order of `η`.
pub fn conjugate_by(eta: &GSeries, h: &GSeries) -> Result<GSeries> {
    let inv = star_inverse(eta)?;
    conjugate_with(eta, &inv, h)
}

/// `η ⋆ H ⋆ η⁻¹` when the inverse is already known.
pub fn conjugate_with(eta: &GSeries, eta_inv: &GSeries, h: &GSeries) -> Result<GSeries> {
    let h = h.with_order(eta.order());
    star_series(&star_series(eta, &h)?, eta_inv)
}

/// Square root of a metric together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFactorization {
    pub eta: GSeries,
    pub eta_inv: GSeries,
    /// Highest order through which `η ⋆ η⁻¹ = 1` and `η ⋆ η = η²` were checked.
    pub certified_order: usize,
}

impl StarFactorization {
    pub fn new(eta2: &GSeries) -> Result<Self> {
        let eta = star_sqrt(eta2)?;
        let eta_inv = star_inverse(&eta)?;
        let one = star_series(&eta, &eta_inv)?;
        let sq = star_series(&eta, &eta)?;
        let mut certified_order = 0;
        for n in 0..=eta2.order() {
            let unit = if n == 0 { PhasePoly::one() } else { PhasePoly::zero() };
            if one.coeff(n) != &unit || sq.coeff(n) != eta2.coeff(n) {
                break;
            }
            certified_order = n;
        }
        Ok(Self {
            eta,
            eta_inv,
            certified_order,
        })
    }

    pub fn conjugate(&self, h: &GSeries) -> Result<GSeries> {
        conjugate_with(&self.eta, &self.eta_inv, h)
    }
}
