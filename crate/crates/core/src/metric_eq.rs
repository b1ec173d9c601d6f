//! The third-order linear equation `L η² = g R η²` satisfied by the metric
//! symbol of `H = h₀ + i g h₁`.
//!
//! It is the symbol form of `H† ⋆ η² = η² ⋆ H`, i.e.
//! `(h₀⋆F − F⋆h₀)/(2i) = g (h₁⋆F + F⋆h₁)/2`.

use crate::hamiltonian::AlphaParams;
use crate::poly::{Monomial, PhasePoly};
use crate::scalar::CycloScalar;

/// `c · x^a p^b ∂ₓ^dx ∂ₚ^dp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffTerm {
    pub coeff: CycloScalar,
    pub x_pow: u32,
    pub p_pow: u32,
    pub dx: u32,
    pub dp: u32,
}

/// A linear differential operator with polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOperator {
    pub terms: Vec<DiffTerm>,
}

impl DiffOperator {
    fn push(&mut self, coeff: CycloScalar, x_pow: u32, p_pow: u32, dx: u32, dp: u32) {
        if !coeff.is_zero() {
            self.terms.push(DiffTerm {
                coeff,
                x_pow,
                p_pow,
                dx,
                dp,
            });
        }
    }

    pub fn apply(&self, f: &PhasePoly) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for t in &self.terms {
            let d = f.partial(t.dx, t.dp);
            if d.is_zero() {
                continue;
            }
            let m = PhasePoly::term(t.x_pow, t.p_pow, t.coeff.clone());
            out = &out + &(&m * &d);
        }
        out
    }

    /// Largest amount by which a term can lower the total degree.
    pub fn max_degree_shift(&self) -> i64 {
        self.terms
            .iter()
            .map(|t| (t.x_pow + t.p_pow) as i64 - (t.dx + t.dp) as i64)
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = format!("({})", t.coeff);
                let m = Monomial::new(t.x_pow, t.p_pow);
                if m != Monomial::ONE {
                    s.push_str(&format!("*{m}"));
                }
                for (v, k) in [("x", t.dx), ("p", t.dp)] {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*d{v}")),
                        _ => s.push_str(&format!("*d{v}^{k}")),
                    }
                }
                s
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// The left operator, coming from `h₀`.
pub fn left_operator(a: &AlphaParams) -> DiffOperator {
    let q = CycloScalar::ratio;
    let mut l = DiffOperator::default();
    l.push(a.a(3).clone(), 1, 1, 0, 1);
    l.push(a.a(5).clone(), 1, 0, 0, 1);
    l.push(a.a(3) * &q(1, 8), 0, 0, 1, 2);
    l.push(a.a(1) * &q(1, 8), 0, 0, 3, 0);
    l.push(-a.a(2), 0, 1, 1, 0);
    l.push(a.a(1) * &q(-3, 2), 0, 2, 1, 0);
    l.push(a.a(3) * &q(-1, 2), 2, 0, 1, 0);
    l.push(a.a(4) * &q(-1, 2), 0, 0, 1, 0);
    l
}

/// The right operator, coming from `h₁`.
pub fn right_operator(a: &AlphaParams) -> DiffOperator {
    let q = CycloScalar::ratio;
    let mut r = DiffOperator::default();
    r.push(a.a(9).clone(), 3, 0, 0, 0);
    r.push(a.a(10).clone(), 1, 0, 0, 0);
    r.push(a.a(8).clone(), 1, 1, 0, 0);
    r.push(a.a(7).clone(), 1, 2, 0, 0);
    r.push(a.a(7) * &q(1, 2), 0, 1, 1, 1);
    r.push(a.a(8) * &q(1, 4), 0, 0, 1, 1);
    r.push(a.a(7) * &q(-1, 4), 1, 0, 2, 0);
    r.push(a.a(9) * &q(-3, 4), 1, 0, 0, 2);
    r
}
