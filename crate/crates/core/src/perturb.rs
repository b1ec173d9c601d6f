//! Order-by-order solution of `L η² = g R η²` and the perturbative
//! Hermitian counterpart.
//!
//! With `η² = 1 + Σ_{n≥1} 2gⁿcₙ` the equation becomes `L eₙ = R eₙ₋₁` for
//! `e₀ = 1`, `eₙ = 2cₙ`. Each order is an exact linear solve over x-even
//! polynomials of bounded degree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hamiltonian::{build_scalar, AlphaParams};
use crate::linalg::{solve_sparse, LinearSolution, SparseRow};
use crate::metric_eq::{left_operator, right_operator, DiffOperator};
use crate::moyal::{star, star_series, StarFactorization};
use crate::poly::{Monomial, PhasePoly};
use crate::scalar::CycloScalar;
use crate::series::GSeries;

/// How the kernel of `L` is fixed at each order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Gauge {
    /// `η²(g) ⋆ η²(−g) = 1`; kernel directions it leaves open are set to zero.
    #[default]
    Inversion,
    /// Every kernel coefficient set to zero.
    ZeroKernel,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    pub gauge: Gauge,
    /// Allow `α₁ ≠ 0` or `α₃ ≠ 0`, solving in degree `≤ 3n + 2`.
    pub degree_buffer: bool,
}

/// One line of the per-order dump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRecord {
    pub n: usize,
    pub c: PhasePoly,
    pub kernel_dim: usize,
    /// Kernel directions not fixed by the gauge and set to zero.
    pub free_kernel: usize,
    /// Order-`n` coefficient of `η²(g) ⋆ η²(−g) − 1`.
    pub gauge_defect: PhasePoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionState {
    pub alpha: AlphaParams,
    pub order_reached: usize,
    /// `c₀ = 1, c₁, …`.
    pub c: Vec<PhasePoly>,
    pub records: Vec<OrderRecord>,
    pub buffered: bool,
}

impl RecursionState {
    /// Degree bound used at order `n`.
    pub fn degree_bound(&self, n: usize) -> u32 {
        degree_bound(n, self.buffered)
    }

    /// `η² = 1 + Σ 2gⁿcₙ`.
    pub fn eta2(&self) -> GSeries {
        let two = CycloScalar::from_int(2);
        let mut coeffs = vec![PhasePoly::one()];
        coeffs.extend(self.c[1..].iter().map(|c| c.scale(&two)));
        GSeries::from_coeffs(coeffs)
    }
}

fn degree_bound(n: usize, buffered: bool) -> u32 {
    3 * n as u32 + if buffered { 2 } else { 0 }
}

/// x-even monomials of degree ≤ `d`, highest grlex first.
fn unknowns(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in (0..=d).rev() {
        for xd in (0..=deg).rev().filter(|x| x % 2 == 0) {
            out.push(Monomial::new(xd, deg - xd));
        }
    }
    out
}

/// Solve `L v = rhs` over the given monomials.
fn solve_order(
    l: &DiffOperator,
    cols: &[Monomial],
    rhs: &PhasePoly,
    order: usize,
) -> Result<(PhasePoly, Vec<PhasePoly>)> {
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut index_of = |m: Monomial, rows: &mut Vec<SparseRow>| {
        *row_index.entry(m).or_insert_with(|| {
            rows.push(SparseRow::new());
            rows.len() - 1
        })
    };
    for (j, m) in cols.iter().enumerate() {
        let image = l.apply(&PhasePoly::term(m.x_deg, m.p_deg, CycloScalar::one()));
        for (mi, c) in image.terms() {
            let r = index_of(*mi, &mut rows);
            rows[r].insert(j, c.clone());
        }
    }
    for (mi, _) in rhs.terms() {
        index_of(*mi, &mut rows);
    }
    let mut b = vec![CycloScalar::zero(); rows.len()];
    for (mi, c) in rhs.terms() {
        b[row_index[mi]] = c.clone();
    }
    let to_poly = |v: &[CycloScalar]| {
        let mut p = PhasePoly::zero();
        for (m, c) in cols.iter().zip(v) {
            p.add_term(*m, c.clone());
        }
        p
    };
    match solve_sparse(&rows, &b, cols.len()) {
        LinearSolution::Consistent {
            particular, kernel, ..
        } => Ok((to_poly(&particular), kernel.iter().map(|k| to_poly(k)).collect())),
        LinearSolution::Inconsistent { row, residual } => {
            let mono = row_index
                .iter()
                .find(|(_, &r)| r == row)
                .map(|(m, _)| m.to_string())
                .unwrap_or_default();
            Err(Error::InconsistentSystem {
                order,
                residual: format!("{residual} at {mono}"),
            })
        }
    }
}

/// Express `target` in the span of `basis`, if possible.
fn coordinates(basis: &[PhasePoly], target: &PhasePoly) -> Option<Vec<CycloScalar>> {
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (j, k) in basis.iter().enumerate() {
        for (m, c) in k.terms() {
            let n = rows.len();
            let r = *row_index.entry(*m).or_insert(n);
            if r == rows.len() {
                rows.push(SparseRow::new());
            }
            rows[r].insert(j, c.clone());
        }
    }
    for (m, _) in target.terms() {
        if !row_index.contains_key(m) {
            return None;
        }
    }
    let mut b = vec![CycloScalar::zero(); rows.len()];
    for (m, c) in target.terms() {
        b[row_index[m]] = c.clone();
    }
    match solve_sparse(&rows, &b, basis.len()) {
        LinearSolution::Consistent { particular, .. } => Some(particular),
        LinearSolution::Inconsistent { .. } => None,
    }
}

/// Solve for the metric series through `order` with the given gauge.
pub fn solve_metric_series(a: &AlphaParams, order: usize, gauge: Gauge) -> Result<RecursionState> {
    solve_with_options(
        a,
        order,
        SolverOptions {
            gauge,
            degree_buffer: false,
        },
    )
}

pub fn solve_with_options(a: &AlphaParams, order: usize, opts: SolverOptions) -> Result<RecursionState> {
    if !a.is_real() {
        return Err(Error::PreconditionViolation("parameters must be real".into()));
    }
    let unsupported = !a.a(1).is_zero() || !a.a(3).is_zero();
    if unsupported && !opts.degree_buffer {
        return Err(Error::PreconditionViolation(
            "perturbative solver needs alpha1 = alpha3 = 0".into(),
        ));
    }
    let l = left_operator(a);
    let r = right_operator(a);
    let half = CycloScalar::ratio(1, 2);
    let mut e: Vec<PhasePoly> = vec![PhasePoly::one()];
    let mut records = vec![OrderRecord {
        n: 0,
        c: PhasePoly::one(),
        kernel_dim: 0,
        free_kernel: 0,
        gauge_defect: PhasePoly::zero(),
    }];
    for n in 1..=order {
        let cols = unknowns(degree_bound(n, unsupported));
        let rhs = r.apply(&e[n - 1]);
        let (part, kernel) = solve_order(&l, &cols, &rhs, n)?;

        // Σ_{k=1}^{n−1} (−1)^k e_k ⋆ e_{n−k}
        let mut cross = PhasePoly::zero();
        for k in 1..n {
            let t = star(&e[k], &e[n - k]);
            cross = if k % 2 == 0 { &cross + &t } else { &cross - &t };
        }

        let mut en = part.clone();
        let mut free = kernel.len();
        if opts.gauge == Gauge::Inversion && n % 2 == 0 && !kernel.is_empty() {
            // defect = 2eₙ + cross, so we want eₙ = −cross/2
            let target = &cross.scale(&-half.clone()) - &part;
            if let Some(kappa) = coordinates(&kernel, &target) {
                for (k, c) in kernel.iter().zip(&kappa) {
                    en.add_scaled(k, c);
                }
                free = 0;
            }
        }
        let sign_n = if n % 2 == 0 { CycloScalar::one() } else { -CycloScalar::one() };
        // full defect: eₙ + (−1)ⁿ eₙ + (−1)ⁿ · cross
        let defect = &(&en + &en.scale(&sign_n)) + &cross.scale(&sign_n);
        records.push(OrderRecord {
            n,
            c: en.scale(&half),
            kernel_dim: kernel.len(),
            free_kernel: free,
            gauge_defect: defect,
        });
        e.push(en);
    }
    Ok(RecursionState {
        alpha: a.clone(),
        order_reached: order,
        c: records.iter().map(|r| r.c.clone()).collect(),
        records,
        buffered: unsupported,
    })
}

/// `η ⋆ H ⋆ η⁻¹` with `η` the star square root of `eta2`.
pub fn counterpart_series(a: &AlphaParams, eta2: &GSeries) -> Result<GSeries> {
    let f = StarFactorization::new(eta2)?;
    f.conjugate(&build_scalar(a))
}

/// Order-by-order coefficients of `η²(g) ⋆ η²(−g) − 1`.
pub fn gauge_check(eta2: &GSeries) -> Result<Vec<PhasePoly>> {
    let prod = star_series(eta2, &eta2.flip_g())?;
    Ok(prod
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| if n == 0 { c - &PhasePoly::one() } else { c.clone() })
        .collect())
}

/// Check `L eₙ = R eₙ₋₁` for every order of `eta2`; returns the residuals.
pub fn recursion_residuals(a: &AlphaParams, eta2: &GSeries) -> Vec<PhasePoly> {
    let l = left_operator(a);
    let r = right_operator(a);
    (1..=eta2.order())
        .map(|n| &l.apply(eta2.coeff(n)) - &r.apply(eta2.coeff(n - 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{preset, Preset, PresetParams};
    use crate::parse::parse_poly;

    fn sslr() -> AlphaParams {
        preset(Preset::LatticeReggeon, &PresetParams::delta(CycloScalar::one())).unwrap()
    }

    #[test]
    fn first_two_orders() {
        let s = solve_metric_series(&sslr(), 2, Gauge::Inversion).unwrap();
        assert_eq!(s.c[1], parse_poly("p^3 - 2p + p x^2").unwrap());
        assert_eq!(s.c[2], parse_poly("p^6-4p^4+p^2+x^2-4p^2x^2+2p^4x^2+p^2x^4").unwrap());
    }

    #[test]
    fn order_zero_is_one() {
        let s = solve_metric_series(&sslr(), 0, Gauge::Inversion).unwrap();
        assert!(s.eta2().is_one());
    }

    #[test]
    fn kernel_is_powers_of_h0() {
        let s = solve_metric_series(&sslr(), 4, Gauge::Inversion).unwrap();
        for r in &s.records[1..] {
            // polynomials in x² + p² of degree ≤ 3n: ⌊3n/2⌋ + 1 of them
            assert_eq!(r.kernel_dim, 3 * r.n / 2 + 1, "order {}", r.n);
        }
    }

    #[test]
    fn gauge_defect_zero_and_residuals_zero() {
        let s = solve_metric_series(&sslr(), 4, Gauge::Inversion).unwrap();
        let eta2 = s.eta2();
        assert!(gauge_check(&eta2).unwrap().iter().all(|d| d.is_zero()));
        assert!(recursion_residuals(&sslr(), &eta2).iter().all(|d| d.is_zero()));
        assert!(s.records.iter().all(|r| r.gauge_defect.is_zero()));
    }

    #[test]
    fn shifted_coefficient_breaks_gauge() {
        let s = solve_metric_series(&sslr(), 2, Gauge::Inversion).unwrap();
        let mut eta2 = s.eta2();
        let h0 = parse_poly("1/2(x^2 + p^2 - 1)").unwrap();
        eta2.set_coeff(2, eta2.coeff(2) + &h0.pow(2));
        let d = gauge_check(&eta2).unwrap();
        assert!(d[1].is_zero());
        assert!(!d[2].is_zero());
        assert!(gauge_check(&GSeries::one(0)).unwrap()[0].is_zero());
    }

    #[test]
    fn precondition() {
        let mut a = sslr();
        a.set(3, CycloScalar::one());
        assert!(matches!(
            solve_metric_series(&a, 1, Gauge::Inversion),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn flipped_coupling_flips_odd_orders() {
        let a = sslr();
        let s = solve_metric_series(&a, 4, Gauge::Inversion).unwrap();
        let t = solve_metric_series(&a.negate_coupling(), 4, Gauge::Inversion).unwrap();
        assert_eq!(t.eta2(), s.eta2().flip_g());
    }

    #[test]
    fn trivial_counterpart() {
        let mut a = sslr();
        for j in 7..=10 {
            a.set(j, CycloScalar::zero());
        }
        let h = counterpart_series(&a, &GSeries::one(2)).unwrap();
        assert_eq!(h, build_scalar(&a).with_order(2));
    }
}
