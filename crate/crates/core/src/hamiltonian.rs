//! The ten-parameter cubic Hamiltonian in ladder (λ) and phase-space (α)
//! coordinates.
//!
//! Ladder form:
//! `λ₁a†a + λ₂a†² + λ₃a² + λ₄ + i(λ₅a† + λ₆a + λ₇a†³ + λ₈a†²a + λ₉a†a² + λ₁₀a³)`.
//!
//! Scalar form (Weyl symbol, anticommutators already symmetrized):
//! `α₁p³ + α₂p² + α₃px² + α₄p + α₅x² + α₆ + ig(α₇p²x + α₈px + α₉x³ + α₁₀x)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ladder::NormalOrdered;
use crate::linalg::{mat_vec, DenseMatrix};
use crate::poly::{Monomial, PhasePoly};
use crate::scalar::CycloScalar;
use crate::series::GSeries;

/// Monomial `(x_deg, p_deg)` multiplying each αⱼ.
pub const ALPHA_MONOMIALS: [(u32, u32); 10] = [
    (0, 3),
    (0, 2),
    (2, 1),
    (0, 1),
    (2, 0),
    (0, 0),
    (1, 2),
    (1, 1),
    (3, 0),
    (1, 0),
];

/// Normal-ordered `(m, n)` for `a†^m aⁿ` multiplying each λⱼ.
pub const LAMBDA_MONOMIALS: [(u32, u32); 10] = [
    (1, 1),
    (2, 0),
    (0, 2),
    (0, 0),
    (1, 0),
    (0, 1),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaParams {
    pub alpha: [CycloScalar; 10],
    /// Numeric coupling. Symbolic constructions treat the anti-Hermitian
    /// multiplier as the series variable and only read this value when
    /// converting to ladder form or for numerics.
    pub g: CycloScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaParams {
    pub lambda: [CycloScalar; 10],
}

/// `H = h0 + i g h1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianSplit {
    pub h0: PhasePoly,
    pub h1: PhasePoly,
}

fn arr(v: Vec<CycloScalar>) -> [CycloScalar; 10] {
    v.try_into().expect("ten entries")
}

impl AlphaParams {
    pub fn new(alpha: [CycloScalar; 10], g: CycloScalar) -> Self {
        Self { alpha, g }
    }

    /// From `(num, den)` pairs, `g = 1`.
    pub fn from_ratios(r: [(i64, i64); 10]) -> Self {
        Self {
            alpha: r.map(|(n, d)| CycloScalar::ratio(n, d)),
            g: CycloScalar::one(),
        }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| CycloScalar::zero()), CycloScalar::one())
    }

    /// `αⱼ`, one-based.
    pub fn a(&self, j: usize) -> &CycloScalar {
        &self.alpha[j - 1]
    }

    pub fn set(&mut self, j: usize, v: CycloScalar) {
        self.alpha[j - 1] = v;
    }

    pub fn with_g(mut self, g: CycloScalar) -> Self {
        self.g = g;
        self
    }

    /// Read parameters off `h₀ + i g h₁` evaluated at coupling `g`; `None`
    /// if the symbol has a monomial outside the ten-term form or a
    /// coefficient of the wrong reality.
    pub fn from_symbol(f: &PhasePoly, g: CycloScalar) -> Option<Self> {
        let ginv = g.inv()?;
        let mut out = Self::new(Default::default(), g);
        let mut seen = PhasePoly::zero();
        for (j, &(xd, pd)) in ALPHA_MONOMIALS.iter().enumerate() {
            let c = f.coeff(xd, pd);
            let v = if j < 6 { c.clone() } else { &(&c * &-CycloScalar::i()) * &ginv };
            if !v.is_real() {
                return None;
            }
            out.alpha[j] = v;
            seen.add_term(Monomial::new(xd, pd), c);
        }
        (&seen == f).then_some(out)
    }

    pub fn is_real(&self) -> bool {
        self.alpha.iter().all(|a| a.is_real()) && self.g.is_real()
    }

    pub fn split(&self) -> HamiltonianSplit {
        let mut h0 = PhasePoly::zero();
        let mut h1 = PhasePoly::zero();
        for (j, &(xd, pd)) in ALPHA_MONOMIALS.iter().enumerate() {
            let t = PhasePoly::term(xd, pd, self.alpha[j].clone());
            if j < 6 {
                h0 = &h0 + &t;
            } else {
                h1 = &h1 + &t;
            }
        }
        HamiltonianSplit { h0, h1 }
    }

    /// Coupling flipped: `α₇..α₁₀ → −α₇..−α₁₀`.
    pub fn negate_coupling(&self) -> Self {
        let mut out = self.clone();
        for j in 7..=10 {
            out.set(j, -self.a(j));
        }
        out
    }
}

impl fmt::Display for AlphaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        write!(f, "({}; g = {})", parts.join(", "), self.g)
    }
}

impl LambdaParams {
    pub fn new(lambda: [CycloScalar; 10]) -> Self {
        Self { lambda }
    }

    pub fn l(&self, j: usize) -> &CycloScalar {
        &self.lambda[j - 1]
    }

    /// The ladder-form operator, as a normal-ordered polynomial.
    pub fn operator(&self) -> NormalOrdered {
        let mut out = NormalOrdered::zero();
        for (j, &(m, n)) in LAMBDA_MONOMIALS.iter().enumerate() {
            let c = if j < 4 {
                self.lambda[j].clone()
            } else {
                &self.lambda[j] * &CycloScalar::i()
            };
            out.add_term(m, n, c);
        }
        out
    }

    /// Read λ back from a normal-ordered operator; `None` if it has terms
    /// outside the cubic ansatz or coefficients of the wrong reality.
    pub fn from_operator(op: &NormalOrdered) -> Option<Self> {
        let mut lambda: [CycloScalar; 10] = std::array::from_fn(|_| CycloScalar::zero());
        for (&(m, n), c) in op.terms() {
            let j = LAMBDA_MONOMIALS.iter().position(|&k| k == (m, n))?;
            lambda[j] = if j < 4 {
                c.clone()
            } else {
                -(c * &CycloScalar::i())
            };
            if !lambda[j].is_real() {
                return None;
            }
        }
        Some(Self { lambda })
    }
}

impl fmt::Display for LambdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl HamiltonianSplit {
    pub fn recombine(&self) -> GSeries {
        GSeries::from_coeffs(vec![self.h0.clone(), self.h1.scale(&CycloScalar::i())])
    }
}

/// `H(x,p)` as a degree-one series in the anti-Hermitian multiplier.
pub fn build_scalar(a: &AlphaParams) -> GSeries {
    a.split().recombine()
}

/// `H` with the numeric coupling substituted.
pub fn build_numeric(a: &AlphaParams) -> PhasePoly {
    build_scalar(a).evaluate(&a.g)
}

fn r2inv(num: i64, den: i64) -> CycloScalar {
    // num / (den·√2) = num·√2 / (2·den)
    CycloScalar::sqrt2() * CycloScalar::ratio(num, 2 * den)
}

/// The α = Mλ matrix, entries as printed.
pub fn m_matrix(g: &CycloScalar) -> Result<DenseMatrix> {
    let gi = g.inv().ok_or(Error::ZeroCoupling)?;
    let z = CycloScalar::zero;
    let q = CycloScalar::ratio;
    let s = r2inv;
    let sg = |n: i64, d: i64| &r2inv(n, d) * &gi;
    Ok(vec![
        vec![z(), z(), z(), z(), z(), z(), s(-1, 2), s(1, 2), s(-1, 2), s(1, 2)],
        vec![q(1, 2), q(-1, 2), q(-1, 2), z(), z(), z(), z(), z(), z(), z()],
        vec![z(), z(), z(), z(), z(), z(), s(3, 2), s(1, 2), s(-1, 2), s(-3, 2)],
        vec![z(), z(), z(), z(), s(1, 1), s(-1, 1), z(), s(-1, 1), s(1, 1), z()],
        vec![q(1, 2), q(1, 2), q(1, 2), z(), z(), z(), z(), z(), z(), z()],
        vec![q(-1, 2), z(), z(), q(1, 1), z(), z(), z(), z(), z(), z()],
        vec![z(), z(), z(), z(), z(), z(), sg(-3, 2), sg(1, 2), sg(1, 2), sg(-3, 2)],
        vec![z(), -&gi, gi.clone(), z(), z(), z(), z(), z(), z(), z()],
        vec![z(), z(), z(), z(), z(), z(), sg(1, 2), sg(1, 2), sg(1, 2), sg(1, 2)],
        vec![z(), z(), z(), z(), sg(1, 1), sg(1, 1), z(), sg(-1, 1), sg(-1, 1), z()],
    ])
}

/// The λ = M⁻¹α matrix with the entries exactly as printed.
///
/// Row 5, column 7 is printed as `−g/(2√2)`; the product with [`m_matrix`]
/// is then not the identity. [`m_inverse`] carries the corrected sign.
pub fn m_inverse_printed(g: &CycloScalar) -> DenseMatrix {
    let z = CycloScalar::zero;
    let q = CycloScalar::ratio;
    let s = r2inv;
    let sg = |n: i64, d: i64| &r2inv(n, d) * g;
    let gq = |n: i64, d: i64| g * &q(n, d);
    vec![
        vec![z(), q(1, 1), z(), z(), q(1, 1), z(), z(), z(), z(), z()],
        vec![z(), q(-1, 2), z(), z(), q(1, 2), z(), z(), gq(-1, 2), z(), z()],
        vec![z(), q(-1, 2), z(), z(), q(1, 2), z(), z(), gq(1, 2), z(), z()],
        vec![z(), q(1, 2), z(), z(), q(1, 2), q(1, 1), z(), z(), z(), z()],
        vec![s(3, 2), z(), s(1, 2), s(1, 1), z(), z(), sg(-1, 2), z(), sg(3, 2), sg(1, 1)],
        vec![s(-3, 2), z(), s(-1, 2), s(-1, 1), z(), z(), sg(1, 2), z(), sg(3, 2), sg(1, 1)],
        vec![s(-1, 2), z(), s(1, 2), z(), z(), z(), sg(-1, 2), z(), sg(1, 2), z()],
        vec![s(3, 2), z(), s(1, 2), z(), z(), z(), sg(1, 2), z(), sg(3, 2), z()],
        vec![s(-3, 2), z(), s(-1, 2), z(), z(), z(), sg(1, 2), z(), sg(3, 2), z()],
        vec![s(1, 2), z(), s(-1, 2), z(), z(), z(), sg(-1, 2), z(), sg(1, 2), z()],
    ]
}

/// M⁻¹ with the single sign correction at row 5, column 7.
pub fn m_inverse(g: &CycloScalar) -> DenseMatrix {
    let mut m = m_inverse_printed(g);
    m[4][6] = -&m[4][6];
    m
}

pub fn lambda_to_alpha(l: &LambdaParams, g: &CycloScalar) -> Result<AlphaParams> {
    let m = m_matrix(g)?;
    Ok(AlphaParams::new(arr(mat_vec(&m, &l.lambda)), g.clone()))
}

pub fn alpha_to_lambda(a: &AlphaParams) -> LambdaParams {
    LambdaParams::new(arr(mat_vec(&m_inverse(&a.g), &a.alpha)))
}

/// α from λ through the operator algebra: build the ladder operator,
/// take its Weyl symbol and read the coefficients off.
pub fn alpha_from_ladder(l: &LambdaParams, g: &CycloScalar) -> Result<AlphaParams> {
    let gi = g.inv().ok_or(Error::ZeroCoupling)?;
    let sym = l.operator().weyl_symbol();
    let mut alpha: [CycloScalar; 10] = std::array::from_fn(|_| CycloScalar::zero());
    let mut seen = PhasePoly::zero();
    for (j, &(xd, pd)) in ALPHA_MONOMIALS.iter().enumerate() {
        let c = sym.coeff(xd, pd);
        seen.add_term(crate::poly::Monomial::new(xd, pd), c.clone());
        alpha[j] = if j < 6 {
            c
        } else {
            -(&(&c * &CycloScalar::i()) * &gi)
        };
    }
    if seen != sym || !alpha.iter().all(|a| a.is_real()) {
        return Err(Error::PreconditionViolation(
            "symbol falls outside the PT-symmetric cubic ansatz".into(),
        ));
    }
    Ok(AlphaParams::new(alpha, g.clone()))
}

/// Named rows of the table of special reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    MassiveIx,
    MassiveIx3,
    Swanson,
    LatticeReggeon,
    BilinearCubic,
    HEx1,
    HSs3,
    QuarticZ4,
    Sextic,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::MassiveIx,
        Preset::MassiveIx3,
        Preset::Swanson,
        Preset::LatticeReggeon,
        Preset::BilinearCubic,
        Preset::HEx1,
        Preset::HSs3,
        Preset::QuarticZ4,
        Preset::Sextic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::MassiveIx => "massive-ix",
            Preset::MassiveIx3 => "massive-ix3",
            Preset::Swanson => "swanson",
            Preset::LatticeReggeon => "lattice-reggeon",
            Preset::BilinearCubic => "bilinear-cubic",
            Preset::HEx1 => "H-EX1",
            Preset::HSs3 => "H-SS3",
            Preset::QuarticZ4 => "quartic-z4",
            Preset::Sextic => "sextic",
        }
    }

    /// Parameter names the row depends on.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Preset::MassiveIx | Preset::MassiveIx3 => &["m"],
            Preset::Swanson | Preset::LatticeReggeon | Preset::HSs3 => &["Delta"],
            Preset::BilinearCubic | Preset::HEx1 => &["Delta", "g"],
            Preset::QuarticZ4 => &["g"],
            Preset::Sextic => &["lambda1", "lambda2", "g"],
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::MassiveIx => "p^2 + m^2 x^2 + i g x",
            Preset::MassiveIx3 => "p^2 + m^2 x^2 + i g x^3",
            Preset::Swanson => "Delta a†a + g-block i px",
            Preset::LatticeReggeon => "Delta a†a + i g̃ a†(a + a†)a",
            Preset::BilinearCubic => "Delta a†a + i g a†(a† - a)a",
            Preset::HEx1 => "Delta a†a + i g a†(a† - a)a + lattice Reggeon cubic",
            Preset::HSs3 => "lattice Reggeon minus i g̃ x^3",
            Preset::QuarticZ4 => "p_z^2/2 - (g/32) z^4 with z = -2i sqrt(1 + ix)",
            Preset::Sextic => "p_z^2/2 + lambda1 z^6 + lambda2 z^2 with z = -2i sqrt(1 + ix)",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = s.to_ascii_lowercase().replace('_', "-");
        Preset::ALL
            .into_iter()
            .find(|p| p.name().to_ascii_lowercase() == k)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values for preset parameters; unset entries are reported as missing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresetParams {
    pub delta: Option<CycloScalar>,
    pub m: Option<CycloScalar>,
    pub lambda1: Option<CycloScalar>,
    pub lambda2: Option<CycloScalar>,
    pub g: Option<CycloScalar>,
}

impl PresetParams {
    pub fn delta(d: CycloScalar) -> Self {
        Self {
            delta: Some(d),
            ..Self::default()
        }
    }

    pub fn with_g(mut self, g: CycloScalar) -> Self {
        self.g = Some(g);
        self
    }
}

/// The exact table row for `preset`.
pub fn preset(p: Preset, params: &PresetParams) -> Result<AlphaParams> {
    let need = |v: &Option<CycloScalar>, name: &str| {
        v.clone().ok_or_else(|| Error::MissingPresetParam {
            preset: p.name().into(),
            param: name.into(),
        })
    };
    let q = CycloScalar::ratio;
    let z = CycloScalar::zero;
    let g_or_one = params.g.clone().unwrap_or_else(CycloScalar::one);
    let alpha: [CycloScalar; 10] = match p {
        Preset::MassiveIx | Preset::MassiveIx3 => {
            let m = need(&params.m, "m")?;
            let m2 = &m * &m;
            let (a9, a10) = if p == Preset::MassiveIx { (z(), q(1, 1)) } else { (q(1, 1), z()) };
            [z(), q(1, 1), z(), z(), m2, z(), z(), z(), a9, a10]
        }
        Preset::Swanson | Preset::LatticeReggeon | Preset::HSs3 => {
            let d = need(&params.delta, "Delta")?;
            let h = &d * &q(1, 2);
            let tail = match p {
                Preset::Swanson => [z(), q(1, 1), z(), z()],
                Preset::LatticeReggeon => [q(1, 1), z(), q(1, 1), q(-2, 1)],
                _ => [q(1, 1), z(), z(), q(-2, 1)],
            };
            let [t7, t8, t9, t10] = tail;
            [z(), h.clone(), z(), z(), h.clone(), -&h, t7, t8, t9, t10]
        }
        Preset::BilinearCubic | Preset::HEx1 => {
            let d = need(&params.delta, "Delta")?;
            let g = need(&params.g, "g")?;
            let h = &d * &q(1, 2);
            let tail = if p == Preset::BilinearCubic {
                [z(), z(), z(), z()]
            } else {
                [q(1, 1), z(), q(1, 1), q(-2, 1)]
            };
            let [t7, t8, t9, t10] = tail;
            [g.clone(), h.clone(), g.clone(), &g * &q(-2, 1), h.clone(), -&h, t7, t8, t9, t10]
        }
        Preset::QuarticZ4 => {
            let g = need(&params.g, "g")?;
            let gi = g.inv().ok_or(Error::ZeroCoupling)?;
            let half_gi = &gi * &q(1, 2);
            [
                z(),
                q(1, 2),
                z(),
                &q(1, 4) - &half_gi,
                &g * &q(1, 2),
                &g * &q(-1, 2),
                half_gi,
                z(),
                z(),
                q(-1, 1),
            ]
        }
        Preset::Sextic => {
            let l1 = need(&params.lambda1, "lambda1")?;
            let l2 = need(&params.lambda2, "lambda2")?;
            let g = need(&params.g, "g")?;
            let gi = g.inv().ok_or(Error::ZeroCoupling)?;
            let half_gi = &gi * &q(1, 2);
            let k1 = (&(&l1 * &q(16, 1)) + &l2) * q(-4, 1);
            let k2 = (&(&l1 * &q(48, 1)) + &l2) * q(-4, 1);
            [
                z(),
                q(1, 2),
                z(),
                &q(1, 4) - &half_gi,
                &l1 * &q(192, 1),
                k1,
                half_gi,
                z(),
                &(&l1 * &q(64, 1)) * &gi,
                &k2 * &gi,
            ]
        }
    };
    Ok(AlphaParams::new(alpha, g_or_one))
}

/// `true` iff `x → ix, p → −ip` sends every g-coefficient of `H` to its negative.
pub fn ds_ads_check(h: &GSeries) -> bool {
    h.coeffs().iter().all(|c| {
        c.substitute_scaled(&CycloScalar::i(), &-CycloScalar::i()) == -c
    })
}

/// Symbol of the kinetic term `p_z²/2` after `z = −2i√(1+ix)`, from the
/// operator form `p̂²/2 + p̂/4 + (i/2)x̂p̂²`.
pub fn jackiw_kinetic_symbol() -> PhasePoly {
    let x = NormalOrdered::x();
    let p = NormalOrdered::p();
    let q = |n, d| CycloScalar::ratio(n, d);
    let op = &(&p.pow(2).scale(&q(1, 2)) + &p.scale(&q(1, 4)))
        + &(&x * &p.pow(2)).scale(&(CycloScalar::i() * q(1, 2)));
    op.weyl_symbol()
}

/// `λ₁z⁶ + λ₂z²` with `z² = −4(1 + ix)`.
pub fn jackiw_potential(l1: &CycloScalar, l2: &CycloScalar) -> PhasePoly {
    let z2 = (PhasePoly::one() + PhasePoly::x().scale(&CycloScalar::i())).scale(&CycloScalar::from_int(-4));
    &z2.pow(3).scale(l1) + &z2.scale(l2)
}

/// `H_J[z(x), 1, λ₁, λ₂]` as a scalar function.
pub fn jackiw_scalar(l1: &CycloScalar, l2: &CycloScalar) -> PhasePoly {
    &jackiw_kinetic_symbol() + &jackiw_potential(l1, l2)
}

/// The expansion of `H_J[z(x),1,2,−3]` as printed, with `{x,p²}/2 ↦ p²x`.
/// Its `x` coefficient is `+372i`.
pub fn jackiw_printed_expansion() -> PhasePoly {
    crate::parse::parse_poly("1/2 p^2 - 1/4 p + 384 x^2 - 116 + i(1/2 p^2 x + 372 x + 128 x^3)")
        .expect("literal parses")
}

/// `H_J[z(x),1,2,−3] = H(sextic row, g = 1)`, built from the exact
/// `z`-substitution on the left and the preset on the right.
pub fn jackiw_identity_check() -> bool {
    let lhs = jackiw_scalar(&CycloScalar::from_int(2), &CycloScalar::from_int(-3));
    let params = PresetParams {
        lambda1: Some(CycloScalar::from_int(2)),
        lambda2: Some(CycloScalar::from_int(-3)),
        g: Some(CycloScalar::one()),
        ..PresetParams::default()
    };
    match preset(Preset::Sextic, &params) {
        Ok(a) => build_numeric(&a) == lhs,
        Err(_) => false,
    }
}

/// `H₄` from its operator expansion, as a series in `g`.
pub fn h4_series() -> GSeries {
    let q = |n, d| CycloScalar::ratio(n, d);
    let kin = jackiw_kinetic_symbol();
    let pot = &(&PhasePoly::term(2, 0, q(1, 2)) + &PhasePoly::constant(q(-1, 2)))
        + &PhasePoly::term(1, 0, -CycloScalar::i());
    GSeries::from_coeffs(vec![kin, pot])
}

/// `H_J[z(x),1,g/384,g/8] − H₄` as a series in `g`.
pub fn jackiw_h4_difference() -> GSeries {
    let pot = jackiw_potential(&CycloScalar::ratio(1, 384), &CycloScalar::ratio(1, 8));
    let lhs = GSeries::from_coeffs(vec![jackiw_kinetic_symbol(), pot]);
    lhs.sub(&h4_series()).expect("same order")
}

/// The quartic row with `α₄` taken from the operator expansion of `H₄`
/// (`−1/4` for every `g`). The table entry `1/4 − 1/(2g)` agrees only at `g = 1`.
pub fn quartic_from_operator(g: &CycloScalar) -> Result<AlphaParams> {
    let mut a = preset(Preset::QuarticZ4, &PresetParams::default().with_g(g.clone()))?;
    a.set(4, CycloScalar::ratio(-1, 4));
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{determinant, identity, mat_mul};
    use crate::parse::parse_poly;

    fn q(n: i64, d: i64) -> CycloScalar {
        CycloScalar::ratio(n, d)
    }

    /// M rebuilt column by column through the ladder oracle.
    fn m_from_oracle(g: &CycloScalar) -> DenseMatrix {
        let mut cols = Vec::new();
        for j in 0..10 {
            let mut l: [CycloScalar; 10] = std::array::from_fn(|_| CycloScalar::zero());
            l[j] = CycloScalar::one();
            cols.push(alpha_from_ladder(&LambdaParams::new(l), g).unwrap().alpha);
        }
        (0..10).map(|i| (0..10).map(|j| cols[j][i].clone()).collect()).collect()
    }

    #[test]
    fn printed_m_matches_ladder_oracle() {
        for g in [q(1, 1), q(3, 7), q(-2, 5)] {
            assert_eq!(m_matrix(&g).unwrap(), m_from_oracle(&g));
        }
    }

    #[test]
    fn det_m() {
        for (g, want) in [(q(1, 1), q(-1, 1)), (q(2, 1), q(-1, 16)), (q(5, 3), q(-81, 625))] {
            assert_eq!(determinant(&m_matrix(&g).unwrap()), want);
        }
    }

    #[test]
    fn corrected_inverse_is_inverse() {
        let g = q(3, 7);
        let m = m_matrix(&g).unwrap();
        assert_eq!(mat_mul(&m, &m_inverse(&g)), identity(10));
        assert_eq!(mat_mul(&m_inverse(&g), &m), identity(10));
    }

    #[test]
    fn printed_inverse_has_one_bad_entry() {
        let g = q(3, 7);
        let m = m_matrix(&g).unwrap();
        let prod = mat_mul(&m, &m_inverse_printed(&g));
        assert_ne!(prod, identity(10));
        let diff: Vec<(usize, usize)> = (0..10)
            .flat_map(|i| (0..10).map(move |j| (i, j)))
            .filter(|&(i, j)| m_inverse(&g)[i][j] != m_inverse_printed(&g)[i][j])
            .collect();
        assert_eq!(diff, vec![(4, 6)]);
    }

    #[test]
    fn swanson_lambda() {
        let a = preset(Preset::Swanson, &PresetParams::delta(q(1, 1)))
            .unwrap()
            .with_g(q(1, 10));
        let l = alpha_to_lambda(&a);
        let mut want: [CycloScalar; 10] = std::array::from_fn(|_| CycloScalar::zero());
        want[0] = q(1, 1);
        want[1] = q(-1, 20);
        want[2] = q(1, 20);
        assert_eq!(l.lambda, want);
        // and the operator agrees with the Weyl quantization of the symbol
        assert_eq!(l.operator(), NormalOrdered::from_weyl(&build_numeric(&a)));
    }

    #[test]
    fn zero_maps_to_zero() {
        let l = alpha_to_lambda(&AlphaParams::zero());
        assert!(l.lambda.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn zero_coupling_rejected() {
        let l = LambdaParams::new(std::array::from_fn(|_| CycloScalar::one()));
        assert_eq!(lambda_to_alpha(&l, &CycloScalar::zero()), Err(Error::ZeroCoupling));
    }

    #[test]
    fn sslr_scalar_form() {
        let a = preset(Preset::LatticeReggeon, &PresetParams::delta(q(1, 1))).unwrap();
        let h = build_scalar(&a);
        assert_eq!(h.coeff(0), &parse_poly("1/2(x^2 + p^2 - 1)").unwrap());
        assert_eq!(h.coeff(1), &parse_poly("i(x^3 + p^2 x - 2x)").unwrap());
        for c in h.coeffs() {
            assert!(c.pt_check());
        }
    }

    #[test]
    fn massive_ix3_scalar_form() {
        let a = preset(
            Preset::MassiveIx3,
            &PresetParams {
                m: Some(q(3, 1)),
                ..PresetParams::default()
            },
        )
        .unwrap();
        let h = build_scalar(&a).evaluate(&CycloScalar::from_int(5));
        assert_eq!(h, parse_poly("p^2 + 9x^2 + 5i x^3").unwrap());
    }

    #[test]
    fn table_rows() {
        let a = preset(Preset::LatticeReggeon, &PresetParams::delta(q(3, 1))).unwrap();
        let want = [q(0, 1), q(3, 2), q(0, 1), q(0, 1), q(3, 2), q(-3, 2), q(1, 1), q(0, 1), q(1, 1), q(-2, 1)];
        assert_eq!(a.alpha, want);
        let s = preset(
            Preset::Sextic,
            &PresetParams {
                lambda1: Some(q(2, 1)),
                lambda2: Some(q(-3, 1)),
                g: Some(q(1, 2)),
                ..PresetParams::default()
            },
        )
        .unwrap();
        let want = [q(0, 1), q(1, 2), q(0, 1), q(-3, 4), q(384, 1), q(-116, 1), q(1, 1), q(0, 1), q(256, 1), q(-744, 1)];
        assert_eq!(s.alpha, want);
        assert!(matches!(
            preset(Preset::QuarticZ4, &PresetParams::default()),
            Err(Error::MissingPresetParam { .. })
        ));
        assert_eq!(
            preset(Preset::QuarticZ4, &PresetParams::default().with_g(CycloScalar::zero())),
            Err(Error::ZeroCoupling)
        );
        assert!("nope".parse::<Preset>().is_err());
        assert_eq!("h-ex1".parse::<Preset>().unwrap(), Preset::HEx1);
    }

    #[test]
    fn ds_ads() {
        let hj = GSeries::constant(parse_poly("1/2 p^2 + 2 x^6 - 3 x^2").unwrap(), 0);
        assert!(ds_ads_check(&hj));
        assert!(ds_ads_check(&GSeries::constant(parse_poly("p^2 + x^2").unwrap(), 0)));
        assert!(!ds_ads_check(&GSeries::constant(parse_poly("p^2 + x^4").unwrap(), 0)));
        assert!(ds_ads_check(&GSeries::constant(parse_poly("x^3 p").unwrap(), 0)));
        assert!(ds_ads_check(&GSeries::constant(parse_poly("x p^3").unwrap(), 0)));
        assert!(ds_ads_check(&GSeries::constant(parse_poly("x^5 p^3").unwrap(), 0)));
    }

    #[test]
    fn symbol_round_trip() {
        let a = AlphaParams::from_ratios([(2, 3), (-1, 5), (7, 2), (3, 1), (-4, 3), (1, 7), (5, 2), (-2, 9), (3, 4), (-6, 5)])
            .with_g(q(-2, 3));
        assert_eq!(AlphaParams::from_symbol(&build_numeric(&a), a.g.clone()), Some(a.clone()));
        let extra = &build_numeric(&a) + &parse_poly("x^4").unwrap();
        assert_eq!(AlphaParams::from_symbol(&extra, a.g.clone()), None);
        let wrong = &build_numeric(&a) + &parse_poly("i").unwrap();
        assert_eq!(AlphaParams::from_symbol(&wrong, a.g.clone()), None);
    }

    #[test]
    fn jackiw_identity() {
        assert!(jackiw_identity_check());
        let lhs = jackiw_scalar(&q(2, 1), &q(-3, 1));
        // the printed expansion differs only in the sign of the linear x term
        let diff = &jackiw_printed_expansion() - &lhs;
        assert_eq!(diff, parse_poly("744 i x").unwrap());
        // soundness: a perturbed right side fails
        let mut bumped = lhs.clone();
        bumped.add_term(crate::poly::Monomial::new(2, 0), q(1, 1));
        assert_ne!(bumped, lhs);
    }

    #[test]
    fn jackiw_as_quartic_perturbation() {
        let d = jackiw_h4_difference();
        assert!(d.coeff(0).is_zero());
        assert_eq!(d.coeff(1), &parse_poly("i/6 x^3 - 1/6").unwrap());
    }

    #[test]
    fn quartic_row_matches_operator_only_at_unit_coupling() {
        for g in [q(1, 1), q(2, 1), q(1, 3)] {
            let table = preset(Preset::QuarticZ4, &PresetParams::default().with_g(g.clone())).unwrap();
            let from_op = quartic_from_operator(&g).unwrap();
            let h4 = h4_series().evaluate(&g);
            assert_eq!(build_numeric(&from_op), h4);
            assert_eq!(build_numeric(&table) == h4, g == q(1, 1));
        }
    }
}
