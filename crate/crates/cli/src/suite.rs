//! The `verify` suite: independent checks of each operation, named after it.

use ptmetric::hamiltonian::{
    alpha_from_ladder, ds_ads_check, jackiw_h4_difference, jackiw_identity_check, m_inverse, m_matrix, preset, AlphaParams,
    LambdaParams, Preset, PresetParams,
};
use ptmetric::linalg::{identity, mat_mul, mat_vec, DenseMatrix};
use ptmetric::moyal::{star, star_sqrt};
use ptmetric::perturb::{counterpart_series, gauge_check, recursion_residuals, solve_metric_series, Gauge};
use ptmetric::reference::{golden, poly, STAR_PRODUCTS};
use ptmetric::sph::{certify, family_instance, FamilyTag};
use ptmetric::{CycloScalar, GSeries, PhasePoly, Result};

pub struct Check {
    pub op: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(op: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            op,
            pass,
            detail: detail.into(),
        }
    }

    fn from_result(op: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((pass, detail)) => Self::new(op, pass, detail),
            Err(e) => Self::new(op, false, format!("error: {e}")),
        }
    }
}

fn couplings() -> Vec<CycloScalar> {
    vec![
        CycloScalar::one(),
        CycloScalar::ratio(2, 3),
        CycloScalar::from_int(-5),
        &CycloScalar::ratio(1, 2) * &CycloScalar::sqrt2(),
    ]
}

pub fn check_star() -> Check {
    let bad: Vec<String> = STAR_PRODUCTS
        .iter()
        .filter(|(f, g, want)| star(&poly(f), &poly(g)) != poly(want))
        .map(|(f, g, _)| format!("{f} * {g}"))
        .collect();
    Check::new("star", bad.is_empty(), if bad.is_empty() { "3 products".into() } else { bad.join("; ") })
}

pub fn check_m_inverse() -> Check {
    let r = (|| {
        for g in couplings() {
            if mat_mul(&m_matrix(&g)?, &m_inverse(&g)) != identity(10) {
                return Ok((false, format!("M M^-1 != 1 at g = {g}")));
            }
        }
        Ok((true, "M M^-1 = 1 at 4 couplings".into()))
    })();
    Check::from_result("m_inverse", r)
}

/// `α = M λ` against the operator-algebra oracle on every unit λ, with `m`
/// supplying the matrix so a corrupted one can be exercised.
pub fn check_lambda_to_alpha_with(m: impl Fn(&CycloScalar) -> Result<DenseMatrix>) -> Check {
    let r = (|| {
        for g in couplings() {
            let mat = m(&g)?;
            for j in 0..10 {
                let lam: [CycloScalar; 10] =
                    std::array::from_fn(|k| if k == j { CycloScalar::one() } else { CycloScalar::zero() });
                let oracle = alpha_from_ladder(&LambdaParams::new(lam.clone()), &g)?;
                if mat_vec(&mat, &lam) != oracle.alpha.to_vec() {
                    return Ok((false, format!("column {} disagrees at g = {g}", j + 1)));
                }
            }
        }
        Ok((true, "10 columns at 4 couplings".into()))
    })();
    Check::from_result("lambda_to_alpha", r)
}

pub fn check_lambda_to_alpha() -> Check {
    check_lambda_to_alpha_with(m_matrix)
}

fn free_values(seed: i64) -> [CycloScalar; 10] {
    std::array::from_fn(|k| {
        let k = k as i64;
        &CycloScalar::ratio(1 + (seed * 7 + k * 3) % 5, 1 + (seed + k) % 3)
            + &(&CycloScalar::ratio((seed + 2 * k) % 3 - 1, 2) * &CycloScalar::sqrt2())
    })
}

pub fn check_families() -> Check {
    let r = (|| {
        let mut n = 0;
        for tag in FamilyTag::ALL.into_iter().filter(|t| *t != FamilyTag::None) {
            for seed in 1..=3 {
                let Some(a) = family_instance(tag, &free_values(seed)) else {
                    continue;
                };
                let c = certify(&a, tag, 4)?;
                if !c.passed() {
                    return Ok((false, format!("{tag} fails certification at seed {seed}")));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} instances")))
    })();
    Check::from_result("pde_residual", r)
}

fn sslr() -> Result<AlphaParams> {
    preset(Preset::LatticeReggeon, &PresetParams::delta(CycloScalar::one()))
}

/// The golden polynomial named `name` against its computed value.
pub fn check_golden(name: &str) -> Check {
    let r = (|| {
        let want = golden(name)?;
        let key: String = name.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        let n: usize = key[key.len() - 1..].parse().unwrap_or(0);
        let s = solve_metric_series(&sslr()?, 4, Gauge::Inversion)?;
        let got = match &key[key.len() - 2..key.len() - 1] {
            "c" => s.c[n].clone(),
            "q" => star_sqrt(&s.eta2())?.coeff(n).clone(),
            _ => counterpart_series(&s.alpha, &s.eta2())?.coeff(n).clone(),
        };
        let diff = &got - &want;
        Ok((diff.is_zero(), if diff.is_zero() { "exact".into() } else { format!("difference {}", diff.render()) }))
    })();
    Check::from_result("golden", r)
}

pub fn check_sslr_goldens() -> Vec<Check> {
    ptmetric::reference::GOLDEN_NAMES
        .iter()
        .map(|n| {
            let mut c = check_golden(n);
            c.detail = format!("{n}: {}", c.detail);
            c
        })
        .collect()
}

pub fn check_gauge() -> Check {
    let r = (|| {
        let s = solve_metric_series(&sslr()?, 6, Gauge::Inversion)?;
        let defect = gauge_check(&s.eta2())?;
        let resid = recursion_residuals(&s.alpha, &s.eta2());
        let ok = defect.iter().all(PhasePoly::is_zero) && resid.iter().all(PhasePoly::is_zero);
        Ok((ok, "inversion gauge and recursion through order 6".into()))
    })();
    Check::from_result("solve_metric_series", r)
}

pub fn check_identities() -> Check {
    let d = jackiw_h4_difference();
    let ok = jackiw_identity_check() && d.coeff(0).is_zero() && d.coeff(1) == &poly("i/6 x^3 - 1/6");
    Check::new("jackiw_identity_check", ok, "sextic row and quartic operator expansion")
}

pub fn check_ds_ads() -> Check {
    let sextic = GSeries::constant(poly("1/2 p^2 + 2 x^6 - 3 x^2"), 0);
    let quartic = GSeries::constant(poly("1/2 p^2 - 1/32 x^4"), 0);
    let ok = ds_ads_check(&sextic) && !ds_ads_check(&quartic);
    Check::new("ds_ads_check", ok, "sextic symmetric, quartic not")
}

pub fn run() -> Vec<Check> {
    let mut out = vec![check_star(), check_m_inverse(), check_lambda_to_alpha(), check_families()];
    out.extend(check_sslr_goldens());
    out.push(check_gauge());
    out.push(check_identities());
    out.push(check_ds_ads());
    out
}
