use ptmetric::hamiltonian::{preset, AlphaParams, Preset, PresetParams};
use ptmetric::ladder::NormalOrdered;
use ptmetric::moyal::star_sqrt;
use ptmetric::parse::parse_poly;
use ptmetric::reference::{sslr_eta_ladder, sslr_h_ladder, SSLR_C as C, SSLR_H, SSLR_Q34 as Q34};
use ptmetric::perturb::{counterpart_series, gauge_check, solve_metric_series, Gauge};
use ptmetric::{CycloScalar, PhasePoly};

fn sslr() -> AlphaParams {
    preset(Preset::LatticeReggeon, &PresetParams::delta(CycloScalar::one())).unwrap()
}

fn poly(s: &str) -> PhasePoly {
    parse_poly(s).unwrap()
}

#[test]
fn metric_coefficients_through_fourth_order() {
    let s = solve_metric_series(&sslr(), 4, Gauge::Inversion).unwrap();
    for (n, src) in C.iter().enumerate() {
        let want = poly(src);
        assert_eq!(s.c[n + 1], want, "c{} differs by {}", n + 1, (&s.c[n + 1] - &want).render());
    }
}

#[test]
fn square_root_coefficients() {
    let s = solve_metric_series(&sslr(), 4, Gauge::Inversion).unwrap();
    let eta = star_sqrt(&s.eta2()).unwrap();
    assert_eq!(eta.coeff(1), &s.c[1]);
    assert_eq!(eta.coeff(2), &s.c[2].scale(&CycloScalar::ratio(1, 2)));
    for (k, src) in Q34.iter().enumerate() {
        let want = poly(src);
        assert_eq!(eta.coeff(k + 3), &want, "q{} differs by {}", k + 3, (eta.coeff(k + 3) - &want).render());
    }
}

#[test]
fn counterpart_through_fourth_order() {
    let a = sslr();
    let s = solve_metric_series(&a, 4, Gauge::Inversion).unwrap();
    let h = counterpart_series(&a, &s.eta2()).unwrap();
    assert!(h.is_real());
    assert!(h.coeff(1).is_zero() && h.coeff(3).is_zero());
    for (k, src) in SSLR_H.iter().enumerate() {
        let want = poly(src);
        assert_eq!(h.coeff(2 * k), &want, "g^{} differs by {}", 2 * k, (h.coeff(2 * k) - &want).render());
    }
}

#[test]
fn ladder_forms() {
    let a = sslr();
    let s = solve_metric_series(&a, 4, Gauge::Inversion).unwrap();
    let eta = star_sqrt(&s.eta2()).unwrap();
    for n in [1, 2] {
        assert_eq!(NormalOrdered::from_weyl(eta.coeff(n)), sslr_eta_ladder(n).unwrap(), "q{n}");
    }
    let h = counterpart_series(&a, &s.eta2()).unwrap();
    for n in [0, 2, 4] {
        let got = NormalOrdered::from_weyl(h.coeff(n));
        let want = sslr_h_ladder(n).unwrap();
        assert_eq!(got, want, "g^{n} ladder form differs by {}", (&got - &want).render());
    }
}

#[test]
fn gauge_holds_through_sixth_order() {
    let a = sslr();
    let s = solve_metric_series(&a, 6, Gauge::Inversion).unwrap();
    let defects = gauge_check(&s.eta2()).unwrap();
    assert!(defects.iter().all(|d| d.is_zero()));
    for c in &s.c {
        assert!(c.is_real_poly());
        assert!(c.is_even_in(ptmetric::Var::X));
    }
}
