use proptest::prelude::*;
use ptmetric::hamiltonian::AlphaParams;
use ptmetric::moyal::star_sqrt;
use ptmetric::parse::parse_poly;
use ptmetric::sph::{certify, classify, exact_metric, family_instance, FamilyTag};
use ptmetric::{CycloScalar, PhasePoly};

fn rational() -> impl Strategy<Value = CycloScalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| CycloScalar::ratio(n, d))
}

fn draw(tag: FamilyTag) -> impl Strategy<Value = AlphaParams> {
    proptest::array::uniform10(rational()).prop_filter_map("required entry vanished", move |f| family_instance(tag, &f))
}

fn check(a: &AlphaParams, tag: FamilyTag, order: usize) -> Result<(), TestCaseError> {
    prop_assert!(classify(a).contains(&tag), "{tag} instance classified as {:?}", classify(a));
    let c = certify(a, tag, order).unwrap();
    prop_assert!(c.residual_zero, "{tag}: residual nonzero for {a}");
    prop_assert!(c.exact_match != Some(false), "{tag}: exact conjugation differs for {a}");
    prop_assert!(c.perturbative_match != Some(false), "{tag}: star conjugation differs for {a}");
    prop_assert!(c.exact_match.is_some() || c.perturbative_match.is_some());
    prop_assert!(c.counterpart.is_real() || !a.alpha.iter().all(|x| x.is_real()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn f1_certifies(a in draw(FamilyTag::F1Con1)) { check(&a, FamilyTag::F1Con1, 3)?; }

    #[test]
    fn f2_certifies(a in draw(FamilyTag::F2Con2)) { check(&a, FamilyTag::F2Con2, 4)?; }

    #[test]
    fn f3_xy_certifies(a in draw(FamilyTag::F3Xy)) { check(&a, FamilyTag::F3Xy, 4)?; }

    #[test]
    fn f3_generic_certifies(a in draw(FamilyTag::F3Generic)) { check(&a, FamilyTag::F3Generic, 4)?; }

    #[test]
    fn f4_certifies(a in draw(FamilyTag::F4)) { check(&a, FamilyTag::F4, 4)?; }

    #[test]
    fn f5_a4_certifies(a in draw(FamilyTag::F5A4)) { check(&a, FamilyTag::F5A4, 4)?; }

    #[test]
    fn f5_a2_certifies(a in draw(FamilyTag::F5A2)) { check(&a, FamilyTag::F5A2, 4)?; }

    #[test]
    fn f1_square_root_matches_printed_expansion(a in draw(FamilyTag::F1Con1)) {
        let eta = star_sqrt(&exact_metric(&a, FamilyTag::F1Con1).unwrap().to_series(2).unwrap()).unwrap();
        let al = |j: usize| PhasePoly::constant(a.a(j).clone());
        let inv = a.a(3).inv().unwrap();
        let s = |c: i64| PhasePoly::constant(CycloScalar::from_int(c));
        let (x, p) = (PhasePoly::x(), PhasePoly::p());
        let (x2, p2) = (&x * &x, &p * &p);
        let w = &(&(&al(7) * &p2) + &(&al(8) * &p)) + &(&al(9) * &x2);
        let g1 = w.scale(&(&inv * &CycloScalar::ratio(-1, 2)));
        // (α₉(α₇ + 2α₇p²x² + 2α₈px²) + α₉²x⁴)/(8α₃²) + (pα₇ + α₈)²p²/(8α₃²)
        let t1 = &al(7) + &(&(&(&s(2) * &al(7)) * &(&p2 * &x2)) + &(&(&s(2) * &al(8)) * &(&p * &x2)));
        let t1 = &(&al(9) * &t1) + &(&(&al(9) * &al(9)) * &(&x2 * &x2));
        let lin = &(&al(7) * &p) + &al(8);
        let g2 = (&t1 + &(&(&lin * &lin) * &p2)).scale(&(&(&inv * &inv) * &CycloScalar::ratio(1, 8)));
        prop_assert_eq!(eta.coeff(1), &g1);
        prop_assert_eq!(eta.coeff(2), &g2);
    }
}

#[test]
fn specialized_f1_is_a_pure_x_gaussian() {
    let q = CycloScalar::ratio;
    let free = [q(0, 1), q(0, 1), q(3, 1), q(1, 1), q(2, 1), q(1, 1), q(0, 1), q(0, 1), q(6, 1), q(0, 1)];
    let a = family_instance(FamilyTag::F1Con1, &free).unwrap();
    let c = certify(&a, FamilyTag::F1Con1, 3).unwrap();
    assert_eq!(c.metric.exponent(), parse_poly("-2x^2").unwrap());
    assert_eq!(c.exact_match, Some(true));
    assert_eq!(c.counterpart.numerator.coeff(2), &PhasePoly::zero());
}
