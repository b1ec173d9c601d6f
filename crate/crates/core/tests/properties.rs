use proptest::prelude::*;
use ptmetric::fock::{weyl_quantize, FockMatrix, C64};
use ptmetric::hamiltonian::{alpha_to_lambda, build_scalar, lambda_to_alpha, m_inverse, m_matrix, AlphaParams, LambdaParams};
use ptmetric::ladder::NormalOrdered;
use ptmetric::linalg::{identity, mat_mul};
use ptmetric::metric_eq::{left_operator, right_operator};
use ptmetric::moyal::{star, star_anticommutator, star_commutator, star_inverse, star_series};
use ptmetric::parse::parse_poly;
use ptmetric::{CycloScalar, GSeries, PhasePoly};

fn rational() -> impl Strategy<Value = CycloScalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| CycloScalar::ratio(n, d))
}

fn scalar() -> impl Strategy<Value = CycloScalar> {
    proptest::array::uniform4(rational()).prop_map(|[a, b, c, d]| {
        let i = CycloScalar::i();
        let r2 = CycloScalar::sqrt2();
        &(&a + &(&b * &r2)) + &(&i * &(&c + &(&d * &r2)))
    })
}

fn real_scalar() -> impl Strategy<Value = CycloScalar> {
    (rational(), rational()).prop_map(|(a, b)| &a + &(&b * &CycloScalar::sqrt2()))
}

fn poly_with(coeff: BoxedStrategy<CycloScalar>, max_deg: u32) -> impl Strategy<Value = PhasePoly> {
    proptest::collection::vec((0..=max_deg, 0..=max_deg, coeff), 0..5).prop_map(|terms| {
        let mut f = PhasePoly::zero();
        for (xd, pd, c) in terms {
            f = &f + &PhasePoly::term(xd, pd, c);
        }
        f
    })
}

fn poly() -> impl Strategy<Value = PhasePoly> {
    poly_with(scalar().boxed(), 3)
}

fn nonzero_g() -> impl Strategy<Value = CycloScalar> {
    rational().prop_filter("g must be nonzero", |g| !g.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn polynomial_ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn render_parse_round_trip(f in poly()) {
        prop_assert_eq!(parse_poly(&f.render()).unwrap(), f);
    }

    #[test]
    fn star_is_associative(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(star(&star(&f, &g), &h), star(&f, &star(&g, &h)));
    }

    #[test]
    fn star_reverses_under_conjugation(f in poly(), g in poly()) {
        // Hermitian adjoint of a product of Weyl symbols.
        prop_assert_eq!(star(&f, &g).conjugate_scalarfn(), star(&g.conjugate_scalarfn(), &f.conjugate_scalarfn()));
    }

    #[test]
    fn star_deforms_the_pointwise_product(f in poly(), g in poly()) {
        // Top degree is the pointwise product; the commutator starts with i times the Poisson bracket.
        let d = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
        prop_assert_eq!(star(&f, &g).homogeneous_part(d), (&f * &g).homogeneous_part(d));
        if d >= 2 {
            let pb = &(&f.partial(1, 0) * &g.partial(0, 1)) - &(&f.partial(0, 1) * &g.partial(1, 0));
            let lead = pb.scale(&CycloScalar::i()).homogeneous_part(d - 2);
            prop_assert_eq!(star_commutator(&f, &g).homogeneous_part(d - 2), lead);
        }
    }

    #[test]
    fn weyl_round_trip(f in poly()) {
        prop_assert_eq!(NormalOrdered::from_weyl(&f).weyl_symbol(), f);
    }

    #[test]
    fn operator_product_matches_star(f in poly(), g in poly()) {
        let prod = &NormalOrdered::from_weyl(&f) * &NormalOrdered::from_weyl(&g);
        prop_assert_eq!(prod, NormalOrdered::from_weyl(&star(&f, &g)));
    }

    #[test]
    fn real_symbol_is_hermitian_operator(f in poly_with(real_scalar().boxed(), 3)) {
        let op = NormalOrdered::from_weyl(&f);
        prop_assert_eq!(op.dagger(), op);
    }

    #[test]
    fn m_matrix_round_trip(g in nonzero_g(), l in proptest::array::uniform10(real_scalar())) {
        let m = m_matrix(&g).unwrap();
        prop_assert_eq!(mat_mul(&m, &m_inverse(&g)), identity(10));
        let lp = LambdaParams::new(l);
        let a = lambda_to_alpha(&lp, &g).unwrap();
        prop_assert_eq!(alpha_to_lambda(&a), lp);
    }

    #[test]
    fn metric_operators_are_the_brackets(a in proptest::array::uniform10(rational()), f in poly()) {
        let a = AlphaParams::new(a, CycloScalar::one());
        let s = a.split();
        let two_i_inv = CycloScalar::ratio(-1, 2) * CycloScalar::i();
        prop_assert_eq!(left_operator(&a).apply(&f), star_commutator(&s.h0, &f).scale(&two_i_inv));
        prop_assert_eq!(right_operator(&a).apply(&f), star_anticommutator(&s.h1, &f).scale(&CycloScalar::ratio(1, 2)));
    }

    #[test]
    fn hamiltonian_is_pt_symmetric(a in proptest::array::uniform10(rational())) {
        let a = AlphaParams::new(a, CycloScalar::one());
        let h = build_scalar(&a);
        for c in h.coeffs() {
            prop_assert!(c.pt_check());
        }
    }

    #[test]
    fn star_inverse_is_two_sided(f in poly(), g in poly()) {
        let s = GSeries::from_coeffs(vec![PhasePoly::one(), f, g]);
        let inv = star_inverse(&s).unwrap();
        prop_assert!(star_series(&s, &inv).unwrap().is_one());
        prop_assert!(star_series(&inv, &s).unwrap().is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quantization_is_linear(f in poly(), g in poly(), l in scalar()) {
        let n = 14;
        let lhs = weyl_quantize(&(&f + &g.scale(&l)), n).unwrap();
        let lz = l.to_complex();
        let rhs = weyl_quantize(&f, n).unwrap().add(&weyl_quantize(&g, n).unwrap().scale(C64::new(lz.re, lz.im)));
        let tol = 1e-9 * (1.0 + lhs.max_abs());
        prop_assert!(lhs.interior_defect(&rhs, 0) < tol);
    }

    #[test]
    fn real_symbol_quantizes_hermitian(f in poly_with(real_scalar().boxed(), 3)) {
        let m: FockMatrix = weyl_quantize(&f, 14).unwrap();
        prop_assert!(m.interior_defect(&m.adjoint(), 0) < 1e-9 * (1.0 + m.max_abs()));
    }
}
