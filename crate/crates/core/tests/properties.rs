use proptest::prelude::*;

use opq_core::harmonics::{dagger, decompose_into_harmonics, recompose, HarmonicBasis};
use opq_core::liealg::{bracket, pi_element, BasisLabel, LieElement};
use opq_core::module::{weyl_act, ModuleElement};
use opq_core::scalar::{int, rat};
use opq_core::{Ambient, Block, Monomial, Polynomial, Scalar, WeylOperator};

const AMB: Ambient = Ambient { p: 2, q: 2 };

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(n, d, im)| Scalar::new(rat(n, d), int(im)))
}

fn monomial(max_exp: u16) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, 4).prop_map(|e| Monomial::from_exps(&e))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(2), scalar()), 0..5)
        .prop_map(|t| Polynomial::from_terms(AMB, t))
}

fn operator() -> impl Strategy<Value = WeylOperator> {
    prop::collection::vec((monomial(1), monomial(1), scalar()), 0..4)
        .prop_map(|t| WeylOperator::from_terms(AMB, t))
}

fn lie_element(p: usize, q: usize) -> impl Strategy<Value = LieElement> {
    let basis = BasisLabel::basis(p, q);
    prop::collection::vec(-2i64..=2, basis.len()).prop_map(move |cs| {
        let mut acc = LieElement::zero(p, q);
        for (l, c) in basis.iter().zip(cs) {
            let e = opq_core::liealg::basis_element(*l, p, q).unwrap();
            acc = acc.add(&e.scale(&Scalar::from_int(c))).unwrap();
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi(x in lie_element(2, 2), y in lie_element(2, 2), z in lie_element(2, 2)) {
        let a = bracket(&x, &bracket(&y, &z).unwrap()).unwrap();
        let b = bracket(&y, &bracket(&z, &x).unwrap()).unwrap();
        let c = bracket(&z, &bracket(&x, &y).unwrap()).unwrap();
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn pi_respects_brackets(x in lie_element(2, 2), y in lie_element(2, 2)) {
        let lhs = pi_element(&x).unwrap().commutator(&pi_element(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, pi_element(&bracket(&x, &y).unwrap()).unwrap());
    }

    #[test]
    fn composition_matches_application(a in operator(), b in operator(), f in polynomial()) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
    }

    #[test]
    fn composition_is_associative(a in operator(), b in operator(), c in operator()) {
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn division_recovers_factor(f in polynomial(), g in polynomial()) {
        prop_assume!(!g.is_zero());
        let prod = &f * &g;
        let h = prod.divide(&g).unwrap();
        prop_assert_eq!(h, Some(f));
    }

    #[test]
    fn text_roundtrips(f in polynomial(), a in operator()) {
        prop_assert_eq!(Polynomial::from_text(&f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(WeylOperator::from_text(&a.to_text()).unwrap(), a);
        let e = ModuleElement::from_terms(AMB, [(rat(3, 2), f.clone()), (int(4), f)]).unwrap();
        prop_assert_eq!(ModuleElement::from_text(&e.to_text()).unwrap(), e);
    }

    #[test]
    fn simplify_is_idempotent_and_exact(f in polynomial(), g in polynomial(), k in 0u32..3) {
        let e = ModuleElement::from_terms(AMB, [(rat(5, 2) + int(k as i64), f), (int(3), g)]).unwrap();
        let s = e.simplify();
        prop_assert_eq!(s.simplify(), s.clone());
        prop_assert!(e.try_sub(&s).unwrap().is_zero());
    }

    #[test]
    fn module_action_is_linear(a in operator(), f in polynomial(), g in polynomial()) {
        let e1 = ModuleElement::from_term(f, rat(3, 2)).unwrap();
        let e2 = ModuleElement::from_term(g, int(2)).unwrap();
        let sum = weyl_act(&a, &e1.try_add(&e2).unwrap()).unwrap();
        let parts = weyl_act(&a, &e1).unwrap().try_add(&weyl_act(&a, &e2).unwrap()).unwrap();
        prop_assert!(sum.try_sub(&parts).unwrap().is_zero());
    }

    #[test]
    fn harmonic_decomposition_recomposes(cs in prop::collection::vec(-3i64..=3, 10)) {
        let a = Ambient::new(4, 1);
        let monos = opq_core::poly::monomials_of_degree(5, 0..4, 3);
        let f = Polynomial::from_terms(a, monos.into_iter().zip(cs).map(|(m, c)| (m, Scalar::from_int(c))));
        let parts = decompose_into_harmonics(&f, Block::X).unwrap();
        for (h, _) in &parts {
            prop_assert!(h.laplacian(Block::X).is_zero());
        }
        prop_assert_eq!(recompose(&parts, a, Block::X), f);
    }

    #[test]
    fn dagger_is_harmonic(i in 0usize..3, idx in 0usize..5) {
        let a = Ambient::new(3, 1);
        let basis = HarmonicBasis::new(a, Block::X, 2);
        let h = &basis.elements()[idx];
        let d = dagger(&(&Polynomial::x(a, i) * h), Block::X, 3).unwrap();
        prop_assert!(d.laplacian(Block::X).is_zero());
    }
}
