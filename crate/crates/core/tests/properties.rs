use proptest::prelude::*;

use freudenthal::composition::{AlgebraKind, CompositionElement};
use freudenthal::freudenthal::FreudenthalElement;
use freudenthal::jordan::JordanElement;
use freudenthal::rational::{q, Q};

fn kind() -> impl Strategy<Value = AlgebraKind> {
    prop::sample::select(AlgebraKind::ALL.to_vec())
}

fn comp(kind: AlgebraKind, r: i64) -> impl Strategy<Value = CompositionElement> {
    prop::collection::vec(-r..=r, kind.dim())
        .prop_map(move |c| CompositionElement::from_order_coords(kind, &c).expect("dimension matches"))
}

fn jordan(kind: AlgebraKind, r: i64) -> impl Strategy<Value = JordanElement> {
    ([-r..=r, -r..=r, -r..=r], [comp(kind, r), comp(kind, r), comp(kind, r)])
        .prop_map(|(d, off)| JordanElement::new(d.map(q), off).expect("same algebra"))
}

fn w(kind: AlgebraKind, r: i64) -> impl Strategy<Value = FreudenthalElement> {
    (-r..=r, jordan(kind, r), jordan(kind, r), -r..=r)
        .prop_map(|(a, b, c, d)| FreudenthalElement::new(q(a), b, c, q(d)).expect("same algebra"))
}

fn comp_pair() -> impl Strategy<Value = (CompositionElement, CompositionElement)> {
    kind().prop_flat_map(|k| (comp(k, 3), comp(k, 3)))
}

fn jordan_pair() -> impl Strategy<Value = (JordanElement, JordanElement)> {
    kind().prop_flat_map(|k| (jordan(k, 2), jordan(k, 2)))
}

fn w_pair() -> impl Strategy<Value = (FreudenthalElement, FreudenthalElement)> {
    kind().prop_flat_map(|k| (w(k, 2), w(k, 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative((x, y) in comp_pair()) {
        prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
    }

    #[test]
    fn conjugation_reverses_products((x, y) in comp_pair()) {
        prop_assert_eq!(x.mul(&y).unwrap().conj(), y.conj().mul(&x.conj()).unwrap());
        prop_assert_eq!(x.conj().conj(), x.clone());
        let n = x.norm();
        prop_assert_eq!(x.mul(&x.conj()).unwrap(), CompositionElement::scalar(x.kind(), n));
    }

    #[test]
    fn left_alternative((x, y) in comp_pair()) {
        prop_assert_eq!(x.mul(&x).unwrap().mul(&y).unwrap(), x.mul(&x.mul(&y).unwrap()).unwrap());
    }

    #[test]
    fn order_is_closed((x, y) in comp_pair()) {
        prop_assert!(x.mul(&y).unwrap().order_contains());
    }

    #[test]
    fn adjoint_identities((x, _) in jordan_pair()) {
        let n = x.norm();
        prop_assert_eq!(x.adjoint().adjoint(), x.scale(&n));
        prop_assert_eq!(x.pair(&x.adjoint()), q(3) * &n);
        prop_assert_eq!(x.adjoint().norm(), &n * &n);
    }

    #[test]
    fn cross_product_polarizes_adjoint((x, y) in jordan_pair()) {
        prop_assert_eq!(x.cross(&y), y.cross(&x));
        prop_assert_eq!(x.cross(&x), x.adjoint().scale(&q(2)));
    }

    #[test]
    fn jordan_json_round_trip((x, _) in jordan_pair()) {
        prop_assert_eq!(JordanElement::from_json(&x.to_json(), x.kind()).unwrap(), x);
    }

    #[test]
    fn symplectic_form_is_alternating((x, y) in w_pair()) {
        prop_assert_eq!(x.symp(&x).unwrap(), q(0));
        prop_assert_eq!(x.symp(&y).unwrap(), -y.symp(&x).unwrap());
    }

    #[test]
    fn quartic_is_homogeneous((x, _) in w_pair(), l in 1i64..4) {
        let s: Q = q(l);
        prop_assert_eq!(x.scale(&s).quartic(), x.quartic() * q(l.pow(4)));
        prop_assert_eq!(x.scale(&s).rank(), x.rank());
    }

    #[test]
    fn rank_chain_is_monotone((x, _) in w_pair()) {
        let r = x.rank();
        prop_assert_eq!(r == 4, x.quartic() != q(0));
        prop_assert_eq!(r <= 2, x.wflat().is_zero());
        prop_assert_eq!(r <= 1, x.is_rank_at_most_one());
    }

    #[test]
    fn rank_one_family((x, _) in jordan_pair(), a in 1i64..3) {
        let a = q(a);
        let w = FreudenthalElement::new(a.clone(), x.clone(), x.adjoint().scale(&(q(1) / &a)), x.norm() / (&a * &a)).unwrap();
        prop_assert_eq!(w.rank(), 1);
    }

    #[test]
    fn w_json_round_trip((x, _) in w_pair()) {
        prop_assert_eq!(FreudenthalElement::from_json(&x.to_json(), x.kind()).unwrap(), x);
    }
}
