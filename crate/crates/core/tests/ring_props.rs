//! Randomized algebraic laws for monomial orders and sparse polynomials.

use proptest::prelude::*;

use orbitsum::ring::{
    divide_multi, is_fully_reduced, BaseOrder, Block, Monomial, MonomialOrder, MultiPoly, Scalar, VarSet,
};

fn ring() -> VarSet {
    VarSet::new(["x", "y", "z"]).unwrap()
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Grlex),
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::Block(vec![
            Block { len: 1, order: BaseOrder::Lex },
            Block { len: 2, order: BaseOrder::Grevlex },
        ])),
        Just(MonomialOrder::Block(vec![
            Block { len: 2, order: BaseOrder::Grlex },
            Block { len: 1, order: BaseOrder::Lex },
        ])),
    ]
}

fn monomial(max: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max, 3).prop_map(Monomial::new)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn poly(terms: usize, max: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((monomial(max), scalar()), 0..=terms)
        .prop_map(|ts| MultiPoly::from_terms(&ring(), ts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in poly(5, 3), b in poly(5, 3), c in poly(5, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(&ring()), a.clone());
        prop_assert_eq!(&a + &MultiPoly::zero(&ring()), a.clone());
    }

    #[test]
    fn division_round_trip(
        f in poly(8, 4),
        divisors in prop::collection::vec(poly(3, 2), 1..=3),
        ord in order(),
    ) {
        let divisors: Vec<MultiPoly> = divisors.into_iter().filter(|d| !d.is_zero()).collect();
        prop_assume!(!divisors.is_empty());
        let d = divide_multi(&f, &divisors, &ord).unwrap();
        let mut back = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&divisors) {
            back = &back + &(q * g);
        }
        prop_assert_eq!(back, f);
        prop_assert!(is_fully_reduced(&d.remainder, &divisors, &ord));
    }

    #[test]
    fn order_axioms(a in monomial(5), b in monomial(5), c in monomial(5), ord in order()) {
        let ab = ord.cmp(&a, &b);
        prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
        prop_assert_eq!(ab.is_eq(), a == b);
        prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
        prop_assert!(ord.cmp(&Monomial::one(3), &a).is_le());
        if ab.is_lt() && ord.cmp(&b, &c).is_lt() {
            prop_assert!(ord.cmp(&a, &c).is_lt());
        }
    }

    #[test]
    fn leading_term_is_maximal(f in poly(6, 4), ord in order()) {
        prop_assume!(!f.is_zero());
        let (lm, _) = f.leading_term(&ord).unwrap();
        for (m, _) in f.terms() {
            prop_assert!(ord.cmp(m, &lm).is_le());
        }
    }

    #[test]
    fn print_parse_round_trip(f in poly(6, 4)) {
        let text = f.to_string();
        prop_assert_eq!(MultiPoly::parse(&text, &ring()).unwrap(), f);
    }

    #[test]
    fn content_times_primitive(f in poly(6, 3), ord in order()) {
        prop_assume!(!f.is_zero());
        let (content, prim) = f.content_primitive(&ord).unwrap();
        prop_assert_eq!(prim.scale(&content), f.clone());
        prop_assert!(prim.integer_coefficients());
        prop_assert!(prim.leading_coeff(&ord).unwrap() > Scalar::from_integer(0.into()));
        prop_assert_eq!(prim.primitive(&ord), prim.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(4, 2), b in poly(4, 2)) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }
}
