use proptest::prelude::*;

use nonassoc_core::assoc::associator;
use nonassoc_core::expr::{canonicalize, Coeff, Monomial};
use nonassoc_core::normal_form::{expand_associators, to_normal_form, Comb, NormalFormOptions};
use nonassoc_core::parser::{parse, print};
use nonassoc_core::term::{Atom, Generator, Sign};
use nonassoc_core::ym::derive;
use nonassoc_core::{Expr, Scalar, Term};
use num_rational::BigRational;

fn atom() -> impl Strategy<Value = Atom> {
    let generator = prop_oneof![
        Just(Generator::new("a")),
        Just(Generator::new("b")),
        Just(Generator::new("c")),
        Just(Generator::new("psi").star()),
        (1..=3u8, 0..=3u8).prop_map(|(a, mu)| Generator::new("A")
            .upper([a.to_string()])
            .lower([mu.to_string()])
            .at("x")),
        Just(
            Generator::new("phi")
                .upper(["i1"])
                .lower(["0"])
                .at("y")
                .star()
        ),
    ];
    (generator, proptest::collection::vec(0..=3u8, 0..=2))
        .prop_map(|(g, d)| Atom::with_derivs(g, d.into_iter().map(|m| m.to_string())))
}

fn term() -> impl Strategy<Value = Term> {
    atom().prop_map(Term::leaf).prop_recursive(4, 12, 3, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::product(&l, &r)),
            1 => (any::<bool>(), inner.clone(), inner.clone(), inner)
                .prop_map(|(p, a, b, c)| Term::assoc(if p { Sign::Plus } else { Sign::Minus }, &a, &b, &c)),
        ]
    })
}

fn plain_term() -> impl Strategy<Value = Term> {
    atom()
        .prop_map(Term::leaf)
        .prop_recursive(4, 10, 2, |inner| {
            (inner.clone(), inner).prop_map(|(l, r)| Term::product(&l, &r))
        })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 0u32..=2, 0u32..=1).prop_map(|(re, d, im, gp, hp)| {
        let coeff = Coeff::new(
            BigRational::new(re.into(), d.into()),
            BigRational::new(im.into(), d.into()),
        );
        Scalar::new(
            coeff,
            Monomial::power("g", gp).mul(&Monomial::power("h", hp)),
        )
    })
}

fn items() -> impl Strategy<Value = Vec<(Scalar, Term)>> {
    proptest::collection::vec((scalar(), term()), 0..6)
}

fn expr() -> impl Strategy<Value = Expr> {
    items().prop_map(canonicalize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonicalize_is_idempotent(e in expr()) {
        let again = canonicalize(e.iter().map(|(s, t)| (s, t.clone())));
        prop_assert_eq!(again, e);
    }

    #[test]
    fn canonicalize_ignores_order(items in items()) {
        let mut reversed = items.clone();
        reversed.reverse();
        prop_assert_eq!(canonicalize(items), canonicalize(reversed));
    }

    #[test]
    fn conjugation_is_an_involution(e in expr()) {
        prop_assert_eq!(e.conjugate().conjugate(), e);
    }

    #[test]
    fn conjugation_reverses_products(x in expr(), y in expr()) {
        prop_assert_eq!(x.product(&y).conjugate(), y.conjugate().product(&x.conjugate()));
    }

    #[test]
    fn conjugation_commutes_with_expansion(e in expr()) {
        prop_assert_eq!(expand_associators(&e.conjugate()), expand_associators(&e).conjugate());
    }

    #[test]
    fn print_then_parse_round_trips(e in expr()) {
        let text = print(&e);
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn mixed_derivatives_commute(e in expr(), mu in 0..=3u8, nu in 0..=3u8) {
        let (mu, nu) = (mu.to_string(), nu.to_string());
        prop_assert_eq!(derive(&derive(&e, &mu), &nu), derive(&derive(&e, &nu), &mu));
    }

    #[test]
    fn derivative_is_linear(x in expr(), y in expr(), s in scalar()) {
        let lhs = derive(&(&x.scale(&s) + &y), "2");
        prop_assert_eq!(lhs, &derive(&x, "2").scale(&s) + &derive(&y, "2"));
    }

    #[test]
    fn derivative_commutes_with_expansion(e in expr()) {
        prop_assert_eq!(expand_associators(&derive(&e, "1")), derive(&expand_associators(&e), "1"));
    }

    #[test]
    fn associator_is_trilinear(a1 in expr(), a2 in expr(), b in expr(), c in expr(), s in scalar(), plus in any::<bool>()) {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let mixed = &a1.scale(&s) + &a2;
        prop_assert_eq!(
            associator(sign, &mixed, &b, &c),
            &associator(sign, &a1, &b, &c).scale(&s) + &associator(sign, &a2, &b, &c)
        );
        prop_assert_eq!(
            associator(sign, &b, &mixed, &c),
            &associator(sign, &b, &a1, &c).scale(&s) + &associator(sign, &b, &a2, &c)
        );
        prop_assert_eq!(
            associator(sign, &b, &c, &mixed),
            &associator(sign, &b, &c, &a1).scale(&s) + &associator(sign, &b, &c, &a2)
        );
    }

    #[test]
    fn normal_form_is_sound(t in plain_term(), left in any::<bool>(), plus in any::<bool>()) {
        let opts = NormalFormOptions {
            target: if left { Comb::Left } else { Comb::Right },
            rewrite: if plus { Sign::Plus } else { Sign::Minus },
        };
        let nf = to_normal_form(&t, opts);
        let is_comb = if left { nf.comb.is_left_comb() } else { nf.comb.is_right_comb() };
        prop_assert!(is_comb);
        prop_assert_eq!(expand_associators(&nf.to_expr()), Expr::term(t));
    }
}
