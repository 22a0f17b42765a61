//! Composite (anti)commutators: the normal form must reproduce the raw
//! difference symbolically, and both must agree when evaluated in the
//! octonions. The raw side is evaluated by the pair recursion directly.

use std::sync::Arc;

use nonassoc_core::assoc::{composite_commutator, evaluate, CompositeOp, Valuation};
use nonassoc_core::cayley_dickson::Algebra;
use nonassoc_core::normal_form::{Comb, NormalFormOptions};
use nonassoc_core::term::{bracketings, Generator, Node, Sign, Term};
use nonassoc_core::Expr;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{keyed_element, pair_mul, Q};

const OCT: [i8; 3] = [-1, -1, -1];

fn shapes(prefix: &str, degree: usize) -> Vec<Term> {
    let leaves: Vec<Term> = (1..=degree)
        .map(|k| Term::leaf(Generator::new("phi").at(&format!("{prefix}{k}"))))
        .collect();
    bracketings(&leaves).unwrap()
}

fn oracle_term(alg: &Arc<Algebra<Q>>, t: &Term) -> Vec<Q> {
    match t.node() {
        Node::Leaf(a) => keyed_element(alg, &a.to_string()).coeffs().to_vec(),
        Node::Product(l, r) => pair_mul(&OCT, &oracle_term(alg, l), &oracle_term(alg, r)),
        Node::Assoc(..) => unreachable!("raw products carry no associator symbols"),
    }
}

fn oracle_expr(alg: &Arc<Algebra<Q>>, e: &Expr) -> Vec<Q> {
    let mut acc = vec![Q::zero(); alg.dim()];
    for (s, t) in e.iter() {
        assert!(s.coeff.im.is_zero() && s.monomial.is_one());
        for (a, v) in acc.iter_mut().zip(oracle_term(alg, t)) {
            *a += &s.coeff.re * v;
        }
    }
    acc
}

fn check(alg: &Arc<Algebra<Q>>, a: &Term, b: &Term, sign: Sign, opts: NormalFormOptions) {
    let result = composite_commutator(
        sign,
        &CompositeOp::new(a.clone()),
        &CompositeOp::new(b.clone()),
        opts,
    )
    .unwrap();
    assert_eq!(
        result.expanded_normal(),
        result.raw,
        "{a} {b} {sign} {opts:?}"
    );
    let valuation = Valuation::new(alg, |atom| Some(keyed_element(alg, &atom.to_string())));
    let normal = evaluate(&result.normal, &valuation).unwrap();
    assert_eq!(
        normal.coeffs(),
        oracle_expr(alg, &result.raw).as_slice(),
        "{a} {b}"
    );
}

fn all_options() -> Vec<NormalFormOptions> {
    let mut out = Vec::new();
    for target in [Comb::Left, Comb::Right] {
        for rewrite in [Sign::Minus, Sign::Plus] {
            out.push(NormalFormOptions { target, rewrite });
        }
    }
    out
}

#[test]
fn every_pair_up_to_degree_three() {
    let oct = Arc::new(Algebra::<Q>::octonions());
    let left: Vec<Term> = (1..=3).flat_map(|d| shapes("x", d)).collect();
    let right: Vec<Term> = (1..=3).flat_map(|d| shapes("y", d)).collect();
    assert_eq!(left.len(), 4);
    for a in &left {
        for b in &right {
            for sign in [Sign::Minus, Sign::Plus] {
                for opts in all_options() {
                    check(&oct, a, b, sign, opts);
                }
            }
        }
    }
}

#[test]
fn randomized_degree_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let oct = Arc::new(Algebra::<Q>::octonions());
    let four_x = shapes("x", 4);
    for _ in 0..40 {
        let a = &four_x[rng.gen_range(0..four_x.len())];
        let other = shapes("y", rng.gen_range(1..=4));
        let b = &other[rng.gen_range(0..other.len())];
        let sign = if rng.gen_bool(0.5) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let opts = all_options()[rng.gen_range(0..4)];
        check(&oct, a, b, sign, opts);
        check(&oct, b, a, sign, opts);
    }
}

#[test]
fn two_point_products_cite_two_associators() {
    let phi = |p: &str| Generator::new("phi").at(p);
    let a = CompositeOp::left_nested(&[phi("x1"), phi("x2")]);
    let b = CompositeOp::left_nested(&[phi("x3"), phi("x4")]);
    let result = composite_commutator(Sign::Minus, &a, &b, NormalFormOptions::default()).unwrap();
    assert_eq!(result.associators.len(), 2);
    assert!(result
        .associators
        .iter()
        .all(|s| s.label.as_deref() == Some("A1")));
    assert_eq!(
        result.normal.to_string(),
        "[[[phi(x1) phi(x2)] phi(x3)] phi(x4)] - [[[phi(x3) phi(x4)] phi(x1)] phi(x2)] \
         - {[phi(x1) phi(x2)], phi(x3), phi(x4)}- + {[phi(x3) phi(x4)], phi(x1), phi(x2)}-"
    );
}

#[test]
fn commutators_vanish_in_a_commutative_associative_algebra() {
    let c = Arc::new(Algebra::<Q>::complexes());
    for a in shapes("x", 3) {
        for b in shapes("y", 2) {
            let r = composite_commutator(
                Sign::Minus,
                &CompositeOp::new(a.clone()),
                &CompositeOp::new(b),
                NormalFormOptions::default(),
            )
            .unwrap();
            let v = Valuation::new(&c, |atom| Some(keyed_element(&c, &atom.to_string())));
            assert!(evaluate(&r.normal, &v).unwrap().is_zero());
            for s in &r.associators {
                assert!(evaluate(&s.expand(), &v).unwrap().is_zero());
            }
        }
    }
}
