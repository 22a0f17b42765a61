//! Independent reference arithmetic shared by the oracle tests.
#![allow(dead_code)]

use std::sync::Arc;

use nonassoc_core::cayley_dickson::{Algebra, Element};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

/// Multiplication by recursive halving, written straight from the doubling
/// formula `(a,b)(c,d) = (ac + γ conj(d) b, d a + b conj(c))`.
pub fn pair_mul(gammas: &[i8], x: &[Q], y: &[Q]) -> Vec<Q> {
    if gammas.is_empty() {
        return vec![x[0].clone() * y[0].clone()];
    }
    let (rest, gamma) = (&gammas[..gammas.len() - 1], gammas[gammas.len() - 1]);
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let g = Q::from_integer(gamma.into());
    let first: Vec<Q> = add(
        &pair_mul(rest, a, c),
        &scale(&pair_mul(rest, &pair_conj(d), b), &g),
    );
    let second: Vec<Q> = add(&pair_mul(rest, d, a), &pair_mul(rest, b, &pair_conj(c)));
    first.into_iter().chain(second).collect()
}

pub fn pair_conj(x: &[Q]) -> Vec<Q> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = pair_conj(&x[..h]);
    out.extend(x[h..].iter().map(|v| -v.clone()));
    out
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn unit(d: usize, k: usize) -> Vec<Q> {
    (0..d)
        .map(|m| if m == k { Q::one() } else { Q::zero() })
        .collect()
}

pub fn random_coeffs(rng: &mut ChaCha8Rng, d: usize) -> Vec<Q> {
    (0..d)
        .map(|_| Q::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into()))
        .collect()
}

/// Deterministic element chosen by a label, so that equal atoms always get
/// equal values however they are reached.
pub fn keyed_element(alg: &Arc<Algebra<Q>>, key: &str) -> Element<Q> {
    let seed = key.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Element::new(alg, random_coeffs(&mut rng, alg.dim())).unwrap()
}

pub fn random_element(rng: &mut ChaCha8Rng, alg: &Arc<Algebra<Q>>) -> Element<Q> {
    Element::new(alg, random_coeffs(rng, alg.dim())).unwrap()
}

/// `(xy)z - x(yz)` computed with the pair recursion only.
pub fn pair_associator(gammas: &[i8], x: &[Q], y: &[Q], z: &[Q]) -> Vec<Q> {
    let left = pair_mul(gammas, &pair_mul(gammas, x, y), z);
    let right = pair_mul(gammas, x, &pair_mul(gammas, y, z));
    left.iter().zip(&right).map(|(a, b)| a - b).collect()
}
