//! Linear combinations of terms with exact Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::term::{Atom, Generator, Node, Sign, Term};

/// Exact Gaussian rational `re + im·i`.
pub type Coeff = Complex<BigRational>;

pub fn real(r: BigRational) -> Coeff {
    Complex::new(r, BigRational::zero())
}

/// Product of named commuting scalar symbols, e.g. `g^2*h`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn symbol(name: &str) -> Self {
        Monomial::power(name, 1)
    }

    pub fn power(name: &str, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(name.to_string(), exp);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            *out.entry(k.clone()).or_insert(0) += v;
        }
        Monomial(out)
    }

    /// Removes `name`, returning its exponent.
    pub fn without(&self, name: &str) -> (Monomial, u32) {
        let mut out = self.0.clone();
        let exp = out.remove(name).unwrap_or(0);
        (Monomial(out), exp)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *v == 1 {
                f.write_str(k)?;
            } else {
                write!(f, "{k}^{v}")?;
            }
        }
        Ok(())
    }
}

/// A coefficient times a monomial in scalar symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalar {
    pub coeff: Coeff,
    pub monomial: Monomial,
}

impl Scalar {
    pub fn new(coeff: Coeff, monomial: Monomial) -> Self {
        Scalar { coeff, monomial }
    }

    pub fn one() -> Self {
        Scalar::new(Coeff::one(), Monomial::one())
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::new(real(r), Monomial::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::rational(crate::scalar::int(v))
    }

    pub fn imaginary(r: BigRational) -> Self {
        Scalar::new(Complex::new(BigRational::zero(), r), Monomial::one())
    }

    pub fn symbol(name: &str) -> Self {
        Scalar::new(Coeff::one(), Monomial::symbol(name))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar::new(
            &self.coeff * &other.coeff,
            self.monomial.mul(&other.monomial),
        )
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.coeff.conj(), self.monomial.clone())
    }
}

impl fmt::Display for Scalar {
    /// `3`, `-1/2i`, `(1+2i)`, each optionally followed by `*monomial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex { re, im } = &self.coeff;
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{re}")?,
            (true, false) => write!(f, "{im}i")?,
            (false, false) => {
                let op = if im.is_negative() { '-' } else { '+' };
                write!(f, "({re}{op}{}i)", im.abs())?
            }
        }
        if !self.monomial.is_one() {
            write!(f, "*{}", self.monomial)?;
        }
        Ok(())
    }
}

/// Canonical finite linear combination of terms.
///
/// Entries are keyed by `(term, monomial)` in term-text order, and no zero
/// coefficient is ever stored, so structural equality is semantic equality
/// in the free algebra.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Expr {
    terms: BTreeMap<(Term, Monomial), Coeff>,
}

/// Merges like terms and drops zeros; the input order is irrelevant.
pub fn canonicalize<I: IntoIterator<Item = (Scalar, Term)>>(items: I) -> Expr {
    let mut e = Expr::zero();
    for (s, t) in items {
        e.add_term(s, t);
    }
    e
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn term(t: Term) -> Self {
        Expr::scaled(Scalar::one(), t)
    }

    pub fn scaled(s: Scalar, t: Term) -> Self {
        let mut e = Expr::zero();
        e.add_term(s, t);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Scalar, t: Term) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((t, s.monomial)) {
            Entry::Vacant(v) => {
                v.insert(s.coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &s.coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_expr(&mut self, other: &Expr) {
        for (s, t) in other.iter() {
            self.add_term(s, t.clone());
        }
    }

    /// Entries in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Scalar, &Term)> {
        self.terms
            .iter()
            .map(|((t, m), c)| (Scalar::new(c.clone(), m.clone()), t))
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.keys().map(|(t, _)| t)
    }

    pub fn coeff_of(&self, t: &Term, m: &Monomial) -> Coeff {
        self.terms
            .get(&(t.clone(), m.clone()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, s: &Scalar) -> Expr {
        canonicalize(self.iter().map(|(c, t)| (c.mul(s), t.clone())))
    }

    /// Bilinear non-associative product: each pair of terms becomes one
    /// `Product` node, never re-bracketed.
    pub fn product(&self, other: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (s1, t1) in self.iter() {
            for (s2, t2) in other.iter() {
                out.add_term(s1.mul(&s2), Term::product(t1, t2));
            }
        }
        out
    }

    /// Star operation: conjugates coefficients, flips generator stars and
    /// reverses products, `(ab)* = b* a*`.
    pub fn conjugate(&self) -> Expr {
        let mut out = Expr::zero();
        for (s, t) in self.iter() {
            let (negate, ct) = conjugate_term(t);
            let s = s.conj();
            let s = if negate {
                Scalar::new(-s.coeff, s.monomial)
            } else {
                s
            };
            out.add_term(s, ct);
        }
        out
    }

    /// Linear extension of a per-term rewrite.
    pub fn flat_map_terms(&self, mut f: impl FnMut(&Term) -> Expr) -> Expr {
        let mut out = Expr::zero();
        for (s, t) in self.iter() {
            for (s2, t2) in f(t).iter() {
                out.add_term(s.mul(&s2), t2.clone());
            }
        }
        out
    }

    /// Substitutes a rational value for a scalar symbol.
    pub fn set_symbol(&self, name: &str, value: &BigRational) -> Expr {
        let mut out = Expr::zero();
        for (s, t) in self.iter() {
            let (rest, exp) = s.monomial.without(name);
            let mut c = s.coeff.clone();
            for _ in 0..exp {
                c *= real(value.clone());
            }
            out.add_term(Scalar::new(c, rest), t.clone());
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms().map(Term::degree).max().unwrap_or(0)
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut seen = std::collections::BTreeSet::new();
        for t in self.terms() {
            for a in t.leaves() {
                seen.insert(a.clone());
            }
        }
        seen.into_iter().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .iter()
            .map(|(s, t)| serde_json::json!({ "coeff": s.to_string(), "tree": t.text() }))
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

/// Conjugates one term; the flag reports an overall sign flip, which arises
/// from minus-associator nodes: `{a,b,c}-* = -{c*,b*,a*}-`.
pub fn conjugate_term(t: &Term) -> (bool, Term) {
    match t.node() {
        Node::Leaf(a) => (false, Term::leaf(a.conjugate())),
        Node::Product(l, r) => {
            let (nl, cl) = conjugate_term(l);
            let (nr, cr) = conjugate_term(r);
            (nl ^ nr, Term::product(&cr, &cl))
        }
        Node::Assoc(sign, [a, b, c]) => {
            let (na, ca) = conjugate_term(a);
            let (nb, cb) = conjugate_term(b);
            let (nc, cc) = conjugate_term(c);
            let flip = *sign == Sign::Minus;
            (na ^ nb ^ nc ^ flip, Term::assoc(*sign, &cc, &cb, &ca))
        }
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Self {
        Expr::term(t)
    }
}

impl From<Generator> for Expr {
    fn from(g: Generator) -> Self {
        Expr::term(Term::leaf(g))
    }
}

impl From<Atom> for Expr {
    fn from(a: Atom) -> Self {
        Expr::term(Term::leaf(a))
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_expr(rhs);
        out
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        self.add_expr(&rhs);
        self
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&Scalar::int(-1))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_expr(&-rhs);
        out
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        &self - &rhs
    }
}

/// `e1 * e2` is the non-associative product.
impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        self.product(rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        self.product(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn g(s: &str) -> Expr {
        Expr::from(Generator::new(s))
    }

    #[test]
    fn product_of_generators() {
        let p = g("phi").product(&g("psi"));
        assert_eq!(p.len(), 1);
        assert_eq!(p.terms().next().unwrap().text(), "[phi psi]");
    }

    #[test]
    fn product_with_zero() {
        assert!(Expr::zero().product(&g("e")).is_zero());
        assert!(g("e").product(&Expr::zero()).is_zero());
    }

    #[test]
    fn distributivity() {
        let a = g("a").scale(&Scalar::int(2));
        let b = &g("b").scale(&Scalar::int(3)) + &g("c");
        let p = a.product(&b);
        let ab = Term::product(
            &Term::leaf(Generator::new("a")),
            &Term::leaf(Generator::new("b")),
        );
        let ac = Term::product(
            &Term::leaf(Generator::new("a")),
            &Term::leaf(Generator::new("c")),
        );
        assert_eq!(p.coeff_of(&ab, &Monomial::one()), real(int(6)));
        assert_eq!(p.coeff_of(&ac, &Monomial::one()), real(int(2)));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn merging_and_cancellation() {
        let ab = g("a").product(&g("b"));
        let two = &ab + &ab;
        assert_eq!(two, ab.scale(&Scalar::int(2)));
        assert!((&ab - &ab).is_zero());
    }

    #[test]
    fn monomials_are_separate_keys() {
        let a = g("a");
        let e = &a.scale(&Scalar::symbol("g")) + &a;
        assert_eq!(e.len(), 2);
        let at_zero = e.set_symbol("g", &int(0));
        assert_eq!(at_zero, a);
        let at_two = e.set_symbol("g", &int(2));
        assert_eq!(at_two, a.scale(&Scalar::int(3)));
    }

    #[test]
    fn conjugation_reverses_products() {
        let psi = g("psi");
        let c = psi.conjugate();
        assert_eq!(c.terms().next().unwrap().text(), "psi*");
        let ab = g("a").product(&g("b"));
        assert_eq!(ab.conjugate().terms().next().unwrap().text(), "[b* a*]");
        assert_eq!(ab.conjugate().conjugate(), ab);
    }

    #[test]
    fn conjugation_is_antilinear() {
        let e = g("a").scale(&Scalar::imaginary(int(2)));
        let c = e.conjugate();
        let (s, _) = c.iter().next().unwrap();
        assert_eq!(s.coeff, Complex::new(int(0), int(-2)));
    }

    #[test]
    fn conjugate_minus_associator_flips_sign() {
        let [a, b, c] = ["a", "b", "c"].map(|s| Term::leaf(Generator::new(s)));
        let e = Expr::term(Term::assoc(Sign::Minus, &a, &b, &c));
        let ce = e.conjugate();
        let (s, t) = ce.iter().next().unwrap();
        assert_eq!(t.text(), "{c*, b*, a*}-");
        assert_eq!(s.coeff, real(int(-1)));
    }

    #[test]
    fn scalar_rendering() {
        assert_eq!(Scalar::int(3).to_string(), "3");
        assert_eq!(
            Scalar::imaginary(crate::scalar::rat(-1, 2)).to_string(),
            "-1/2i"
        );
        let s = Scalar::new(Complex::new(int(1), int(-2)), Monomial::power("g", 2));
        assert_eq!(s.to_string(), "(1-2i)*g^2");
    }
}
