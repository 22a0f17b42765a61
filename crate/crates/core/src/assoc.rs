//! (±)-associators, composite operators and their (anti)commutators, both as
//! formal expressions and evaluated in a concrete algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::cayley_dickson::{Algebra, AlgebraError, Element};
use crate::expr::{Expr, Scalar};
use crate::normal_form::{expand_associators, to_normal_form, NormalFormOptions};
use crate::scalar::Field;
use crate::term::{Atom, Generator, Node, Sign, Term, TermError, DEFAULT_DEGREE_CAP};

/// `(ab)c ± a(bc)`, expanded and canonical. Trilinear in each slot.
pub fn associator(sign: Sign, a: &Expr, b: &Expr, c: &Expr) -> Expr {
    let left = a.product(b).product(c);
    let right = a.product(&b.product(c));
    match sign {
        Sign::Minus => &left - &right,
        Sign::Plus => &left + &right,
    }
}

/// The same trilinear map, kept as formal `{a, b, c}±` symbols.
pub fn formal_associator(sign: Sign, a: &Expr, b: &Expr, c: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (sa, ta) in a.iter() {
        for (sb, tb) in b.iter() {
            for (sc, tc) in c.iter() {
                out.add_term(sa.mul(&sb).mul(&sc), Term::assoc(sign, ta, tb, tc));
            }
        }
    }
    out
}

/// `(ab)c ± a(bc)` in a concrete algebra.
pub fn concrete_associator<T: Field>(
    sign: Sign,
    a: &Element<T>,
    b: &Element<T>,
    c: &Element<T>,
) -> Result<Element<T>, AlgebraError> {
    let left = a.try_mul(b)?.try_mul(c)?;
    let right = a.try_mul(&b.try_mul(c)?)?;
    match sign {
        Sign::Minus => left.try_sub(&right),
        Sign::Plus => left.try_add(&right),
    }
}

/// One formal associator appearing in a normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct AssocSymbol {
    pub sign: Sign,
    pub slots: [Term; 3],
    /// `A` for three simple slots, `A1` when only the first slot is composite,
    /// `A2` when only the third is.
    pub label: Option<String>,
}

impl AssocSymbol {
    pub fn from_term(t: &Term) -> Option<AssocSymbol> {
        let Node::Assoc(sign, slots) = t.node() else {
            return None;
        };
        let degrees = slots.clone().map(|s| s.degree() > 1);
        let label = match degrees {
            [false, false, false] => Some("A"),
            [true, false, false] => Some("A1"),
            [false, false, true] => Some("A2"),
            _ => None,
        };
        Some(AssocSymbol {
            sign: *sign,
            slots: slots.clone(),
            label: label.map(str::to_string),
        })
    }

    pub fn term(&self) -> Term {
        let [a, b, c] = &self.slots;
        Term::assoc(self.sign, a, b, c)
    }

    pub fn expand(&self) -> Expr {
        expand_associators(&Expr::term(self.term()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sign": self.sign.to_string(),
            "slots": self.slots.iter().map(|s| s.text().to_string()).collect::<Vec<_>>(),
            "label": self.label,
        })
    }
}

/// A bracketed product of generators, e.g. `[phi(x1) phi(x2)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeOp {
    term: Term,
}

impl CompositeOp {
    pub fn new(term: Term) -> Self {
        CompositeOp { term }
    }

    /// `[[f1 f2] ... fn]`. Panics on an empty list.
    pub fn left_nested(factors: &[Generator]) -> Self {
        let leaves: Vec<Term> = factors.iter().cloned().map(Term::leaf).collect();
        CompositeOp {
            term: Term::left_comb(&leaves),
        }
    }

    /// `[f1 [f2 ... fn]]`. Panics on an empty list.
    pub fn right_nested(factors: &[Generator]) -> Self {
        let leaves: Vec<Term> = factors.iter().cloned().map(Term::leaf).collect();
        CompositeOp {
            term: Term::right_comb(&leaves),
        }
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn factors(&self) -> Vec<&Atom> {
        self.term.leaves()
    }

    pub fn degree(&self) -> usize {
        self.term.degree()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorResult {
    /// `AB ± BA` as written.
    pub raw: Expr,
    /// Comb terms plus formal associators.
    pub normal: Expr,
    pub associators: Vec<AssocSymbol>,
}

impl CommutatorResult {
    /// Expands every associator in `normal`; equals `raw`.
    pub fn expanded_normal(&self) -> Expr {
        expand_associators(&self.normal)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "raw": self.raw.to_json(),
            "normal": self.normal.to_json(),
            "associators": self.associators.iter().map(AssocSymbol::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Every distinct associator symbol of `e`, in canonical term order.
pub fn associator_symbols(e: &Expr) -> Vec<AssocSymbol> {
    let mut seen: Vec<Term> = Vec::new();
    for t in e.terms() {
        for a in t.assoc_nodes() {
            if !seen.contains(&a) {
                seen.push(a);
            }
        }
    }
    seen.iter().filter_map(AssocSymbol::from_term).collect()
}

/// `[A, B]± = AB ± BA`, rewritten term by term into comb normal form.
pub fn composite_commutator(
    sign: Sign,
    a: &CompositeOp,
    b: &CompositeOp,
    opts: NormalFormOptions,
) -> Result<CommutatorResult, TermError> {
    let degree = a.degree() + b.degree();
    if degree > DEFAULT_DEGREE_CAP {
        return Err(TermError::DegreeCap {
            degree,
            cap: DEFAULT_DEGREE_CAP,
        });
    }
    let (ea, eb) = (Expr::term(a.term.clone()), Expr::term(b.term.clone()));
    let ab = ea.product(&eb);
    let ba = eb.product(&ea);
    let raw = match sign {
        Sign::Minus => &ab - &ba,
        Sign::Plus => &ab + &ba,
    };
    let normal = raw.flat_map_terms(|t| to_normal_form(t, opts).to_expr());
    let associators = associator_symbols(&normal);
    Ok(CommutatorResult {
        raw,
        normal,
        associators,
    })
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no value assigned to {0}")]
    Unassigned(String),
    #[error("no value assigned to scalar symbol {0}")]
    UnassignedSymbol(String),
    #[error("coefficient of {0} is not real")]
    Imaginary(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

type AtomLookup<'a, T> = Box<dyn Fn(&Atom) -> Option<Element<T>> + Send + Sync + 'a>;

/// Values for the atoms and scalar symbols of an expression.
///
/// A conjugated atom with no value of its own evaluates through the algebra
/// involution applied to its unconjugated partner.
pub struct Valuation<'a, T: Field> {
    algebra: Arc<Algebra<T>>,
    atoms: AtomLookup<'a, T>,
    symbols: BTreeMap<String, T>,
}

impl<'a, T: Field> Valuation<'a, T> {
    pub fn new(
        algebra: &Arc<Algebra<T>>,
        atoms: impl Fn(&Atom) -> Option<Element<T>> + Send + Sync + 'a,
    ) -> Self {
        Valuation {
            algebra: algebra.clone(),
            atoms: Box::new(atoms),
            symbols: BTreeMap::new(),
        }
    }

    pub fn from_map(algebra: &Arc<Algebra<T>>, map: BTreeMap<Atom, Element<T>>) -> Self {
        Self::new(algebra, move |a| map.get(a).cloned())
    }

    /// Values keyed by generator (atoms without derivative markers).
    pub fn from_generators(
        algebra: &Arc<Algebra<T>>,
        pairs: impl IntoIterator<Item = (Generator, Element<T>)>,
    ) -> Self {
        let map: BTreeMap<Atom, Element<T>> =
            pairs.into_iter().map(|(g, e)| (Atom::new(g), e)).collect();
        Self::from_map(algebra, map)
    }

    pub fn symbol(mut self, name: &str, value: T) -> Self {
        self.symbols.insert(name.to_string(), value);
        self
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn atom(&self, atom: &Atom) -> Result<Element<T>, EvalError> {
        if let Some(v) = (self.atoms)(atom) {
            return Ok(v);
        }
        if atom.base.conjugated {
            if let Some(v) = (self.atoms)(&atom.conjugate()) {
                return Ok(v.conj()?);
            }
        }
        Err(EvalError::Unassigned(atom.to_string()))
    }

    fn scalar(&self, s: &Scalar, term: &Term) -> Result<T, EvalError> {
        if !s.coeff.im.is_zero() {
            return Err(EvalError::Imaginary(term.text().to_string()));
        }
        let mut v = T::from_rational(&s.coeff.re);
        for (name, exp) in s.monomial.iter() {
            let x = self
                .symbols
                .get(name)
                .ok_or_else(|| EvalError::UnassignedSymbol(name.to_string()))?;
            for _ in 0..exp {
                v = v * x.clone();
            }
        }
        Ok(v)
    }

    pub fn term(&self, t: &Term) -> Result<Element<T>, EvalError> {
        match t.node() {
            Node::Leaf(a) => self.atom(a),
            Node::Product(l, r) => Ok(self.term(l)?.try_mul(&self.term(r)?)?),
            Node::Assoc(sign, [a, b, c]) => Ok(concrete_associator(
                *sign,
                &self.term(a)?,
                &self.term(b)?,
                &self.term(c)?,
            )?),
        }
    }
}

/// Homomorphic evaluation of `e` in the valuation's algebra.
pub fn evaluate<T: Field>(e: &Expr, v: &Valuation<'_, T>) -> Result<Element<T>, EvalError> {
    let mut acc = Element::zero(&v.algebra);
    for (s, t) in e.iter() {
        let value = v.term(t)?;
        acc = acc.try_add(&value.scale(&v.scalar(&s, t)?))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use num_rational::BigRational;

    type Q = BigRational;

    fn g(s: &str) -> Expr {
        Expr::from(Generator::new(s))
    }

    #[test]
    fn symbolic_associator_keeps_both_terms() {
        let e = associator(Sign::Minus, &g("a"), &g("b"), &g("c"));
        assert_eq!(e, parse("[[a b] c] - [a [b c]]").unwrap());
        let p = associator(Sign::Plus, &g("a"), &g("b"), &g("c"));
        assert_eq!(p, parse("[[a b] c] + [a [b c]]").unwrap());
    }

    #[test]
    fn formal_associator_expands_to_definition() {
        let a = &g("a") + &g("x").scale(&Scalar::int(2));
        let f = formal_associator(Sign::Minus, &a, &g("b"), &g("c"));
        assert_eq!(f.len(), 2);
        assert_eq!(
            expand_associators(&f),
            associator(Sign::Minus, &a, &g("b"), &g("c"))
        );
    }

    #[test]
    fn octonion_associator_is_nonzero() {
        let o = Arc::new(Algebra::<Q>::octonions());
        let e = |k| Element::basis(&o, k);
        let v = concrete_associator(Sign::Minus, &e(1), &e(2), &e(4)).unwrap();
        assert!(!v.is_zero());
        // (e1 e2) e4 = e3 e4 = e7 while e1 (e2 e4) = e1 e6 = -e7
        assert_eq!(v.to_string(), "2*e7");
    }

    #[test]
    fn quaternion_associator_vanishes() {
        let q = Arc::new(Algebra::<Q>::quaternions());
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let e = |n| Element::basis(&q, n);
                    assert!(concrete_associator(Sign::Minus, &e(i), &e(j), &e(k))
                        .unwrap()
                        .is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_slot_gives_zero_concretely_only() {
        let o = Arc::new(Algebra::<Q>::octonions());
        let one = Element::one(&o);
        let x = Element::parse(&o, "e1 + e5").unwrap();
        let y = Element::parse(&o, "e2 - e6").unwrap();
        assert!(concrete_associator(Sign::Minus, &one, &x, &y)
            .unwrap()
            .is_zero());
        assert!(concrete_associator(Sign::Minus, &x, &one, &y)
            .unwrap()
            .is_zero());
        assert_eq!(associator(Sign::Minus, &g("u"), &g("a"), &g("b")).len(), 2);
    }

    #[test]
    fn two_product_commutator_shape() {
        let phi = |p: &str| Generator::new("phi").at(p);
        let a = CompositeOp::left_nested(&[phi("x1"), phi("x2")]);
        let b = CompositeOp::left_nested(&[phi("x3"), phi("x4")]);
        let r = composite_commutator(Sign::Minus, &a, &b, NormalFormOptions::default()).unwrap();
        assert_eq!(
            r.raw,
            parse("[[phi(x1) phi(x2)] [phi(x3) phi(x4)]] - [[phi(x3) phi(x4)] [phi(x1) phi(x2)]]")
                .unwrap()
        );
        assert_eq!(r.associators.len(), 2);
        assert!(r
            .associators
            .iter()
            .all(|s| s.label.as_deref() == Some("A1")));
        assert_eq!(r.expanded_normal(), r.raw);
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = CompositeOp::new(parse("[a [b c]]").unwrap().terms().next().unwrap().clone());
        let r = composite_commutator(Sign::Minus, &a, &a, NormalFormOptions::default()).unwrap();
        assert!(r.raw.is_zero() && r.normal.is_zero());
        let r = composite_commutator(Sign::Plus, &a, &a, NormalFormOptions::default()).unwrap();
        assert_eq!(r.raw.len(), 1);
    }

    #[test]
    fn evaluation_of_product() {
        let o = Arc::new(Algebra::<Q>::octonions());
        let v = Valuation::from_generators(
            &o,
            [
                (Generator::new("a"), Element::basis(&o, 1)),
                (Generator::new("b"), Element::basis(&o, 2)),
            ],
        );
        let x = evaluate(&parse("[a b]").unwrap(), &v).unwrap();
        assert_eq!(x, &Element::basis(&o, 1) * &Element::basis(&o, 2));
        let star = evaluate(&parse("a*").unwrap(), &v).unwrap();
        assert_eq!(star, -&Element::basis(&o, 1));
        assert!(matches!(
            evaluate(&parse("c").unwrap(), &v),
            Err(EvalError::Unassigned(_))
        ));
        assert!(matches!(
            evaluate(&parse("i*a").unwrap(), &v),
            Err(EvalError::Imaginary(_))
        ));
        assert!(matches!(
            evaluate(&parse("g*a").unwrap(), &v),
            Err(EvalError::UnassignedSymbol(_))
        ));
        let v = v.symbol("g", crate::scalar::int(3));
        assert_eq!(
            evaluate(&parse("g*a").unwrap(), &v).unwrap(),
            Element::basis(&o, 1).scale(&crate::scalar::int(3))
        );
    }

    #[test]
    fn evaluation_mismatch() {
        let o = Arc::new(Algebra::<Q>::octonions());
        let q = Arc::new(Algebra::<Q>::quaternions());
        let v = Valuation::from_generators(
            &o,
            [
                (Generator::new("a"), Element::basis(&o, 1)),
                (Generator::new("b"), Element::basis(&q, 2)),
            ],
        );
        assert!(matches!(
            evaluate(&parse("[a b]").unwrap(), &v),
            Err(EvalError::Algebra(AlgebraError::Mismatch(..)))
        ));
    }
}
