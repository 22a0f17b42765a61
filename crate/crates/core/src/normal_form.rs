//! Reassociation of bracketings into comb normal forms.
//!
//! A term `x(yz)` is rewritten to `(xy)z` by one application of the
//! associator definition, leaving a formal `{x, y, z}±` symbol behind as a
//! correction. Associator nodes already present are treated as opaque units.

use serde::{Deserialize, Serialize};

use crate::expr::{Expr, Scalar};
use crate::term::{Node, Sign, Term};

/// Target bracketing shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comb {
    /// `((g1 g2) g3) ... gn`
    #[default]
    Left,
    /// `g1 (g2 (... gn))`
    Right,
}

impl std::str::FromStr for Comb {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Comb::Left),
            "right" => Ok(Comb::Right),
            other => Err(format!("unknown comb {other:?} (expected left or right)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NormalFormOptions {
    pub target: Comb,
    /// Which (±)-associator the rewrite introduces.
    pub rewrite: Sign,
}

/// `t = sign·comb + corrections`, exactly, once every associator symbol in
/// `corrections` is expanded by its definition.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub comb: Term,
    /// `+1` or `-1`; always `+1` with the minus rewrite.
    pub comb_sign: i64,
    pub corrections: Expr,
    /// Number of associator rewrites applied.
    pub applications: usize,
}

impl NormalForm {
    /// `sign·comb + corrections` as one expression (associators unexpanded).
    pub fn to_expr(&self) -> Expr {
        let mut e = self.corrections.clone();
        e.add_term(Scalar::int(self.comb_sign), self.comb.clone());
        e
    }
}

/// Left normal form with minus associators: `t = leftComb + corrections`.
pub fn to_left_normal_form(t: &Term) -> (Term, Expr) {
    let nf = to_normal_form(t, NormalFormOptions::default());
    (nf.comb, nf.corrections)
}

pub fn to_normal_form(t: &Term, opts: NormalFormOptions) -> NormalForm {
    // x(yz) = σ·(xy)z + τ·{x,y,z}±  (left target)
    // (xy)z = σ·x(yz) + τ·{x,y,z}±  (right target)
    let (sigma, tau) = match (opts.target, opts.rewrite) {
        (Comb::Left, Sign::Minus) => (1, -1),
        (Comb::Left, Sign::Plus) => (-1, 1),
        (Comb::Right, Sign::Minus) => (1, 1),
        (Comb::Right, Sign::Plus) => (-1, 1),
    };
    let ctx = Rewriter {
        target: opts.target,
        sign: opts.rewrite,
        sigma,
        tau,
    };
    ctx.run(t)
}

struct Rewriter {
    target: Comb,
    sign: Sign,
    sigma: i64,
    tau: i64,
}

impl Rewriter {
    fn run(&self, t: &Term) -> NormalForm {
        let Node::Product(l, r) = t.node() else {
            return NormalForm {
                comb: t.clone(),
                comb_sign: 1,
                corrections: Expr::zero(),
                applications: 0,
            };
        };
        match self.target {
            Comb::Left => match r.node() {
                Node::Product(y1, y2) => {
                    let rotated = Term::product(&Term::product(l, y1), y2);
                    let assoc = Term::assoc(self.sign, l, y1, y2);
                    self.rotate(self.run(&rotated), assoc)
                }
                _ => {
                    let inner = self.run(l);
                    let r = r.clone();
                    NormalForm {
                        comb: Term::product(&inner.comb, &r),
                        comb_sign: inner.comb_sign,
                        corrections: inner
                            .corrections
                            .flat_map_terms(|c| Expr::term(Term::product(c, &r))),
                        applications: inner.applications,
                    }
                }
            },
            Comb::Right => match l.node() {
                Node::Product(x1, x2) => {
                    let rotated = Term::product(x1, &Term::product(x2, r));
                    let assoc = Term::assoc(self.sign, x1, x2, r);
                    self.rotate(self.run(&rotated), assoc)
                }
                _ => {
                    let inner = self.run(r);
                    let l = l.clone();
                    NormalForm {
                        comb: Term::product(&l, &inner.comb),
                        comb_sign: inner.comb_sign,
                        corrections: inner
                            .corrections
                            .flat_map_terms(|c| Expr::term(Term::product(&l, c))),
                        applications: inner.applications,
                    }
                }
            },
        }
    }

    fn rotate(&self, inner: NormalForm, assoc: Term) -> NormalForm {
        let mut corrections = inner.corrections.scale(&Scalar::int(self.sigma));
        corrections.add_term(Scalar::int(self.tau), assoc);
        NormalForm {
            comb: inner.comb,
            comb_sign: self.sigma * inner.comb_sign,
            corrections,
            applications: inner.applications + 1,
        }
    }
}

/// Normal form of every term of `e`, with existing associator symbols
/// expanded first.
pub fn normalize_expr(e: &Expr, opts: NormalFormOptions) -> Expr {
    expand_associators(e).flat_map_terms(|t| to_normal_form(t, opts).to_expr())
}

/// Replaces every `{a, b, c}±` by `(ab)c ± a(bc)`, recursively.
pub fn expand_associators(e: &Expr) -> Expr {
    e.flat_map_terms(expand_term)
}

pub fn expand_term(t: &Term) -> Expr {
    if !t.contains_assoc() {
        return Expr::term(t.clone());
    }
    match t.node() {
        Node::Leaf(_) => Expr::term(t.clone()),
        Node::Product(l, r) => expand_term(l).product(&expand_term(r)),
        Node::Assoc(sign, [a, b, c]) => {
            let (a, b, c) = (expand_term(a), expand_term(b), expand_term(c));
            let left = a.product(&b).product(&c);
            let right = a.product(&b.product(&c));
            match sign {
                Sign::Minus => &left - &right,
                Sign::Plus => &left + &right,
            }
        }
    }
}
