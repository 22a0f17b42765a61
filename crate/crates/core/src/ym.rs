//! Formal derivatives, the gauge field strength, the Yang–Mills divergence
//! equations and substitution of a nested non-associative decomposition of
//! the gauge field.
//!
//! Spacetime indices are `0..=3`, color indices `1..=n`. All index sums are
//! written out explicitly; raising uses the diagonal metric of the context.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::assoc::formal_associator;
use crate::expr::{canonicalize, Expr, Scalar};
use crate::normal_form::Comb;
use crate::scalar::{int, parse_rational};
use crate::term::{is_label, is_name, Atom, Generator, Node, Term};

pub const SPACETIME: [&str; 4] = ["0", "1", "2", "3"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YmError {
    #[error("structure constants are not totally antisymmetric at ({0}, {1}, {2})")]
    NotAntisymmetric(usize, usize, usize),
    #[error("Jacobi identity fails at (a, b, c, e) = ({0}, {1}, {2}, {3})")]
    Jacobi(usize, usize, usize, usize),
    #[error("equations are written in {found:?}, decomposition targets {expected:?}")]
    SymbolMismatch { expected: String, found: String },
    #[error("index range clash: {0}")]
    IndexRangeClash(String),
    #[error("invalid decomposition: {0}")]
    BadDecomposition(String),
    #[error("invalid gauge group file: {0}")]
    BadGroup(String),
    #[error(transparent)]
    Hygiene(#[from] HygieneError),
}

/// Raw, uncanonicalized sum; used where term counts before cancellation
/// matter.
pub type RawSum = Vec<(Scalar, Term)>;

/// Leibniz rule on one term: one entry per placement of the derivative.
pub fn leibniz(t: &Term, mu: &str) -> Vec<Term> {
    match t.node() {
        Node::Leaf(a) => vec![Term::leaf(a.derive(mu))],
        Node::Product(l, r) => {
            let mut out: Vec<Term> = leibniz(l, mu)
                .iter()
                .map(|dl| Term::product(dl, r))
                .collect();
            out.extend(leibniz(r, mu).iter().map(|dr| Term::product(l, dr)));
            out
        }
        Node::Assoc(sign, [a, b, c]) => {
            let mut out: Vec<Term> = leibniz(a, mu)
                .iter()
                .map(|d| Term::assoc(*sign, d, b, c))
                .collect();
            out.extend(leibniz(b, mu).iter().map(|d| Term::assoc(*sign, a, d, c)));
            out.extend(leibniz(c, mu).iter().map(|d| Term::assoc(*sign, a, b, d)));
            out
        }
    }
}

pub fn derive_raw(items: &[(Scalar, Term)], mu: &str) -> RawSum {
    items
        .iter()
        .flat_map(|(s, t)| leibniz(t, mu).into_iter().map(move |d| (s.clone(), d)))
        .collect()
}

/// `∂_mu e`, linear and Leibniz on every binary product; bracketings are
/// preserved.
pub fn derive(e: &Expr, mu: &str) -> Expr {
    let items: RawSum = e.iter().map(|(s, t)| (s, t.clone())).collect();
    canonicalize(derive_raw(&items, mu))
}

/// Gauge group data: adjoint dimension, exact structure constants, metric
/// and the names used when rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeContext {
    group: String,
    n_colors: usize,
    structure: Vec<BigRational>,
    pub metric: [i8; 4],
    pub coupling: String,
    pub field: String,
    pub point: String,
}

impl GaugeContext {
    /// Validates total antisymmetry and the Jacobi identity exactly.
    /// `f` is indexed `f[a][b][c]` with 0-based color indices.
    pub fn new(group: &str, f: Vec<Vec<Vec<BigRational>>>) -> Result<Self, YmError> {
        let n = f.len();
        if f.iter()
            .any(|r| r.len() != n || r.iter().any(|c| c.len() != n))
        {
            return Err(YmError::BadGroup(
                "structure constants must be an n×n×n array".into(),
            ));
        }
        let structure: Vec<BigRational> = f.into_iter().flatten().flatten().collect();
        let ctx = GaugeContext {
            group: group.to_string(),
            n_colors: n,
            structure,
            metric: [1, -1, -1, -1],
            coupling: "g".into(),
            field: "A".into(),
            point: "x".into(),
        };
        ctx.validate()?;
        Ok(ctx)
    }

    /// `su(2)`: `f^{abc} = ε^{abc}`.
    pub fn su2() -> Self {
        let mut f = vec![vec![vec![BigRational::zero(); 3]; 3]; 3];
        for (a, b, c, s) in [
            (0, 1, 2, 1),
            (1, 2, 0, 1),
            (2, 0, 1, 1),
            (0, 2, 1, -1),
            (2, 1, 0, -1),
            (1, 0, 2, -1),
        ] {
            f[a][b][c] = int(s);
        }
        GaugeContext::new("su2", f).expect("epsilon is a valid structure tensor")
    }

    /// `n` commuting copies of `u(1)`: all structure constants vanish.
    pub fn abelian(n: usize) -> Self {
        GaugeContext::new("u1", vec![vec![vec![BigRational::zero(); n]; n]; n])
            .expect("zero tensor is valid")
    }

    /// Reads `{"group": .., "n": .., "f": [[a, b, c, value], ...]}` with
    /// 1-based indices; every listed entry is extended by antisymmetry.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, YmError> {
        #[derive(Deserialize)]
        struct GroupFile {
            group: String,
            n: usize,
            #[serde(default)]
            f: Vec<(usize, usize, usize, serde_json::Value)>,
        }
        let file: GroupFile =
            serde_json::from_value(value.clone()).map_err(|e| YmError::BadGroup(e.to_string()))?;
        let n = file.n;
        let mut f: Vec<Vec<Vec<Option<BigRational>>>> = vec![vec![vec![None; n]; n]; n];
        for (a, b, c, v) in file.f {
            let value = match &v {
                serde_json::Value::Number(x) => x.as_i64().map(int),
                serde_json::Value::String(s) => parse_rational(s),
                _ => None,
            }
            .ok_or_else(|| YmError::BadGroup(format!("bad value {v}")))?;
            if [a, b, c].iter().any(|&i| i == 0 || i > n) {
                return Err(YmError::BadGroup(format!(
                    "index out of range in ({a}, {b}, {c})"
                )));
            }
            let (a, b, c) = (a - 1, b - 1, c - 1);
            for (p, sign) in [
                ((a, b, c), 1),
                ((b, c, a), 1),
                ((c, a, b), 1),
                ((b, a, c), -1),
                ((a, c, b), -1),
                ((c, b, a), -1),
            ] {
                let v = if sign > 0 {
                    value.clone()
                } else {
                    -value.clone()
                };
                let slot = &mut f[p.0][p.1][p.2];
                if let Some(old) = slot {
                    if *old != v {
                        return Err(YmError::NotAntisymmetric(p.0 + 1, p.1 + 1, p.2 + 1));
                    }
                }
                *slot = Some(v);
            }
        }
        let f = f
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| {
                        c.into_iter()
                            .map(|v| v.unwrap_or_else(BigRational::zero))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GaugeContext::new(&file.group, f)
    }

    fn validate(&self) -> Result<(), YmError> {
        let n = self.n_colors;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.f(a, b, c);
                    if *v != -self.f(b, a, c).clone() || *v != -self.f(a, c, b).clone() {
                        return Err(YmError::NotAntisymmetric(a + 1, b + 1, c + 1));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let mut sum = BigRational::zero();
                        for d in 0..n {
                            sum += self.f(a, b, d) * self.f(d, c, e);
                            sum += self.f(b, c, d) * self.f(d, a, e);
                            sum += self.f(c, a, d) * self.f(d, b, e);
                        }
                        if !sum.is_zero() {
                            return Err(YmError::Jacobi(a + 1, b + 1, c + 1, e + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    /// `f^{abc}` with 0-based indices.
    pub fn f(&self, a: usize, b: usize, c: usize) -> &BigRational {
        let n = self.n_colors;
        &self.structure[(a * n + b) * n + c]
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Zero::is_zero)
    }

    /// `A^{a}_{mu}(x)` for a 1-based color label.
    pub fn potential(&self, a: usize, mu: &str) -> Generator {
        Generator::new(&self.field)
            .upper([a.to_string()])
            .lower([mu])
            .at(&self.point)
    }

    fn metric_sign(&self, mu: &str) -> i64 {
        let k: usize = mu.parse().expect("spacetime index");
        self.metric[k] as i64
    }

    /// `∂_μ A^a_ν − ∂_ν A^a_μ + g f^{abc} [A^b_μ A^c_ν]` as a raw sum; the
    /// quadratic term keeps the written operator order.
    pub fn field_strength_raw(&self, a: usize, mu: &str, nu: &str) -> RawSum {
        let mut out: RawSum = vec![
            (
                Scalar::int(1),
                Term::leaf(Atom::new(self.potential(a, nu)).derive(mu)),
            ),
            (
                Scalar::int(-1),
                Term::leaf(Atom::new(self.potential(a, mu)).derive(nu)),
            ),
        ];
        let a0 = a - 1;
        for b in 0..self.n_colors {
            for c in 0..self.n_colors {
                let f = self.f(a0, b, c);
                if f.is_zero() {
                    continue;
                }
                let s = Scalar::rational(f.clone()).mul(&Scalar::symbol(&self.coupling));
                let t = Term::product(
                    &Term::leaf(self.potential(b + 1, mu)),
                    &Term::leaf(self.potential(c + 1, nu)),
                );
                out.push((s, t));
            }
        }
        out
    }

    pub fn field_strength(&self, a: usize, mu: &str, nu: &str) -> Expr {
        canonicalize(self.field_strength_raw(a, mu, nu))
    }

    /// Every component `F^a_{μν}`, keyed by `(a, μ, ν)`.
    pub fn field_strength_family(&self) -> BTreeMap<(usize, String, String), Expr> {
        let mut out = BTreeMap::new();
        for a in 1..=self.n_colors {
            for mu in SPACETIME {
                for nu in SPACETIME {
                    out.insert(
                        (a, mu.to_string(), nu.to_string()),
                        self.field_strength(a, mu, nu),
                    );
                }
            }
        }
        out
    }

    /// `F^{a μν} = η^{μμ} η^{νν} F^a_{μν}` as a raw sum.
    fn raised_field_strength_raw(&self, a: usize, mu: &str, nu: &str) -> RawSum {
        let sign = self.metric_sign(mu) * self.metric_sign(nu);
        self.field_strength_raw(a, mu, nu)
            .into_iter()
            .map(|(s, t)| (s.mul(&Scalar::int(sign)), t))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct YmOptions {
    /// Use `D_ν F^{aμν} = ∂_ν F^{aμν} + g f^{abc} [A^b_ν F^{cμν}]` instead of
    /// the plain divergence.
    pub covariant: bool,
}

/// Symbolic equation `lhs = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedEquation {
    /// `(name, value)` pairs, e.g. `[("a", "1"), ("mu", "0")]`.
    pub free_indices: Vec<(String, String)>,
    pub lhs: Expr,
    /// Symbol whose decomposition the equation is written in.
    pub field: String,
    /// Index labels still awaiting summation.
    pub dummy_indices: Vec<String>,
    /// Number of terms produced by the expansion before like terms merged.
    pub raw_terms: usize,
}

impl DerivedEquation {
    /// Term counts by power of the coupling symbol.
    pub fn census(&self, coupling: &str) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (s, _) in self.lhs.iter() {
            *out.entry(s.monomial.degree_in(coupling)).or_insert(0) += 1;
        }
        out
    }

    pub fn set_symbol(&self, name: &str, value: &BigRational) -> DerivedEquation {
        DerivedEquation {
            lhs: self.lhs.set_symbol(name, value),
            ..self.clone()
        }
    }

    pub fn header(&self) -> String {
        self.free_indices
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let free: serde_json::Map<String, serde_json::Value> = self
            .free_indices
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::json!(v)))
            .collect();
        serde_json::json!({
            "free_indices": free,
            "terms": self.lhs.to_json()["terms"].clone(),
        })
    }
}

impl std::fmt::Display for DerivedEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} = 0", self.header(), self.lhs)
    }
}

/// `∂_ν F^{aμν} = 0` (or its covariant form) for every color `a` and
/// spacetime index `μ`, with `ν` summed over `0..=3`.
pub fn ym_equations(ctx: &GaugeContext, opts: YmOptions) -> Vec<DerivedEquation> {
    let slots: Vec<(usize, &str)> = (1..=ctx.n_colors)
        .flat_map(|a| SPACETIME.map(|mu| (a, mu)))
        .collect();
    slots
        .into_par_iter()
        .map(|(a, mu)| ym_equation(ctx, a, mu, opts))
        .collect()
}

fn ym_equation(ctx: &GaugeContext, a: usize, mu: &str, opts: YmOptions) -> DerivedEquation {
    let mut raw: RawSum = Vec::new();
    for nu in SPACETIME {
        raw.extend(derive_raw(&ctx.raised_field_strength_raw(a, mu, nu), nu));
        if opts.covariant {
            for b in 0..ctx.n_colors {
                for c in 0..ctx.n_colors {
                    let f = ctx.f(a - 1, b, c);
                    if f.is_zero() {
                        continue;
                    }
                    let s = Scalar::rational(f.clone()).mul(&Scalar::symbol(&ctx.coupling));
                    let ab = Term::leaf(ctx.potential(b + 1, nu));
                    for (fs, ft) in ctx.raised_field_strength_raw(c + 1, mu, nu) {
                        raw.push((s.mul(&fs), Term::product(&ab, &ft)));
                    }
                }
            }
        }
    }
    DerivedEquation {
        free_indices: vec![("a".into(), a.to_string()), ("mu".into(), mu.to_string())],
        raw_terms: raw.len(),
        lhs: canonicalize(raw),
        field: ctx.field.clone(),
        dummy_indices: Vec::new(),
    }
}

/// `A^a_μ = [φ^a_{i1} φ^{i1}_{i2} ... φ^{i(n-1)}_μ]`, nested left or right,
/// at the single point of the potential.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// Number of `φ` factors; `depth - 1` inner indices are contracted.
    pub depth: usize,
    pub nesting: Comb,
    /// Values each inner index runs over.
    pub inner_range: Vec<String>,
    pub target: String,
    pub factor: String,
}

impl Decomposition {
    pub fn new(depth: usize, nesting: Comb) -> Self {
        Decomposition {
            depth,
            nesting,
            inner_range: vec!["1".into(), "2".into()],
            target: "A".into(),
            factor: "phi".into(),
        }
    }

    pub fn with_range(mut self, n: usize) -> Self {
        self.inner_range = (1..=n).map(|k| k.to_string()).collect();
        self
    }

    fn validate(&self) -> Result<(), YmError> {
        if self.depth == 0 {
            return Err(YmError::BadDecomposition("depth must be at least 1".into()));
        }
        if !is_name(&self.factor) || !is_name(&self.target) {
            return Err(YmError::BadDecomposition(
                "target and factor must be identifiers".into(),
            ));
        }
        if self.inner_range.is_empty() || self.inner_range.iter().any(|l| !is_label(l)) {
            return Err(YmError::BadDecomposition(
                "inner range must be non-empty alphanumeric labels".into(),
            ));
        }
        let distinct: BTreeSet<&String> = self.inner_range.iter().collect();
        if distinct.len() != self.inner_range.len() {
            return Err(YmError::IndexRangeClash(
                "repeated value in inner range".into(),
            ));
        }
        if self.inner_range.iter().any(|l| is_dummy(l)) {
            return Err(YmError::IndexRangeClash(
                "inner range values may not look like dummy labels i<k>".into(),
            ));
        }
        Ok(())
    }

    /// The nested product replacing `target^{a}_{mu}(point)`, with inner
    /// indices labelled `i<first>, i<first+1>, ...`.
    pub fn render(&self, color: &str, mu: &str, point: Option<&str>, first_dummy: usize) -> Term {
        let n = self.depth;
        let dummy = |k: usize| format!("i{}", first_dummy + k);
        let leaves: Vec<Term> = (0..n)
            .map(|k| {
                let upper = if k == 0 {
                    color.to_string()
                } else {
                    dummy(k - 1)
                };
                let lower = if k == n - 1 { mu.to_string() } else { dummy(k) };
                let mut g = Generator::new(&self.factor).upper([upper]).lower([lower]);
                g.point = point.map(str::to_string);
                Term::leaf(g)
            })
            .collect();
        match self.nesting {
            Comb::Left => Term::left_comb(&leaves),
            Comb::Right => Term::right_comb(&leaves),
        }
    }
}

fn is_dummy(label: &str) -> bool {
    label.len() > 1 && label.starts_with('i') && label[1..].bytes().all(|b| b.is_ascii_digit())
}

fn labels_of(t: &Term) -> impl Iterator<Item = String> + '_ {
    t.leaves().into_iter().flat_map(|a| {
        a.base
            .upper
            .iter()
            .chain(&a.base.lower)
            .chain(a.derivs())
            .cloned()
            .collect::<Vec<_>>()
    })
}

/// Replaces every occurrence of the target field (with any derivative
/// markers) by its decomposition, applies the Leibniz rule, and keeps the
/// inner indices as symbolic dummies.
pub fn substitute_symbolic(
    eqs: &[DerivedEquation],
    d: &Decomposition,
) -> Result<Vec<DerivedEquation>, YmError> {
    d.validate()?;
    for eq in eqs {
        if eq.field != d.target {
            return Err(YmError::SymbolMismatch {
                expected: d.target.clone(),
                found: eq.field.clone(),
            });
        }
        if let Some(l) = eq.lhs.terms().flat_map(labels_of).find(|l| is_dummy(l)) {
            return Err(YmError::IndexRangeClash(format!(
                "equation already uses label {l}"
            )));
        }
    }
    Ok(eqs
        .par_iter()
        .map(|eq| substitute_equation(eq, d))
        .collect())
}

fn substitute_equation(eq: &DerivedEquation, d: &Decomposition) -> DerivedEquation {
    let mut lhs = Expr::zero();
    let mut raw_terms = 0;
    let mut dummies = BTreeSet::new();
    for (s, t) in eq.lhs.iter() {
        let mut counter = 1;
        let raw = substitute_term(t, d, &mut counter);
        raw_terms += raw.len();
        for k in 1..counter {
            dummies.insert(format!("i{k}"));
        }
        for (s2, t2) in raw {
            lhs.add_term(s.mul(&s2), t2);
        }
    }
    DerivedEquation {
        free_indices: eq.free_indices.clone(),
        lhs,
        field: d.factor.clone(),
        dummy_indices: dummies.into_iter().collect(),
        raw_terms,
    }
}

fn substitute_term(t: &Term, d: &Decomposition, counter: &mut usize) -> RawSum {
    match t.node() {
        Node::Leaf(a) if a.base.symbol == d.target => {
            let g = &a.base;
            let (color, mu) = match (g.upper.as_slice(), g.lower.as_slice()) {
                ([c], [m]) => (c.as_str(), m.as_str()),
                _ => return vec![(Scalar::one(), t.clone())],
            };
            let nested = d.render(color, mu, g.point.as_deref(), *counter);
            *counter += d.depth - 1;
            let mut items: RawSum = vec![(Scalar::one(), nested)];
            for mu in a.derivs() {
                items = derive_raw(&items, mu);
            }
            if g.conjugated {
                items = items
                    .into_iter()
                    .flat_map(|(s, t)| {
                        Expr::scaled(s, t)
                            .conjugate()
                            .iter()
                            .map(|(s, t)| (s, t.clone()))
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            items
        }
        Node::Leaf(_) => vec![(Scalar::one(), t.clone())],
        Node::Product(l, r) => {
            let ls = substitute_term(l, d, counter);
            let rs = substitute_term(r, d, counter);
            let mut out = Vec::with_capacity(ls.len() * rs.len());
            for (s1, t1) in &ls {
                for (s2, t2) in &rs {
                    out.push((s1.mul(s2), Term::product(t1, t2)));
                }
            }
            out
        }
        Node::Assoc(sign, [a, b, c]) => {
            let parts = [a, b, c].map(|x| canonicalize(substitute_term(x, d, counter)));
            formal_associator(*sign, &parts[0], &parts[1], &parts[2])
                .iter()
                .map(|(s, t)| (s, t.clone()))
                .collect()
        }
    }
}

/// Expands every dummy index of `eq` as an explicit sum over `range`.
pub fn instantiate(eq: &DerivedEquation, range: &[String]) -> DerivedEquation {
    let dummies: BTreeSet<&String> = eq.dummy_indices.iter().collect();
    let mut lhs = Expr::zero();
    let mut raw_terms = 0;
    for (s, t) in eq.lhs.iter() {
        let present: Vec<String> = labels_of(t)
            .filter(|l| dummies.contains(l))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let combos = range.len().pow(present.len() as u32);
        raw_terms += combos;
        for n in 0..combos {
            let mut rest = n;
            let mut assignment: BTreeMap<&str, &str> = BTreeMap::new();
            for label in &present {
                assignment.insert(label.as_str(), range[rest % range.len()].as_str());
                rest /= range.len();
            }
            let rename = |v: &Vec<String>| -> Vec<String> {
                v.iter()
                    .map(|l| {
                        assignment
                            .get(l.as_str())
                            .map_or_else(|| l.clone(), |x| x.to_string())
                    })
                    .collect()
            };
            let mapped = t.map_atoms(&mut |a: &Atom| {
                let mut g = a.base.clone();
                g.upper = rename(&g.upper);
                g.lower = rename(&g.lower);
                Atom::with_derivs(g, a.derivs().iter().cloned())
            });
            lhs.add_term(s.clone(), mapped);
        }
    }
    DerivedEquation {
        lhs,
        dummy_indices: Vec::new(),
        raw_terms,
        ..eq.clone()
    }
}

/// Substitutes the decomposition, lints the symbolic result and sums the
/// inner indices over their declared range.
pub fn substitute_decomposition(
    eqs: &[DerivedEquation],
    d: &Decomposition,
) -> Result<Vec<DerivedEquation>, YmError> {
    let symbolic = substitute_symbolic(eqs, d)?;
    for eq in &symbolic {
        check_index_hygiene(eq)?;
    }
    Ok(symbolic
        .par_iter()
        .map(|eq| instantiate(eq, &d.inner_range))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HygieneError {
    #[error("in {term}: dummy {label} appears {count} times")]
    DummyCount {
        term: String,
        label: String,
        count: usize,
    },
    #[error("in {term}: dummy {label} is not contracted upper with lower")]
    DummyPlacement { term: String, label: String },
    #[error("in {term}: free index {label} is not declared")]
    Undeclared { term: String, label: String },
}

/// Checks every term of a symbolic equation: each dummy index occurs exactly
/// twice, once upper and once lower, and no other dummy-shaped label occurs.
pub fn check_index_hygiene(eq: &DerivedEquation) -> Result<(), HygieneError> {
    let declared: BTreeSet<&String> = eq.dummy_indices.iter().collect();
    for t in eq.lhs.terms() {
        let mut upper: BTreeMap<String, usize> = BTreeMap::new();
        let mut lower: BTreeMap<String, usize> = BTreeMap::new();
        for a in t.leaves() {
            for l in a.base.upper.iter().filter(|l| is_dummy(l)) {
                *upper.entry(l.clone()).or_default() += 1;
            }
            for l in a.base.lower.iter().filter(|l| is_dummy(l)) {
                *lower.entry(l.clone()).or_default() += 1;
            }
        }
        let labels: BTreeSet<String> = upper.keys().chain(lower.keys()).cloned().collect();
        for label in labels {
            if !declared.contains(&label) {
                return Err(HygieneError::Undeclared {
                    term: t.text().into(),
                    label,
                });
            }
            let (u, l) = (
                upper.get(&label).copied().unwrap_or(0),
                lower.get(&label).copied().unwrap_or(0),
            );
            if u + l != 2 {
                return Err(HygieneError::DummyCount {
                    term: t.text().into(),
                    label,
                    count: u + l,
                });
            }
            if u != 1 {
                return Err(HygieneError::DummyPlacement {
                    term: t.text().into(),
                    label,
                });
            }
        }
    }
    Ok(())
}

/// Coupling set to zero in every equation.
pub fn decouple(eqs: &[DerivedEquation], coupling: &str) -> Vec<DerivedEquation> {
    eqs.iter()
        .map(|e| e.set_symbol(coupling, &BigRational::zero()))
        .collect()
}

/// Coefficient of the `coupling^power` part of an equation.
pub fn coupling_part(eq: &DerivedEquation, coupling: &str, power: u32) -> Expr {
    let mut out = Expr::zero();
    for (s, t) in eq.lhs.iter() {
        if s.monomial.degree_in(coupling) == power {
            out.add_term(s, t.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn derive_generator() {
        let e = derive(&parse("phi").unwrap(), "0");
        assert_eq!(e, parse("d_{0}phi").unwrap());
    }

    #[test]
    fn derive_product() {
        let e = derive(&parse("[a b]").unwrap(), "1");
        assert_eq!(e, parse("[d_{1}a b] + [a d_{1}b]").unwrap());
    }

    #[test]
    fn derive_keeps_bracketing() {
        let e = derive(&parse("[a [b c]]").unwrap(), "0");
        assert_eq!(
            e,
            parse("[d_{0}a [b c]] + [a [d_{0}b c]] + [a [b d_{0}c]]").unwrap()
        );
    }

    #[test]
    fn abelian_field_strength() {
        let ctx = GaugeContext::abelian(1);
        let f = ctx.field_strength(1, "0", "1");
        assert_eq!(f, parse("d_{0}A^{1}_{1}(x) - d_{1}A^{1}_{0}(x)").unwrap());
    }

    #[test]
    fn su2_field_strength_quadratic_terms() {
        let ctx = GaugeContext::su2();
        let f = ctx.field_strength(1, "0", "1");
        assert_eq!(
            coupling_part(
                &DerivedEquation {
                    free_indices: vec![],
                    lhs: f.clone(),
                    field: "A".into(),
                    dummy_indices: vec![],
                    raw_terms: 0
                },
                "g",
                1
            )
            .len(),
            2
        );
        assert_eq!(
            f,
            parse("d_{0}A^{1}_{1}(x) - d_{1}A^{1}_{0}(x) + g*[A^{2}_{0}(x) A^{3}_{1}(x)] - g*[A^{3}_{0}(x) A^{2}_{1}(x)]").unwrap()
        );
    }

    #[test]
    fn structure_constants_validated() {
        let mut f = vec![vec![vec![BigRational::zero(); 3]; 3]; 3];
        f[0][1][2] = int(1);
        assert!(matches!(
            GaugeContext::new("bad", f),
            Err(YmError::NotAntisymmetric(..))
        ));
        let j = serde_json::json!({"group": "su2", "n": 3, "f": [[1, 2, 3, 1]]});
        assert_eq!(GaugeContext::from_json(&j).unwrap(), GaugeContext::su2());
        // e1∧e2∧e3 + e1∧e4∧e5: [T2,[T3,T4]] + [T3,[T4,T2]] + [T4,[T2,T3]] = -T5
        let j = serde_json::json!({"group": "x", "n": 5, "f": [[1, 2, 3, 1], [1, 4, 5, 1]]});
        assert!(matches!(
            GaugeContext::from_json(&j),
            Err(YmError::Jacobi(..))
        ));
    }

    #[test]
    fn abelian_census() {
        let eqs = ym_equations(&GaugeContext::abelian(1), YmOptions::default());
        assert_eq!(eqs.len(), 4);
        for eq in &eqs {
            assert_eq!(eq.raw_terms, 8);
            assert_eq!(eq.lhs.len(), 6);
        }
    }

    #[test]
    fn symbolic_substitution_hygiene() {
        let eqs = ym_equations(&GaugeContext::su2(), YmOptions::default());
        let sym = substitute_symbolic(&eqs, &Decomposition::new(3, Comb::Left)).unwrap();
        for eq in &sym {
            check_index_hygiene(eq).unwrap();
            assert!(!eq.dummy_indices.is_empty());
        }
        let bad = DerivedEquation {
            free_indices: vec![],
            lhs: parse("[phi^{1}_{i1}(x) phi^{2}_{0}(x)]").unwrap(),
            field: "phi".into(),
            dummy_indices: vec!["i1".into()],
            raw_terms: 1,
        };
        assert!(matches!(
            check_index_hygiene(&bad),
            Err(HygieneError::DummyCount { .. })
        ));
    }

    #[test]
    fn decomposition_errors() {
        let eqs = ym_equations(&GaugeContext::abelian(1), YmOptions::default());
        let mut d = Decomposition::new(2, Comb::Left);
        d.target = "B".into();
        assert!(matches!(
            substitute_decomposition(&eqs, &d),
            Err(YmError::SymbolMismatch { .. })
        ));
        let mut d = Decomposition::new(2, Comb::Left);
        d.inner_range = vec!["1".into(), "1".into()];
        assert!(matches!(
            substitute_decomposition(&eqs, &d),
            Err(YmError::IndexRangeClash(_))
        ));
        assert!(matches!(
            substitute_decomposition(&eqs, &Decomposition::new(0, Comb::Left)),
            Err(YmError::BadDecomposition(_))
        ));
    }

    #[test]
    fn decomposition_render() {
        let d = Decomposition::new(3, Comb::Left);
        assert_eq!(
            d.render("a", "mu", Some("x"), 1).text(),
            "[[phi^{a}_{i1}(x) phi^{i1}_{i2}(x)] phi^{i2}_{mu}(x)]"
        );
        let d = Decomposition::new(3, Comb::Right);
        assert_eq!(
            d.render("a", "mu", Some("x"), 1).text(),
            "[phi^{a}_{i1}(x) [phi^{i1}_{i2}(x) phi^{i2}_{mu}(x)]]"
        );
    }
}
