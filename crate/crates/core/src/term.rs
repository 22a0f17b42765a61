//! Free non-associative terms: generators, binary bracketings and formal
//! associator symbols.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the degree of enumerated bracketings.
pub const DEFAULT_DEGREE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid symbol name {0:?}")]
    BadSymbol(String),
    #[error("invalid index label {0:?}")]
    BadIndex(String),
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
}

pub(crate) fn is_name(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b) if b.is_ascii_alphabetic())
        && bytes.all(|b| b.is_ascii_alphanumeric())
}

pub(crate) fn is_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric())
}

/// Sign of a (±)-associator or (anti)commutator.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default,
)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    #[default]
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(format!("unknown sign {other:?} (expected plus or minus)")),
        }
    }
}

/// A named non-associative generator such as `phi^{a}_{i1}(x)*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub symbol: String,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
    pub point: Option<String>,
    pub conjugated: bool,
}

impl Generator {
    /// Panics if `symbol` is not an ASCII identifier.
    pub fn new(symbol: &str) -> Self {
        Self::try_new(symbol).unwrap()
    }

    pub fn try_new(symbol: &str) -> Result<Self, TermError> {
        if !is_name(symbol) {
            return Err(TermError::BadSymbol(symbol.to_string()));
        }
        Ok(Generator {
            symbol: symbol.to_string(),
            upper: Vec::new(),
            lower: Vec::new(),
            point: None,
            conjugated: false,
        })
    }

    pub fn upper<I: IntoIterator<Item = S>, S: Into<String>>(mut self, labels: I) -> Self {
        self.upper = labels.into_iter().map(Into::into).collect();
        assert!(
            self.upper.iter().all(|l| is_label(l)),
            "invalid upper index"
        );
        self
    }

    pub fn lower<I: IntoIterator<Item = S>, S: Into<String>>(mut self, labels: I) -> Self {
        self.lower = labels.into_iter().map(Into::into).collect();
        assert!(
            self.lower.iter().all(|l| is_label(l)),
            "invalid lower index"
        );
        self
    }

    pub fn at(mut self, point: &str) -> Self {
        assert!(is_label(point), "invalid point label");
        self.point = Some(point.to_string());
        self
    }

    pub fn star(mut self) -> Self {
        self.conjugated = !self.conjugated;
        self
    }

    pub fn validate(&self) -> Result<(), TermError> {
        if !is_name(&self.symbol) {
            return Err(TermError::BadSymbol(self.symbol.clone()));
        }
        for l in self
            .upper
            .iter()
            .chain(&self.lower)
            .chain(self.point.iter())
        {
            if !is_label(l) {
                return Err(TermError::BadIndex(l.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)?;
        if !self.upper.is_empty() {
            write!(f, "^{{{}}}", self.upper.join(","))?;
        }
        if !self.lower.is_empty() {
            write!(f, "_{{{}}}", self.lower.join(","))?;
        }
        if let Some(p) = &self.point {
            write!(f, "({p})")?;
        }
        if self.conjugated {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// A generator carrying formal spacetime derivative markers.
///
/// Derivatives commute, so the marker list is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub base: Generator,
    derivs: Vec<String>,
}

impl Atom {
    pub fn new(base: Generator) -> Self {
        Atom {
            base,
            derivs: Vec::new(),
        }
    }

    pub fn with_derivs<I: IntoIterator<Item = S>, S: Into<String>>(
        base: Generator,
        derivs: I,
    ) -> Self {
        let mut derivs: Vec<String> = derivs.into_iter().map(Into::into).collect();
        assert!(
            derivs.iter().all(|d| is_label(d)),
            "invalid derivative label"
        );
        derivs.sort();
        Atom { base, derivs }
    }

    pub fn derivs(&self) -> &[String] {
        &self.derivs
    }

    /// Appends one more derivative marker.
    pub fn derive(&self, mu: &str) -> Atom {
        let mut derivs = self.derivs.clone();
        let at = derivs.partition_point(|d| d.as_str() <= mu);
        derivs.insert(at, mu.to_string());
        Atom {
            base: self.base.clone(),
            derivs,
        }
    }

    pub fn conjugate(&self) -> Atom {
        Atom {
            base: self.base.clone().star(),
            derivs: self.derivs.clone(),
        }
    }
}

impl From<Generator> for Atom {
    fn from(g: Generator) -> Self {
        Atom::new(g)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.derivs.is_empty() {
            write!(f, "d_{{{}}}", self.derivs.join(","))?;
        }
        write!(f, "{}", self.base)
    }
}

#[derive(Debug)]
pub enum Node {
    Leaf(Atom),
    Product(Term, Term),
    /// Formal associator `{a, b, c}±`, standing for `(ab)c ± a(bc)`.
    Assoc(Sign, [Term; 3]),
}

#[derive(Debug)]
struct TermInner {
    node: Node,
    text: String,
    degree: usize,
}

/// An element of the free magma over atoms, plus formal associator nodes.
///
/// Terms are immutable and cheap to clone. Equality, hashing and ordering all
/// go through the canonical text rendering.
#[derive(Clone)]
pub struct Term(Arc<TermInner>);

impl Term {
    pub fn leaf(atom: impl Into<Atom>) -> Term {
        let atom = atom.into();
        let text = atom.to_string();
        Term(Arc::new(TermInner {
            node: Node::Leaf(atom),
            text,
            degree: 1,
        }))
    }

    pub fn product(left: &Term, right: &Term) -> Term {
        let text = format!("[{} {}]", left.text(), right.text());
        let degree = left.degree() + right.degree();
        Term(Arc::new(TermInner {
            node: Node::Product(left.clone(), right.clone()),
            text,
            degree,
        }))
    }

    pub fn assoc(sign: Sign, a: &Term, b: &Term, c: &Term) -> Term {
        let text = format!(
            "{{{}, {}, {}}}{}",
            a.text(),
            b.text(),
            c.text(),
            sign.as_char()
        );
        let degree = a.degree() + b.degree() + c.degree();
        Term(Arc::new(TermInner {
            node: Node::Assoc(sign, [a.clone(), b.clone(), c.clone()]),
            text,
            degree,
        }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn text(&self) -> &str {
        &self.0.text
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self.node() {
            Node::Leaf(a) => Some(a),
            _ => None,
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Atom> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self.node() {
            Node::Leaf(a) => out.push(a),
            Node::Product(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
            Node::Assoc(_, slots) => slots.iter().for_each(|s| s.collect_leaves(out)),
        }
    }

    pub fn contains_assoc(&self) -> bool {
        match self.node() {
            Node::Leaf(_) => false,
            Node::Product(l, r) => l.contains_assoc() || r.contains_assoc(),
            Node::Assoc(..) => true,
        }
    }

    /// Every associator node, outermost first, left to right.
    pub fn assoc_nodes(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.collect_assoc(&mut out);
        out
    }

    fn collect_assoc(&self, out: &mut Vec<Term>) {
        match self.node() {
            Node::Leaf(_) => {}
            Node::Product(l, r) => {
                l.collect_assoc(out);
                r.collect_assoc(out);
            }
            Node::Assoc(_, slots) => {
                out.push(self.clone());
                slots.iter().for_each(|s| s.collect_assoc(out));
            }
        }
    }

    /// `((g1 g2) g3) ... gn`. Panics on an empty slice.
    pub fn left_comb(leaves: &[Term]) -> Term {
        let (first, rest) = leaves.split_first().expect("left_comb of no leaves");
        rest.iter()
            .fold(first.clone(), |acc, t| Term::product(&acc, t))
    }

    /// `g1 (g2 (... gn))`. Panics on an empty slice.
    pub fn right_comb(leaves: &[Term]) -> Term {
        let (last, rest) = leaves.split_last().expect("right_comb of no leaves");
        rest.iter()
            .rev()
            .fold(last.clone(), |acc, t| Term::product(t, &acc))
    }

    pub fn is_left_comb(&self) -> bool {
        match self.node() {
            Node::Leaf(_) => true,
            Node::Product(l, r) => r.as_atom().is_some() && l.is_left_comb(),
            Node::Assoc(..) => false,
        }
    }

    pub fn is_right_comb(&self) -> bool {
        match self.node() {
            Node::Leaf(_) => true,
            Node::Product(l, r) => l.as_atom().is_some() && r.is_right_comb(),
            Node::Assoc(..) => false,
        }
    }

    /// Rebuilds the term with every atom replaced by `f(atom)`.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Atom) -> Term {
        match self.node() {
            Node::Leaf(a) => Term::leaf(f(a)),
            Node::Product(l, r) => Term::product(&l.map_atoms(f), &r.map_atoms(f)),
            Node::Assoc(s, [a, b, c]) => {
                Term::assoc(*s, &a.map_atoms(f), &b.map_atoms(f), &c.map_atoms(f))
            }
        }
    }
}

impl From<Generator> for Term {
    fn from(g: Generator) -> Self {
        Term::leaf(g)
    }
}

impl From<Atom> for Term {
    fn from(a: Atom) -> Self {
        Term::leaf(a)
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.text() == other.text()
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text().hash(state)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.text().cmp(other.text())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", self.text())
    }
}

/// Every binary bracketing of `leaves` in order (Catalan many), capped at
/// [`DEFAULT_DEGREE_CAP`].
pub fn bracketings(leaves: &[Term]) -> Result<Vec<Term>, TermError> {
    bracketings_with_cap(leaves, DEFAULT_DEGREE_CAP)
}

pub fn bracketings_with_cap(leaves: &[Term], cap: usize) -> Result<Vec<Term>, TermError> {
    if leaves.len() > cap {
        return Err(TermError::DegreeCap {
            degree: leaves.len(),
            cap,
        });
    }
    if leaves.is_empty() {
        return Ok(Vec::new());
    }
    Ok(enumerate(leaves))
}

fn enumerate(leaves: &[Term]) -> Vec<Term> {
    if leaves.len() == 1 {
        return vec![leaves[0].clone()];
    }
    let mut out = Vec::new();
    for split in 1..leaves.len() {
        let lefts = enumerate(&leaves[..split]);
        let rights = enumerate(&leaves[split..]);
        for l in &lefts {
            for r in &rights {
                out.push(Term::product(l, r));
            }
        }
    }
    out
}
