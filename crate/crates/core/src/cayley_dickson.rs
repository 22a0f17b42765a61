//! Concrete finite-dimensional algebras: the Cayley–Dickson tower and
//! user-supplied structure-constant tables.
//!
//! Doubling convention, for `x = (a, b)` and `y = (c, d)` over the previous
//! algebra and a sign `γ`:
//!
//! ```text
//! (a, b)(c, d) = (ac + γ·conj(d)·b, d·a + b·conj(c))
//! conj(a, b)   = (conj(a), -b)
//! ```
//!
//! Basis element `e_{m+j}` of the doubled algebra is `(0, e_j)`, where `m` is
//! the dimension of the base.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{parse_rational, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras ({0} vs {1})")]
    Mismatch(String, String),
    #[error("algebra {0} is not Cayley-Dickson constructed")]
    NotCayleyDickson(String),
    #[error("algebra {0} has no declared involution")]
    NoInvolution(String),
    #[error("coefficient vector has length {got}, algebra dimension is {dim}")]
    Dimension { got: usize, dim: usize },
    #[error("invalid structure table: {0}")]
    BadTable(String),
    #[error("unknown algebra alias {0:?} (expected r, c, quat, oct, split-oct or sed)")]
    UnknownAlias(String),
    #[error("cannot parse element {0:?}")]
    BadElement(String),
}

/// Structure constants `e_i e_j`.
#[derive(Debug, Clone, PartialEq)]
pub enum Table<T> {
    /// `e_i e_j = sign · e_k`, stored row-major as `(sign, k)`.
    Monomial(Vec<(i8, usize)>),
    /// `e_i e_j = Σ_k c[i][j][k] e_k`, stored row-major.
    Dense(Vec<Vec<T>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Algebra<T: Field = BigRational> {
    name: String,
    dim: usize,
    gammas: Option<Vec<i8>>,
    table: Table<T>,
    involution: Option<Vec<i8>>,
}

impl<T: Field> Algebra<T> {
    /// The one-dimensional real algebra, the root of the doubling tower.
    pub fn reals() -> Self {
        Algebra {
            name: "r".into(),
            dim: 1,
            gammas: Some(Vec::new()),
            table: Table::Monomial(vec![(1, 0)]),
            involution: Some(vec![1]),
        }
    }

    /// Repeated doubling of the reals with the given signs, innermost first.
    pub fn cayley_dickson(gammas: &[i8]) -> Result<Self, AlgebraError> {
        let mut alg = Algebra::reals();
        for &g in gammas {
            alg = cd_double(&alg, g)?;
        }
        alg.name = default_name(gammas);
        Ok(alg)
    }

    pub fn complexes() -> Self {
        Self::cayley_dickson(&[-1]).unwrap()
    }

    pub fn quaternions() -> Self {
        Self::cayley_dickson(&[-1, -1]).unwrap()
    }

    pub fn octonions() -> Self {
        Self::cayley_dickson(&[-1, -1, -1]).unwrap()
    }

    pub fn split_octonions() -> Self {
        Self::cayley_dickson(&[-1, -1, 1]).unwrap()
    }

    pub fn sedenions() -> Self {
        Self::cayley_dickson(&[-1, -1, -1, -1]).unwrap()
    }

    /// Built-in aliases: `r`, `c`, `quat`, `oct`, `split-oct`, `sed`.
    pub fn by_alias(alias: &str) -> Result<Self, AlgebraError> {
        match alias {
            "r" => Ok(Self::reals()),
            "c" => Ok(Self::complexes()),
            "quat" => Ok(Self::quaternions()),
            "oct" => Ok(Self::octonions()),
            "split-oct" => Ok(Self::split_octonions()),
            "sed" => Ok(Self::sedenions()),
            other => Err(AlgebraError::UnknownAlias(other.to_string())),
        }
    }

    /// A user algebra from dense structure constants `table[i][j][k]`.
    ///
    /// `e_0` must be a two-sided identity. `involution`, when given, lists
    /// the diagonal signs of a linear involution `e_i ↦ s_i e_i`.
    pub fn from_table(
        name: &str,
        table: Vec<Vec<Vec<T>>>,
        involution: Option<Vec<i8>>,
    ) -> Result<Self, AlgebraError> {
        let dim = table.len();
        if dim == 0 {
            return Err(AlgebraError::BadTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for (i, row) in table.into_iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraError::BadTable(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.len() != dim {
                    return Err(AlgebraError::BadTable(format!(
                        "entry [{i}][{j}] has length {}, expected {dim}",
                        v.len()
                    )));
                }
                flat.push(v);
            }
        }
        let unit = |k: usize| -> Vec<T> {
            (0..dim)
                .map(|m| if m == k { T::one() } else { T::zero() })
                .collect()
        };
        for j in 0..dim {
            if flat[j] != unit(j) || flat[j * dim] != unit(j) {
                return Err(AlgebraError::BadTable(format!(
                    "e0 is not a two-sided identity at index {j}"
                )));
            }
        }
        if let Some(inv) = &involution {
            if inv.len() != dim || inv.iter().any(|s| s.abs() != 1) || inv[0] != 1 {
                return Err(AlgebraError::BadTable(
                    "involution must be dim signs of ±1 with e0 fixed".into(),
                ));
            }
        }
        Ok(Algebra {
            name: name.to_string(),
            dim,
            gammas: None,
            table: Table::Dense(flat),
            involution,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gammas(&self) -> Option<&[i8]> {
        self.gammas.as_deref()
    }

    pub fn involution(&self) -> Option<&[i8]> {
        self.involution.as_deref()
    }

    pub fn table(&self) -> &Table<T> {
        &self.table
    }

    pub fn is_cayley_dickson(&self) -> bool {
        self.gammas.is_some()
    }

    /// Coefficients of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<T> {
        match &self.table {
            Table::Monomial(t) => {
                let (s, k) = t[i * self.dim + j];
                let mut out = vec![T::zero(); self.dim];
                out[k] = T::from_int(s as i64);
                out
            }
            Table::Dense(t) => t[i * self.dim + j].clone(),
        }
    }

    /// `(sign, k)` with `e_i e_j = sign · e_k`, for monomial tables.
    pub fn monomial_product(&self, i: usize, j: usize) -> Option<(i8, usize)> {
        match &self.table {
            Table::Monomial(t) => Some(t[i * self.dim + j]),
            Table::Dense(_) => None,
        }
    }

    /// Bilinear extension of the table on raw coefficient vectors.
    pub fn mul_coeffs(&self, a: &[T], b: &[T]) -> Vec<T> {
        let d = self.dim;
        let mut out = vec![T::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = ai.clone() * bj.clone();
                match &self.table {
                    Table::Monomial(t) => {
                        let (s, k) = t[i * d + j];
                        match s {
                            1 => out[k] = out[k].clone() + w,
                            -1 => out[k] = out[k].clone() - w,
                            _ => {}
                        }
                    }
                    Table::Dense(t) => {
                        for (k, c) in t[i * d + j].iter().enumerate() {
                            if !c.is_zero() {
                                out[k] = out[k].clone() + w.clone() * c.clone();
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<Vec<Vec<serde_json::Value>>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.basis_product(i, j).iter().map(coeff_json).collect())
                    .collect()
            })
            .collect();
        let mut v = serde_json::json!({ "name": self.name, "dim": self.dim });
        if let Some(g) = &self.gammas {
            v["gammas"] = serde_json::json!(g);
        }
        v["table"] = serde_json::json!(table);
        if let Some(inv) = &self.involution {
            v["involution"] = serde_json::json!(inv);
        }
        v
    }

    /// Reads the algebra file format. When both `gammas` and `table` are
    /// present they must agree.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, AlgebraError> {
        let file: AlgebraFile = serde_json::from_value(value.clone())
            .map_err(|e| AlgebraError::BadTable(e.to_string()))?;
        let name = file.name.unwrap_or_else(|| "user".to_string());
        let table = match &file.table {
            Some(rows) => Some(
                rows.iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| {
                                v.iter()
                                    .map(coeff_from_json::<T>)
                                    .collect::<Result<Vec<T>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => None,
        };
        let alg = match (&file.gammas, table) {
            (Some(g), table) => {
                if g.iter().any(|s| s.abs() != 1) {
                    return Err(AlgebraError::BadTable("gammas must be ±1".into()));
                }
                let alg = Self::cayley_dickson(g)?.with_name(&name);
                if let Some(t) = table {
                    let dense = Self::from_table(&name, t, alg.involution.clone())?;
                    let agrees = (0..alg.dim()).all(|i| {
                        (0..alg.dim()).all(|j| alg.basis_product(i, j) == dense.basis_product(i, j))
                    });
                    if dense.dim() != alg.dim() || !agrees {
                        return Err(AlgebraError::BadTable("table disagrees with gammas".into()));
                    }
                }
                alg
            }
            (None, Some(t)) => Self::from_table(&name, t, file.involution.clone())?,
            (None, None) => return Err(AlgebraError::BadTable("need gammas or table".into())),
        };
        if let Some(d) = file.dim {
            if d != alg.dim() {
                return Err(AlgebraError::BadTable(format!(
                    "declared dim {d}, table has {}",
                    alg.dim()
                )));
            }
        }
        Ok(alg)
    }
}

#[derive(Deserialize, Serialize)]
struct AlgebraFile {
    name: Option<String>,
    dim: Option<usize>,
    gammas: Option<Vec<i8>>,
    table: Option<Vec<Vec<Vec<serde_json::Value>>>>,
    involution: Option<Vec<i8>>,
}

fn coeff_json<T: Field>(c: &T) -> serde_json::Value {
    let s = c.to_string();
    match s.parse::<i64>() {
        Ok(v) => serde_json::json!(v),
        Err(_) => serde_json::json!(s),
    }
}

fn coeff_from_json<T: Field>(v: &serde_json::Value) -> Result<T, AlgebraError> {
    let bad = || AlgebraError::BadTable(format!("bad coefficient {v}"));
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(T::from_int).ok_or_else(bad),
        serde_json::Value::String(s) => parse_rational(s)
            .map(|r| T::from_rational(&r))
            .ok_or_else(bad),
        _ => Err(bad()),
    }
}

fn default_name(gammas: &[i8]) -> String {
    let all_neg = gammas.iter().all(|&g| g == -1);
    match (gammas.len(), all_neg) {
        (0, _) => "r".into(),
        (1, true) => "c".into(),
        (2, true) => "quat".into(),
        (3, true) => "oct".into(),
        (4, true) => "sed".into(),
        _ if gammas == [-1, -1, 1] => "split-oct".into(),
        _ => {
            let sig: String = gammas
                .iter()
                .map(|&g| if g < 0 { '-' } else { '+' })
                .collect();
            format!("cd[{sig}]")
        }
    }
}

/// Doubles a Cayley–Dickson algebra with sign `gamma`.
///
/// The new table is assembled block-wise from the base table:
/// `(e_i,0)(e_j,0) = (e_i e_j, 0)`, `(e_i,0)(0,e_j) = (0, e_j e_i)`,
/// `(0,e_i)(e_j,0) = (0, e_i conj(e_j))`, `(0,e_i)(0,e_j) = (γ conj(e_j) e_i, 0)`.
pub fn cd_double<T: Field>(base: &Algebra<T>, gamma: i8) -> Result<Algebra<T>, AlgebraError> {
    let (Some(gammas), Table::Monomial(bt)) = (&base.gammas, &base.table) else {
        return Err(AlgebraError::NotCayleyDickson(base.name.clone()));
    };
    if gamma.abs() != 1 {
        return Err(AlgebraError::BadTable(format!(
            "gamma must be ±1, got {gamma}"
        )));
    }
    let m = base.dim;
    let inv = base
        .involution
        .as_ref()
        .expect("CD algebra carries its involution");
    let d = 2 * m;
    let base_mul = |i: usize, j: usize| bt[i * m + j];
    let mut table = vec![(0i8, 0usize); d * d];
    for i in 0..m {
        for j in 0..m {
            let (s, k) = base_mul(i, j);
            table[i * d + j] = (s, k);
            let (s, k) = base_mul(j, i);
            table[i * d + (m + j)] = (s, m + k);
            let (s, k) = base_mul(i, j);
            table[(m + i) * d + j] = (s * inv[j], m + k);
            let (s, k) = base_mul(j, i);
            table[(m + i) * d + (m + j)] = (gamma * inv[j] * s, k);
        }
    }
    let mut gammas = gammas.clone();
    gammas.push(gamma);
    let involution = (0..d).map(|k| if k == 0 { 1 } else { -1 }).collect();
    Ok(Algebra {
        name: default_name(&gammas),
        dim: d,
        gammas: Some(gammas),
        table: Table::Monomial(table),
        involution: Some(involution),
    })
}

/// A coefficient vector over an algebra's basis.
#[derive(Clone)]
pub struct Element<T: Field = BigRational> {
    algebra: Arc<Algebra<T>>,
    coeffs: Vec<T>,
}

impl<T: Field> Element<T> {
    pub fn new(algebra: &Arc<Algebra<T>>, coeffs: Vec<T>) -> Result<Self, AlgebraError> {
        if coeffs.len() != algebra.dim {
            return Err(AlgebraError::Dimension {
                got: coeffs.len(),
                dim: algebra.dim,
            });
        }
        Ok(Element {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn zero(algebra: &Arc<Algebra<T>>) -> Self {
        Element {
            algebra: algebra.clone(),
            coeffs: vec![T::zero(); algebra.dim],
        }
    }

    /// `e_k`. Panics if `k` is out of range.
    pub fn basis(algebra: &Arc<Algebra<T>>, k: usize) -> Self {
        assert!(k < algebra.dim, "basis index {k} out of range");
        let mut e = Self::zero(algebra);
        e.coeffs[k] = T::one();
        e
    }

    pub fn one(algebra: &Arc<Algebra<T>>) -> Self {
        Self::basis(algebra, 0)
    }

    pub fn scalar(algebra: &Arc<Algebra<T>>, value: T) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[0] = value;
        e
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// A rational (field) multiple of the identity.
    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn same_algebra(&self, other: &Element<T>) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    fn check(&self, other: &Element<T>) -> Result<(), AlgebraError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch(
                self.algebra.name.clone(),
                other.algebra.name.clone(),
            ))
        }
    }

    pub fn try_mul(&self, other: &Element<T>) -> Result<Element<T>, AlgebraError> {
        self.check(other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.mul_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    pub fn try_add(&self, other: &Element<T>) -> Result<Element<T>, AlgebraError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Element<T>) -> Result<Element<T>, AlgebraError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, s: &T) -> Element<T> {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Applies the declared involution.
    pub fn conj(&self) -> Result<Element<T>, AlgebraError> {
        let inv = self
            .algebra
            .involution
            .as_ref()
            .ok_or_else(|| AlgebraError::NoInvolution(self.algebra.name.clone()))?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(inv)
            .map(|(c, &s)| if s < 0 { -c.clone() } else { c.clone() })
            .collect();
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs,
        })
    }

    /// Identity component of `a·conj(a)`.
    pub fn norm_sq(&self) -> Result<T, AlgebraError> {
        let p = self.try_mul(&self.conj()?)?;
        Ok(p.coeffs[0].clone())
    }

    /// Parses `e1`, `-e1 + 2*e3`, `1/2*e0` or a bare rational (a multiple
    /// of `e0`).
    pub fn parse(algebra: &Arc<Algebra<T>>, text: &str) -> Result<Element<T>, AlgebraError> {
        let bad = || AlgebraError::BadElement(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Element::zero(algebra);
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            let (coeff, basis) = match body.split_once('*') {
                Some((c, b)) => (parse_rational(c).ok_or_else(bad)?, Some(b)),
                None if body.starts_with('e') => (crate::scalar::int(1), Some(body)),
                None => (parse_rational(body).ok_or_else(bad)?, None),
            };
            let k = match basis {
                Some(b) => b
                    .strip_prefix('e')
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(bad)?,
                None => 0,
            };
            if k >= algebra.dim {
                return Err(bad());
            }
            let c = T::from_rational(&coeff);
            let c = if neg { -c } else { c };
            out.coeffs[k] = out.coeffs[k].clone() + c;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>())
    }
}

impl<T: Field> PartialEq for Element<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl<T: Field> fmt::Debug for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.algebra.name)
    }
}

impl<T: Field> fmt::Display for Element<T> {
    /// `e1 - 2*e3 + 1/2*e4`; `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if mag.is_one() {
                write!(f, "e{k}")?;
            } else {
                write!(f, "{mag}*e{k}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! element_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<T: Field> std::ops::$trait for &Element<T> {
            type Output = Element<T>;
            /// Panics on an algebra mismatch; use the `try_` form to recover.
            fn $method(self, rhs: &Element<T>) -> Element<T> {
                self.$try(rhs).expect("algebra mismatch")
            }
        }
    };
}

element_op!(Add, add, try_add);
element_op!(Sub, sub, try_sub);
element_op!(Mul, mul, try_mul);

impl<T: Field> std::ops::Neg for &Element<T> {
    type Output = Element<T>;
    fn neg(self) -> Element<T> {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Identities checked by [`check_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Associative,
    Commutative,
    Alternative,
    Flexible,
    Moufang,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::Associative,
        Identity::Commutative,
        Identity::Alternative,
        Identity::Flexible,
        Identity::Moufang,
    ];

    pub fn arity(self) -> usize {
        match self {
            Identity::Commutative => 2,
            Identity::Moufang => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Associative => "associative",
            Identity::Commutative => "commutative",
            Identity::Alternative => "alternative",
            Identity::Flexible => "flexible",
            Identity::Moufang => "moufang",
        })
    }
}

impl std::str::FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|i| i.to_string() == s)
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Holds,
    /// Basis indices of the first failing tuple, in scan order.
    Counterexample(Vec<usize>),
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }
}

/// Exhaustive check over basis tuples.
///
/// Alternative, flexible and Moufang are checked in their fully linearized
/// form, which over a field of characteristic zero is equivalent to the
/// identity on all elements:
///
/// * alternative: `(x,y,z) + (y,x,z) = 0` and `(x,y,z) + (x,z,y) = 0`
/// * flexible: `(x,y,z) + (z,y,x) = 0`
/// * Moufang (left, right and middle, `z` polarized to `z, w`):
///   `z(x(wy)) + w(x(zy)) = ((zx)w)y + ((wx)z)y`,
///   `x(z(yw)) + x(w(yz)) = ((xz)y)w + ((xw)y)z`,
///   `(zx)(yw) + (wx)(yz) = (z(xy))w + (w(xy))z`.
pub fn check_identity<T: Field>(alg: &Algebra<T>, which: Identity) -> IdentityCheck {
    let d = alg.dim();
    let basis: Vec<Vec<T>> = (0..d)
        .map(|k| {
            (0..d)
                .map(|m| if m == k { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let mul = |a: &[T], b: &[T]| alg.mul_coeffs(a, b);
    let add = |a: &[T], b: &[T]| -> Vec<T> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.clone() + y.clone())
            .collect()
    };
    let sub = |a: &[T], b: &[T]| -> Vec<T> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.clone() - y.clone())
            .collect()
    };
    let assoc = |a: &[T], b: &[T], c: &[T]| sub(&mul(&mul(a, b), c), &mul(a, &mul(b, c)));
    let zero = |v: &[T]| v.iter().all(|c| c.is_zero());

    let arity = which.arity();
    let total = d.pow(arity as u32);
    let tuple = |n: usize| -> Vec<usize> {
        let mut idx = vec![0; arity];
        let mut rest = n;
        for slot in (0..arity).rev() {
            idx[slot] = rest % d;
            rest /= d;
        }
        idx
    };
    let fails = |n: usize| -> Option<Vec<usize>> {
        let t = tuple(n);
        let e = |k: usize| basis[t[k]].as_slice();
        let ok = match which {
            Identity::Commutative => mul(e(0), e(1)) == mul(e(1), e(0)),
            Identity::Associative => zero(&assoc(e(0), e(1), e(2))),
            Identity::Alternative => {
                let xyz = assoc(e(0), e(1), e(2));
                zero(&add(&xyz, &assoc(e(1), e(0), e(2))))
                    && zero(&add(&xyz, &assoc(e(0), e(2), e(1))))
            }
            Identity::Flexible => zero(&add(&assoc(e(0), e(1), e(2)), &assoc(e(2), e(1), e(0)))),
            Identity::Moufang => {
                let (x, y, z, w) = (e(0), e(1), e(2), e(3));
                let left = add(&mul(z, &mul(x, &mul(w, y))), &mul(w, &mul(x, &mul(z, y))))
                    == add(&mul(&mul(&mul(z, x), w), y), &mul(&mul(&mul(w, x), z), y));
                let right = add(&mul(x, &mul(z, &mul(y, w))), &mul(x, &mul(w, &mul(y, z))))
                    == add(&mul(&mul(&mul(x, z), y), w), &mul(&mul(&mul(x, w), y), z));
                let middle = add(&mul(&mul(z, x), &mul(y, w)), &mul(&mul(w, x), &mul(y, z)))
                    == add(&mul(&mul(z, &mul(x, y)), w), &mul(&mul(w, &mul(x, y)), z));
                left && right && middle
            }
        };
        (!ok).then_some(t)
    };
    match (0..total).into_par_iter().find_map_first(fails) {
        Some(t) => IdentityCheck::Counterexample(t),
        None => IdentityCheck::Holds,
    }
}

/// Searches for `u, v ≠ 0` with `uv = 0` among the elements `e_a ± e_b`
/// (`1 ≤ a < b`), in a fixed scan order.
pub fn find_zero_divisor<T: Field>(alg: &Arc<Algebra<T>>) -> Option<(Element<T>, Element<T>)> {
    let d = alg.dim();
    let mut candidates = Vec::new();
    for a in 1..d {
        for b in a + 1..d {
            for s in [1i64, -1] {
                let mut u = Element::basis(alg, a);
                u.coeffs[b] = T::from_int(s);
                candidates.push(u);
            }
        }
    }
    candidates.iter().find_map(|u| {
        candidates
            .iter()
            .find(|v| u.try_mul(v).map(|p| p.is_zero()).unwrap_or(false))
            .map(|v| (u.clone(), v.clone()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type Q = BigRational;

    fn arc(a: Algebra<Q>) -> Arc<Algebra<Q>> {
        Arc::new(a)
    }

    #[test]
    fn identity_element_law() {
        for gammas in [
            vec![],
            vec![-1],
            vec![-1, -1],
            vec![-1, -1, -1],
            vec![-1, -1, 1],
            vec![-1, -1, -1, -1],
        ] {
            let alg = Algebra::<Q>::cayley_dickson(&gammas).unwrap();
            for j in 0..alg.dim() {
                assert_eq!(alg.monomial_product(0, j), Some((1, j)));
                assert_eq!(alg.monomial_product(j, 0), Some((1, j)));
            }
        }
    }

    #[test]
    fn forced_square_signs() {
        let c = Algebra::<Q>::complexes();
        assert_eq!(c.monomial_product(1, 1), Some((-1, 0)));
        let o = Algebra::<Q>::octonions();
        for i in 1..8 {
            assert_eq!(o.monomial_product(i, i), Some((-1, 0)));
        }
        let so = Algebra::<Q>::split_octonions();
        assert_eq!(so.monomial_product(4, 4), Some((1, 0)));
        assert_eq!(so.monomial_product(1, 1), Some((-1, 0)));
    }

    #[test]
    fn quaternion_units() {
        let q = arc(Algebra::quaternions());
        let e = |k| Element::basis(&q, k);
        assert_eq!(&e(1) * &e(2), e(3));
        assert_eq!(&e(2) * &e(1), -&e(3));
    }

    #[test]
    fn conj_and_norm() {
        let o = arc(Algebra::octonions());
        assert_eq!(Element::one(&o).conj().unwrap(), Element::one(&o));
        assert_eq!(Element::basis(&o, 3).norm_sq().unwrap(), int(1));
        let x = Element::parse(&o, "1 + 2*e3 - 1/2*e7").unwrap();
        assert_eq!(x.norm_sq().unwrap(), int(1) + int(4) + rat(1, 4));
    }

    #[test]
    fn user_tables_without_involution() {
        // the real numbers as a user table, no involution declared
        let alg = arc(Algebra::<Q>::from_table("one", vec![vec![vec![int(1)]]], None).unwrap());
        let x = Element::one(&alg);
        assert!(matches!(x.conj(), Err(AlgebraError::NoInvolution(_))));
        assert!(matches!(
            cd_double(&alg, -1),
            Err(AlgebraError::NotCayleyDickson(_))
        ));
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = vec![
            vec![vec![int(0), int(1)], vec![int(0), int(1)]],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        ];
        assert!(matches!(
            Algebra::<Q>::from_table("x", bad, None),
            Err(AlgebraError::BadTable(_))
        ));
    }

    #[test]
    fn mismatch_is_reported() {
        let q = arc(Algebra::<Q>::quaternions());
        let o = arc(Algebra::<Q>::octonions());
        let err = Element::one(&q).try_mul(&Element::one(&o)).unwrap_err();
        assert!(matches!(err, AlgebraError::Mismatch(..)));
    }

    #[test]
    fn element_text() {
        let o = arc(Algebra::<Q>::octonions());
        let x = Element::parse(&o, "-e1 + 2*e3 - 1/2*e4").unwrap();
        assert_eq!(x.to_string(), "-e1 + 2*e3 - 1/2*e4");
        assert_eq!(Element::zero(&o).to_string(), "0");
        assert!(Element::parse(&o, "e8").is_err());
        assert!(Element::parse(&o, "e").is_err());
    }

    #[test]
    fn json_round_trip() {
        let o = Algebra::<Q>::octonions();
        let back = Algebra::<Q>::from_json(&o.to_json()).unwrap();
        assert_eq!(back, o);
        let q = Algebra::<Q>::quaternions();
        let mut v = q.to_json();
        v.as_object_mut().unwrap().remove("gammas");
        let user = Algebra::<Q>::from_json(&v).unwrap();
        assert!(!user.is_cayley_dickson());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(user.basis_product(i, j), q.basis_product(i, j));
            }
        }
        assert_eq!(
            check_identity(&user, Identity::Associative),
            IdentityCheck::Holds
        );
    }

    #[test]
    fn float_instance_agrees_on_basis() {
        let exact = Algebra::<Q>::octonions();
        let float = Algebra::<f64>::octonions();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(exact.monomial_product(i, j), float.monomial_product(i, j));
            }
        }
    }

    #[test]
    fn identity_checks_small() {
        let q = Algebra::<Q>::quaternions();
        assert!(check_identity(&q, Identity::Associative).holds());
        assert_eq!(
            check_identity(&q, Identity::Commutative),
            IdentityCheck::Counterexample(vec![1, 2])
        );
        let c = Algebra::<Q>::complexes();
        assert!(check_identity(&c, Identity::Commutative).holds());
    }
}
