//! Associative subalgebras as the observable sector: nuclei, generated
//! subalgebras, classification of generator sets, and the bracketing defect
//! of expectation values `Σ w (ψ* M) ψ` versus `Σ w ψ* (M ψ)`.

use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assoc::concrete_associator;
use crate::cayley_dickson::{Algebra, AlgebraError, Element};
use crate::linalg::{kernel, Subspace};
use crate::scalar::Field;
use crate::term::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObservabilityError {
    #[error("generator list is empty")]
    NoGenerators,
    #[error("state has no sites")]
    EmptyState,
    #[error("site weights must be positive")]
    NonPositiveWeight,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Elements associating with every pair of basis elements in all three
/// slots, found as the exact kernel of the stacked linear conditions.
pub fn nucleus<T: Field>(alg: &Arc<Algebra<T>>) -> Subspace<T> {
    let d = alg.dim();
    let basis: Vec<Element<T>> = (0..d).map(|k| Element::basis(alg, k)).collect();
    // column m holds the associator with e_m in the given slot
    let rows: Vec<Vec<T>> = (0..3 * d * d)
        .into_par_iter()
        .flat_map_iter(|n| {
            let (slot, i, j) = (n / (d * d), (n / d) % d, n % d);
            let cols: Vec<Element<T>> = basis
                .iter()
                .map(|em| {
                    let (x, y, z) = match slot {
                        0 => (em, &basis[i], &basis[j]),
                        1 => (&basis[i], em, &basis[j]),
                        _ => (&basis[i], &basis[j], em),
                    };
                    concrete_associator(Sign::Minus, x, y, z).unwrap()
                })
                .collect();
            (0..d).map(move |k| {
                cols.iter()
                    .map(|c| c.coeffs()[k].clone())
                    .collect::<Vec<T>>()
            })
        })
        .filter(|r: &Vec<T>| r.iter().any(|v| !v.is_zero()))
        .collect();
    Subspace::span(alg, kernel(&rows, d))
}

fn common_algebra<T: Field>(gens: &[Element<T>]) -> Result<Arc<Algebra<T>>, ObservabilityError> {
    let first = gens.first().ok_or(ObservabilityError::NoGenerators)?;
    for g in &gens[1..] {
        if !first.same_algebra(g) {
            return Err(AlgebraError::Mismatch(
                first.algebra().name().into(),
                g.algebra().name().into(),
            )
            .into());
        }
    }
    Ok(first.algebra().clone())
}

/// Smallest product-closed subspace containing `gens`.
///
/// Grows the span by all pairwise products of the current basis until the
/// dimension stops changing.
pub fn generated_subalgebra<T: Field>(
    gens: &[Element<T>],
) -> Result<Subspace<T>, ObservabilityError> {
    let alg = common_algebra(gens)?;
    let mut span = Subspace::span_elements(&alg, gens);
    loop {
        let basis = span.basis();
        let mut grew = false;
        for x in &basis {
            for y in &basis {
                grew |= span.insert((x * y).coeffs());
            }
        }
        if !grew {
            return Ok(span);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T: Field = BigRational> {
    /// Indices into the closure basis.
    pub indices: [usize; 3],
    pub value: Element<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObservabilityReport<T: Field = BigRational> {
    pub observable: bool,
    pub closure: Subspace<T>,
    pub witness: Option<Witness<T>>,
    /// Whether the closure is stable under the involution; `None` when the
    /// algebra declares none.
    pub involution_closed: Option<bool>,
}

impl<T: Field> ObservabilityReport<T> {
    pub fn to_json(&self) -> serde_json::Value {
        let basis = self.closure.basis();
        serde_json::json!({
            "observable": self.observable,
            "closure_dim": self.closure.dim(),
            "closure_basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "witness": self.witness.as_ref().map(|w| serde_json::json!({
                "indices": w.indices.to_vec(),
                "elements": w.indices.iter().map(|&k| basis[k].to_string()).collect::<Vec<_>>(),
                "value": w.value.to_string(),
            })),
            "involution_closed": self.involution_closed,
        })
    }
}

/// First basis triple of `space` with a nonzero minus-associator, if any.
/// By trilinearity, none means the subspace is associative.
pub fn associativity_witness<T: Field>(space: &Subspace<T>) -> Option<Witness<T>> {
    let basis = space.basis();
    let n = basis.len();
    (0..n * n * n).into_par_iter().find_map_first(|t| {
        let idx = [t / (n * n), (t / n) % n, t % n];
        let v = concrete_associator(Sign::Minus, &basis[idx[0]], &basis[idx[1]], &basis[idx[2]])
            .unwrap();
        (!v.is_zero()).then_some(Witness {
            indices: idx,
            value: v,
        })
    })
}

/// Observable iff the subalgebra generated by `gens` is associative.
pub fn classify<T: Field>(
    gens: &[Element<T>],
) -> Result<ObservabilityReport<T>, ObservabilityError> {
    let closure = generated_subalgebra(gens)?;
    let witness = associativity_witness(&closure);
    let involution_closed = closure.algebra().involution().map(|_| {
        closure
            .basis()
            .iter()
            .all(|b| closure.contains(&b.conj().expect("involution declared")))
    });
    Ok(ObservabilityReport {
        observable: witness.is_none(),
        closure,
        witness,
        involution_closed,
    })
}

/// A discretized state: `∫ dV` becomes a weighted sum over sites.
#[derive(Debug, Clone)]
pub struct StateVector<T: Field = BigRational> {
    sites: Vec<(T, Element<T>)>,
}

impl<T: Field> StateVector<T> {
    pub fn new(sites: Vec<(T, Element<T>)>) -> Result<Self, ObservabilityError> {
        let first = sites.first().ok_or(ObservabilityError::EmptyState)?;
        if sites.iter().any(|(w, _)| *w <= T::zero()) {
            return Err(ObservabilityError::NonPositiveWeight);
        }
        for (_, v) in &sites[1..] {
            if !first.1.same_algebra(v) {
                return Err(AlgebraError::Mismatch(
                    first.1.algebra().name().into(),
                    v.algebra().name().into(),
                )
                .into());
            }
        }
        Ok(StateVector { sites })
    }

    pub fn single(value: Element<T>) -> Self {
        StateVector {
            sites: vec![(T::one(), value)],
        }
    }

    pub fn sites(&self) -> &[(T, Element<T>)] {
        &self.sites
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        self.sites[0].1.algebra()
    }
}

/// Where the operator sits relative to the two state factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bracketing {
    /// `(ψ* M) ψ`
    Left,
    /// `ψ* (M ψ)`
    Right,
}

impl std::str::FromStr for Bracketing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Bracketing::Left),
            "right" => Ok(Bracketing::Right),
            other => Err(format!(
                "unknown bracketing {other:?} (expected left or right)"
            )),
        }
    }
}

pub fn expectation<T: Field>(
    psi: &StateVector<T>,
    m: &Element<T>,
    bracketing: Bracketing,
) -> Result<Element<T>, ObservabilityError> {
    let mut acc = Element::zero(m.algebra());
    for (w, v) in &psi.sites {
        let star = v.conj()?;
        let value = match bracketing {
            Bracketing::Left => star.try_mul(m)?.try_mul(v)?,
            Bracketing::Right => star.try_mul(&m.try_mul(v)?)?,
        };
        acc = acc.try_add(&value.scale(w))?;
    }
    Ok(acc)
}

/// `⟨M⟩_left − ⟨M⟩_right`.
pub fn bracketing_defect<T: Field>(
    psi: &StateVector<T>,
    m: &Element<T>,
) -> Result<Element<T>, ObservabilityError> {
    let left = expectation(psi, m, Bracketing::Left)?;
    let right = expectation(psi, m, Bracketing::Right)?;
    Ok(left.try_sub(&right)?)
}

/// Whether `M* = M` in the algebra's involution.
pub fn is_hermitian<T: Field>(m: &Element<T>) -> Result<bool, ObservabilityError> {
    Ok(m.conj()? == *m)
}
