//! Exact row reduction, kernels and subspaces over a [`Field`].

use std::sync::Arc;

use num_rational::BigRational;

use crate::cayley_dickson::{Algebra, Element};
use crate::scalar::Field;

/// Reduces `rows` to reduced row echelon form in place; returns pivot
/// columns. Zero rows are dropped.
pub fn rref<T: Field>(rows: &mut Vec<Vec<T>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for a matrix given by rows of length `ncols`.
pub fn kernel<T: Field>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m: Vec<Vec<T>> = rows
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A linear subspace of an algebra, held in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<T: Field = BigRational> {
    algebra: Arc<Algebra<T>>,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(algebra: &Arc<Algebra<T>>) -> Self {
        Subspace {
            algebra: algebra.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(algebra: &Arc<Algebra<T>>, vectors: impl IntoIterator<Item = Vec<T>>) -> Self {
        let mut rows: Vec<Vec<T>> = vectors.into_iter().collect();
        let pivots = rref(&mut rows);
        Subspace {
            algebra: algebra.clone(),
            rows,
            pivots,
        }
    }

    pub fn span_elements<'a>(
        algebra: &Arc<Algebra<T>>,
        elements: impl IntoIterator<Item = &'a Element<T>>,
    ) -> Self {
        Self::span(algebra, elements.into_iter().map(|e| e.coeffs().to_vec()))
    }

    pub fn whole(algebra: &Arc<Algebra<T>>) -> Self {
        Self::span(
            algebra,
            (0..algebra.dim()).map(|k| Element::basis(algebra, k).coeffs().to_vec()),
        )
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Element<T>> {
        self.rows
            .iter()
            .map(|r| Element::new(&self.algebra, r.clone()).unwrap())
            .collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        v
    }

    pub fn contains_coeffs(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn contains(&self, e: &Element<T>) -> bool {
        self.contains_coeffs(e.coeffs())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[T]) -> bool {
        let r = self.reduce(v);
        if r.iter().all(|c| c.is_zero()) {
            return false;
        }
        self.rows.push(r);
        self.pivots = rref(&mut self.rows);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace<T>) -> bool {
        self.rows.iter().all(|r| other.contains_coeffs(r))
    }
}

impl<T: Field> PartialEq for Subspace<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && *self.algebra == *other.algebra
    }
}
