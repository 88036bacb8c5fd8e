//! Sparse matrices over an exact field.
//!
//! Entries are stored in a coordinate map holding only nonzero values, with
//! dense export for printing. A matrix representing a map between tensor
//! powers of a d-dimensional space has `d^cod` rows and `d^dom` columns;
//! basis tuples are indexed row-major, first tensor factor most significant.
//! Flattening a matrix into a single vector is row-major as well.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldKind,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: FieldKind) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, field: FieldKind) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_entries<I>(rows: usize, cols: usize, field: FieldKind, it: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Matrix::zero(rows, cols, field);
        for (r, c, v) in it {
            m.set(r, c, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        if s.is_zero() {
            return Matrix::zero(self.rows, self.cols, self.field);
        }
        let entries = self.entries.iter().map(|(&k, v)| (k, v.mul(s))).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            let sum = out
                .entries
                .get(&k)
                .map(|w| w.add(v))
                .unwrap_or_else(|| v.clone());
            if sum.is_zero() {
                out.entries.remove(&k);
            } else {
                out.entries.insert(k, sum);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Group rows of `other` for sparse row lookup.
        let mut rows_of_other: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            rows_of_other.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows_of_other.get(&k) {
                for &(j, b) in row {
                    let term = a.mul(b);
                    match acc.get_mut(&(i, j)) {
                        Some(s) => *s = s.add(&term),
                        None => {
                            acc.insert((i, j), term);
                        }
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            entries: acc,
        })
    }

    /// Kronecker product; row-major index convention, so the left factor is
    /// most significant: index of (i1, i2) is `i1 * rows(other) + i2`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows * other.rows, self.cols * other.cols, self.field);
        for (&(i1, j1), a) in &self.entries {
            for (&(i2, j2), b) in &other.entries {
                out.entries
                    .insert((i1 * other.rows + i2, j1 * other.cols + j2), a.mul(b));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let entries = self
            .entries
            .iter()
            .map(|(&(r, c), v)| ((c, r), v.clone()))
            .collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    /// Row-major flattening into a sparse vector of length rows*cols.
    pub fn flatten(&self) -> SparseVec {
        SparseVec {
            len: self.rows * self.cols,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| (r * self.cols + c, v.clone()))
                .collect(),
        }
    }

    pub fn dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    /// Reinterprets the matrix entry-for-entry over another field.
    pub fn map_field(&self, field: FieldKind) -> Result<Matrix> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mut out = Matrix::zero(self.rows, self.cols, field);
        for (&(r, c), v) in &self.entries {
            let q = match v {
                Scalar::Q(q) => q.clone(),
                Scalar::Fp { .. } => {
                    return Err(Error::Scalar("cannot lift a prime-field matrix".into()))
                }
            };
            out.set(r, c, field.from_rational(&q)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A sparse vector: sorted (index, nonzero value) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec {
    pub len: usize,
    pub entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(len: usize) -> Self {
        SparseVec {
            len,
            entries: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn coeff_at(&self, idx: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&idx, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// self := self - c * other (merge of two sorted entry lists).
    pub fn axpy_sub(&mut self, c: &Scalar, other: &SparseVec) {
        debug_assert_eq!(self.len, other.len);
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb.neg().mul(c)));
                        b.next();
                    } else {
                        let v = va.sub(&vb.mul(c));
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb.neg().mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scale_in_place(&mut self, c: &Scalar) {
        for (_, v) in &mut self.entries {
            *v = v.mul(c);
        }
    }
}
