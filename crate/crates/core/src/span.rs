//! Incremental echelonized bases for subspaces of flattened matrices.
//!
//! A [`SpanBasis`] holds a fully reduced echelon basis: pivots strictly
//! increasing, every pivot column zero in all other rows, pivot entries 1.
//! Insertion reduces a candidate against the basis and either discards it
//! (already in the span) or installs it and back-substitutes, so the basis
//! stays reduced after every call. Ranks are therefore independent of
//! insertion order.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SparseVec};
use crate::scalar::FieldKind;

#[derive(Debug, Clone)]
pub struct SpanBasis {
    ambient: usize,
    field: FieldKind,
    /// Rows sorted by strictly increasing pivot index, each monic at its pivot.
    rows: Vec<SparseVec>,
    /// Pivot index of each row, parallel to `rows`.
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(ambient: usize, field: FieldKind) -> Self {
        SpanBasis {
            ambient,
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the basis; the result has no nonzero coordinate at
    /// any basis pivot, and is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        // Each row leads at its pivot, so eliminating at pivot p never
        // disturbs coordinates below p; one increasing sweep suffices.
        let start = match v.leading() {
            Some(l) => self.pivots.binary_search(&l).unwrap_or_else(|e| e),
            None => return v,
        };
        for idx in start..self.rows.len() {
            let p = self.pivots[idx];
            match v.entries.last() {
                Some(&(last, _)) if p <= last => {}
                _ => break,
            }
            if let Some(c) = v.coeff_at(p) {
                let c = c.clone();
                v.axpy_sub(&c, &self.rows[idx]);
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts the flattened matrix `m`; returns whether the rank grew.
    pub fn insert_matrix(&mut self, m: &Matrix) -> Result<bool> {
        self.insert(m.flatten())
    }

    /// Inserts a vector; afterwards it lies in the span. Returns whether the
    /// rank grew.
    pub fn insert(&mut self, v: SparseVec) -> Result<bool> {
        if v.len != self.ambient {
            return Err(Error::Dimension(format!(
                "span insert: vector length {} in ambient {}",
                v.len, self.ambient
            )));
        }
        let mut v = self.reduce(v);
        let Some(pivot) = v.leading() else {
            return Ok(false);
        };
        let lead = v.entries[0].1.clone();
        v.scale_in_place(&lead.inv());
        // Back-substitute the new pivot out of the existing rows.
        for row in &mut self.rows {
            if let Some(c) = row.coeff_at(pivot) {
                let c = c.clone();
                row.axpy_sub(&c, &v);
            }
        }
        let pos = self.pivots.binary_search(&pivot).unwrap_err();
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, v);
        Ok(true)
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldKind;

    fn q() -> FieldKind {
        FieldKind::Rational
    }

    fn unit(len: usize, i: usize) -> SparseVec {
        SparseVec {
            len,
            entries: vec![(i, q().one())],
        }
    }

    #[test]
    fn duplicate_insert_does_not_grow() {
        let mut b = SpanBasis::new(4, q());
        assert!(b.insert(unit(4, 0)).unwrap());
        assert!(!b.insert(unit(4, 0)).unwrap());
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn independent_vectors_grow() {
        let mut b = SpanBasis::new(4, q());
        b.insert(unit(4, 0)).unwrap();
        let mut v = unit(4, 0);
        v.entries.push((1, q().one()));
        assert!(b.insert(v).unwrap());
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn length_mismatch_rejected() {
        let mut b = SpanBasis::new(4, q());
        assert!(b.insert(unit(5, 0)).is_err());
    }

    #[test]
    fn basis_stays_reduced() {
        let f = q();
        let mut b = SpanBasis::new(3, f);
        let v1 = SparseVec {
            len: 3,
            entries: vec![(0, f.from_i64(2)), (1, f.from_i64(4))],
        };
        let v2 = SparseVec {
            len: 3,
            entries: vec![(0, f.from_i64(1)), (1, f.from_i64(3)), (2, f.from_i64(5))],
        };
        b.insert(v1).unwrap();
        b.insert(v2).unwrap();
        // Re-reducing every row against the others must change nothing.
        for i in 0..b.rank() {
            let mut other = SpanBasis::new(3, f);
            for (j, row) in b.rows().iter().enumerate() {
                if i != j {
                    other.insert(row.clone()).unwrap();
                }
            }
            assert_eq!(other.reduce(b.rows()[i].clone()), b.rows()[i]);
        }
    }
}
