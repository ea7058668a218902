//! Dense matrices over GF(q) with exact row reduction.
//!
//! A subspace is represented canonically by the reduced row echelon form of
//! any spanning matrix, so subspace equality is entrywise equality of
//! canonical forms. Pivoting scans for the first nonzero entry; there are no
//! magnitude concerns in exact arithmetic.

use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct MatrixGF {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Result of row reduction: the reduced matrix (same shape, zero rows at the
/// bottom), its rank and the pivot columns.
pub struct Rref {
    pub matrix: MatrixGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl PartialEq for MatrixGF {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for MatrixGF {}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl MatrixGF {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        MatrixGF {
            field,
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = MatrixGF::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(field: Arc<Field>, rows: &[Vec<FieldElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        Ok(MatrixGF {
            field,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Convenience constructor from integer encodings; validates the range.
    pub fn from_u32_rows(field: Arc<Field>, rows: &[Vec<u32>]) -> Result<Self> {
        let q = field.order();
        let mut conv = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for &v in row {
                if v >= q {
                    return Err(Error::InvalidParameter(format!(
                        "entry {v} out of range for GF({q})"
                    )));
                }
                out.push(field.elem(v));
            }
            conv.push(out);
        }
        MatrixGF::from_rows(field, &conv)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero_col(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c).is_zero())
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut out = MatrixGF::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatrixGF {
        let mut out = MatrixGF::zeros(self.field.clone(), self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn matmul(&self, other: &MatrixGF) -> MatrixGF {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert!(self.field.same_field(&other.field));
        let f = &self.field;
        let mut out = MatrixGF::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = f.mul(a, other.get(k, j));
                    out.set(i, j, f.add(out.get(i, j), add));
                }
            }
        }
        out
    }

    /// Reduced row echelon form. Idempotent: `rref(rref(M)) == rref(M)`.
    pub fn rref(&self) -> Rref {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                m.set(r, j, f.mul(inv, m.get(r, j)));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(factor, m.get(r, j));
                    m.set(i, j, f.sub(m.get(i, j), sub));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// RREF with the zero rows trimmed: the canonical form of the row space.
    pub fn row_space_canonical(&self) -> MatrixGF {
        let red = self.rref();
        let mut out = MatrixGF::zeros(self.field.clone(), red.rank, self.cols);
        for r in 0..red.rank {
            for c in 0..self.cols {
                out.set(r, c, red.matrix.get(r, c));
            }
        }
        out
    }

    /// Basis of the right null space, one vector per row; `cols - rank` rows.
    pub fn kernel_basis(&self) -> MatrixGF {
        let f = self.field.clone();
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let mut out = MatrixGF::zeros(f.clone(), free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, FieldElem::ONE);
            for (t, &pc) in red.pivots.iter().enumerate() {
                out.set(i, pc, f.neg(red.matrix.get(t, fc)));
            }
        }
        out
    }
}

/// A growing echelon basis over GF(q) that supports exact undo.
///
/// Rows keep strictly increasing pivot columns with pivot entries scaled to
/// one. Inserting reduces the incoming vector against the current rows only,
/// so removal restores the previous state exactly — the property the subset
/// sweeps rely on.
pub struct Echelon {
    field: Arc<Field>,
    width: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Arc<Field>, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Seed an echelon directly from the rows of an RREF matrix.
    pub fn from_rref(m: &MatrixGF) -> Self {
        let mut e = Echelon::new(m.field().clone(), m.cols());
        for r in 0..m.rows() {
            let inserted = e.insert(m.row(r));
            debug_assert!(inserted.is_some(), "RREF rows are independent");
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_in_place(&self, v: &mut [FieldElem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for j in p..self.width {
                let sub = f.mul(c, row[j]);
                v[j] = f.sub(v[j], sub);
            }
        }
    }

    /// Insert a vector; returns the slot it occupies, or None if dependent.
    pub fn insert(&mut self, v: &[FieldElem]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        let pivot = w.iter().position(|e| !e.is_zero())?;
        let inv = self.field.inv(w[pivot]).expect("pivot is nonzero");
        for e in w.iter_mut() {
            *e = self.field.mul(inv, *e);
        }
        let slot = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(slot, w);
        self.pivots.insert(slot, pivot);
        Some(slot)
    }

    /// Undo a successful [`Echelon::insert`]. Only valid in LIFO order with
    /// the slot the insert returned.
    pub fn remove_at(&mut self, slot: usize) {
        self.rows.remove(slot);
        self.pivots.remove(slot);
    }

    /// Membership of a vector in the current row space.
    pub fn contains(&self, v: &[FieldElem]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(|e| e.is_zero())
    }
}
