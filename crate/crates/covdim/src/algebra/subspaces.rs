//! Enumeration of the r-dimensional subspaces of GF(q)^k.
//!
//! Every subspace appears exactly once as its canonical RREF basis matrix.
//! The stream is indexable: pivot-column sets are walked in lexicographic
//! order and the free entries of each pivot class are decoded from a base-q
//! odometer (row-major, most significant first), so `get(i)` is random
//! access and parallel consumers can split the index range any way they
//! like without changing what is enumerated.

use std::sync::Arc;

use super::field::{Field, FieldElem};
use super::matrix::MatrixGF;
use crate::error::Result;

pub struct SubspaceEnum {
    field: Arc<Field>,
    ambient: usize,
    dim: usize,
    classes: Vec<PivotClass>,
    total: u64,
}

struct PivotClass {
    pivots: Vec<usize>,
    /// Free positions (row, col) in row-major order.
    free: Vec<(usize, usize)>,
    offset: u64,
    count: u64,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        // advance to the next lexicographic combination
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl SubspaceEnum {
    /// Enumerator for the `dim`-dimensional subspaces of GF(q)^ambient.
    ///
    /// `cap` bounds the total count; exceeding it is a [`crate::Error::CapExceeded`].
    pub fn new(field: Arc<Field>, ambient: usize, dim: usize, cap: u64) -> Result<Self> {
        let q = field.order() as u128;
        let mut classes = Vec::new();
        let mut total: u128 = 0;
        if dim <= ambient {
            for pivots in combinations(ambient, dim) {
                let mut free = Vec::new();
                for (i, &p) in pivots.iter().enumerate() {
                    for c in p + 1..ambient {
                        if !pivots.contains(&c) {
                            free.push((i, c));
                        }
                    }
                }
                let mut count: u128 = 1;
                for _ in 0..free.len() {
                    count = count.saturating_mul(q);
                }
                let offset = total;
                total = total.saturating_add(count);
                if total > cap as u128 {
                    return Err(crate::Error::CapExceeded {
                        what: "subspace enumeration",
                        needed: total,
                        cap: cap as u128,
                    });
                }
                classes.push(PivotClass {
                    pivots,
                    free,
                    offset: offset as u64,
                    count: count as u64,
                });
            }
        }
        Ok(SubspaceEnum {
            field,
            ambient,
            dim,
            classes,
            total: total as u64,
        })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The subspace at stream position `index` as an RREF basis matrix.
    pub fn get(&self, index: u64) -> MatrixGF {
        debug_assert!(index < self.total);
        let class_idx = self
            .classes
            .partition_point(|c| c.offset + c.count <= index)
            .min(self.classes.len() - 1);
        let class = &self.classes[class_idx];
        let mut local = index - class.offset;
        let q = self.field.order() as u64;
        let mut m = MatrixGF::zeros(self.field.clone(), self.dim, self.ambient);
        for (i, &p) in class.pivots.iter().enumerate() {
            m.set(i, p, FieldElem::ONE);
        }
        // most significant digit first
        for t in 0..class.free.len() {
            let place = class.free.len() - 1 - t;
            let digit = if place == 0 {
                local % q
            } else {
                let div = q.pow(place as u32);
                let d = local / div;
                local %= div;
                d
            };
            let (r, c) = class.free[t];
            m.set(r, c, self.field.elem(digit as u32));
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = MatrixGF> + '_ {
        (0..self.total).map(move |i| self.get(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::gaussian_binomial;
    use num_bigint::BigInt;
    use std::collections::HashSet;

    fn gf(q: u32) -> Arc<Field> {
        Field::from_order(q).unwrap()
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            for k in 1..=5usize {
                for r in 0..=k {
                    let e = SubspaceEnum::new(gf(q), k, r, u64::MAX).unwrap();
                    assert_eq!(
                        BigInt::from(e.len()),
                        gaussian_binomial(k as u64, r as u64, q as u64),
                        "q={q} k={k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn stream_yields_distinct_canonical_bases() {
        let e = SubspaceEnum::new(gf(3), 4, 2, u64::MAX).unwrap();
        let mut seen = HashSet::new();
        for m in e.iter() {
            // already RREF: reducing again must not change it
            assert_eq!(m.rref().matrix, m);
            assert_eq!(m.rank(), 2);
            let key: Vec<u32> = (0..m.rows())
                .flat_map(|r| m.row(r).iter().map(|e| e.value()).collect::<Vec<_>>())
                .collect();
            assert!(seen.insert(key), "duplicate subspace emitted");
        }
        assert_eq!(seen.len() as u64, e.len());
    }

    #[test]
    fn fixed_order_for_smallest_case() {
        let e = SubspaceEnum::new(gf(2), 2, 1, u64::MAX).unwrap();
        let rows: Vec<Vec<u32>> = e
            .iter()
            .map(|m| m.row(0).iter().map(|e| e.value()).collect())
            .collect();
        assert_eq!(rows, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn zero_dimension_is_the_empty_basis() {
        let e = SubspaceEnum::new(gf(5), 3, 0, u64::MAX).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(0).rows(), 0);
        let over = SubspaceEnum::new(gf(5), 3, 4, u64::MAX).unwrap();
        assert_eq!(over.len(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(SubspaceEnum::new(gf(5), 6, 3, 10).is_err());
    }
}
