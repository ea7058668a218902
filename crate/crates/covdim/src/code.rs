//! Linear codes over GF(q): duals, minimum weight, shortening and
//! puncturing, subcode enumeration, support weight distributions, and the
//! covering dimension computed by two independent algorithms.
//!
//! The covering dimension gamma of an [n, k] code is the smallest dimension
//! of a subcode whose support is all n coordinates, or infinity when some
//! coordinate is identically zero. It is computed here both by direct
//! subcode search (smallest r with a full-support r-dimensional subcode) and
//! by subspace avoidance (smallest m such that some (k-m)-dimensional
//! subspace of the message space contains no generator column). The two
//! routes are cross-checked throughout the test suite; their agreement is
//! the strongest self-check this crate has.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::algebra::{Echelon, Field, FieldElem, MatrixGF, SubspaceEnum};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulas;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this stream length the parallel split is not worth its overhead.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: u64 = 1 << 13;

/// A covering dimension or critical exponent: a positive integer, or
/// infinity when the quantity is undefined because of a zero coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gamma {
    Finite(usize),
    Infinite,
}

impl Gamma {
    pub fn finite(self) -> Option<usize> {
        match self {
            Gamma::Finite(v) => Some(v),
            Gamma::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Gamma::Infinite)
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma::Finite(v) => write!(f, "{v}"),
            Gamma::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Gamma {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Gamma::Finite(v) => s.serialize_u64(*v as u64),
            Gamma::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Outcome of a covering-dimension computation.
///
/// When finite, `witness` holds an r x n basis of a full-support subcode of
/// dimension r = gamma. The avoidance route additionally reports the
/// (k-m)-dimensional message subspace that avoids every generator column.
pub struct GammaResult {
    pub value: Gamma,
    pub witness: Option<MatrixGF>,
    pub avoidance: Option<MatrixGF>,
}

/// Number of r-dimensional subcodes per support weight; `counts[i]` is the
/// count at support weight exactly i.
pub struct SupportWeightTable {
    pub r: usize,
    pub counts: Vec<u64>,
}

impl SupportWeightTable {
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    pub fn full_support_count(&self) -> u64 {
        *self.counts.last().unwrap_or(&0)
    }
}

/// Behaviour of [`LinearCode::from_generator`] on rank-deficient input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strictness {
    /// Reject generators whose rows are dependent.
    Strict,
    /// Replace a rank-deficient generator by a basis of its row space.
    Lenient,
}

/// An [n, k] linear code over GF(q), stored as a full-row-rank generator.
///
/// Equality is by the code, not the matrix: two values compare equal when
/// their generators are row equivalent (identical RREF canonical forms).
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: MatrixGF,
    canon: OnceLock<MatrixGF>,
    min_w: OnceLock<(usize, Vec<FieldElem>)>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field().same_field(other.field())
            && self.n() == other.n()
            && self.canonical_form() == other.canonical_form()
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    pub fn from_generator(gen: MatrixGF, strictness: Strictness) -> Result<LinearCode> {
        if gen.rows() == 0 || gen.cols() == 0 {
            return Err(Error::ZeroCode);
        }
        let red = gen.rref();
        if red.rank == 0 {
            return Err(Error::ZeroCode);
        }
        let gen = if red.rank == gen.rows() {
            gen
        } else {
            match strictness {
                Strictness::Strict => {
                    return Err(Error::RankDeficient {
                        rank: red.rank,
                        rows: gen.rows(),
                    })
                }
                Strictness::Lenient => gen.row_space_canonical(),
            }
        };
        Ok(LinearCode {
            gen,
            canon: OnceLock::new(),
            min_w: OnceLock::new(),
        })
    }

    pub fn from_u32_rows(field: Arc<Field>, rows: &[Vec<u32>]) -> Result<LinearCode> {
        LinearCode::from_generator(MatrixGF::from_u32_rows(field, rows)?, Strictness::Strict)
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.gen
    }

    /// RREF of the generator; the canonical representative of the code.
    pub fn canonical_form(&self) -> &MatrixGF {
        self.canon.get_or_init(|| self.gen.rref().matrix)
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.n()).any(|j| self.gen.is_zero_col(j))
    }

    /// Coordinates touched by at least one codeword.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&j| !self.gen.is_zero_col(j))
            .collect()
    }

    /// Column j read as an integer in base q, least significant row first.
    pub fn column_encoding(&self, j: usize) -> u64 {
        let q = self.field().order() as u64;
        let mut enc = 0u64;
        for i in (0..self.k()).rev() {
            enc = enc * q + self.gen.get(i, j).value() as u64;
        }
        enc
    }

    /// Canonical identifier: field order, dimensions and the sorted multiset
    /// of column encodings. Invariant under column reorderings.
    pub fn column_multiset_id(&self) -> String {
        let mut encs: Vec<u64> = (0..self.n()).map(|j| self.column_encoding(j)).collect();
        encs.sort_unstable();
        let cols: Vec<String> = encs.iter().map(|e| e.to_string()).collect();
        format!(
            "q{}-k{:02}-n{:02}-c{}",
            self.field().order(),
            self.k(),
            self.n(),
            cols.join(".")
        )
    }

    /// The [n, n-k] dual code. Errors for k = n, whose dual is the zero code.
    pub fn dual(&self) -> Result<LinearCode> {
        if self.k() == self.n() {
            return Err(Error::DualOfFullSpace);
        }
        LinearCode::from_generator(self.gen.kernel_basis(), Strictness::Strict)
    }

    /// Visit every one of the q^k codewords exactly once.
    ///
    /// The walk is a q-ary Gray code on the message space: each step adds a
    /// single scaled generator row to the running word, so the cost per
    /// codeword is one row operation.
    pub fn scan_codewords<F>(&self, caps: &Caps, mut visit: F) -> Result<()>
    where
        F: FnMut(&[FieldElem]) -> ControlFlow<()>,
    {
        let q = self.field().order();
        let total = (q as u128)
            .checked_pow(self.k() as u32)
            .unwrap_or(u128::MAX);
        caps.check("codeword enumeration", total, caps.max_codewords)?;

        let field = self.field().clone();
        let (k, n) = (self.k(), self.n());
        let mut counter = vec![0u32; k];
        let mut gray = vec![0u32; k];
        let mut word = vec![FieldElem::ZERO; n];
        if visit(&word).is_break() {
            return Ok(());
        }
        loop {
            let mut t = 0;
            while t < k && counter[t] == q - 1 {
                counter[t] = 0;
                t += 1;
            }
            if t == k {
                return Ok(());
            }
            counter[t] += 1;
            let old = gray[t];
            let new = if old + 1 == q { 0 } else { old + 1 };
            gray[t] = new;
            let delta = field.sub(field.elem(new), field.elem(old));
            let row = self.gen.row(t);
            for j in 0..n {
                word[j] = field.add(word[j], field.mul(delta, row[j]));
            }
            if visit(&word).is_break() {
                return Ok(());
            }
        }
    }

    /// Minimum weight and one codeword attaining it.
    pub fn min_weight_witness(&self, caps: &Caps) -> Result<(usize, Vec<FieldElem>)> {
        if let Some(v) = self.min_w.get() {
            return Ok(v.clone());
        }
        let mut best_w = self.n() + 1;
        let mut best: Vec<FieldElem> = Vec::new();
        let mut first = true;
        self.scan_codewords(caps, |word| {
            if first {
                first = false; // the zero word
                return ControlFlow::Continue(());
            }
            let w = word.iter().filter(|e| !e.is_zero()).count();
            if w < best_w {
                best_w = w;
                best = word.to_vec();
            }
            ControlFlow::Continue(())
        })?;
        let out = (best_w, best);
        let _ = self.min_w.set(out.clone());
        Ok(out)
    }

    pub fn min_weight(&self, caps: &Caps) -> Result<usize> {
        Ok(self.min_weight_witness(caps)?.0)
    }

    /// d(C-perp); errors for k = n.
    pub fn dual_min_weight(&self, caps: &Caps) -> Result<usize> {
        self.dual()?.min_weight(caps)
    }

    /// Keep only codewords vanishing on `coords` and delete those positions.
    pub fn shorten(&self, coords: &[usize]) -> Result<LinearCode> {
        let x = normalize_coords(coords, self.n())?;
        if x.is_empty() {
            return Ok(self.clone());
        }
        // messages whose codeword vanishes on X: the kernel of G[:, X]^T
        let gx = self.gen.select_cols(&x);
        let messages = gx.transpose().kernel_basis();
        if messages.rows() == 0 {
            return Err(Error::ShortenedToZero);
        }
        let sub = messages.matmul(&self.gen);
        let keep: Vec<usize> = (0..self.n()).filter(|j| !x.contains(j)).collect();
        LinearCode::from_generator(sub.select_cols(&keep), Strictness::Strict)
    }

    /// Delete the positions in `coords` from every codeword.
    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode> {
        let x = normalize_coords(coords, self.n())?;
        if x.len() == self.n() {
            return Err(Error::PunctureEverything);
        }
        if x.is_empty() {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.n()).filter(|j| !x.contains(j)).collect();
        LinearCode::from_generator(self.gen.select_cols(&keep), Strictness::Lenient)
    }

    /// Stream of the r-dimensional subspaces of the message space GF(q)^k,
    /// each as an RREF r x k matrix. Mapping a basis through the generator
    /// gives the corresponding subcode basis.
    pub fn message_subspaces(&self, r: usize, caps: &Caps) -> Result<SubspaceEnum> {
        if r < 1 || r > self.k() {
            return Err(Error::InvalidParameter(format!(
                "subcode dimension {r} outside 1..={}",
                self.k()
            )));
        }
        SubspaceEnum::new(self.field().clone(), self.k(), r, caps.max_subspaces)
    }

    /// Support weights of all r-dimensional subcodes: counts[i] is the
    /// number with support weight exactly i.
    pub fn support_weight_distribution(&self, r: usize, caps: &Caps) -> Result<SupportWeightTable> {
        let stream = self.message_subspaces(r, caps)?;
        let n = self.n();
        let count_weights = |range: std::ops::Range<u64>| -> Vec<u64> {
            let mut counts = vec![0u64; n + 1];
            for i in range {
                let basis = stream.get(i).matmul(&self.gen);
                let w = (0..n).filter(|&j| !basis.is_zero_col(j)).count();
                counts[w] += 1;
            }
            counts
        };

        #[cfg(feature = "parallel")]
        let counts = if stream.len() >= PAR_THRESHOLD && rayon::current_num_threads() > 1 {
            let chunk = stream
                .len()
                .div_ceil(rayon::current_num_threads() as u64 * 8);
            (0..stream.len())
                .step_by(chunk as usize)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|start| count_weights(start..(start + chunk).min(stream.len())))
                .reduce(
                    || vec![0u64; n + 1],
                    |mut a, b| {
                        for (x, y) in a.iter_mut().zip(b) {
                            *x += y;
                        }
                        a
                    },
                )
        } else {
            count_weights(0..stream.len())
        };
        #[cfg(not(feature = "parallel"))]
        let counts = count_weights(0..stream.len());

        let table = SupportWeightTable { r, counts };
        let expected =
            formulas::gaussian_binomial(self.k() as u64, r as u64, self.field().order() as u64);
        if num_bigint::BigInt::from(table.total()) != expected {
            return Err(Error::InternalCheck(format!(
                "support weight counts at r={r} do not add up to the Gaussian binomial"
            )));
        }
        Ok(table)
    }

    /// Covering dimension by direct subcode search: the smallest r admitting
    /// a full-support r-dimensional subcode, with a witness basis.
    ///
    /// Subspaces are searched in increasing dimension and, within a
    /// dimension, in stream order; the first hit is the reported witness, so
    /// results are deterministic regardless of thread count.
    pub fn covering_dimension_subcode(&self, caps: &Caps) -> Result<GammaResult> {
        if self.has_zero_column() {
            return Ok(GammaResult {
                value: Gamma::Infinite,
                witness: None,
                avoidance: None,
            });
        }
        for r in 1..=self.k() {
            let stream = self.message_subspaces(r, caps)?;
            let full_support = |i: u64| {
                let basis = stream.get(i).matmul(&self.gen);
                (0..self.n()).all(|j| !basis.is_zero_col(j))
            };
            if let Some(i) = find_first_index(stream.len(), full_support) {
                return Ok(GammaResult {
                    value: Gamma::Finite(r),
                    witness: Some(stream.get(i).matmul(&self.gen)),
                    avoidance: None,
                });
            }
        }
        Err(Error::InternalCheck(
            "a loopless code has a full-support subcode at r = k".into(),
        ))
    }

    /// Covering dimension by subspace avoidance: the smallest m such that
    /// some (k-m)-dimensional subspace of GF(q)^k contains no generator
    /// column. Agrees with the subcode search on every input.
    pub fn covering_dimension_avoidance(&self, caps: &Caps) -> Result<GammaResult> {
        if self.has_zero_column() {
            return Ok(GammaResult {
                value: Gamma::Infinite,
                witness: None,
                avoidance: None,
            });
        }
        let cols: Vec<Vec<FieldElem>> = (0..self.n()).map(|j| self.gen.col(j)).collect();
        for m in 1..=self.k() {
            let stream = SubspaceEnum::new(
                self.field().clone(),
                self.k(),
                self.k() - m,
                caps.max_subspaces,
            )?;
            let avoids = |i: u64| {
                let u = stream.get(i);
                let ech = Echelon::from_rref(&u);
                cols.iter().all(|c| !ech.contains(c))
            };
            if let Some(i) = find_first_index(stream.len(), avoids) {
                let u = stream.get(i);
                let witness = u.kernel_basis().matmul(&self.gen);
                if (0..self.n()).any(|j| witness.is_zero_col(j)) {
                    return Err(Error::InternalCheck(
                        "avoidance witness does not have full support".into(),
                    ));
                }
                return Ok(GammaResult {
                    value: Gamma::Finite(m),
                    witness: Some(witness),
                    avoidance: Some(u),
                });
            }
        }
        Err(Error::InternalCheck(
            "the zero subspace avoids all columns of a loopless code".into(),
        ))
    }
}

fn normalize_coords(coords: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut x: Vec<usize> = coords.to_vec();
    x.sort_unstable();
    x.dedup();
    if x.last().is_some_and(|&c| c >= n) {
        return Err(Error::InvalidParameter(format!(
            "coordinate out of range for length {n}"
        )));
    }
    Ok(x)
}

/// First index satisfying the predicate, identical for any thread count.
fn find_first_index<F>(len: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    if len >= PAR_THRESHOLD && rayon::current_num_threads() > 1 {
        return (0..len).into_par_iter().find_first(|&i| pred(i));
    }
    (0..len).find(|&i| pred(i))
}
