//! Named code families and a point-set construction in PG(k-1, q) that
//! produces (k-m)-blocks, together with exhaustive block and minimality
//! verification.
//!
//! Dimension conventions: points of PG(k-1, q) are nonzero vectors of
//! GF(q)^k normalized so that the first nonzero coordinate is 1, listed in
//! increasing encoding order (the encoding reads coordinates base q, lowest
//! index least significant). A point set is an r-block when every vector
//! subspace of GF(q)^k of dimension k - r contains one of its points; a
//! tangent of a point x is such a subspace meeting the set exactly in {x},
//! and a block is minimal when every point has a tangent. With r = k - m
//! the checked subspaces have vector dimension m, matching the null spaces
//! of the rank-(k-m) matrices that witness the block property. A minimal
//! r-block is exactly the column set of a code with covering dimension
//! r + 1.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{Echelon, Field, FieldElem, MatrixGF, SubspaceEnum};
use crate::caps::Caps;
use crate::code::{LinearCode, Strictness};
use crate::error::{Error, Result};
use crate::matroid::normalize_point;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A set of projective points in normalized representative form, strictly
/// increasing in encoding order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: Arc<Field>,
    k: usize,
    points: Vec<Vec<FieldElem>>,
}

impl PointSet {
    pub fn new(field: Arc<Field>, k: usize, mut points: Vec<Vec<FieldElem>>) -> Result<PointSet> {
        points.sort_by_key(|p| encoding(&field, p));
        for pair in points.windows(2) {
            if encoding(&field, &pair[0]) == encoding(&field, &pair[1]) {
                return Err(Error::InvalidParameter("duplicate projective point".into()));
            }
        }
        for p in &points {
            if p.len() != k {
                return Err(Error::InvalidParameter("point of wrong dimension".into()));
            }
            match normalize_point(&field, p) {
                Some(norm) if &norm == p => {}
                _ => {
                    return Err(Error::InvalidParameter(
                        "points must be nonzero with first nonzero coordinate 1".into(),
                    ))
                }
            }
        }
        Ok(PointSet { field, k, points })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<FieldElem>] {
        &self.points
    }

    pub fn encodings(&self) -> Vec<u64> {
        self.points
            .iter()
            .map(|p| encoding(&self.field, p))
            .collect()
    }
}

pub fn encoding(field: &Field, v: &[FieldElem]) -> u64 {
    let q = field.order() as u64;
    v.iter()
        .rev()
        .fold(0u64, |acc, e| acc * q + e.value() as u64)
}

/// All points of PG(k-1, q) in canonical order.
pub fn projective_points(field: &Arc<Field>, k: usize) -> Vec<Vec<FieldElem>> {
    let q = field.order() as u64;
    let total = q.pow(k as u32);
    let mut out = Vec::new();
    for enc in 1..total {
        let mut v = Vec::with_capacity(k);
        let mut rest = enc;
        for _ in 0..k {
            v.push(field.elem((rest % q) as u32));
            rest /= q;
        }
        if v.iter()
            .find(|e| !e.is_zero())
            .is_some_and(|e| *e == FieldElem::ONE)
        {
            out.push(v);
        }
    }
    out
}

/// Parameters of the block construction: an m-subset T of the coordinate
/// positions and a family V of m-1 distinct points supported away from T.
#[derive(Clone, Debug)]
pub struct BlockSpec {
    field: Arc<Field>,
    k: usize,
    m: usize,
    t: Vec<usize>,
    v: Vec<Vec<FieldElem>>,
}

impl BlockSpec {
    /// Build a spec, defaulting T to the last m coordinates and V to the
    /// first m-1 canonical points supported off T.
    pub fn new(
        field: Arc<Field>,
        k: usize,
        m: usize,
        t: Option<Vec<usize>>,
        v: Option<Vec<Vec<FieldElem>>>,
    ) -> Result<BlockSpec> {
        if m < 1 || m >= k {
            return Err(Error::InvalidParameter(format!(
                "block construction needs 1 <= m <= k-1, got m={m} k={k}"
            )));
        }
        let t = match t {
            Some(mut t) => {
                t.sort_unstable();
                t.dedup();
                if t.len() != m || t.iter().any(|&c| c >= k) {
                    return Err(Error::InvalidParameter(
                        "T must be m distinct coordinates below k".into(),
                    ));
                }
                t
            }
            None => (k - m..k).collect(),
        };
        let off_t: Vec<Vec<FieldElem>> = projective_points(&field, k)
            .into_iter()
            .filter(|p| t.iter().all(|&c| p[c].is_zero()))
            .collect();
        if off_t.len() < m - 1 {
            return Err(Error::Infeasible(format!(
                "only {} points avoid T but the family V needs {}",
                off_t.len(),
                m - 1
            )));
        }
        let v = match v {
            Some(v) => {
                if v.len() != m - 1 {
                    return Err(Error::InvalidParameter(format!(
                        "V must have exactly m-1 = {} points",
                        m - 1
                    )));
                }
                let mut seen = HashSet::new();
                for p in &v {
                    let norm = normalize_point(&field, p)
                        .ok_or_else(|| Error::InvalidParameter("zero vector in V".into()))?;
                    if &norm != p {
                        return Err(Error::InvalidParameter(
                            "V points must be normalized representatives".into(),
                        ));
                    }
                    if t.iter().any(|&c| !p[c].is_zero()) {
                        return Err(Error::InvalidParameter(
                            "V points must be supported away from T".into(),
                        ));
                    }
                    if !seen.insert(encoding(&field, p)) {
                        return Err(Error::InvalidParameter("V points must be distinct".into()));
                    }
                }
                v
            }
            None => off_t.into_iter().take(m - 1).collect(),
        };
        Ok(BlockSpec { field, k, m, t, v })
    }

    pub fn ambient_dim(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn v(&self) -> &[Vec<FieldElem>] {
        &self.v
    }
}

/// The point set X union Y union Z of the block construction:
/// X = points avoiding T entirely, Y = points meeting T in one coordinate
/// minus the excluded cosets v_i + lambda e_j, Z = points supported on a
/// 2-subset of T.
pub fn block_points(spec: &BlockSpec) -> Result<PointSet> {
    let field = &spec.field;
    let (k, t) = (spec.k, &spec.t);

    let mut excluded: HashSet<u64> = HashSet::new();
    for vi in &spec.v {
        for &j in t {
            for lambda in field.elements().skip(1) {
                let mut w = vi.clone();
                w[j] = field.add(w[j], lambda);
                let norm = normalize_point(field, &w).expect("v_i + lambda e_j is nonzero");
                excluded.insert(encoding(field, &norm));
            }
        }
    }

    let mut out = Vec::new();
    for p in projective_points(field, k) {
        let meet = t.iter().filter(|&&c| !p[c].is_zero()).count();
        let supp = (0..k).filter(|&c| !p[c].is_zero()).count();
        let keep = match meet {
            0 => true,                                     // X
            1 => !excluded.contains(&encoding(field, &p)), // Y
            2 => supp == 2,                                // Z
            _ => false,
        };
        if keep {
            out.push(p);
        }
    }
    PointSet::new(field.clone(), k, out)
}

/// Block verdict with an avoiding-subspace certificate on failure.
#[derive(Debug)]
pub struct BlockVerdict {
    pub holds: bool,
    pub counterexample: Option<MatrixGF>,
}

/// Minimality verdict; `tangents[i]` is a tangent subspace for point i when
/// one exists.
#[derive(Debug)]
pub struct MinimalityVerdict {
    pub is_block: bool,
    pub minimal: bool,
    pub missing_tangent: Option<usize>,
    pub tangents: Vec<Option<MatrixGF>>,
}

fn subspace_hits(stream: &SubspaceEnum, index: u64, points: &[Vec<FieldElem>]) -> Vec<usize> {
    let u = stream.get(index);
    let ech = Echelon::from_rref(&u);
    (0..points.len())
        .filter(|&i| ech.contains(&points[i]))
        .collect()
}

/// Does every (k-r)-dimensional subspace contain a point of the set?
/// On failure the certificate is the first avoiding subspace in stream
/// order, identical for any thread count.
pub fn is_r_block(p: &PointSet, r: usize, caps: &Caps) -> Result<BlockVerdict> {
    if r < 1 || r >= p.ambient_dim() {
        return Err(Error::InvalidParameter(format!(
            "block exponent r={r} outside 1..k"
        )));
    }
    let dim = p.ambient_dim() - r;
    let stream = SubspaceEnum::new(p.field().clone(), p.ambient_dim(), dim, caps.max_subspaces)?;
    let avoiding = |i: u64| subspace_hits(&stream, i, p.points()).is_empty();

    #[cfg(feature = "parallel")]
    let hit = if stream.len() >= 1 << 12 && rayon::current_num_threads() > 1 {
        (0..stream.len())
            .into_par_iter()
            .find_first(|&i| avoiding(i))
    } else {
        (0..stream.len()).find(|&i| avoiding(i))
    };
    #[cfg(not(feature = "parallel"))]
    let hit = (0..stream.len()).find(|&i| avoiding(i));

    Ok(BlockVerdict {
        holds: hit.is_none(),
        counterexample: hit.map(|i| stream.get(i)),
    })
}

/// Full minimality check: the set must be an r-block and every point must
/// admit a tangent. One sweep over all (k-r)-dimensional subspaces records
/// the lowest-index tangent per point.
pub fn is_minimal_block(p: &PointSet, r: usize, caps: &Caps) -> Result<MinimalityVerdict> {
    let block = is_r_block(p, r, caps)?;
    if !block.holds {
        return Ok(MinimalityVerdict {
            is_block: false,
            minimal: false,
            missing_tangent: None,
            tangents: vec![None; p.len()],
        });
    }
    let dim = p.ambient_dim() - r;
    let stream = SubspaceEnum::new(p.field().clone(), p.ambient_dim(), dim, caps.max_subspaces)?;

    let scan = |range: std::ops::Range<u64>| -> Vec<Option<u64>> {
        let mut tangent_at: Vec<Option<u64>> = vec![None; p.len()];
        for i in range {
            let hits = subspace_hits(&stream, i, p.points());
            if let [only] = hits[..] {
                let slot = &mut tangent_at[only];
                if slot.is_none() {
                    *slot = Some(i);
                }
            }
        }
        tangent_at
    };

    let merge = |mut a: Vec<Option<u64>>, b: Vec<Option<u64>>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x = match (*x, y) {
                (Some(i), Some(j)) => Some(i.min(j)),
                (l, r) => l.or(r),
            };
        }
        a
    };

    #[cfg(feature = "parallel")]
    let tangent_at = if stream.len() >= 1 << 12 && rayon::current_num_threads() > 1 {
        let chunk = stream
            .len()
            .div_ceil(rayon::current_num_threads() as u64 * 4);
        (0..stream.len())
            .step_by(chunk as usize)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|start| scan(start..(start + chunk).min(stream.len())))
            .reduce(|| vec![None; p.len()], merge)
    } else {
        scan(0..stream.len())
    };
    #[cfg(not(feature = "parallel"))]
    let tangent_at = scan(0..stream.len());
    #[cfg(not(feature = "parallel"))]
    let _ = merge;

    let missing = tangent_at.iter().position(|t| t.is_none());
    Ok(MinimalityVerdict {
        is_block: true,
        minimal: missing.is_none(),
        missing_tangent: missing,
        tangents: tangent_at
            .iter()
            .map(|t| t.map(|i| stream.get(i)))
            .collect(),
    })
}

/// The code whose generator columns are the points in canonical order.
pub fn code_from_points(p: &PointSet) -> Result<LinearCode> {
    let k = p.ambient_dim();
    let mut gen = MatrixGF::zeros(p.field().clone(), k, p.len());
    for (j, point) in p.points().iter().enumerate() {
        for (i, &entry) in point.iter().enumerate() {
            gen.set(i, j, entry);
        }
    }
    if gen.rank() < k {
        return Err(Error::RankDeficient {
            rank: gen.rank(),
            rows: k,
        });
    }
    LinearCode::from_generator(gen, Strictness::Strict)
}

/// The [(q^k-1)/(q-1), k] code whose columns are every projective point:
/// the dual of the Hamming code, attaining covering dimension k.
pub fn dual_hamming(field: Arc<Field>, k: usize, caps: &Caps) -> Result<LinearCode> {
    let q = field.order() as u128;
    let n = (q.pow(k as u32) - 1) / (q - 1);
    caps.check("dual Hamming length", n, caps.max_codewords)?;
    let points = PointSet::new(field.clone(), k, projective_points(&field, k))?;
    code_from_points(&points)
}

/// Evaluation-point Reed-Solomon code, extended with the unit column e_k
/// when n = q + 1. The minimum distance n - k + 1 is asserted on
/// construction, so callers always hold a verified MDS code.
pub fn reed_solomon(field: Arc<Field>, n: usize, k: usize, caps: &Caps) -> Result<LinearCode> {
    let q = field.order() as usize;
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got k={k} n={n}"
        )));
    }
    if n > q + 1 {
        return Err(Error::InvalidParameter(format!(
            "Reed-Solomon length is at most q+1 = {}",
            q + 1
        )));
    }
    let extended = n == q + 1;
    let eval_count = if extended { q } else { n };
    let alphas: Vec<FieldElem> = field.elements().take(eval_count).collect();
    let mut gen = MatrixGF::zeros(field.clone(), k, n);
    for (j, &a) in alphas.iter().enumerate() {
        for i in 0..k {
            gen.set(i, j, field.pow(a, i as u64));
        }
    }
    if extended {
        gen.set(k - 1, n - 1, FieldElem::ONE);
    }
    let code = LinearCode::from_generator(gen, Strictness::Strict)?;
    let d = code.min_weight(caps)?;
    if d != n - k + 1 {
        return Err(Error::InternalCheck(format!(
            "Reed-Solomon [{n},{k}] over GF({q}) has d={d}, expected {}",
            n - k + 1
        )));
    }
    Ok(code)
}

/// The binary [n, n-1] code with generator [I | all-ones column]: the
/// even-weight code, whose dual is the repetition code of weight n.
pub fn binary_parity_dual(n: usize) -> Result<LinearCode> {
    if n < 2 {
        return Err(Error::InvalidParameter("parity dual needs n >= 2".into()));
    }
    let field = Field::new(2, 1)?;
    let mut gen = MatrixGF::zeros(field, n - 1, n);
    for i in 0..n - 1 {
        gen.set(i, i, FieldElem::ONE);
        gen.set(i, n - 1, FieldElem::ONE);
    }
    LinearCode::from_generator(gen, Strictness::Strict)
}
