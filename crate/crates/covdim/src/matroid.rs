//! The matroid induced by a linear code on its coordinate set: rank oracle,
//! characteristic polynomial, critical exponent, girth, flats, and the
//! brute-force ordered-tuple count that cross-checks the characteristic
//! polynomial evaluation.
//!
//! The characteristic polynomial is the signed subset sum
//! `p(M; x) = sum over X of (-1)^|X| x^{rank(E) - rank(X)}`, computed by a
//! depth-first walk over the ground set that maintains one echelon basis, so
//! every inclusion costs a single column reduction instead of a fresh rank
//! computation. Contractions are realised through the quotient rank
//! `rank(X | F) = rank(X united with F) - rank(F)` by seeding the echelon
//! with the contracted columns.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::ControlFlow;

use crate::algebra::{Echelon, Field, FieldElem};
use crate::caps::Caps;
use crate::code::{Gamma, LinearCode};
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Integer-coefficient characteristic polynomial; `coeffs[i]` multiplies x^i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_prime_power(&self, q: u64, j: u32) -> BigInt {
        self.eval(&BigInt::from(q).pow(j))
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Verdict of the three-part tangential-block test.
#[derive(Debug)]
pub struct TangentialVerdict {
    pub simple: bool,
    pub vanishes_at_qr: bool,
    pub contractions_positive: bool,
    pub failing_flat: Option<Vec<usize>>,
}

impl TangentialVerdict {
    pub fn holds(&self) -> bool {
        self.simple && self.vanishes_at_qr && self.contractions_positive
    }
}

/// The matroid M_C of a code: ground set {0, .., n-1}, rank of a subset =
/// rank of the corresponding generator columns.
pub struct MatroidView<'a> {
    code: &'a LinearCode,
}

impl<'a> MatroidView<'a> {
    pub fn new(code: &'a LinearCode) -> Self {
        MatroidView { code }
    }

    pub fn ground_size(&self) -> usize {
        self.code.n()
    }

    pub fn full_rank(&self) -> usize {
        self.code.k()
    }

    pub fn has_loop(&self) -> bool {
        self.code.has_zero_column()
    }

    pub fn rank_of(&self, x: &[usize]) -> usize {
        let g = self.code.generator();
        let mut ech = Echelon::new(g.field().clone(), g.rows());
        for &j in x {
            ech.insert(&g.col(j));
        }
        ech.rank()
    }

    fn columns(&self, subset: impl Iterator<Item = usize>) -> Vec<Vec<FieldElem>> {
        let g = self.code.generator();
        subset.map(|j| g.col(j)).collect()
    }

    pub fn characteristic_polynomial(&self, caps: &Caps) -> Result<CharPoly> {
        let n = self.ground_size();
        caps.check(
            "subset sweep ground size",
            n as u128,
            caps.max_subset_ground as u64,
        )?;
        let cols = self.columns(0..n);
        let coeffs = subset_sweep(self.code.field(), &cols, &[]);
        Ok(CharPoly { coeffs })
    }

    /// Smallest j >= 1 with p(M; q^j) > 0; infinite iff the matroid has a
    /// loop (a zero generator column).
    pub fn critical_exponent(&self, caps: &Caps) -> Result<Gamma> {
        if self.has_loop() {
            return Ok(Gamma::Infinite);
        }
        let p = self.characteristic_polynomial(caps)?;
        let q = self.code.field().order() as u64;
        for j in 1..=self.full_rank() as u32 {
            if p.eval_prime_power(q, j).is_positive() {
                return Ok(Gamma::Finite(j as usize));
            }
        }
        Err(Error::InternalCheck(
            "loopless matroids have critical exponent at most k".into(),
        ))
    }

    /// Girth of the matroid (= d of the dual code) together with one
    /// witness circuit: the support of a minimum-weight dual codeword is a
    /// minimal dependent column set.
    pub fn girth(&self, caps: &Caps) -> Result<(usize, Vec<usize>)> {
        let dual = self.code.dual()?;
        let (w, word) = dual.min_weight_witness(caps)?;
        let circuit: Vec<usize> = (0..word.len()).filter(|&j| !word[j].is_zero()).collect();
        debug_assert_eq!(circuit.len(), w);
        Ok((w, circuit))
    }

    /// Smallest dependent column-set size up to `bound`, or None when every
    /// subset of at most `bound` columns is independent. Any dependent set
    /// contains a circuit of at most its size, so this is the girth whenever
    /// it returns Some. Useful when the dual is too large to enumerate but
    /// only a small girth matters.
    pub fn girth_up_to(&self, bound: usize) -> Option<usize> {
        let n = self.ground_size();
        for size in 1..=bound.min(n) {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                if self.rank_of(&subset) < size {
                    return Some(size);
                }
                if !next_combination(&mut subset, n) {
                    break;
                }
            }
        }
        None
    }

    /// All closed sets, each as a sorted coordinate list, in mask order.
    pub fn flats(&self, caps: &Caps) -> Result<Vec<Vec<usize>>> {
        let n = self.ground_size();
        caps.check(
            "flat enumeration ground size",
            n as u128,
            caps.max_flat_ground as u64,
        )?;
        let ranks = self.rank_table();
        let mut out = Vec::new();
        for mask in 0..(1usize << n) {
            let closed = (0..n)
                .filter(|&e| mask & (1 << e) == 0)
                .all(|e| ranks[mask | (1 << e)] > ranks[mask]);
            if closed {
                out.push((0..n).filter(|&e| mask & (1 << e) != 0).collect());
            }
        }
        Ok(out)
    }

    /// Rank of every subset, filled by one depth-first sweep.
    fn rank_table(&self) -> Vec<u8> {
        let n = self.ground_size();
        let cols = self.columns(0..n);
        let mut table = vec![0u8; 1 << n];
        let mut ech = Echelon::new(self.code.field().clone(), self.full_rank());
        fill_ranks(&mut ech, &cols, 0, 0, &mut table);
        table
    }

    /// The matroid-side tangential test for exponent r:
    /// (i) the matroid is simple, (ii) p(M; q^r) = 0, and (iii) every
    /// contraction by a proper nonempty flat evaluates positively at q^r.
    pub fn tangential_block_check(&self, r: u32, caps: &Caps) -> Result<TangentialVerdict> {
        let n = self.ground_size();
        let q = self.code.field().order() as u64;
        let g = self.code.generator();

        let mut normalized: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut simple = true;
        for j in 0..n {
            match normalize_point(self.code.field(), &g.col(j)) {
                Some(p) => normalized.push(p.iter().map(|e| e.value()).collect()),
                None => simple = false,
            }
        }
        normalized.sort_unstable();
        normalized.dedup();
        if normalized.len() != n {
            simple = false;
        }

        let p = self.characteristic_polynomial(caps)?;
        let vanishes = p.eval_prime_power(q, r).is_zero();

        let mut contractions_positive = true;
        let mut failing_flat = None;
        for flat in self.flats(caps)? {
            if flat.is_empty() || flat.len() == n {
                continue;
            }
            let seed = self.columns(flat.iter().copied());
            let ground = self.columns((0..n).filter(|e| !flat.contains(e)));
            let coeffs = subset_sweep(self.code.field(), &ground, &seed);
            let contracted = CharPoly { coeffs };
            if !contracted.eval_prime_power(q, r).is_positive() {
                contractions_positive = false;
                failing_flat = Some(flat);
                break;
            }
        }

        Ok(TangentialVerdict {
            simple,
            vanishes_at_qr: vanishes,
            contractions_positive,
            failing_flat,
        })
    }
}

/// Advance to the next lexicographic size-r combination of {0, .., n-1}.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if idx[i] < n - r + i {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Scale a column so its first nonzero entry is one; None for zero columns.
pub(crate) fn normalize_point(field: &Field, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let lead = v.iter().position(|e| !e.is_zero())?;
    let inv = field.inv(v[lead]).expect("leading entry is nonzero");
    Some(v.iter().map(|&e| field.mul(inv, e)).collect())
}

fn fill_ranks(ech: &mut Echelon, cols: &[Vec<FieldElem>], i: usize, mask: usize, table: &mut [u8]) {
    if i == cols.len() {
        table[mask] = ech.rank() as u8;
        return;
    }
    fill_ranks(ech, cols, i + 1, mask, table);
    let slot = ech.insert(&cols[i]);
    fill_ranks(ech, cols, i + 1, mask | (1 << i), table);
    if let Some(s) = slot {
        ech.remove_at(s);
    }
}

/// Coefficients of `sum over X subsets of ground of (-1)^|X| x^{r - rank'(X)}`
/// where rank' is the quotient rank relative to the seeded columns and
/// r = rank'(ground). This is the characteristic polynomial of the matroid
/// restricted to `ground` and contracted by `seed`.
pub(crate) fn subset_sweep(
    field: &std::sync::Arc<Field>,
    ground: &[Vec<FieldElem>],
    seed: &[Vec<FieldElem>],
) -> Vec<i64> {
    let width = ground.first().or(seed.first()).map_or(0, |c| c.len());
    let mut base = Echelon::new(field.clone(), width);
    for s in seed {
        base.insert(s);
    }
    let seed_rank = base.rank();
    for c in ground {
        base.insert(c);
    }
    let r_rel = base.rank() - seed_rank;

    let mut seeded = Echelon::new(field.clone(), width);
    for s in seed {
        seeded.insert(s);
    }

    #[cfg(feature = "parallel")]
    if ground.len() >= 14 && rayon::current_num_threads() > 1 {
        let t = 6usize.min(ground.len());
        return (0u32..(1 << t))
            .into_par_iter()
            .map(|prefix| {
                let mut ech = Echelon::new(field.clone(), width);
                for s in seed {
                    ech.insert(s);
                }
                let mut sign = 1i64;
                for (b, col) in ground.iter().take(t).enumerate() {
                    if prefix & (1 << b) != 0 {
                        ech.insert(col);
                        sign = -sign;
                    }
                }
                let mut acc = vec![0i64; r_rel + 1];
                sweep_rest(&mut ech, &ground[t..], sign, seed_rank, r_rel, &mut acc);
                acc
            })
            .reduce(
                || vec![0i64; r_rel + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
    }

    let mut acc = vec![0i64; r_rel + 1];
    sweep_rest(&mut seeded, ground, 1, seed_rank, r_rel, &mut acc);
    acc
}

fn sweep_rest(
    ech: &mut Echelon,
    rest: &[Vec<FieldElem>],
    sign: i64,
    seed_rank: usize,
    r_rel: usize,
    acc: &mut Vec<i64>,
) {
    match rest.split_first() {
        None => acc[r_rel - (ech.rank() - seed_rank)] += sign,
        Some((col, tail)) => {
            sweep_rest(ech, tail, sign, seed_rank, r_rel, acc);
            let slot = ech.insert(col);
            sweep_rest(ech, tail, -sign, seed_rank, r_rel, acc);
            if let Some(s) = slot {
                ech.remove_at(s);
            }
        }
    }
}

/// Brute-force count of ordered m-tuples of codewords whose supports unite
/// to exactly the set `x`, checked on the spot against the characteristic
/// polynomial of the correspondingly shortened code evaluated at q^m.
/// Returns the verified count.
pub fn critical_theorem_count(code: &LinearCode, x: &[usize], m: u32, caps: &Caps) -> Result<u64> {
    let n = code.n();
    let q = code.field().order() as u64;
    let mut x: Vec<usize> = x.to_vec();
    x.sort_unstable();
    x.dedup();
    if x.last().is_some_and(|&c| c >= n) {
        return Err(Error::InvalidParameter("coordinate out of range".into()));
    }
    if m == 0 {
        return Err(Error::InvalidParameter(
            "tuple length must be positive".into(),
        ));
    }
    if x.is_empty() {
        // only the all-zero tuple, and the empty matroid has p = 1
        return Ok(1);
    }

    let complement: Vec<usize> = (0..n).filter(|j| !x.contains(j)).collect();
    let shortened = match code.shorten(&complement) {
        Ok(c) => c,
        Err(Error::ShortenedToZero) => {
            // no codeword is supported inside x: the shortened matroid is
            // all loops, whose characteristic polynomial vanishes
            let loops = vec![vec![FieldElem::ZERO]; x.len()];
            let p = CharPoly {
                coeffs: subset_sweep(code.field(), &loops, &[]),
            };
            if !p.eval_prime_power(q, m).is_zero() {
                return Err(Error::InternalCheck("loop matroid must vanish".into()));
            }
            return Ok(0);
        }
        Err(e) => return Err(e),
    };

    let tuple_total = (q as u128)
        .checked_pow(shortened.k() as u32 * m)
        .unwrap_or(u128::MAX);
    caps.check("tuple enumeration", tuple_total, caps.max_codewords)?;

    let mut words = Vec::new();
    shortened.scan_codewords(caps, |w| {
        words.push(w.to_vec());
        ControlFlow::Continue(())
    })?;

    let masks: Vec<usize> = words
        .iter()
        .map(|w| {
            w.iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .fold(0usize, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    let full = (1usize << shortened.n()) - 1;
    let count = count_covering_tuples(&masks, m, 0, full);

    let mv = MatroidView::new(&shortened);
    let p = mv.characteristic_polynomial(caps)?;
    if p.eval_prime_power(q, m) != BigInt::from(count) {
        return Err(Error::InternalCheck(format!(
            "tuple count {count} disagrees with the characteristic polynomial at q^{m}"
        )));
    }
    Ok(count)
}

fn count_covering_tuples(masks: &[usize], levels: u32, acc: usize, full: usize) -> u64 {
    if levels == 0 {
        return (acc == full) as u64;
    }
    masks
        .iter()
        .map(|&m| count_covering_tuples(masks, levels - 1, acc | m, full))
        .sum()
}

/// For every subset mask of the coordinate set at once: the number of
/// ordered m-tuples of codewords whose supports unite to exactly that mask.
/// One sweep over all q^{km} tuples.
pub fn tuple_cover_counts(code: &LinearCode, m: u32, caps: &Caps) -> Result<Vec<u64>> {
    let n = code.n();
    if n > 20 {
        return Err(Error::InvalidParameter(
            "mask table limited to n <= 20".into(),
        ));
    }
    let q = code.field().order() as u64;
    let tuple_total = (q as u128)
        .checked_pow(code.k() as u32 * m)
        .unwrap_or(u128::MAX);
    caps.check("tuple enumeration", tuple_total, caps.max_codewords)?;

    let mut words = Vec::new();
    code.scan_codewords(caps, |w| {
        words.push(w.to_vec());
        ControlFlow::Continue(())
    })?;

    // precompute each word's support mask; a tuple's union is an OR
    let masks: Vec<usize> = words
        .iter()
        .map(|w| {
            w.iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .fold(0usize, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let mut out = vec![0u64; 1 << n];
    fill_cover_counts(&masks, m, 0, &mut out);
    Ok(out)
}

fn fill_cover_counts(masks: &[usize], levels: u32, acc: usize, out: &mut [u64]) {
    if levels == 0 {
        out[acc] += 1;
        return;
    }
    for &m in masks {
        fill_cover_counts(masks, levels - 1, acc | m, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn gf(q: u32) -> Arc<Field> {
        Field::from_order(q).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn u23() -> LinearCode {
        LinearCode::from_u32_rows(gf(2), &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap()
    }

    fn simplex() -> LinearCode {
        LinearCode::from_u32_rows(
            gf(2),
            &[
                vec![1, 0, 1, 0, 1, 0, 1],
                vec![0, 1, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rank_oracle() {
        let c = simplex();
        let mv = MatroidView::new(&c);
        assert_eq!(mv.rank_of(&[]), 0);
        assert_eq!(mv.rank_of(&[0]), 1);
        assert_eq!(mv.rank_of(&(0..7).collect::<Vec<_>>()), 3);

        let qr = crate::verify::example_code_gf3_11_5();
        assert_eq!(MatroidView::new(&qr).rank_of(&(0..11).collect::<Vec<_>>()), 5);

        // rank of a column set equals the dimension of the code punctured
        // down to exactly those coordinates
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for code in crate::suite::random_codes(&crate::suite::SuiteSpec {
            seed: 19,
            count: 20,
            field_orders: vec![2, 3, 5],
            n_max: 8,
            k_max: 4,
        }) {
            let mv = MatroidView::new(&code);
            for _ in 0..5 {
                let x: Vec<usize> = (0..code.n()).filter(|_| rng.gen_bool(0.5)).collect();
                if x.is_empty() {
                    continue;
                }
                let complement: Vec<usize> =
                    (0..code.n()).filter(|j| !x.contains(j)).collect();
                match code.puncture(&complement) {
                    Ok(punctured) => assert_eq!(mv.rank_of(&x), punctured.k()),
                    Err(Error::ZeroCode) => assert_eq!(mv.rank_of(&x), 0),
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
        }
    }

    #[test]
    fn charpoly_fixed_cases() {
        let single = LinearCode::from_u32_rows(gf(2), &[vec![1]]).unwrap();
        let p = MatroidView::new(&single)
            .characteristic_polynomial(&caps())
            .unwrap();
        assert_eq!(p.coefficients(), &[-1, 1]); // x - 1

        let p = MatroidView::new(&u23())
            .characteristic_polynomial(&caps())
            .unwrap();
        assert_eq!(p.coefficients(), &[2, -3, 1]); // x^2 - 3x + 2
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::zero());
        assert_eq!(p.eval(&BigInt::from(4)), BigInt::from(6));

        let loopy = LinearCode::from_u32_rows(gf(2), &[vec![1, 0]]).unwrap();
        let p = MatroidView::new(&loopy)
            .characteristic_polynomial(&caps())
            .unwrap();
        assert!(p.is_zero());
    }

    /// p(1) = 0 whenever the ground set is nonempty.
    #[test]
    fn charpoly_vanishes_at_one() {
        for code in [u23(), simplex(), crate::verify::example_code_gf3_11_5()] {
            let p = MatroidView::new(&code)
                .characteristic_polynomial(&caps())
                .unwrap();
            assert_eq!(p.eval(&BigInt::from(1)), BigInt::zero());
        }
    }

    #[test]
    fn critical_exponents() {
        assert_eq!(
            MatroidView::new(&u23()).critical_exponent(&caps()).unwrap(),
            Gamma::Finite(2)
        );
        let rep = LinearCode::from_u32_rows(gf(3), &[vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(
            MatroidView::new(&rep).critical_exponent(&caps()).unwrap(),
            Gamma::Finite(1)
        );
        let loopy = LinearCode::from_u32_rows(gf(2), &[vec![1, 0]]).unwrap();
        assert_eq!(
            MatroidView::new(&loopy).critical_exponent(&caps()).unwrap(),
            Gamma::Infinite
        );
    }

    #[test]
    fn girth_cases() {
        let repeated = LinearCode::from_u32_rows(gf(3), &[vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
        let (g, circuit) = MatroidView::new(&repeated).girth(&caps()).unwrap();
        assert_eq!(g, 2);
        assert_eq!(circuit, vec![0, 1]);
        assert_eq!(MatroidView::new(&repeated).girth_up_to(3), Some(2));
        assert_eq!(MatroidView::new(&repeated).girth_up_to(1), None);

        let (g, circuit) = MatroidView::new(&simplex()).girth(&caps()).unwrap();
        assert_eq!(g, 3);
        assert_eq!(circuit.len(), 3);

        // [4, 2] MDS over GF(3): girth k + 1 = 3
        let mds = LinearCode::from_u32_rows(gf(3), &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        let (g, _) = MatroidView::new(&mds).girth(&caps()).unwrap();
        assert_eq!(g, 3);
        assert_eq!(MatroidView::new(&mds).girth_up_to(4), Some(3));
    }

    /// The bounded circuit search agrees with the dual-distance route.
    #[test]
    fn bounded_girth_matches_dual_distance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 40 {
            let q = [2u32, 3][rng.gen_range(0..2)];
            let f = gf(q);
            let n = rng.gen_range(2..=7usize);
            let k = rng.gen_range(1..n);
            let rows: Vec<Vec<u32>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
                .collect();
            let Ok(code) = LinearCode::from_u32_rows(f, &rows) else {
                continue;
            };
            let mv = MatroidView::new(&code);
            let (g, _) = mv.girth(&caps()).unwrap();
            assert_eq!(mv.girth_up_to(n), Some(g));
            checked += 1;
        }
    }

    #[test]
    fn critical_theorem_fixed_cases() {
        let c = u23();
        assert_eq!(critical_theorem_count(&c, &[], 1, &caps()).unwrap(), 1);
        assert_eq!(
            critical_theorem_count(&c, &[0, 1, 2], 1, &caps()).unwrap(),
            0
        );
        assert_eq!(
            critical_theorem_count(&c, &[0, 1, 2], 2, &caps()).unwrap(),
            6
        );
        // a coordinate outside every codeword support
        let loopy = LinearCode::from_u32_rows(gf(2), &[vec![1, 0]]).unwrap();
        assert_eq!(critical_theorem_count(&loopy, &[1], 2, &caps()).unwrap(), 0);
    }

    #[test]
    fn tuple_cover_counts_match_single_queries() {
        let c = u23();
        for m in 1..=3u32 {
            let table = tuple_cover_counts(&c, m, &caps()).unwrap();
            for (mask, &count) in table.iter().enumerate() {
                let x: Vec<usize> = (0..c.n()).filter(|&j| mask & (1 << j) != 0).collect();
                assert_eq!(
                    count,
                    critical_theorem_count(&c, &x, m, &caps()).unwrap(),
                    "m={m} mask={mask:b}"
                );
            }
        }
    }

    #[test]
    fn flats_of_the_fano_matroid() {
        let mv_owner = simplex();
        let mv = MatroidView::new(&mv_owner);
        let flats = mv.flats(&caps()).unwrap();
        assert!(flats.contains(&vec![]));
        assert!(flats.contains(&(0..7).collect::<Vec<_>>()));
        let by_rank = |r: usize| flats.iter().filter(|f| mv.rank_of(f) == r).count();
        assert_eq!(by_rank(1), 7); // points
        assert_eq!(by_rank(2), 7); // lines
        assert_eq!(flats.len(), 16);
    }

    #[test]
    fn tangential_check_on_full_projective_plane() {
        let c = simplex();
        let verdict = MatroidView::new(&c)
            .tangential_block_check(2, &caps())
            .unwrap();
        assert!(verdict.simple);
        assert!(verdict.vanishes_at_qr);
        assert!(verdict.contractions_positive);
        assert!(verdict.holds());

        // a repeated column breaks simplicity
        let doubled = LinearCode::from_u32_rows(gf(2), &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let verdict = MatroidView::new(&doubled)
            .tangential_block_check(1, &caps())
            .unwrap();
        assert!(!verdict.simple);
    }

    /// Deletion-contraction as an independent reference implementation.
    fn charpoly_by_deletion_contraction(
        field: &Arc<Field>,
        ground: Vec<Vec<FieldElem>>,
        seed: Vec<Vec<FieldElem>>,
    ) -> Vec<i64> {
        let width = ground.first().or(seed.first()).map_or(0, |c| c.len());
        let mut ech = Echelon::new(field.clone(), width);
        for s in &seed {
            ech.insert(s);
        }
        let Some((e, rest)) = ground.split_first() else {
            return vec![1];
        };
        if ech.contains(e) {
            return vec![0]; // loop
        }
        let rest_rank = {
            let mut r = Echelon::new(field.clone(), width);
            for s in &seed {
                r.insert(s);
            }
            for c in rest {
                r.insert(c);
            }
            r.rank()
        };
        let full_rank = {
            let mut r = Echelon::new(field.clone(), width);
            for s in &seed {
                r.insert(s);
            }
            for c in &ground {
                r.insert(c);
            }
            r.rank()
        };
        let mut contracted_seed = seed.clone();
        contracted_seed.push(e.clone());
        let contraction = charpoly_by_deletion_contraction(field, rest.to_vec(), contracted_seed);
        if full_rank > rest_rank {
            // coloop: p(M) = (x - 1) p(M/e)
            let mut out = vec![0i64; contraction.len() + 1];
            for (i, &c) in contraction.iter().enumerate() {
                out[i + 1] += c;
                out[i] -= c;
            }
            out
        } else {
            let deletion = charpoly_by_deletion_contraction(field, rest.to_vec(), seed);
            let mut out = vec![0i64; deletion.len().max(contraction.len())];
            for (i, &c) in deletion.iter().enumerate() {
                out[i] += c;
            }
            for (i, &c) in contraction.iter().enumerate() {
                out[i] -= c;
            }
            out
        }
    }

    #[test]
    fn subset_sweep_matches_deletion_contraction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let q = [2u32, 3, 4][rng.gen_range(0..3)];
            let f = gf(q);
            let n = rng.gen_range(1..=8usize);
            let k = rng.gen_range(1..=4usize.min(n));
            let rows: Vec<Vec<u32>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
                .collect();
            let Ok(code) = LinearCode::from_u32_rows(f.clone(), &rows) else {
                continue;
            };
            let mv = MatroidView::new(&code);
            let fast = mv.characteristic_polynomial(&caps()).unwrap();
            let cols: Vec<Vec<FieldElem>> = (0..n).map(|j| code.generator().col(j)).collect();
            let mut slow = charpoly_by_deletion_contraction(&f, cols, vec![]);
            slow.resize(fast.coefficients().len().max(slow.len()), 0);
            let mut fast_padded = fast.coefficients().to_vec();
            fast_padded.resize(slow.len(), 0);
            assert_eq!(fast_padded, slow);
        }
    }

    /// The flagship equivalence: critical exponent = covering dimension.
    #[test]
    fn critical_exponent_equals_covering_dimension_small_suite() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 60 {
            let q = [2u32, 3, 4, 5][rng.gen_range(0..4)];
            let f = gf(q);
            let n = rng.gen_range(1..=8usize);
            let k = rng.gen_range(1..=4usize.min(n));
            let rows: Vec<Vec<u32>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
                .collect();
            let Ok(code) = LinearCode::from_u32_rows(f, &rows) else {
                continue;
            };
            let mv = MatroidView::new(&code);
            let ce = mv.critical_exponent(&caps()).unwrap();
            let gamma = code.covering_dimension_avoidance(&caps()).unwrap().value;
            assert_eq!(ce, gamma);
            checked += 1;
        }
    }

    /// Rank is monotone and submodular.
    #[test]
    fn rank_axioms_spot_check() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let owner = simplex();
        let mv = MatroidView::new(&owner);
        for _ in 0..200 {
            let a: Vec<usize> = (0..7).filter(|_| rng.gen_bool(0.4)).collect();
            let b: Vec<usize> = (0..7).filter(|_| rng.gen_bool(0.4)).collect();
            let union: Vec<usize> = {
                let mut u = a.clone();
                u.extend(&b);
                u.sort_unstable();
                u.dedup();
                u
            };
            let inter: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
            assert!(mv.rank_of(&inter) <= mv.rank_of(&a));
            assert!(mv.rank_of(&a) + mv.rank_of(&b) >= mv.rank_of(&union) + mv.rank_of(&inter));
        }
    }
}
