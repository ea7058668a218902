//! Closed forms: Gaussian binomials, the MDS weight distribution, the
//! single-spike support weight distribution of dual Hamming codes, the
//! full-support subcode count A_n^(r) in its summation form, and the
//! positivity decomposition used for the d-perp = 4 bound.
//!
//! Everything here is pure arithmetic in arbitrary precision; coefficients
//! outgrow 64 bits quickly as q and k grow and the cross-checks demand exact
//! equality. Attaching a formula to a concrete code (validity windows such
//! as r > k + 1 - d(C-perp)) is the caller's responsibility.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn power(q: u64, e: u64) -> BigInt {
    BigInt::from(q).pow(e as u32)
}

pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    exact_div(num, &den)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (quot, rem) = num_integer_div_rem(num, den);
    debug_assert!(rem.is_zero(), "division must be exact");
    quot
}

fn num_integer_div_rem(num: BigInt, den: &BigInt) -> (BigInt, BigInt) {
    let quot = &num / den;
    let rem = &num - &quot * den;
    (quot, rem)
}

/// The Gaussian binomial coefficient: the number of r-dimensional subspaces
/// of GF(q)^k. Zero when r > k.
pub fn gaussian_binomial(k: u64, r: u64, q: u64) -> BigInt {
    if r > k {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        num *= power(q, k - i) - 1;
        den *= power(q, i + 1) - 1;
    }
    exact_div(num, &den)
}

/// Weight distribution of an [n, k] MDS code over GF(q), as a vector indexed
/// by weight. Entry 0 is zero (the zero word is not counted); entries below
/// the minimum distance d = n - k + 1 are zero.
pub fn mds_weight_distribution(n: u64, k: u64, q: u64) -> Vec<BigInt> {
    assert!(k >= 1 && k <= n);
    let d = n - k + 1;
    let mut out = vec![BigInt::zero(); n as usize + 1];
    for w in d..=n {
        let mut sum = BigInt::zero();
        for j in 0..=(w - d) {
            let term = binomial(w - 1, j) * power(q, w - d - j);
            if j % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        out[w as usize] = binomial(n, w) * BigInt::from(q - 1) * sum;
    }
    out
}

/// The identity A_n / (q-1) = A_{n-1} / n + (-1)^{k-1} C(n-2, k-1) satisfied
/// by the MDS weight distribution.
pub fn mds_chain_identity(n: u64, k: u64, q: u64) -> bool {
    if n < 2 {
        return true;
    }
    let dist = mds_weight_distribution(n, k, q);
    let lhs = BigRational::new(dist[n as usize].clone(), BigInt::from(q - 1));
    let mut rhs = BigRational::new(dist[n as usize - 1].clone(), BigInt::from(n));
    let tail = BigRational::from(binomial(n - 2, k - 1));
    if (k - 1).is_multiple_of(2) {
        rhs += tail;
    } else {
        rhs -= tail;
    }
    lhs == rhs
}

/// Support weight distribution of the dual Hamming code with parameters
/// (q, k): for each subcode dimension r there is a single support weight
/// i = (q^k - q^{k-r}) / (q - 1) carrying all [k r]_q subcodes.
pub fn dual_hamming_swd(q: u64, k: u64, r: u64) -> (BigInt, BigInt) {
    assert!(r >= 1 && r <= k);
    let i = exact_div(power(q, k) - power(q, k - r), &BigInt::from(q - 1));
    (i, gaussian_binomial(k, r, q))
}

/// The alternating sum for the number of full-support r-dimensional
/// subcodes of an [n, k] code over GF(q):
/// sum_{j=0}^{k-r} (-1)^j [k-j choose k-r-j]_q C(n, j).
///
/// Pure arithmetic in (n, k, q, r); it equals A_n^(r) of a concrete code
/// only when r > k + 1 - d(C-perp), which the caller must ensure.
pub fn klove_an(n: u64, k: u64, q: u64, r: u64) -> BigInt {
    assert!(r >= 1 && r <= k);
    let mut sum = BigInt::zero();
    for j in 0..=(k - r) {
        let term = gaussian_binomial(k - j, k - r - j, q) * binomial(n, j);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// The value A_n^(k-2) together with its completed-square decomposition
/// (a shifted square plus a positive constant), which proves positivity for
/// every n once k >= 3.
pub struct D4Decomposition {
    pub value: BigInt,
    pub square_term: BigRational,
    pub tail_term: BigRational,
}

/// Evaluate A_n^(k-2) for a code with d-perp = 4 and re-derive it through
/// the completed-square form; both routes must agree exactly, the result
/// must be integral, and it must be positive.
pub fn d4_positivity(n: u64, k: u64, q: u64) -> Result<D4Decomposition> {
    if k < 3 {
        return Err(Error::InvalidParameter(
            "d-perp = 4 forces k >= 3 (Singleton)".into(),
        ));
    }
    let value = klove_an(n, k, q, k - 2);

    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let b = BigRational::from(gaussian_binomial(k - 1, 1, q)); // (q^{k-1}-1)/(q-1)
    let shift = BigRational::from(BigInt::from(n)) - (&b + &half);
    let square_term = &half * &shift * &shift;

    let qk1 = power(q, k - 1);
    let tail_num = BigInt::from(4) * (&qk1 - BigInt::from(q)) * (&qk1 - BigInt::one())
        - (BigInt::from(q * q) - BigInt::one());
    let tail_den = BigInt::from(8) * (BigInt::from(q * q) - BigInt::one());
    let tail_term = BigRational::new(tail_num, tail_den);

    let recombined = &square_term + &tail_term;
    if !recombined.is_integer() || recombined.to_integer() != value {
        return Err(Error::InternalCheck(format!(
            "completed-square decomposition disagrees at n={n} k={k} q={q}"
        )));
    }
    if !value.is_positive() {
        return Err(Error::InternalCheck(format!(
            "A_n^(k-2) not positive at n={n} k={k} q={q}"
        )));
    }
    Ok(D4Decomposition {
        value,
        square_term,
        tail_term,
    })
}

/// The one-step recursion relating full-support subcode counts of an [n, k]
/// code to those of an [n, k-1] code with the same dual distance delta:
/// A_n^(k-d+2)(C) = A_n^(k-d+1)(C') + q^{k-d+2} A_n^(k-d+2)(C').
///
/// Valid for delta >= 3 and k >= delta; returns whether the two sides agree
/// (a Pascal identity for Gaussian binomials, so it always should).
pub fn recursion_identity(n: u64, k: u64, q: u64, delta: u64) -> Result<bool> {
    if delta < 3 || k < delta {
        return Err(Error::InvalidParameter(format!(
            "recursion needs delta >= 3 and k >= delta, got k={k} delta={delta}"
        )));
    }
    let r = k - delta + 2;
    let lhs = klove_an(n, k, q, r);
    let rhs = klove_an(n, k - 1, q, r - 1) + power(q, r) * klove_an(n, k - 1, q, r);
    Ok(lhs == rhs)
}
