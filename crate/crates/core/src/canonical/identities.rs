//! Gaussian polynomial identities behind the (2,1) and (2,2) slice formulas.
//!
//! Each function returns `(lhs, rhs)`; the identity holds when they agree.
//! `[N, t]` is the symmetric Gaussian polynomial and `bar[[N, t]]` the bar of
//! the one in v². The factor `[k−1+i, k−1]` is read as δ_{i,0} when k = 0.

use crate::coeff::{gauss_sq, gauss_sym, LaurentPoly};
use crate::error::{Error, Result};

fn sign(i: i64) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

fn lead_sym(k: i64, i: i64) -> Result<LaurentPoly> {
    if k == 0 {
        return Ok(if i == 0 { LaurentPoly::one() } else { LaurentPoly::zero() });
    }
    gauss_sym(k - 1 + i, k - 1)
}

fn lead_bar(k: i64, i: i64) -> Result<LaurentPoly> {
    if k == 0 {
        return Ok(if i == 0 { LaurentPoly::one() } else { LaurentPoly::zero() });
    }
    Ok(gauss_sq(k - 1 + i, k - 1)?.bar())
}

fn check(m: i64, k: i64) -> Result<()> {
    if k < 0 || m < k {
        return Err(Error::Invalid(alloc::format!("need m >= k >= 0, got m = {m}, k = {k}")));
    }
    Ok(())
}

/// Σ_i (−1)^i v^{i(m−k)} [k−1+i, k−1][m, δ−i] = v^{−kδ}[m−k, δ].
pub fn lemma_one(m: i64, k: i64, delta: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    check(m, k)?;
    let mut lhs = LaurentPoly::zero();
    for i in 0..=delta {
        let term = &lead_sym(k, i)? * &gauss_sym(m, delta - i)?;
        lhs += &term.shift(i * (m - k)).scale(&sign(i).into());
    }
    let rhs = gauss_sym(m - k, delta)?.shift(-k * delta);
    Ok((lhs, rhs))
}

/// Σ_i (−1)^i v^{i(m−k−n)} [k−1+i, k−1][m+n, δ−i]
/// = Σ_{t ≤ min(δ,n)} v^{−k(δ−t)−nδ+t(m+n)} [m−k, δ−t][n, t].
pub fn lemma_two(m: i64, k: i64, n: i64, delta: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    check(m, k)?;
    let mut lhs = LaurentPoly::zero();
    for i in 0..=delta {
        let term = &lead_sym(k, i)? * &gauss_sym(m + n, delta - i)?;
        lhs += &term.shift(i * (m - k - n)).scale(&sign(i).into());
    }
    let mut rhs = LaurentPoly::zero();
    for t in 0..=delta.min(n) {
        let term = &gauss_sym(m - k, delta - t)? * &gauss_sym(n, t)?;
        rhs += &term.shift(-k * (delta - t) - n * delta + t * (m + n));
    }
    Ok((lhs, rhs))
}

/// The form of [`lemma_two`] in barred v²-brackets:
/// Σ_i (−1)^i v^{i(2δ−2n−i−1)+2δ(n+k)} bar[[k−1+i, k−1]] bar[[m+n, δ−i]]
/// = Σ_t v^{2t(δ+n+k−t)} bar[[m−k, δ−t]] bar[[n, t]].
pub fn identity_two_barred(m: i64, k: i64, n: i64, delta: i64) -> Result<(LaurentPoly, LaurentPoly)> {
    check(m, k)?;
    let mut lhs = LaurentPoly::zero();
    for i in 0..=delta {
        let term = &lead_bar(k, i)? * &gauss_sq(m + n, delta - i)?.bar();
        lhs += &term.shift(i * (2 * delta - 2 * n - i - 1) + 2 * delta * (n + k)).scale(&sign(i).into());
    }
    let mut rhs = LaurentPoly::zero();
    for t in 0..=delta.min(n) {
        let term = &gauss_sq(m - k, delta - t)?.bar() * &gauss_sq(n, t)?.bar();
        rhs += &term.shift(2 * t * (delta + n + k - t));
    }
    Ok((lhs, rhs))
}
