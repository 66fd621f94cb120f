//! Multiplication by semisimple generators.
//!
//! The untwisted product u_α ⋄ u_A has coefficients in Z[q]; the twisted
//! product ũ_α ũ_A has coefficients in Z[v, v⁻¹]. In both cases the sum runs
//! over matrices T with row(T) = α and the result sits at A + T - T̃⁺, where
//! T̃⁺ moves every entry one row down and drops what lands on or below the
//! diagonal.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{BinomialCache, LaurentPoly, QPoly};
use crate::error::{Error, Result};
use crate::matrix::{CyclicMatrix, DimVector};

/// Which PBW-type basis a [`HallVector`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// u_A, coefficients in q.
    U,
    /// ũ_A = v^{δ(A)} u_A, coefficients in v.
    UTilde,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::U => "u",
            Basis::UTilde => "utilde",
        }
    }
}

/// Coefficient rings usable in a [`HallVector`]. The ring fixes the basis,
/// so combining vectors of different bases is a type error.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + PartialEq + Eq + for<'a> core::ops::AddAssign<&'a Self>
{
    const BASIS: Basis;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl Coefficient for QPoly {
    const BASIS: Basis = Basis::U;
    fn zero() -> Self {
        QPoly::zero()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coefficient for LaurentPoly {
    const BASIS: Basis = Basis::UTilde;
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// A finite linear combination of basis symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallVector<C> {
    n: usize,
    terms: BTreeMap<CyclicMatrix, C>,
}

impl<C: Coefficient> HallVector<C> {
    pub fn new(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn basis_element(a: CyclicMatrix, c: C) -> Self {
        let mut v = Self::new(a.n());
        v.add_term(a, c);
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        C::BASIS
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicMatrix, &C)> {
        self.terms.iter()
    }

    /// Terms ordered by the text form of their matrices.
    pub fn sorted_terms(&self) -> Vec<(&CyclicMatrix, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(a, _)| a.to_string());
        v
    }

    pub fn coeff(&self, a: &CyclicMatrix) -> C {
        self.terms.get(a).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, a: CyclicMatrix, c: C) {
        debug_assert_eq!(a.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::new(self.n);
        for (a, x) in self.terms() {
            out.add_term(a.clone(), x.mul_ref(c));
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for HallVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match C::BASIS {
            Basis::U => "u",
            Basis::UTilde => "ũ",
        };
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{sym}[{a}]")?;
        }
        Ok(())
    }
}

/// T̃⁺: entry (i, j) moves to (i+1, j); entries with j ≤ i+1 vanish.
pub fn tilde_shift(t: &CyclicMatrix) -> CyclicMatrix {
    let mut out = CyclicMatrix::zero(t.n()).expect("rank already validated");
    for ((i, j), a) in t.entries() {
        if j > i + 1 {
            out.add_raw(i + 1, j, a);
        }
    }
    out
}

/// A + T - T̃⁺, or `None` if some entry would be negative.
pub fn apply_t(a: &CyclicMatrix, t: &CyclicMatrix) -> Option<CyclicMatrix> {
    let mut c = a.clone();
    for ((i, j), x) in t.entries() {
        c.add_raw(i, j, x);
    }
    for ((i, j), x) in tilde_shift(t).entries() {
        if c.get(i, j) < x {
            return None;
        }
        c.add_raw(i, j, -x);
    }
    Some(c)
}

/// Column window of the summation: `j ≤ i + ℓ(A) + 1`.
fn window(a: &CyclicMatrix) -> i64 {
    a.loewy_length() + 1
}

/// Distributes `total` over `caps.len()` slots with per-slot caps.
fn compositions(total: i64, caps: &[i64], out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
    if cur.len() == caps.len() {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest: i64 = caps[cur.len() + 1..].iter().sum();
    let cap = caps[cur.len()].min(total);
    let lo = (total - rest).max(0);
    for x in lo..=cap {
        cur.push(x);
        compositions(total - x, caps, out, cur);
        cur.pop();
    }
}

fn enumerate_rows(alpha: &DimVector, a: &CyclicMatrix, caps_of: impl Fn(i64, i64) -> i64) -> Vec<CyclicMatrix> {
    let n = a.n() as i64;
    let w = window(a);
    let mut per_row: Vec<Vec<Vec<i64>>> = Vec::new();
    for i in 1..=n {
        let caps: Vec<i64> = (1..=w).map(|k| caps_of(i, i + k).min(alpha.get(i))).collect();
        let mut rows = Vec::new();
        compositions(alpha.get(i), &caps, &mut rows, &mut Vec::new());
        per_row.push(rows);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n as usize];
    if per_row.iter().any(|r| r.is_empty()) {
        return out;
    }
    loop {
        let mut t = CyclicMatrix::zero(a.n()).expect("rank already validated");
        for (r, &k) in idx.iter().enumerate() {
            let i = r as i64 + 1;
            for (slot, &x) in per_row[r][k].iter().enumerate() {
                t.add_raw(i, i + 1 + slot as i64, x);
            }
        }
        out.push(t);
        let mut r = 0;
        loop {
            if r == idx.len() {
                return out;
            }
            idx[r] += 1;
            if idx[r] < per_row[r].len() {
                break;
            }
            idx[r] = 0;
            r += 1;
        }
    }
}

/// Every T with row(T) = α and A + T - T̃⁺ ≥ 0 entrywise.
pub fn enumerate_t(alpha: &DimVector, a: &CyclicMatrix) -> Result<Vec<CyclicMatrix>> {
    check_alpha(alpha, a)?;
    let all = enumerate_rows(alpha, a, |_, _| i64::MAX);
    Ok(all.into_iter().filter(|t| apply_t(a, t).is_some()).collect())
}

/// The T that can carry a nonzero coefficient: t_{i,j} ≤ a_{i+1,j} for
/// j > i+1. For any other admissible T some bracket is [[N, t]] with N < t.
pub fn enumerate_t_supported(alpha: &DimVector, a: &CyclicMatrix) -> Result<Vec<CyclicMatrix>> {
    check_alpha(alpha, a)?;
    Ok(enumerate_rows(alpha, a, |i, j| if j == i + 1 { i64::MAX } else { a.get(i + 1, j) }))
}

fn check_alpha(alpha: &DimVector, a: &CyclicMatrix) -> Result<()> {
    if alpha.n() != a.n() {
        return Err(Error::RankMismatch { left: alpha.n(), right: a.n() });
    }
    if !alpha.is_nonnegative() {
        return Err(Error::Invalid("dimension vector has a negative entry".into()));
    }
    Ok(())
}

/// Σ_{1≤i≤n, i<l<j} (a_{ij} t_{il} - t_{ij} t_{i+1,l}).
pub fn untwisted_exponent(a: &CyclicMatrix, t: &CyclicMatrix) -> i64 {
    let n = a.n() as i64;
    let w = window(a);
    let mut e = 0;
    for i in 1..=n {
        for j in i + 2..=i + w {
            for l in i + 1..j {
                e += a.get(i, j) * t.get(i, l) - t.get(i, j) * t.get(i + 1, l);
            }
        }
    }
    e
}

/// The exponent f_{A,T} of the twisted formula.
pub fn twisted_exponent(a: &CyclicMatrix, t: &CyclicMatrix) -> i64 {
    let n = a.n() as i64;
    let w = window(a);
    let mut f = 0;
    for i in 1..=n {
        for j in i + 1..=i + w {
            for l in i + 1..=j {
                let til = t.get(i, l);
                if til == 0 {
                    continue;
                }
                f += a.get(i, j) * til - t.get(i - 1, j) * til;
                if j > l {
                    f += -a.get(i + 1, j) * til + t.get(i, j) * til;
                }
            }
        }
    }
    f
}

/// Pairs (N, t) of the bracket product Π [[a_{ij} + t_{ij} - t_{i-1,j}, t_{ij}]].
fn bracket_args(a: &CyclicMatrix, t: &CyclicMatrix) -> Vec<(u32, u32)> {
    t.entries()
        .map(|((i, j), x)| {
            let top = a.get(i, j) + x - t.get(i - 1, j);
            assert!(top >= 0, "negative bracket argument");
            (top as u32, x as u32)
        })
        .collect()
}

/// u_α ⋄ u_A in the integral Hall algebra.
pub fn mult_semisimple_q(alpha: &DimVector, a: &CyclicMatrix) -> Result<HallVector<QPoly>> {
    mult_q_with(&mut BinomialCache::new(), alpha, a)
}

pub(crate) fn mult_q_with(
    cache: &mut BinomialCache,
    alpha: &DimVector,
    a: &CyclicMatrix,
) -> Result<HallVector<QPoly>> {
    let mut out = HallVector::new(a.n());
    for t in enumerate_t_supported(alpha, a)? {
        let e = untwisted_exponent(a, &t);
        assert!(e >= 0, "negative exponent {e} for A={a}, T={t}");
        let mut coeff = QPoly::q(e as u32);
        for (top, bot) in bracket_args(a, &t) {
            coeff = &coeff * cache.get(top, bot);
        }
        if let Some(c) = apply_t(a, &t) {
            out.add_term(c, coeff);
        }
    }
    Ok(out)
}

/// ũ_α ũ_A in the twisted algebra.
pub fn mult_semisimple_twisted(alpha: &DimVector, a: &CyclicMatrix) -> Result<HallVector<LaurentPoly>> {
    mult_v_with(&mut BinomialCache::new(), alpha, a)
}

pub(crate) fn mult_v_with(
    cache: &mut BinomialCache,
    alpha: &DimVector,
    a: &CyclicMatrix,
) -> Result<HallVector<LaurentPoly>> {
    let mut out = HallVector::new(a.n());
    for t in enumerate_t_supported(alpha, a)? {
        let mut coeff = LaurentPoly::v(twisted_exponent(a, &t));
        for (top, bot) in bracket_args(a, &t) {
            coeff = &coeff * &LaurentPoly::from_q(cache.get(top, bot)).bar();
        }
        if let Some(c) = apply_t(a, &t) {
            out.add_term(c, coeff);
        }
    }
    Ok(out)
}

/// Extends u_α ⋄ (-) linearly.
pub fn mult_q_vec(alpha: &DimVector, x: &HallVector<QPoly>) -> Result<HallVector<QPoly>> {
    let mut cache = BinomialCache::new();
    mult_q_vec_with(&mut cache, alpha, x)
}

pub(crate) fn mult_q_vec_with(
    cache: &mut BinomialCache,
    alpha: &DimVector,
    x: &HallVector<QPoly>,
) -> Result<HallVector<QPoly>> {
    let mut out = HallVector::new(x.n());
    for (a, c) in x.terms() {
        for (b, d) in mult_q_with(cache, alpha, a)?.terms() {
            out.add_term(b.clone(), d * c);
        }
    }
    Ok(out)
}

/// Extends ũ_α (-) linearly.
pub fn mult_twisted_vec(alpha: &DimVector, x: &HallVector<LaurentPoly>) -> Result<HallVector<LaurentPoly>> {
    let mut cache = BinomialCache::new();
    mult_v_vec_with(&mut cache, alpha, x)
}

pub(crate) fn mult_v_vec_with(
    cache: &mut BinomialCache,
    alpha: &DimVector,
    x: &HallVector<LaurentPoly>,
) -> Result<HallVector<LaurentPoly>> {
    let mut out = HallVector::new(x.n());
    for (a, c) in x.terms() {
        for (b, d) in mult_v_with(cache, alpha, a)?.terms() {
            out.add_term(b.clone(), d * c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(s: &str) -> CyclicMatrix {
        s.parse().unwrap()
    }

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn tilde_examples() {
        assert!(tilde_shift(&m("n=2;1,2:1")).is_zero());
        assert_eq!(tilde_shift(&m("n=2;1,3:1")), m("n=2;2,3:1"));
        // row n wraps to row 1
        assert_eq!(tilde_shift(&m("n=2;2,4:1")), m("n=2;1,2:1"));
    }

    #[test]
    fn t_enumeration() {
        assert_eq!(enumerate_t(&dv(&[1, 0]), &m("n=2;1,2:1")).unwrap(), vec![m("n=2;1,2:1")]);
        let mut ts = enumerate_t(&dv(&[1, 0]), &m("n=2;2,3:1")).unwrap();
        ts.sort();
        assert_eq!(ts, vec![m("n=2;1,2:1"), m("n=2;1,3:1")]);
        let z = CyclicMatrix::zero(2).unwrap();
        assert_eq!(enumerate_t(&dv(&[0, 0]), &m("n=2;1,3:2")).unwrap(), vec![z]);
    }

    #[test]
    fn untwisted_examples() {
        let s1 = m("n=2;1,2:1");
        let p = mult_semisimple_q(&dv(&[1, 0]), &s1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&m("n=2;1,2:2")), QPoly::from_terms([(1u32, 1), (0, 1)]));
        let p = mult_semisimple_q(&dv(&[1, 0]), &m("n=2;2,3:1")).unwrap();
        assert_eq!(p.coeff(&m("n=2;1,2:1;2,3:1")), QPoly::one());
        assert_eq!(p.coeff(&m("n=2;1,3:1")), QPoly::one());
        assert_eq!(p.len(), 2);
        let a = m("n=3;1,3:2;2,5:1");
        let p = mult_semisimple_q(&dv(&[0, 0, 0]), &a).unwrap();
        assert_eq!(p, HallVector::basis_element(a, QPoly::one()));
    }

    #[test]
    fn twisted_example() {
        let p = mult_semisimple_twisted(&dv(&[2, 0]), &m("n=2;2,3:1")).unwrap();
        let mut want = HallVector::new(2);
        want.add_term(m("n=2;1,2:1;1,3:1"), LaurentPoly::one());
        want.add_term(m("n=2;1,2:2;2,3:1"), LaurentPoly::v(-2));
        assert_eq!(p, want);
    }

    #[test]
    fn extra_admissible_t_have_zero_coefficient() {
        let a = m("n=2;1,2:1;2,3:2;2,4:1");
        let alpha = dv(&[2, 1]);
        let sup = enumerate_t_supported(&alpha, &a).unwrap();
        for t in enumerate_t(&alpha, &a).unwrap() {
            if sup.contains(&t) {
                continue;
            }
            let zero = bracket_args(&a, &t).into_iter().any(|(top, bot)| top < bot);
            assert!(zero, "T={t}");
        }
    }

    #[test]
    fn hall_vector_ops() {
        let a = m("n=2;1,2:1");
        let x = HallVector::basis_element(a.clone(), QPoly::from(2));
        let y = x.add(&x.scale(&QPoly::from(-1))).unwrap();
        assert!(y.is_zero());
        assert_eq!(x.coeff(&a).eval(&BigInt::from(5)), BigInt::from(2));
        assert!(x.add(&HallVector::new(3)).is_err());
        assert_eq!(x.basis(), Basis::U);
    }
}
