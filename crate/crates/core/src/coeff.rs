//! Exact coefficient rings.
//!
//! [`LaurentPoly`] lives in Z[v, v⁻¹] and carries the twisted algebra,
//! [`QPoly`] lives in Z[q] and carries the untwisted one. The two are linked by
//! q = v². Gaussian polynomials come in both flavours: [`gauss_sq`] is built
//! by exact division, [`q_binomial`] by the q-Pascal recurrence (much faster,
//! used on hot paths) and the two are tested against each other.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

macro_rules! sparse_poly {
    ($name:ident, $exp:ty) => {
        impl $name {
            pub fn zero() -> Self {
                Self { terms: BTreeMap::new() }
            }

            pub fn one() -> Self {
                Self::monomial(0, BigInt::one())
            }

            pub fn constant(c: impl Into<BigInt>) -> Self {
                Self::monomial(0, c.into())
            }

            pub fn monomial(e: $exp, c: impl Into<BigInt>) -> Self {
                let c = c.into();
                let mut terms = BTreeMap::new();
                if !c.is_zero() {
                    terms.insert(e, c);
                }
                Self { terms }
            }

            /// Builds a polynomial from `(exponent, coefficient)` pairs,
            /// summing repeated exponents.
            pub fn from_terms<I, C>(it: I) -> Self
            where
                I: IntoIterator<Item = ($exp, C)>,
                C: Into<BigInt>,
            {
                let mut p = Self::zero();
                for (e, c) in it {
                    p.add_term(e, c.into());
                }
                p
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn is_one(&self) -> bool {
                self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
            }

            pub fn coeff(&self, e: $exp) -> BigInt {
                self.terms.get(&e).cloned().unwrap_or_default()
            }

            /// Nonzero terms in increasing exponent order.
            pub fn terms(&self) -> impl DoubleEndedIterator<Item = ($exp, &BigInt)> + '_ {
                self.terms.iter().map(|(e, c)| (*e, c))
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn min_exp(&self) -> Option<$exp> {
                self.terms.keys().next().copied()
            }

            pub fn max_exp(&self) -> Option<$exp> {
                self.terms.keys().next_back().copied()
            }

            pub fn add_term(&mut self, e: $exp, c: BigInt) {
                if c.is_zero() {
                    return;
                }
                let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }

            pub fn scale(&self, c: &BigInt) -> Self {
                if c.is_zero() {
                    return Self::zero();
                }
                Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
            }

            /// Coefficients all nonnegative.
            pub fn is_nonnegative(&self) -> bool {
                self.terms.values().all(|c| !c.is_negative())
            }

            /// `self / g` when `g` divides `self` exactly; otherwise
            /// [`Error::NonExactDivision`].
            pub fn exact_div(&self, g: &Self) -> Result<Self> {
                let (gd, gc) = match g.terms.iter().next_back() {
                    Some((e, c)) => (i64::from(*e), c.clone()),
                    None => return Err(Error::NonExactDivision),
                };
                let gmin = i64::from(g.min_exp().unwrap());
                let floor = match self.min_exp() {
                    Some(m) => i64::from(m) - gmin,
                    None => return Ok(Self::zero()),
                };
                let mut r = self.clone();
                let mut quot = Self::zero();
                while let Some((&rd, rc)) = r.terms.iter().next_back() {
                    let shift = i64::from(rd) - gd;
                    if shift < floor {
                        return Err(Error::NonExactDivision);
                    }
                    let (qc, rem) = rc.div_rem(&gc);
                    if !rem.is_zero() {
                        return Err(Error::NonExactDivision);
                    }
                    let shift_e = <$exp>::try_from(shift).map_err(|_| Error::NonExactDivision)?;
                    for (e, c) in g.terms() {
                        let ee = <$exp>::try_from(i64::from(e) + shift)
                            .map_err(|_| Error::NonExactDivision)?;
                        r.add_term(ee, -(c * &qc));
                    }
                    quot.add_term(shift_e, qc);
                }
                Ok(quot)
            }

            pub fn pow(&self, k: u32) -> Self {
                let mut acc = Self::one();
                for _ in 0..k {
                    acc = &acc * self;
                }
                acc
            }
        }

        impl Default for $name {
            fn default() -> Self {
                Self::zero()
            }
        }

        impl<'a> Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(mut self, rhs: $name) -> $name {
                self += &rhs;
                self
            }
        }

        impl<'a> AddAssign<&'a $name> for $name {
            fn add_assign(&mut self, rhs: &$name) {
                for (e, c) in rhs.terms() {
                    self.add_term(e, c.clone());
                }
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: $name) {
                *self += &rhs;
            }
        }

        impl<'a> SubAssign<&'a $name> for $name {
            fn sub_assign(&mut self, rhs: &$name) {
                for (e, c) in rhs.terms() {
                    self.add_term(e, -c.clone());
                }
            }
        }

        impl SubAssign for $name {
            fn sub_assign(&mut self, rhs: $name) {
                *self -= &rhs;
            }
        }

        impl<'a> Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                let mut out = self.clone();
                out -= rhs;
                out
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(mut self, rhs: $name) -> $name {
                self -= &rhs;
                self
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                Self { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
            }
        }

        impl<'a> Neg for &'a $name {
            type Output = $name;
            fn neg(self) -> $name {
                -self.clone()
            }
        }

        impl<'a> Mul<&'a $name> for &'a $name {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                let mut out = $name::zero();
                for (e1, c1) in self.terms() {
                    for (e2, c2) in rhs.terms() {
                        out.add_term(e1 + e2, c1 * c2);
                    }
                }
                out
            }
        }

        impl Mul for $name {
            type Output = $name;
            fn mul(self, rhs: $name) -> $name {
                &self * &rhs
            }
        }
    };
}

/// An element of Z[v, v⁻¹].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

/// An element of Z[q].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    terms: BTreeMap<u32, BigInt>,
}

sparse_poly!(LaurentPoly, i64);
sparse_poly!(QPoly, u32);

impl LaurentPoly {
    /// `v^k`.
    pub fn v(k: i64) -> Self {
        Self::monomial(k, 1)
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// The bar involution v ↦ v⁻¹.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Membership in v⁻¹Z[v⁻¹].
    pub fn in_negative_part(&self) -> bool {
        self.max_exp().is_none_or(|e| e < 0)
    }

    /// Splits `f = h + p` with `h` bar-symmetric and `p ∈ v⁻¹Z[v⁻¹]`.
    pub fn pi_decompose(&self) -> (LaurentPoly, LaurentPoly) {
        let mut h = LaurentPoly::zero();
        for (e, c) in self.terms().filter(|(e, _)| *e >= 0) {
            h.add_term(e, c.clone());
            if e > 0 {
                h.add_term(-e, c.clone());
            }
        }
        let p = self - &h;
        (h, p)
    }

    /// Substitutes q = v² into a q-polynomial.
    pub fn from_q(p: &QPoly) -> Self {
        Self { terms: p.terms().map(|(e, c)| (2 * i64::from(e), c.clone())).collect() }
    }

    /// Inverse of [`LaurentPoly::from_q`]; `None` when an odd or negative
    /// exponent occurs.
    pub fn to_q(&self) -> Option<QPoly> {
        let mut out = QPoly::zero();
        for (e, c) in self.terms() {
            if e < 0 || e % 2 != 0 {
                return None;
            }
            out.add_term(u32::try_from(e / 2).ok()?, c.clone());
        }
        Some(out)
    }

    /// Value at v² = `v2`. `None` if an odd power of v occurs.
    pub fn specialize(&self, v2: &BigInt) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return None;
            }
            let k = e / 2;
            let pw = num_traits::pow(v2.clone(), k.unsigned_abs() as usize);
            let term = if k >= 0 {
                BigRational::from_integer(c * pw)
            } else {
                BigRational::new(c.clone(), pw)
            };
            acc += term;
        }
        Some(acc)
    }
}

impl QPoly {
    /// `q^k`.
    pub fn q(k: u32) -> Self {
        Self::monomial(k, 1)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.terms()
            .map(|(e, c)| c * num_traits::pow(q.clone(), e as usize))
            .sum()
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    pub fn degree(&self) -> Option<u32> {
        self.max_exp()
    }
}

fn fmt_terms<E: fmt::Display + Copy + PartialEq + From<u8>>(
    f: &mut fmt::Formatter<'_>,
    var: &str,
    terms: impl Iterator<Item = (E, BigInt)>,
) -> fmt::Result {
    let zero = E::from(0);
    let one = E::from(1);
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if e == zero {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}")?;
        }
        if e == one {
            f.write_str(var)?;
        } else {
            write!(f, "{var}^{e}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

struct SignedExp(i64);

impl fmt::Display for SignedExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < 0 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("v")?;
            } else {
                write!(f, "v^{}", SignedExp(e))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, "q", self.terms().rev().map(|(e, c)| (e, c.clone())))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// `v^{2k} - 1`.
fn v2k_minus_one(k: i64) -> LaurentPoly {
    let mut p = LaurentPoly::v(2 * k);
    p.add_term(0, BigInt::from(-1));
    p
}

/// The Gaussian polynomial [[N, t]] in v², computed as a product of quotients
/// with exact division at every step. Zero for `0 ≤ N < t`.
pub fn gauss_sq(n: i64, t: i64) -> Result<LaurentPoly> {
    if n < 0 || t < 0 {
        return Err(Error::NegativeArgument);
    }
    if n < t {
        return Ok(LaurentPoly::zero());
    }
    let mut acc = LaurentPoly::one();
    for i in 1..=t {
        acc = (&acc * &v2k_minus_one(n - i + 1)).exact_div(&v2k_minus_one(i))?;
    }
    Ok(acc)
}

/// The bar-symmetric version v^{-t(N-t)}[[N, t]].
pub fn gauss_sym(n: i64, t: i64) -> Result<LaurentPoly> {
    Ok(gauss_sq(n, t)?.shift(-t * (n - t)))
}

/// [[m]] = (v^{2m} - 1)/(v² - 1).
pub fn gauss_int(m: i64) -> Result<LaurentPoly> {
    gauss_sq(m, 1)
}

/// [[1]][[2]]⋯[[t]].
pub fn gauss_fact(t: i64) -> Result<LaurentPoly> {
    if t < 0 {
        return Err(Error::NegativeArgument);
    }
    let mut acc = LaurentPoly::one();
    for m in 1..=t {
        acc = &acc * &gauss_int(m)?;
    }
    Ok(acc)
}

/// [[N, t]] as a polynomial in q, via [N,t] = [N-1,t-1] + q^t [N-1,t].
/// Panics on negative input; callers guarantee nonnegativity.
pub fn q_binomial(n: u32, t: u32) -> QPoly {
    if t > n {
        return QPoly::zero();
    }
    let t = t.min(n - t);
    // row[k] holds the coefficient vector of [m, k] for the current m.
    let mut row: Vec<Vec<BigInt>> = alloc::vec![alloc::vec![BigInt::one()]];
    for m in 1..=n {
        let upto = (m as usize).min(t as usize);
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(upto + 1);
        for k in 0..=upto {
            let deg = k * (m as usize - k);
            let mut c = alloc::vec![BigInt::zero(); deg + 1];
            if k >= 1 {
                for (i, x) in row[k - 1].iter().enumerate() {
                    c[i] += x;
                }
            }
            if k < row.len() {
                for (i, x) in row[k].iter().enumerate() {
                    c[i + k] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    QPoly::from_terms(row[t as usize].iter().enumerate().map(|(i, c)| (i as u32, c.clone())))
}

/// [[m]] as a q-polynomial.
pub fn q_int(m: u32) -> QPoly {
    QPoly::from_terms((0..m).map(|i| (i, 1)))
}

/// [[m]]! as a q-polynomial.
pub fn q_factorial(m: u32) -> QPoly {
    (1..=m).fold(QPoly::one(), |acc, k| &acc * &q_int(k))
}

/// Memo table for q-binomials, keyed by `(N, t)`.
#[derive(Default, Debug, Clone)]
pub struct BinomialCache {
    table: BTreeMap<(u32, u32), QPoly>,
}

impl BinomialCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: u32, t: u32) -> &QPoly {
        self.table.entry((n, t)).or_insert_with(|| q_binomial(n, t))
    }
}

/// Renders a polynomial as a LaTeX string in the given variable.
pub fn latex_laurent(p: &LaurentPoly) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let mut first = true;
    for (e, c) in p.terms().rev() {
        let neg = c.is_negative();
        let mag = c.abs();
        if !first || neg {
            s.push_str(if neg { "-" } else { "+" });
        }
        first = false;
        if e == 0 {
            let _ = write!(s, "{mag}");
        } else {
            if !mag.is_one() {
                let _ = write!(s, "{mag}");
            }
            if e == 1 {
                s.push('v');
            } else {
                let _ = write!(s, "v^{{{e}}}");
            }
        }
    }
    if first {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(2, 1), (0, 1)]).bar(), lp(&[(-2, 1), (0, 1)]));
        for n in 0..=8 {
            for t in 0..=n {
                let g = gauss_sym(n, t).unwrap();
                assert_eq!(g.bar(), g, "N={n} t={t}");
            }
        }
    }

    #[test]
    fn gauss_small_values() {
        assert_eq!(gauss_sq(2, 1).unwrap(), lp(&[(2, 1), (0, 1)]));
        assert_eq!(gauss_sym(2, 1).unwrap(), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(gauss_sq(5, 0).unwrap(), LaurentPoly::one());
        assert!(gauss_sq(2, 3).unwrap().is_zero());
        assert_eq!(gauss_sq(-1, 0), Err(Error::NegativeArgument));
        assert_eq!(gauss_sq(3, -1), Err(Error::NegativeArgument));
        let two = BigInt::from(2);
        assert_eq!(gauss_sq(3, 1).unwrap().specialize(&two).unwrap(), BigRational::from_integer(7.into()));
        assert_eq!(gauss_sq(4, 2).unwrap().specialize(&two).unwrap(), BigRational::from_integer(35.into()));
    }

    #[test]
    fn pascal_and_dp_agree_with_product() {
        for n in 0..=10u32 {
            for t in 0..=n {
                let prod = gauss_sq(n as i64, t as i64).unwrap();
                assert_eq!(LaurentPoly::from_q(&q_binomial(n, t)), prod);
                if n >= 1 && t >= 1 && n <= 8 {
                    let prev = gauss_sq(n as i64 - 1, t as i64 - 1).unwrap();
                    let lhs = (&prev * &v2k_minus_one(n as i64)).exact_div(&v2k_minus_one(t as i64));
                    assert_eq!(lhs.unwrap(), prod);
                }
            }
        }
        assert_eq!(LaurentPoly::from_q(&q_factorial(4)), gauss_fact(4).unwrap());
    }

    #[test]
    fn eval_and_specialize() {
        let p = QPoly::from_terms([(1u32, 1), (0, 1)]);
        assert_eq!(p.eval_i64(2), BigInt::from(3));
        assert_eq!(p.eval_i64(3), BigInt::from(4));
        assert!(lp(&[(1, 1)]).specialize(&BigInt::from(2)).is_none());
        let half = lp(&[(-2, 1)]).specialize(&BigInt::from(2)).unwrap();
        assert_eq!(half, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn pi_decompose_examples() {
        let f = lp(&[(1, 1), (0, 2), (-1, 1)]);
        assert_eq!(f.pi_decompose(), (f.clone(), LaurentPoly::zero()));
        let f = lp(&[(2, 1), (-1, 1)]);
        let (h, p) = f.pi_decompose();
        assert_eq!(h, lp(&[(2, 1), (-2, 1)]));
        assert_eq!(p, lp(&[(-1, 1), (-2, -1)]));
        let f = lp(&[(-1, 3), (-4, -1)]);
        assert_eq!(f.pi_decompose(), (LaurentPoly::zero(), f.clone()));
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(3, 1), (-2, 5), (0, -1)]);
        let b = lp(&[(1, 2), (-1, 1)]);
        assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        assert_eq!(lp(&[(2, 1), (0, 1)]).exact_div(&lp(&[(2, 1), (0, -1)])), Err(Error::NonExactDivision));
        assert_eq!(a.exact_div(&LaurentPoly::zero()), Err(Error::NonExactDivision));
        let q = QPoly::from_terms([(2u32, 1), (0, -1)]);
        assert_eq!(q.exact_div(&QPoly::from_terms([(1u32, 1), (0, -1)])).unwrap(), QPoly::from_terms([(1u32, 1), (0, 1)]));
        assert_eq!(QPoly::one().exact_div(&QPoly::q(1)), Err(Error::NonExactDivision));
    }

    #[test]
    fn display() {
        use alloc::string::ToString;
        assert_eq!(lp(&[(2, 1), (0, -3), (-1, 1)]).to_string(), "v^2 - 3 + v^(-1)");
        assert_eq!(QPoly::from_terms([(1u32, 1), (0, 1)]).to_string(), "q + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
