//! Closed forms for the n = 2 slices of Loewy length at most 2.
//!
//! Every such matrix has the shape
//!
//! ```text
//! ( 0 a c 0 )
//! ( 0 0 b d )
//! ```
//!
//! i.e. a = a_{12}, c = a_{13}, b = a_{23}, d = a_{24}. For fixed (a,b,c,d)
//! the poset ideal is {A_(k1,k2) : (k1,k2) ≤ (c,d)} where A_(k1,k2) moves
//! k1 and k2 units from the long segments to the short ones; see [`member`].

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{CanonicalElement, CanonicalEngine};
use crate::coeff::{gauss_sq, gauss_sym, BinomialCache, LaurentPoly};
use crate::error::{Error, Result};
use crate::hallmult::{mult_v_vec_with, HallVector};
use crate::matrix::CyclicMatrix;
use crate::words::{wp, Word};

/// Loewy length and periodicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SliceKey {
    pub l: i64,
    pub p: i64,
}

impl SliceKey {
    pub fn of(a: &CyclicMatrix) -> Self {
        SliceKey { l: a.loewy_length(), p: a.periodicity() }
    }
}

/// The parameters (a, b, c, d) of a rank-2 matrix with Loewy length ≤ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Params {
    pub fn of(m: &CyclicMatrix) -> Option<Params> {
        if m.n() != 2 || m.loewy_length() > 2 {
            return None;
        }
        Some(Params { a: m.get(1, 2), b: m.get(2, 3), c: m.get(1, 3), d: m.get(2, 4) })
    }

    pub fn matrix(&self) -> Result<CyclicMatrix> {
        CyclicMatrix::from_entries(2, [((1, 2), self.a), ((2, 3), self.b), ((1, 3), self.c), ((2, 4), self.d)])
    }
}

/// A_(k1,k2) for the family of `p`.
pub fn member(p: &Params, k1: i64, k2: i64) -> Result<CyclicMatrix> {
    let s = p.c + p.d - k1 - k2;
    Params { a: p.a + s, b: p.b + s, c: k1, d: k2 }.matrix()
}

fn bar_sq(n: i64, t: i64) -> Result<LaurentPoly> {
    Ok(gauss_sq(n, t)?.bar())
}

fn signed(e: i64, x: LaurentPoly) -> LaurentPoly {
    if e % 2 == 0 {
        x
    } else {
        -x
    }
}

/// m^{(k1,k2)} = Σ_{t ≤ k} v^{(a−b−k1+k2+t1−t2)(k1−k2−t1+t2)}
/// bar[[a+c+d−t1−t2, k1−t1]] bar[[b+c+d−t1−t2, k2−t2]] ũ_(t1,t2).
pub fn family_monomial(p: &Params, k1: i64, k2: i64) -> Result<HallVector<LaurentPoly>> {
    let mut out = HallVector::new(2);
    for t1 in 0..=k1 {
        for t2 in 0..=k2 {
            let x = p.a - p.b - k1 + k2 + t1 - t2;
            let y = k1 - k2 - t1 + t2;
            let s = p.c + p.d - t1 - t2;
            let coeff = &bar_sq(p.a + s, k1 - t1)? * &bar_sq(p.b + s, k2 - t2)?;
            out.add_term(member(p, t1, t2)?, coeff.shift(x * y));
        }
    }
    Ok(out)
}

/// Σ h_B m^{(B)} over family members, expanded with [`family_monomial`].
pub fn expand_family_combination(
    p: &Params,
    combo: &BTreeMap<(i64, i64), LaurentPoly>,
) -> Result<HallVector<LaurentPoly>> {
    let mut out = HallVector::new(2);
    for ((k1, k2), h) in combo {
        for (b, x) in family_monomial(p, *k1, *k2)?.terms() {
            out.add_term(b.clone(), x * h);
        }
    }
    Ok(out)
}

/// The coefficient of ũ_(0,0) in the closed form for slice (2,2) with a ≠ b.
pub fn g00(p: &Params) -> Result<Option<LaurentPoly>> {
    let Params { a, b, c, d } = *p;
    if a == b || c < 1 || d < 1 {
        return Ok(None);
    }
    // The a < b case is the a > b case with the roles of the rows swapped.
    let (a, b, c, d) = if a > b { (a, b, c, d) } else { (b, a, d, c) };
    let k = a - b;
    let mut out = LaurentPoly::zero();
    for k1 in 0..=c {
        let x = &gauss_sym(k - 1 + c - k1, k - 1)? * &bar_sq(a + c + d, k1)?;
        let x = &x * &bar_sq(b + c + d, d)?;
        out += &signed(c - k1, x.shift((k - k1 + d) * (k1 - d)));
    }
    for l1 in 0..c {
        let x = &gauss_sym(k - 2 + c - l1, k - 1)? * &bar_sq(a + c + d, l1)?;
        let x = &x * &bar_sq(b + c + d, d - 1)?;
        out -= &signed(c - 1 - l1, x.shift((k - l1 + d - 1) * (l1 - d + 1)));
    }
    Ok(Some(out))
}

/// The word the slice-(2,0) proposition attaches to each of its four shapes.
pub fn slice20_word(p: &Params) -> Result<Option<Word>> {
    let Params { a, b, c, d } = *p;
    let mut w = Word::empty(2);
    match (c > 0, d > 0) {
        (true, false) if b == 0 => {
            w.push_simple(1, a + c)?;
            w.push_simple(2, c)?;
        }
        (true, false) if a == 0 => {
            w.push_simple(1, c)?;
            w.push_simple(2, b + c)?;
        }
        (false, true) if a == 0 => {
            w.push_simple(2, b + d)?;
            w.push_simple(1, d)?;
        }
        (false, true) if b == 0 => {
            w.push_simple(2, d)?;
            w.push_simple(1, a + d)?;
        }
        _ => return Ok(None),
    }
    Ok(Some(w))
}

/// Σ_{t≤b} v^{−(a+b−t)(b−t)} ũ with a_{12} = a+b−t, a_{13} = t, a_{23} = b−t:
/// the expansion of E_1^{(a+b)} E_2^{(b)}.
pub fn slice20_first_family(a: i64, b: i64) -> Result<HallVector<LaurentPoly>> {
    let mut out = HallVector::new(2);
    for t in 0..=b {
        let m = Params { a: a + b - t, b: b - t, c: t, d: 0 }.matrix()?;
        out.add_term(m, LaurentPoly::v(-(a + b - t) * (b - t)));
    }
    Ok(out)
}

/// The explicit PBW form for slice (2,1) off the tight range:
/// Σ_t v^{−t(a+t)}[b+t, t] ũ_(c−t,0) when d = 0, a > b, and the mirror
/// Σ_t v^{−t(b+t)}[a+t, t] ũ_(0,d−t) when c = 0, a < b.
pub fn slice21_pbw(p: &Params) -> Result<Option<HallVector<LaurentPoly>>> {
    let Params { a, b, c, d } = *p;
    let mut out = HallVector::new(2);
    if d == 0 && a > b {
        for t in 0..=c {
            out.add_term(member(p, c - t, 0)?, gauss_sym(b + t, t)?.shift(-t * (a + t)));
        }
    } else if c == 0 && a < b {
        for t in 0..=d {
            out.add_term(member(p, 0, d - t)?, gauss_sym(a + t, t)?.shift(-t * (b + t)));
        }
    } else {
        return Ok(None);
    }
    Ok(Some(out))
}

/// The monomial combination c_A = Σ h_(k1,k2) m^{(k1,k2)} given by the
/// closed forms for slices (2,1) and (2,2).
pub fn family_combination(p: &Params) -> Result<Option<BTreeMap<(i64, i64), LaurentPoly>>> {
    let Params { a, b, c, d } = *p;
    let key = SliceKey::of(&p.matrix()?);
    let mut combo = BTreeMap::new();
    let mut put = |k: (i64, i64), x: LaurentPoly| {
        let slot = combo.entry(k).or_insert_with(LaurentPoly::zero);
        *slot += &x;
    };
    match (key.l, key.p) {
        (2, 1) if d == 0 => {
            if a <= b {
                put((c, 0), LaurentPoly::one());
            } else {
                for k in 0..=c {
                    put((k, 0), signed(c - k, gauss_sym(a - b - 1 + c - k, a - b - 1)?));
                }
            }
        }
        (2, 1) if c == 0 => {
            if a >= b {
                put((0, d), LaurentPoly::one());
            } else {
                for l in 0..=d {
                    put((0, l), signed(d - l, gauss_sym(b - a - 1 + d - l, b - a - 1)?));
                }
            }
        }
        (2, 2) if a == b => {
            put((c, d), LaurentPoly::one());
            put((c - 1, d - 1), -LaurentPoly::one());
        }
        (2, 2) if a > b => {
            for k1 in 0..=c {
                put((k1, d), signed(c - k1, gauss_sym(a - b - 1 + c - k1, a - b - 1)?));
            }
            for l1 in 0..c {
                put((l1, d - 1), -signed(c - 1 - l1, gauss_sym(a - b - 2 + c - l1, a - b - 1)?));
            }
        }
        (2, 2) => {
            for k1 in 0..=d {
                put((c, k1), signed(d - k1, gauss_sym(b - a - 1 + d - k1, b - a - 1)?));
            }
            for l1 in 0..d {
                put((c - 1, l1), -signed(d - 1 - l1, gauss_sym(b - a - 2 + d - l1, b - a - 1)?));
            }
        }
        _ => return Ok(None),
    }
    combo.retain(|_, x| !x.is_zero());
    Ok(Some(combo))
}

/// c_A from the closed forms; `None` when A lies outside the covered slices
/// (n ≠ 2 or Loewy length ≥ 3).
pub fn slice_closed_form(m: &CyclicMatrix) -> Result<Option<CanonicalElement>> {
    let Some(p) = Params::of(m) else { return Ok(None) };
    let key = SliceKey::of(m);
    let tight = |pbw| {
        let mut monomials = BTreeMap::new();
        monomials.insert(m.clone(), LaurentPoly::one());
        CanonicalElement { a: m.clone(), pbw, monomials }
    };
    match (key.l, key.p) {
        (1, _) => Ok(Some(tight(HallVector::basis_element(m.clone(), LaurentPoly::one())))),
        (2, 0) => {
            let w = slice20_word(&p)?.ok_or_else(|| Error::Invalid(alloc::format!("{m} has no slice-(2,0) shape")))?;
            let mut cache = BinomialCache::new();
            let mut acc = HallVector::basis_element(CyclicMatrix::zero(2)?, LaurentPoly::one());
            for alpha in w.factors().iter().rev() {
                acc = mult_v_vec_with(&mut cache, alpha, &acc)?;
            }
            Ok(Some(tight(acc)))
        }
        (2, _) => {
            let combo = family_combination(&p)?.ok_or(Error::Invalid(alloc::format!("{m} is not in the family")))?;
            let pbw = match slice21_pbw(&p)? {
                Some(x) => x,
                None => expand_family_combination(&p, &combo)?,
            };
            let mut monomials = BTreeMap::new();
            for ((k1, k2), h) in combo {
                monomials.insert(member(&p, k1, k2)?, h);
            }
            Ok(Some(CanonicalElement { a: m.clone(), pbw, monomials }))
        }
        _ => Ok(None),
    }
}

/// Distinct matrices of slice (l, p) with a, b, c, d ≤ bound.
pub fn slice_matrices(l: i64, p: i64, bound: i64) -> Result<Vec<CyclicMatrix>> {
    let mut seen = BTreeSet::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                for d in 0..=bound {
                    let m = Params { a, b, c, d }.matrix()?;
                    if !m.is_zero() && SliceKey::of(&m) == (SliceKey { l, p }) {
                        seen.insert(m);
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_cached_key(alloc::string::ToString::to_string);
    Ok(out)
}

/// Canonical elements of slice (l, p) with parameters ≤ bound, computed by
/// the general algorithm.
pub fn slice(l: i64, p: i64, bound: i64) -> Result<Vec<CanonicalElement>> {
    let mut eng = CanonicalEngine::new();
    slice_matrices(l, p, bound)?.iter().map(|m| eng.canonical_element(m)).collect()
}

/// Checks that wp of the slice-(2,0) word recovers the matrix.
pub fn slice20_word_roundtrip(m: &CyclicMatrix) -> Result<bool> {
    match Params::of(m).map(|p| slice20_word(&p)).transpose()?.flatten() {
        Some(w) => Ok(wp(&w)? == *m),
        None => Ok(false),
    }
}
