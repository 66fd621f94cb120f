//! The canonical basis of the positive part of quantum affine gl_n.
//!
//! A monomial m^{(A)} is the product of divided powers along the
//! distinguished word w_A, expanded in the twisted PBW basis ũ. The
//! expansion is unitriangular with respect to ≺, and the canonical element
//! c_A is the unique bar-invariant element
//! c_A = ũ_A + Σ_{B≺A} p_{B,A} ũ_B with p_{B,A} ∈ v⁻¹Z[v⁻¹].
//!
//! Two independent routes are provided. [`CanonicalEngine::canonical_element`]
//! walks Θ_{≺A} top-down and subtracts bar-symmetric multiples of monomials.
//! [`CanonicalEngine::canonical_element_ic`] inverts the monomial change of
//! basis, derives the bar action on ũ from it and solves the IC recursion.

pub mod identities;
pub mod slices;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{BinomialCache, LaurentPoly};
use crate::error::{Error, Result};
use crate::hallmult::{mult_v_vec_with, HallVector};
use crate::matrix::{poset_ideal, CyclicMatrix};
use crate::words::distinguished_word;

/// c_A in both coordinates.
///
/// `monomials` holds signed coefficients: c_A = Σ_B h_B m^{(B)}, including
/// the leading pair (A, 1). Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalElement {
    pub a: CyclicMatrix,
    pub pbw: HallVector<LaurentPoly>,
    pub monomials: BTreeMap<CyclicMatrix, LaurentPoly>,
}

impl CanonicalElement {
    /// c_A = m^{(A)}.
    pub fn is_tight(&self) -> bool {
        self.monomials.len() == 1 && self.monomials.get(&self.a).is_some_and(LaurentPoly::is_one)
    }

    /// Monomial terms ordered by matrix text.
    pub fn sorted_monomials(&self) -> Vec<(&CyclicMatrix, &LaurentPoly)> {
        let mut v: Vec<_> = self.monomials.iter().collect();
        v.sort_by_cached_key(|(b, _)| b.to_string());
        v
    }

    /// Checks p_{A,A} = 1, p_{B,A} ∈ v⁻¹Z[v⁻¹] for B ≺ A, bar-symmetric
    /// monomial coefficients and support inside Θ_A.
    pub fn check_invariants(&self) -> Result<()> {
        if !self.pbw.coeff(&self.a).is_one() {
            return Err(Error::LeadingCoefficientNotOne);
        }
        for (b, p) in self.pbw.terms() {
            if b != &self.a {
                if !b.deg_lt(&self.a)? {
                    return Err(Error::Invalid(format!("{b} is not below {}", self.a)));
                }
                if !p.in_negative_part() {
                    return Err(Error::Invalid(format!("coefficient {p} at {b} is not in v^-1 Z[v^-1]")));
                }
            }
        }
        for (b, h) in &self.monomials {
            if !h.is_bar_symmetric() {
                return Err(Error::Invalid(format!("monomial coefficient {h} at {b} is not bar-symmetric")));
            }
            if !b.deg_leq(&self.a)? {
                return Err(Error::Invalid(format!("{b} is not below {}", self.a)));
            }
        }
        Ok(())
    }
}

/// Θ_A ordered top-down: by layer (length of the longest chain up to A),
/// then by matrix text.
pub fn layered_ideal(a: &CyclicMatrix) -> Result<Vec<(CyclicMatrix, usize)>> {
    let width = a.loewy_length();
    let n = a.n() as i64;
    let mut ideal: Vec<(i64, CyclicMatrix)> = Vec::new();
    for b in poset_ideal(a)? {
        // Σσ over the window is strictly monotone along ≺.
        let mut w = 0;
        for i in 1..=n {
            for j in i + 1..=i + width {
                w += b.sigma(i, j)?;
            }
        }
        ideal.push((w, b));
    }
    ideal.sort_by_key(|x| core::cmp::Reverse(x.0));
    let mut layers: Vec<usize> = Vec::with_capacity(ideal.len());
    for k in 0..ideal.len() {
        let mut layer = 0;
        for j in 0..k {
            if layers[j] + 1 > layer && ideal[k].1.prec(&ideal[j].1)? {
                layer = layers[j] + 1;
            }
        }
        layers.push(layer);
    }
    let mut out: Vec<(CyclicMatrix, usize)> = ideal.into_iter().map(|(_, b)| b).zip(layers).collect();
    out.sort_by_cached_key(|(b, l)| (*l, b.to_string()));
    Ok(out)
}

/// Monomial expansions and canonical elements with a shared memo.
#[derive(Default)]
pub struct CanonicalEngine {
    cache: BinomialCache,
    monomials: BTreeMap<CyclicMatrix, HallVector<LaurentPoly>>,
}

impl CanonicalEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// m^{(A)} in the ũ basis.
    pub fn monomial(&mut self, a: &CyclicMatrix) -> Result<HallVector<LaurentPoly>> {
        if let Some(m) = self.monomials.get(a) {
            return Ok(m.clone());
        }
        let w = distinguished_word(a)?;
        let mut acc = HallVector::basis_element(CyclicMatrix::zero(a.n())?, LaurentPoly::one());
        for alpha in w.factors().iter().rev() {
            acc = mult_v_vec_with(&mut self.cache, alpha, &acc)?;
        }
        if !acc.coeff(a).is_one() {
            return Err(Error::LeadingCoefficientNotOne);
        }
        for (b, _) in acc.terms() {
            if b != a && !b.deg_lt(a)? {
                return Err(Error::Invalid(format!("m^({a}) has support at {b}, which is not below it")));
            }
        }
        self.monomials.insert(a.clone(), acc.clone());
        Ok(acc)
    }

    /// c_A by subtracting bar-symmetric parts layer by layer.
    pub fn canonical_element(&mut self, a: &CyclicMatrix) -> Result<CanonicalElement> {
        let order = layered_ideal(a)?;
        let mut x = self.monomial(a)?;
        let mut monomials = BTreeMap::new();
        monomials.insert(a.clone(), LaurentPoly::one());
        for (b, _) in order.iter().skip(1) {
            let c = x.coeff(b);
            if c.in_negative_part() {
                continue;
            }
            let (h, _) = c.pi_decompose();
            let mb = self.monomial(b)?;
            for (d, y) in mb.terms() {
                x.add_term(d.clone(), -(y * &h));
            }
            monomials.insert(b.clone(), -h);
        }
        // One pass over a linear extension settles every coefficient.
        for (b, p) in x.terms() {
            if b != a && !p.in_negative_part() {
                return Err(Error::NonTermination);
            }
        }
        Ok(CanonicalElement { a: a.clone(), pbw: x, monomials })
    }

    /// c_A by the IC recursion p_{B,A} − bar(p_{B,A}) = Σ_{B≺C⪯A} r_{B,C} bar(p_{C,A}).
    #[allow(clippy::needless_range_loop)]
    pub fn canonical_element_ic(&mut self, a: &CyclicMatrix) -> Result<CanonicalElement> {
        let basis: Vec<CyclicMatrix> = layered_ideal(a)?.into_iter().map(|(b, _)| b).collect();
        let size = basis.len();
        let index: BTreeMap<&CyclicMatrix, usize> = basis.iter().enumerate().map(|(k, b)| (b, k)).collect();

        // h[i][j]: coefficient of ũ_{basis[i]} in m^{(basis[j])}; lower unitriangular.
        let mut h = vec![vec![LaurentPoly::zero(); size]; size];
        for (j, b) in basis.iter().enumerate() {
            for (d, y) in self.monomial(b)?.terms() {
                let i = *index.get(d).ok_or(Error::SingularSystem)?;
                if i < j {
                    return Err(Error::SingularSystem);
                }
                h[i][j] = y.clone();
            }
        }

        // g = h⁻¹, so ũ_C = Σ_D g[D][C] m^{(D)}.
        let mut g = vec![vec![LaurentPoly::zero(); size]; size];
        for j in 0..size {
            g[j][j] = LaurentPoly::one();
            for i in j + 1..size {
                let mut s = LaurentPoly::zero();
                for k in j..i {
                    if !h[i][k].is_zero() && !g[k][j].is_zero() {
                        s += &(&h[i][k] * &g[k][j]);
                    }
                }
                g[i][j] = -s;
            }
        }

        // bar(ũ_C) = Σ_B r[B][C] ũ_B with r = h · bar(g).
        let mut r = vec![vec![LaurentPoly::zero(); size]; size];
        for j in 0..size {
            for k in j..size {
                if g[k][j].is_zero() {
                    continue;
                }
                let gb = g[k][j].bar();
                for i in k..size {
                    if !h[i][k].is_zero() {
                        r[i][j] += &(&h[i][k] * &gb);
                    }
                }
            }
        }

        let mut p = vec![LaurentPoly::zero(); size];
        p[0] = LaurentPoly::one();
        for i in 1..size {
            let mut s = LaurentPoly::zero();
            for j in 0..i {
                if !r[i][j].is_zero() && !p[j].is_zero() {
                    s += &(&r[i][j] * &p[j].bar());
                }
            }
            if !(&s + &s.bar()).is_zero() {
                return Err(Error::SingularSystem);
            }
            p[i] = LaurentPoly::from_terms(s.terms().filter(|(e, _)| *e < 0).map(|(e, c)| (e, c.clone())));
        }

        let mut pbw = HallVector::new(a.n());
        for (b, pb) in basis.iter().zip(&p) {
            pbw.add_term(b.clone(), pb.clone());
        }
        let mut monomials = BTreeMap::new();
        for d in 0..size {
            let mut c = LaurentPoly::zero();
            for b in 0..=d {
                if !g[d][b].is_zero() && !p[b].is_zero() {
                    c += &(&g[d][b] * &p[b]);
                }
            }
            if !c.is_zero() {
                monomials.insert(basis[d].clone(), c);
            }
        }
        Ok(CanonicalElement { a: a.clone(), pbw, monomials })
    }
}

/// m^{(A)} with a throwaway engine.
pub fn monomial_expand(a: &CyclicMatrix) -> Result<HallVector<LaurentPoly>> {
    CanonicalEngine::new().monomial(a)
}

/// c_A by the subtraction route.
pub fn canonical_element(a: &CyclicMatrix) -> Result<CanonicalElement> {
    CanonicalEngine::new().canonical_element(a)
}

/// c_A by the IC route.
pub fn canonical_element_ic(a: &CyclicMatrix) -> Result<CanonicalElement> {
    CanonicalEngine::new().canonical_element_ic(a)
}

pub fn is_tight(a: &CyclicMatrix) -> Result<bool> {
    Ok(canonical_element(a)?.is_tight())
}
