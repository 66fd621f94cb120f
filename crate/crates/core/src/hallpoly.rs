//! Hall polynomials.
//!
//! For a distinguished word w_B the product u_{w_B} ⋄ u_C expands as
//! Σ_{B′} φ^{B′}_{w_B} Σ_A φ^A_{B′,C} u_A. Since φ^B_{w_B} = Π [[e_k]]! and
//! every other B′ is strictly below B, the vector Σ_A φ^A_{B,C} u_A is
//! obtained by dividing out the factorials and subtracting the (already
//! known) contributions of the lower B′.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::coeff::{q_binomial, q_factorial, BinomialCache, QPoly};
use crate::error::{Error, Result};
use crate::hallmult::{mult_q_vec_with, HallVector};
use crate::matrix::{CyclicMatrix, DimVector};
use crate::words::{distinguished_word, Letter, Word};

/// Π [[e_k]]! over the simple letters of `w`.
pub fn word_factorial(w: &Word) -> QPoly {
    w.letters().iter().fold(QPoly::one(), |acc, (l, e)| match l {
        Letter::Simple(_) => &acc * &q_factorial(*e as u32),
        Letter::Sincere(_) => acc,
    })
}

/// u_{α_1} ⋄ (u_{α_2} ⋄ (⋯ ⋄ x)) where α_k are the letter dimension vectors;
/// this is the divided product u_w / Π [[e_k]]! applied to `x`.
pub fn word_apply_q(w: &Word, x: &HallVector<QPoly>) -> Result<HallVector<QPoly>> {
    let mut cache = BinomialCache::new();
    word_apply_with(&mut cache, w, x)
}

fn word_apply_with(cache: &mut BinomialCache, w: &Word, x: &HallVector<QPoly>) -> Result<HallVector<QPoly>> {
    let mut acc = x.clone();
    for alpha in w.factors().iter().rev() {
        acc = mult_q_vec_with(cache, alpha, &acc)?;
    }
    Ok(acc)
}

/// u_w = Σ φ^{B′}_w u_{B′}, multiplying by one simple at a time so that a
/// letter i^e contributes u_i^e = [[e]]! u_{eS_i}.
pub fn word_expand_q(w: &Word) -> Result<HallVector<QPoly>> {
    let mut cache = BinomialCache::new();
    let mut acc = HallVector::basis_element(CyclicMatrix::zero(w.n())?, QPoly::one());
    for ((letter, e), alpha) in w.letters().iter().zip(w.factors()).rev() {
        match letter {
            Letter::Simple(i) => {
                let unit = DimVector::unit(w.n(), *i as i64);
                for _ in 0..*e {
                    acc = mult_q_vec_with(&mut cache, &unit, &acc)?;
                }
            }
            Letter::Sincere(_) => acc = mult_q_vec_with(&mut cache, &alpha, &acc)?,
        }
    }
    Ok(acc)
}

/// γ^X_w = φ^X_w / Π [[e_k]]!.
pub fn gamma(w: &Word, x: &CyclicMatrix) -> Result<QPoly> {
    word_expand_q(w)?.coeff(x).exact_div(&word_factorial(w))
}

/// q^{Σ_{k<l} d_k(a_l - d_l)} Π [[a_t, d_t]]: the number of submodules N of
/// L = ⊕ a_t S_i[t] with L/N ≅ (Σ d_t) S_i and N of the matching type.
pub fn hall_number_semisimple_top(a: &[i64], d: &[i64]) -> Result<QPoly> {
    if a.len() != d.len() {
        return Err(Error::Invalid("a and d must have equal length".into()));
    }
    if a.iter().zip(d).any(|(&x, &y)| y < 0 || y > x) {
        return Err(Error::Invalid("need a_t >= d_t >= 0".into()));
    }
    let mut e = 0;
    for k in 0..a.len() {
        for l in k + 1..a.len() {
            e += d[k] * (a[l] - d[l]);
        }
    }
    Ok(a.iter().zip(d).fold(QPoly::q(e as u32), |acc, (&x, &y)| &acc * &q_binomial(x as u32, y as u32)))
}

/// The triple (L, M, N) of the block count at vertex `i`:
/// L = ⊕ a_t S_i[t], M = (Σ d_t) S_i, N = ⊕ (a_t - d_t) S_i[t] ⊕ d_t S_{i+1}[t-1].
pub fn semisimple_top_triple(n: usize, i: i64, a: &[i64], d: &[i64]) -> Result<(CyclicMatrix, CyclicMatrix, CyclicMatrix)> {
    let mut l = CyclicMatrix::zero(n)?;
    let mut nn = CyclicMatrix::zero(n)?;
    for (t, (&x, &y)) in (1..).zip(a.iter().zip(d)) {
        l.try_add(i, i + t, x)?;
        nn.try_add(i, i + t, x - y)?;
        if t > 1 {
            nn.try_add(i + 1, i + t, y)?;
        }
    }
    let mut top = DimVector::zeros(n);
    top.set(i, d.iter().sum());
    Ok((l, CyclicMatrix::semisimple(&top)?, nn))
}

/// Memoized Hall polynomial engine.
///
/// `product(B, C)` holds Σ_A φ^A_{B,C} u_A. Entries are filled bottom-up in
/// the order ≺ on B, so each is computed once per engine.
#[derive(Default)]
pub struct HallEngine {
    cache: BinomialCache,
    words: BTreeMap<CyclicMatrix, (Word, HallVector<QPoly>)>,
    products: BTreeMap<(CyclicMatrix, CyclicMatrix), HallVector<QPoly>>,
}

impl HallEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// w_B together with Σ γ^{B′}_{w_B} u_{B′}.
    fn word_data(&mut self, b: &CyclicMatrix) -> Result<(Word, HallVector<QPoly>)> {
        if let Some(x) = self.words.get(b) {
            return Ok(x.clone());
        }
        let w = distinguished_word(b)?;
        let zero = CyclicMatrix::zero(b.n())?;
        let gam = word_apply_with(&mut self.cache, &w, &HallVector::basis_element(zero, QPoly::one()))?;
        if !gam.coeff(b).is_one() {
            return Err(Error::LeadingCoefficientNotOne);
        }
        self.words.insert(b.clone(), (w.clone(), gam.clone()));
        Ok((w, gam))
    }

    /// Σ_A φ^A_{B,C} u_A.
    pub fn product(&mut self, b: &CyclicMatrix, c: &CyclicMatrix) -> Result<HallVector<QPoly>> {
        if b.n() != c.n() {
            return Err(Error::RankMismatch { left: b.n(), right: c.n() });
        }
        let key = (b.clone(), c.clone());
        if let Some(x) = self.products.get(&key) {
            return Ok(x.clone());
        }
        let out = if b.is_zero() {
            HallVector::basis_element(c.clone(), QPoly::one())
        } else {
            let (w, gam) = self.word_data(b)?;
            let mut acc = word_apply_with(&mut self.cache, &w, &HallVector::basis_element(c.clone(), QPoly::one()))?;
            let lower: Vec<(CyclicMatrix, QPoly)> =
                gam.terms().filter(|(x, _)| *x != b).map(|(x, g)| (x.clone(), g.clone())).collect();
            for (bp, g) in lower {
                let sub = self.product(&bp, c)?;
                for (x, coeff) in sub.terms() {
                    acc.add_term(x.clone(), -(coeff * &g));
                }
            }
            acc
        };
        self.products.insert(key, out.clone());
        Ok(out)
    }

    /// φ^A_{B,C}.
    pub fn hall_polynomial(&mut self, a: &CyclicMatrix, b: &CyclicMatrix, c: &CyclicMatrix) -> Result<QPoly> {
        if a.n() != b.n() {
            return Err(Error::RankMismatch { left: a.n(), right: b.n() });
        }
        if b.dim_vector().checked_add(&c.dim_vector())? != a.dim_vector() {
            return Ok(QPoly::zero());
        }
        Ok(self.product(b, c)?.coeff(a))
    }
}

/// φ^A_{B,C} with a throwaway engine.
pub fn hall_polynomial(a: &CyclicMatrix, b: &CyclicMatrix, c: &CyclicMatrix) -> Result<QPoly> {
    HallEngine::new().hall_polynomial(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> CyclicMatrix {
        s.parse().unwrap()
    }

    fn qp(t: &[(u32, i64)]) -> QPoly {
        QPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn word_expansions() {
        assert_eq!(word_expand_q(&Word::parse(2, "1").unwrap()).unwrap(), HallVector::basis_element(m("n=2;1,2:1"), QPoly::one()));
        let x = word_expand_q(&Word::parse(2, "1.1").unwrap()).unwrap();
        let w = Word::parse(2, "1^2.2^3.1").unwrap();
        let divided = word_apply_q(&w, &HallVector::basis_element(CyclicMatrix::zero(2).unwrap(), QPoly::one())).unwrap();
        assert_eq!(word_expand_q(&w).unwrap(), divided.scale(&word_factorial(&w)));
        assert_eq!(x, HallVector::basis_element(m("n=2;1,2:2"), qp(&[(1, 1), (0, 1)])));
        let x = word_expand_q(&Word::parse(2, "1.2").unwrap()).unwrap();
        assert_eq!(x.coeff(&m("n=2;1,2:1;2,3:1")), QPoly::one());
        assert_eq!(x.coeff(&m("n=2;1,3:1")), QPoly::one());
        let w = Word::parse(2, "1^2").unwrap();
        assert_eq!(gamma(&w, &m("n=2;1,2:2")).unwrap(), QPoly::one());
        assert!(gamma(&w, &m("n=2;1,3:1")).unwrap().is_zero());
    }

    #[test]
    fn small_hall_polynomials() {
        let s1 = m("n=2;1,2:1");
        let s2 = m("n=2;2,3:1");
        assert_eq!(hall_polynomial(&m("n=2;1,2:2"), &s1, &s1).unwrap(), qp(&[(1, 1), (0, 1)]));
        assert_eq!(hall_polynomial(&m("n=2;1,3:1"), &s1, &s2).unwrap(), QPoly::one());
        assert!(hall_polynomial(&m("n=2;1,3:1"), &s2, &s1).unwrap().is_zero());
        let z = CyclicMatrix::zero(2).unwrap();
        assert_eq!(hall_polynomial(&s1, &s1, &z).unwrap(), QPoly::one());
        assert!(hall_polynomial(&s2, &s1, &z).unwrap().is_zero());
    }

    #[test]
    fn semisimple_top_formula() {
        assert_eq!(hall_number_semisimple_top(&[2], &[1]).unwrap(), qp(&[(1, 1), (0, 1)]));
        assert_eq!(hall_number_semisimple_top(&[3, 1], &[0, 0]).unwrap(), QPoly::one());
        assert_eq!(hall_number_semisimple_top(&[1, 1], &[1, 0]).unwrap(), QPoly::q(1));
        assert!(hall_number_semisimple_top(&[1], &[2]).is_err());
    }

    #[test]
    fn vertex_factorization() {
        for n in 2..=3usize {
            for a1 in 0..=2 {
                for a2 in 0..=2 {
                    for d1 in 0..=a1 {
                        for d2 in 0..=a2 {
                            let (a, d) = ([a1, a2], [d1, d2]);
                            let (l, mm, nn) = semisimple_top_triple(n, 1, &a, &d).unwrap();
                            assert_eq!(
                                hall_polynomial(&l, &mm, &nn).unwrap(),
                                hall_number_semisimple_top(&a, &d).unwrap(),
                                "n={n} a={a:?} d={d:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
