//! Brute-force ground truth over small prime fields.
//!
//! Everything here works with explicit matrices: representations are built
//! segment by segment, subspaces are enumerated through their reduced
//! row-echelon bases, and isomorphism types are read off from ranks of path
//! maps. Nothing in this module relies on the closed formulas elsewhere in
//! the crate, which is the point.

mod linalg;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub use linalg::{rref_enumerate, rref_for_each, Mat};

use crate::error::{Error, Result};
use crate::matrix::{reduce, CyclicMatrix, Segment};

/// Default bound on candidate subspace tuples per enumeration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// An explicit nilpotent representation over F_q.
///
/// `arrows[v - 1]` is the `dims[v+1] × dims[v]` matrix of V_v → V_{v+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteRep {
    pub n: usize,
    pub q: u32,
    pub dims: Vec<usize>,
    pub arrows: Vec<Mat>,
}

impl ConcreteRep {
    fn dim(&self, v: i64) -> usize {
        self.dims[reduce(v, self.n) - 1]
    }

    fn arrow(&self, v: i64) -> &Mat {
        &self.arrows[reduce(v, self.n) - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &ConcreteRep) -> ConcreteRep {
        let n = self.n;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let arrows = (1..=n as i64)
            .map(|v| {
                let (a, b) = (self.arrow(v), other.arrow(v));
                let mut m = Mat::zeros(a.rows + b.rows, a.cols + b.cols, self.q);
                for r in 0..a.rows {
                    for c in 0..a.cols {
                        m.set(r, c, a.get(r, c));
                    }
                }
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        m.set(a.rows + r, a.cols + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        ConcreteRep { n, q: self.q, dims, arrows }
    }

    /// The isomorphic representation g_{v+1} f_v g_v⁻¹ for invertible g_v.
    pub fn conjugate(&self, g: &[Mat]) -> Option<ConcreteRep> {
        let n = self.n as i64;
        let inv: Vec<Mat> = g.iter().map(|m| m.inverse()).collect::<Option<_>>()?;
        let arrows = (1..=n)
            .map(|v| {
                let gn = &g[reduce(v + 1, self.n) - 1];
                gn.mul(self.arrow(v)).mul(&inv[reduce(v, self.n) - 1])
            })
            .collect();
        Some(ConcreteRep { arrows, ..self.clone() })
    }

    /// The composite of `len` arrows starting at vertex `v`.
    fn path(&self, v: i64, len: usize) -> Mat {
        let mut m = Mat::identity(self.dim(v), self.q);
        for k in 0..len as i64 {
            m = self.arrow(v + k).mul(&m);
        }
        m
    }
}

/// M_q(A) as a block sum of segments: S_i[l] has basis vectors at
/// i, i+1, …, i+l-1 and each arrow moves one to the next.
pub fn build_rep(a: &CyclicMatrix, q: u32) -> ConcreteRep {
    let n = a.n();
    let dims: Vec<usize> = a.dim_vector().as_slice().iter().map(|&d| d as usize).collect();
    let mut next = vec![0usize; n];
    // (vertex, index) chains per segment copy
    let mut chains: Vec<Vec<(usize, usize)>> = Vec::new();
    for (seg, mult) in a.segments() {
        for _ in 0..mult {
            let chain = (0..seg.l)
                .map(|k| {
                    let v = reduce(seg.i as i64 + k as i64, n) - 1;
                    let idx = next[v];
                    next[v] += 1;
                    (v, idx)
                })
                .collect();
            chains.push(chain);
        }
    }
    let mut arrows: Vec<Mat> = (0..n).map(|v| Mat::zeros(dims[(v + 1) % n], dims[v], q)).collect();
    for chain in &chains {
        for w in chain.windows(2) {
            let ((v, i), (_, j)) = (w[0], w[1]);
            arrows[v].set(j, i, 1);
        }
    }
    ConcreteRep { n, q, dims, arrows }
}

/// The linear map ⊕ Hom(M_v, N_v) → ⊕ Hom(M_v, N_{v+1}),
/// (φ_v) ↦ (g_v φ_v - φ_{v+1} f_v), whose kernel is Hom(M, N) and whose
/// cokernel is Ext¹(M, N).
fn hom_complex(m: &ConcreteRep, nrep: &ConcreteRep) -> (Mat, usize, usize) {
    let n = m.n as i64;
    let p = m.q;
    let mut offs = Vec::new();
    let mut dom = 0;
    for v in 1..=n {
        offs.push(dom);
        dom += nrep.dim(v) * m.dim(v);
    }
    let mut cod_offs = Vec::new();
    let mut cod = 0;
    for v in 1..=n {
        cod_offs.push(cod);
        cod += nrep.dim(v + 1) * m.dim(v);
    }
    let mut d = Mat::zeros(cod, dom, p);
    for v in 1..=n {
        let vi = (v - 1) as usize;
        let wi = reduce(v + 1, m.n) - 1;
        let (f, g) = (m.arrow(v), nrep.arrow(v));
        let (mv, nv, nw) = (m.dim(v), nrep.dim(v), nrep.dim(v + 1));
        // row (r, c) of the block: entry r, c of g φ_v - φ_{v+1} f  (nw × mv)
        for r in 0..nw {
            for c in 0..mv {
                let row = cod_offs[vi] + r * mv + c;
                // g φ_v: Σ_k g[r][k] φ_v[k][c]
                for k in 0..nv {
                    let col = offs[vi] + k * mv + c;
                    let x = (d.get(row, col) + g.get(r, k)) % p;
                    d.set(row, col, x);
                }
                // φ_{v+1} f: Σ_k φ_{v+1}[r][k] f[k][c]
                let mw = m.dim(v + 1);
                for k in 0..mw {
                    let col = offs[wi] + r * mw + k;
                    let x = (d.get(row, col) + p - f.get(k, c)) % p;
                    d.set(row, col, x);
                }
            }
        }
    }
    (d, dom, cod)
}

/// (dim Hom(M, N), dim Ext¹(M, N)) by linear algebra.
pub fn hom_ext_dims(m: &ConcreteRep, nrep: &ConcreteRep) -> (usize, usize) {
    let (d, dom, cod) = hom_complex(m, nrep);
    let r = d.rank();
    (dom - r, cod - r)
}

/// dim Hom(s, t) for segments, through the intertwiner equations over F_q.
pub fn hom_dim_oracle(s: &Segment, t: &Segment, q: u32) -> usize {
    let a = build_rep(&CyclicMatrix::segment(*s), q);
    let b = build_rep(&CyclicMatrix::segment(*t), q);
    hom_ext_dims(&a, &b).0
}

/// The isomorphism type of a nilpotent representation.
///
/// dim Hom(S_i[l], M) is the nullity of the length-l path out of M_i. With
/// r(i,l) the rank of that path, g(i,l) = r(i,l-1) - r(i,l) counts basis
/// vectors at i lying exactly l-1 steps above a socle, and the multiplicity
/// of S_i[l] is g(i,l) - g(i-1,l+1).
#[allow(clippy::needless_range_loop)]
pub fn iso_type(rep: &ConcreteRep) -> Result<CyclicMatrix> {
    let n = rep.n as i64;
    let top = rep.total_dim() + 1;
    let mut r = vec![vec![0i64; top + 2]; rep.n];
    for i in 1..=n {
        for l in 0..=top + 1 {
            let rank = rep.path(i, l).rank() as i64;
            r[(i - 1) as usize][l] = rank;
        }
        if r[(i - 1) as usize][top + 1] != 0 {
            return Err(Error::Invalid("representation is not nilpotent".into()));
        }
    }
    let g = |i: i64, l: usize| -> i64 {
        let row = &r[reduce(i, rep.n) - 1];
        row[l - 1] - row[l]
    };
    let mut out = CyclicMatrix::zero(rep.n)?;
    for i in 1..=n {
        for l in 1..=top {
            let mult = g(i, l) - g(i - 1, l + 1);
            if mult < 0 {
                return Err(Error::SingularSystem);
            }
            out.add_raw(i, i + l as i64, mult);
        }
    }
    Ok(out)
}

/// A submodule given by RREF bases, one per vertex.
struct Sub<'a> {
    bases: Vec<&'a Mat>,
    pivots: Vec<Vec<usize>>,
}

/// Reduces `x` modulo the row space of an RREF basis; returns the reduced
/// vector together with the coordinates of the removed part.
fn reduce_mod(x: &[u32], basis: &Mat, pivots: &[usize]) -> (Vec<u32>, Vec<u32>) {
    let p = basis.p;
    let mut y = x.to_vec();
    let mut coords = Vec::with_capacity(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        let f = y[c];
        coords.push(f);
        if f != 0 {
            for (k, yk) in y.iter_mut().enumerate() {
                *yk = linalg::sub_mod(*yk, linalg::mul_mod(f, basis.get(r, k), p), p);
            }
        }
    }
    (y, coords)
}

/// f_v(U_v) ⊆ U_{v+1}.
fn invariant_at(rep: &ConcreteRep, sub: &Sub, v: usize) -> bool {
    let w = (v + 1) % rep.n;
    let f = &rep.arrows[v];
    let u = sub.bases[v];
    (0..u.rows).all(|r| {
        let img = f.apply(u.row(r));
        reduce_mod(&img, sub.bases[w], &sub.pivots[w]).0.iter().all(|&x| x == 0)
    })
}

/// The submodule U and the quotient M/U as explicit representations.
fn sub_and_quotient(rep: &ConcreteRep, sub: &Sub) -> (ConcreteRep, ConcreteRep) {
    let n = rep.n;
    let q = rep.q;
    let nonpiv: Vec<Vec<usize>> =
        (0..n).map(|v| (0..rep.dims[v]).filter(|c| !sub.pivots[v].contains(c)).collect()).collect();
    let mut sub_arrows = Vec::new();
    let mut quo_arrows = Vec::new();
    for v in 0..n {
        let w = (v + 1) % n;
        let f = &rep.arrows[v];
        let u = sub.bases[v];
        let mut sa = Mat::zeros(sub.pivots[w].len(), u.rows, q);
        for r in 0..u.rows {
            let img = f.apply(u.row(r));
            for (k, &c) in sub.pivots[w].iter().enumerate() {
                sa.set(k, r, img[c]);
            }
        }
        sub_arrows.push(sa);
        let mut qa = Mat::zeros(nonpiv[w].len(), nonpiv[v].len(), q);
        for (col, &c) in nonpiv[v].iter().enumerate() {
            let mut e = vec![0u32; rep.dims[v]];
            e[c] = 1;
            let (img, _) = reduce_mod(&f.apply(&e), sub.bases[w], &sub.pivots[w]);
            for (k, &c2) in nonpiv[w].iter().enumerate() {
                qa.set(k, col, img[c2]);
            }
        }
        quo_arrows.push(qa);
    }
    let sub_rep = ConcreteRep { n, q, dims: sub.pivots.iter().map(|p| p.len()).collect(), arrows: sub_arrows };
    let quo_rep = ConcreteRep { n, q, dims: nonpiv.iter().map(|p| p.len()).collect(), arrows: quo_arrows };
    (sub_rep, quo_rep)
}

/// Calls `f(quotient type, sub type)` for every submodule of M_q(A) whose
/// dimension vector is `sub_dim` (or every submodule if `None`).
fn for_each_submodule(
    a: &CyclicMatrix,
    q: u32,
    sub_dim: Option<&[i64]>,
    budget: u64,
    mut f: impl FnMut(CyclicMatrix, CyclicMatrix) -> Result<()>,
) -> Result<()> {
    let rep = build_rep(a, q);
    let n = rep.n;
    let profiles: Vec<Vec<usize>> = match sub_dim {
        Some(d) => {
            if d.iter().zip(&rep.dims).any(|(&x, &m)| x < 0 || x as usize > m) {
                return Ok(());
            }
            vec![d.iter().map(|&x| x as usize).collect()]
        }
        None => {
            let mut all = vec![Vec::new()];
            for v in 0..n {
                all = all
                    .into_iter()
                    .flat_map(|pre: Vec<usize>| {
                        (0..=rep.dims[v]).map(move |k| {
                            let mut x = pre.clone();
                            x.push(k);
                            x
                        })
                    })
                    .collect();
            }
            all
        }
    };
    let mut spent = 0u64;
    for prof in profiles {
        let spaces: Vec<Vec<(Mat, Vec<usize>)>> = (0..n)
            .map(|v| {
                rref_enumerate(prof[v], rep.dims[v], q)
                    .into_iter()
                    .map(|mut m| {
                        let piv = m.rref_in_place();
                        (m, piv)
                    })
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; n];
        search(&rep, &spaces, 0, &mut idx, &mut spent, budget, &mut f)?;
    }
    Ok(())
}

fn search(
    rep: &ConcreteRep,
    spaces: &[Vec<(Mat, Vec<usize>)>],
    v: usize,
    idx: &mut Vec<usize>,
    spent: &mut u64,
    budget: u64,
    f: &mut impl FnMut(CyclicMatrix, CyclicMatrix) -> Result<()>,
) -> Result<()> {
    let n = rep.n;
    if v == n {
        let sub = make_sub(spaces, idx);
        if !invariant_at(rep, &sub, n - 1) {
            return Ok(());
        }
        let (s, qt) = sub_and_quotient(rep, &sub);
        return f(iso_type(&qt)?, iso_type(&s)?);
    }
    for k in 0..spaces[v].len() {
        *spent += 1;
        if *spent > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        idx[v] = k;
        if v > 0 {
            let sub = make_sub_partial(spaces, idx, v);
            if !invariant_at(rep, &sub, v - 1) {
                continue;
            }
        }
        search(rep, spaces, v + 1, idx, spent, budget, f)?;
    }
    Ok(())
}

fn make_sub<'a>(spaces: &'a [Vec<(Mat, Vec<usize>)>], idx: &[usize]) -> Sub<'a> {
    make_sub_partial(spaces, idx, spaces.len() - 1)
}

/// A `Sub` view of the first `upto + 1` vertices; later vertices are filled
/// with the chosen prefix (only vertices ≤ upto are inspected).
fn make_sub_partial<'a>(spaces: &'a [Vec<(Mat, Vec<usize>)>], idx: &[usize], upto: usize) -> Sub<'a> {
    let n = spaces.len();
    let pick = |v: usize| &spaces[v][if v <= upto { idx[v] } else { 0 }];
    Sub {
        bases: (0..n).map(|v| &pick(v).0).collect(),
        pivots: (0..n).map(|v| pick(v).1.clone()).collect(),
    }
}

/// Hall number h^A_{B,C}: submodules N ≤ M_q(A) with N ≅ M_q(C) and
/// M_q(A)/N ≅ M_q(B).
pub fn count_submodules(a: &CyclicMatrix, b: &CyclicMatrix, c: &CyclicMatrix, q: u32, budget: u64) -> Result<u64> {
    if a.n() != b.n() || a.n() != c.n() {
        return Err(Error::RankMismatch { left: a.n(), right: if a.n() != b.n() { b.n() } else { c.n() } });
    }
    if b.dim_vector().checked_add(&c.dim_vector())? != a.dim_vector() {
        return Ok(0);
    }
    let mut count = 0;
    for_each_submodule(a, q, Some(c.dim_vector().as_slice()), budget, |qt, s| {
        if &qt == b && &s == c {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// Counts of all submodules of M_q(A) by (quotient type, sub type).
pub fn submodule_census(a: &CyclicMatrix, q: u32, budget: u64) -> Result<BTreeMap<(CyclicMatrix, CyclicMatrix), u64>> {
    let mut out = BTreeMap::new();
    for_each_submodule(a, q, None, budget, |qt, s| {
        *out.entry((qt, s)).or_insert(0) += 1;
        Ok(())
    })?;
    Ok(out)
}

fn check_block_args(a: &[i64], d: &[i64]) -> Result<()> {
    if a.len() != d.len() || a.iter().zip(d).any(|(&x, &y)| y < 0 || y > x) {
        return Err(Error::Invalid("need a_t >= d_t >= 0 with equal lengths".into()));
    }
    Ok(())
}

/// |𝒯|: RREF matrices of size (Σd) × (Σa) whose diagonal (d_t × a_t) blocks
/// have full rank d_t, so the pivots of block row t lie in column block t.
///
/// Matrices are grouped by pivot pattern; a pattern contributes q^f where f
/// counts positions right of a pivot outside the pivot columns. Patterns are
/// enumerated explicitly; `budget` bounds their number.
pub fn count_block_rref(a: &[i64], d: &[i64], q: u32, budget: u64) -> Result<u128> {
    check_block_args(a, d)?;
    let total_cols: i64 = a.iter().sum();
    let mut patterns: Vec<Vec<usize>> = vec![Vec::new()];
    let mut col0 = 0usize;
    for (&at, &dt) in a.iter().zip(d) {
        let mut next = Vec::new();
        let mut local = Vec::new();
        combos(at as usize, dt as usize, 0, &mut Vec::new(), &mut local);
        for pre in &patterns {
            for c in &local {
                if (next.len() as u64) >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                let mut x = pre.clone();
                x.extend(c.iter().map(|k| k + col0));
                next.push(x);
            }
        }
        patterns = next;
        col0 += at as usize;
    }
    let mut total = 0u128;
    for piv in &patterns {
        let free: usize = piv
            .iter()
            .map(|&c| (c + 1..total_cols as usize).filter(|k| !piv.contains(k)).count())
            .sum();
        total += (q as u128).pow(free as u32);
    }
    Ok(total)
}

/// Same count by filtering every RREF matrix of the full size; only usable
/// for small shapes.
pub fn count_block_rref_explicit(a: &[i64], d: &[i64], q: u32, budget: u64) -> Result<u64> {
    check_block_args(a, d)?;
    let rows: i64 = d.iter().sum();
    let cols: i64 = a.iter().sum();
    let mut bounds = Vec::new();
    let mut c0 = 0;
    for (&at, &dt) in a.iter().zip(d) {
        for _ in 0..dt {
            bounds.push((c0 as usize, (c0 + at) as usize));
        }
        c0 += at;
    }
    let mut seen = 0u64;
    let mut count = 0u64;
    let mut over = false;
    rref_for_each(rows as usize, cols as usize, q, |m| {
        seen += 1;
        if seen > budget {
            over = true;
            return;
        }
        let ok = (0..m.rows).all(|r| {
            let c = (0..m.cols).find(|&c| m.get(r, c) != 0).unwrap();
            bounds[r].0 <= c && c < bounds[r].1
        });
        if ok {
            count += 1;
        }
    });
    if over {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(count)
}

fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for x in start..n {
        cur.push(x);
        combos(n, k, x + 1, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::hom_dim;

    fn m(s: &str) -> CyclicMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn build_small() {
        let r = build_rep(&m("n=2;1,3:1"), 2);
        assert_eq!(r.dims, vec![1, 1]);
        assert_eq!(r.arrows[0], Mat::from_rows(&[vec![1]], 1, 2));
        assert_eq!(r.arrows[1], Mat::from_rows(&[vec![0]], 1, 2));
        assert_eq!(build_rep(&m("n=2;1,2:2"), 3).dims, vec![2, 0]);
    }

    #[test]
    fn iso_round_trip() {
        for s in ["n=2;", "n=2;1,3:1", "n=2;1,2:2;1,4:1;2,3:1", "n=3;1,5:1;2,3:2;3,4:1", "n=3;1,2:1;1,4:1;3,6:1"] {
            let a = m(s);
            for q in [2, 3] {
                assert_eq!(iso_type(&build_rep(&a, q)).unwrap(), a);
            }
        }
        let a = m("n=2;1,3:1;2,3:1");
        let b = m("n=2;1,2:1;2,5:1");
        let sum = build_rep(&a, 2).direct_sum(&build_rep(&b, 2));
        assert_eq!(iso_type(&sum).unwrap(), a.checked_add(&b).unwrap());
    }

    #[test]
    fn hom_closed_form_matches_oracle() {
        for n in 2..=4usize {
            for i in 1..=n as i64 {
                for j in 1..=n as i64 {
                    for l in 1..=8 {
                        for k in 1..=8 {
                            let s = Segment::new(n, i, l).unwrap();
                            let t = Segment::new(n, j, k).unwrap();
                            assert_eq!(hom_dim(&s, &t) as usize, hom_dim_oracle(&s, &t, 2), "{s:?} {t:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hom_minus_ext_is_euler() {
        for n in 2..=3usize {
            for i in 1..=n as i64 {
                for j in 1..=n as i64 {
                    for l in 1..=5 {
                        for k in 1..=5 {
                            let s = Segment::new(n, i, l).unwrap();
                            let t = Segment::new(n, j, k).unwrap();
                            let (h, e) = hom_ext_dims(
                                &build_rep(&CyclicMatrix::segment(s), 3),
                                &build_rep(&CyclicMatrix::segment(t), 3),
                            );
                            let eu = crate::matrix::euler_form(&s.dim_vector(), &t.dim_vector()).unwrap();
                            assert_eq!(h as i64 - e as i64, eu);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn submodule_counts() {
        let s1 = m("n=2;1,2:1");
        let s2 = m("n=2;2,3:1");
        assert_eq!(count_submodules(&m("n=2;1,2:2"), &s1, &s1, 2, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(count_submodules(&m("n=2;1,3:1"), &s1, &s2, 3, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(count_submodules(&m("n=2;1,3:1"), &s2, &s1, 2, DEFAULT_BUDGET).unwrap(), 0);
        let err = count_submodules(&m("n=2;1,2:4"), &m("n=2;1,2:2"), &m("n=2;1,2:2"), 2, 3);
        assert_eq!(err, Err(Error::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn block_counts() {
        assert_eq!(count_block_rref(&[2], &[1], 2, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(count_block_rref(&[2, 3], &[0, 0], 2, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(count_block_rref(&[1, 1], &[1, 0], 2, DEFAULT_BUDGET).unwrap(), 2);
        for (a, d) in [(vec![2, 2], vec![1, 1]), (vec![3, 1, 2], vec![1, 1, 1]), (vec![2, 3], vec![2, 1])] {
            for q in [2, 3] {
                assert_eq!(
                    count_block_rref(&a, &d, q, DEFAULT_BUDGET).unwrap(),
                    count_block_rref_explicit(&a, &d, q, DEFAULT_BUDGET).unwrap() as u128
                );
            }
        }
    }
}
