//! Matrix cores of nilpotent representations of the cyclic quiver Δ(n).
//!
//! A representation is a direct sum of segments S_i[l]; the matrix
//! A = (a_{i,j}) records the multiplicity of S_i[j-i] at position (i, j).
//! Only the core rows 1..=n are stored, everything else follows from
//! a_{i+n,j+n} = a_{i,j}.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Reduces a vertex index into `1..=n`.
pub fn reduce(i: i64, n: usize) -> usize {
    (i - 1).rem_euclid(n as i64) as usize + 1
}

/// A dimension vector in Z^n, indexed by vertices `1..=n` (indices are read
/// mod n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    comps: Vec<i64>,
}

impl DimVector {
    pub fn new(comps: Vec<i64>) -> Result<Self> {
        if comps.len() < 2 {
            return Err(Error::Invalid(format!("rank must be at least 2, got {}", comps.len())));
        }
        Ok(Self { comps })
    }

    pub fn zeros(n: usize) -> Self {
        Self { comps: vec![0; n] }
    }

    /// The i-th unit vector.
    pub fn unit(n: usize, i: i64) -> Self {
        let mut d = Self::zeros(n);
        d.comps[reduce(i, n) - 1] = 1;
        d
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    /// Component at vertex `i` (any integer, read mod n).
    pub fn get(&self, i: i64) -> i64 {
        self.comps[reduce(i, self.n()) - 1]
    }

    pub fn set(&mut self, i: i64, x: i64) {
        let k = reduce(i, self.n()) - 1;
        self.comps[k] = x;
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.comps
    }

    pub fn total(&self) -> i64 {
        self.comps.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.comps.iter().all(|&c| c >= 0)
    }

    pub fn is_sincere(&self) -> bool {
        self.comps.iter().all(|&c| c > 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.n() == other.n() && self.comps.iter().zip(&other.comps).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &DimVector) -> Result<DimVector> {
        check_rank(self.n(), other.n())?;
        Ok(Self { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, other: &DimVector) -> Result<DimVector> {
        check_rank(self.n(), other.n())?;
        Ok(Self { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() })
    }

    /// The shifted vector a^{[1]} with components a_{i+1}.
    pub fn shifted(&self) -> DimVector {
        let n = self.n() as i64;
        Self { comps: (1..=n).map(|i| self.get(i + 1)).collect() }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for DimVector {
    type Err = Error;

    /// Accepts `c1,c2,...` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let offset = s.find(inner).unwrap_or(0);
        let mut comps = Vec::new();
        let mut pos = offset;
        for tok in inner.split(',') {
            let v = tok.trim().parse::<i64>().map_err(|_| Error::Parse {
                token: tok.to_string(),
                pos,
                reason: "expected an integer component",
            })?;
            comps.push(v);
            pos += tok.len() + 1;
        }
        DimVector::new(comps)
    }
}

fn check_rank(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::RankMismatch { left: a, right: b });
    }
    Ok(())
}

/// The indecomposable S_i[l]: top S_i, length l.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub n: usize,
    pub i: usize,
    pub l: usize,
}

impl Segment {
    pub fn new(n: usize, i: i64, l: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("rank must be at least 2, got {n}")));
        }
        if l == 0 {
            return Err(Error::Invalid("segment length must be positive".into()));
        }
        Ok(Self { n, i: reduce(i, n), l })
    }

    /// Matrix key `(i, i + l)`.
    pub fn key(&self) -> (i64, i64) {
        (self.i as i64, (self.i + self.l) as i64)
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = DimVector::zeros(self.n);
        for k in 0..self.l {
            let v = self.i as i64 + k as i64;
            d.set(v, d.get(v) + 1);
        }
        d
    }
}

/// dim Hom(S_i[l], S_j[m]).
///
/// A map is determined by its image, a quotient S_i[k] of the source that is
/// also a submodule of the target, so k ranges over `1..=min(l, m)` with
/// i ≡ j + m - k (mod n).
pub fn hom_dim(s: &Segment, t: &Segment) -> i64 {
    let n = s.n as i64;
    let target = (t.i as i64 + t.l as i64 - s.i as i64).rem_euclid(n);
    (1..=s.l.min(t.l) as i64).filter(|k| k.rem_euclid(n) == target).count() as i64
}

/// ⟨a, b⟩ = Σ a_i b_i - Σ a_i b_{i+1}.
pub fn euler_form(a: &DimVector, b: &DimVector) -> Result<i64> {
    check_rank(a.n(), b.n())?;
    let n = a.n() as i64;
    Ok((1..=n).map(|i| a.get(i) * b.get(i) - a.get(i) * b.get(i + 1)).sum())
}

/// The core of a matrix in Θ_Δ^+(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicMatrix {
    n: usize,
    entries: BTreeMap<(i64, i64), i64>,
}

impl CyclicMatrix {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("rank must be at least 2, got {n}")));
        }
        Ok(Self { n, entries: BTreeMap::new() })
    }

    /// Builds a matrix from arbitrary (not necessarily core) keys; rows are
    /// reduced into `1..=n` and repeated keys are summed.
    pub fn from_entries<I>(n: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((i64, i64), i64)>,
    {
        let mut m = Self::zero(n)?;
        for ((i, j), a) in it {
            if j <= i {
                return Err(Error::Invalid(format!("entry ({i},{j}) is not above the diagonal")));
            }
            if a < 0 {
                return Err(Error::Invalid(format!("entry ({i},{j}) has negative value {a}")));
            }
            m.add_raw(i, j, a);
        }
        Ok(m)
    }

    pub fn segment(s: Segment) -> Self {
        let mut m = Self { n: s.n, entries: BTreeMap::new() };
        let (i, j) = s.key();
        m.add_raw(i, j, 1);
        m
    }

    /// S_α = Σ α_i E_{i,i+1}.
    pub fn semisimple(alpha: &DimVector) -> Result<Self> {
        if !alpha.is_nonnegative() {
            return Err(Error::Invalid(format!("dimension vector {alpha} has a negative entry")));
        }
        let n = alpha.n();
        Self::from_entries(n, (1..=n as i64).map(|i| ((i, i + 1), alpha.get(i))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// a_{i,j} for any i, j (periodic lookup).
    pub fn get(&self, i: i64, j: i64) -> i64 {
        let (ci, cj) = self.core_key(i, j);
        self.entries.get(&(ci, cj)).copied().unwrap_or(0)
    }

    fn core_key(&self, i: i64, j: i64) -> (i64, i64) {
        let ci = reduce(i, self.n) as i64;
        (ci, j + (ci - i))
    }

    /// Adds `delta` at (i, j); panics in debug builds if an entry turns
    /// negative or lies on/below the diagonal.
    pub(crate) fn add_raw(&mut self, i: i64, j: i64, delta: i64) {
        if delta == 0 {
            return;
        }
        debug_assert!(j > i, "entry ({i},{j}) below diagonal");
        let key = self.core_key(i, j);
        let slot = self.entries.entry(key).or_insert(0);
        *slot += delta;
        debug_assert!(*slot >= 0, "negative entry at {key:?}");
        if *slot == 0 {
            self.entries.remove(&key);
        }
    }

    /// Adds `delta` at (i, j), refusing to produce a negative entry.
    pub fn try_add(&mut self, i: i64, j: i64, delta: i64) -> Result<()> {
        if j <= i {
            return Err(Error::Invalid(format!("entry ({i},{j}) is not above the diagonal")));
        }
        if self.get(i, j) + delta < 0 {
            return Err(Error::Invalid(format!("entry ({i},{j}) would become negative")));
        }
        self.add_raw(i, j, delta);
        Ok(())
    }

    /// Core entries `((i, j), a)` with `1 ≤ i ≤ n`, sorted.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.entries.iter().map(|(k, a)| (*k, *a))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Segments with multiplicities.
    pub fn segments(&self) -> impl Iterator<Item = (Segment, i64)> + '_ {
        let n = self.n;
        self.entries().map(move |((i, j), a)| (Segment { n, i: i as usize, l: (j - i) as usize }, a))
    }

    pub fn checked_add(&self, other: &CyclicMatrix) -> Result<CyclicMatrix> {
        check_rank(self.n, other.n)?;
        let mut out = self.clone();
        for ((i, j), a) in other.entries() {
            out.add_raw(i, j, a);
        }
        Ok(out)
    }

    /// Σ_{j>i} a_{i,j} at every vertex i.
    pub fn row_vector(&self) -> DimVector {
        let mut d = DimVector::zeros(self.n);
        for ((i, _), a) in self.entries() {
            d.set(i, d.get(i) + a);
        }
        d
    }

    /// Σ_{i<j} a_{i,j} at every vertex j (mod n).
    pub fn col_vector(&self) -> DimVector {
        let mut d = DimVector::zeros(self.n);
        for ((_, j), a) in self.entries() {
            d.set(j, d.get(j) + a);
        }
        d
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = DimVector::zeros(self.n);
        let n = self.n as i64;
        for ((i, j), a) in self.entries() {
            let l = j - i;
            for k in 0..n {
                // vertices i+k, i+k+n, ... below i+l
                let hits = if k < l { (l - k - 1) / n + 1 } else { 0 };
                d.set(i + k, d.get(i + k) + a * hits);
            }
        }
        d
    }

    pub fn total_dim(&self) -> i64 {
        self.entries().map(|((i, j), a)| a * (j - i)).sum()
    }

    /// ℓ(A): the longest segment.
    pub fn loewy_length(&self) -> i64 {
        self.entries.keys().map(|(i, j)| j - i).max().unwrap_or(0)
    }

    /// p(A): the largest l with a_{i,i+l} ≠ 0 for every vertex i, or 0.
    pub fn periodicity(&self) -> i64 {
        let n = self.n as i64;
        (1..=self.loewy_length())
            .rev()
            .find(|&l| (1..=n).all(|i| self.get(i, i + l) != 0))
            .unwrap_or(0)
    }

    pub fn is_aperiodic(&self) -> bool {
        self.periodicity() == 0
    }

    pub fn is_strongly_periodic(&self) -> bool {
        let p = self.periodicity();
        p > 0 && p == self.loewy_length()
    }

    /// σ_{i,j}(A) = Σ_{s ≤ i, t ≥ j} a_{s,t} over all periodic translates.
    /// Zero when i > j; i = j is rejected.
    pub fn sigma(&self, i: i64, j: i64) -> Result<i64> {
        if i == j {
            return Err(Error::Invalid(format!("sigma needs i != j, got i = j = {i}")));
        }
        if i > j {
            return Ok(0);
        }
        let n = self.n as i64;
        let mut total = 0;
        for ((s, t), a) in self.entries() {
            let hi = (i - s).div_euclid(n);
            let lo = -((t - j).div_euclid(n));
            if hi >= lo {
                total += a * (hi - lo + 1);
            }
        }
        Ok(total)
    }

    /// B ⪯ A: σ_{i,j}(B) ≤ σ_{i,j}(A) everywhere.
    pub fn preceq(&self, a: &CyclicMatrix) -> Result<bool> {
        check_rank(self.n, a.n)?;
        let n = self.n as i64;
        let width = self.loewy_length().max(a.loewy_length());
        for i in 1..=n {
            for j in i + 1..=i + width {
                if self.sigma(i, j)? > a.sigma(i, j)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn prec(&self, a: &CyclicMatrix) -> Result<bool> {
        Ok(self != a && self.preceq(a)?)
    }

    /// B ≤_dg A: B ⪯ A with equal dimension vectors.
    pub fn deg_leq(&self, a: &CyclicMatrix) -> Result<bool> {
        check_rank(self.n, a.n)?;
        Ok(self.dim_vector() == a.dim_vector() && self.preceq(a)?)
    }

    pub fn deg_lt(&self, a: &CyclicMatrix) -> Result<bool> {
        Ok(self != a && self.deg_leq(a)?)
    }

    /// dim End(M(A)).
    pub fn end_dim(&self) -> i64 {
        let segs: Vec<_> = self.segments().collect();
        let mut total = 0;
        for (s, a) in &segs {
            for (t, b) in &segs {
                total += a * b * hom_dim(s, t);
            }
        }
        total
    }

    /// δ(A) = dim End(M(A)) - dim M(A).
    pub fn delta(&self) -> i64 {
        self.end_dim() - self.total_dim()
    }

    /// Rows `1..=n` of the core, columns `1..=width`.
    pub fn core_rows(&self) -> Vec<Vec<i64>> {
        let width = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(self.n as i64).max(self.n as i64);
        (1..=self.n as i64).map(|i| (1..=width).map(|j| if j > i { self.get(i, j) } else { 0 }).collect()).collect()
    }

    /// LaTeX `pmatrix` of the core.
    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .core_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
    }
}

impl fmt::Display for CyclicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if self.entries.is_empty() {
            return f.write_str(";");
        }
        for ((i, j), a) in self.entries() {
            write!(f, ";{i},{j}:{a}")?;
        }
        Ok(())
    }
}

impl FromStr for CyclicMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perr = |token: &str, pos: usize, reason: &'static str| Error::Parse {
            token: token.to_string(),
            pos,
            reason,
        };
        let mut pos = 0;
        let mut parts = s.split(';');
        let head = parts.next().unwrap_or("");
        let n = head
            .trim()
            .strip_prefix("n=")
            .and_then(|x| x.trim().parse::<usize>().ok())
            .ok_or_else(|| perr(head, 0, "expected `n=<int>`"))?;
        if n < 2 {
            return Err(perr(head, 0, "rank must be at least 2"));
        }
        pos += head.len() + 1;
        let mut m = CyclicMatrix::zero(n)?;
        for part in parts {
            let tok = part.trim();
            if tok.is_empty() {
                pos += part.len() + 1;
                continue;
            }
            let (key, val) = tok.split_once(':').ok_or_else(|| perr(tok, pos, "expected `i,j:a`"))?;
            let (i, j) = key.split_once(',').ok_or_else(|| perr(tok, pos, "expected `i,j:a`"))?;
            let i: i64 = i.trim().parse().map_err(|_| perr(tok, pos, "row index is not an integer"))?;
            let j: i64 = j.trim().parse().map_err(|_| perr(tok, pos, "column index is not an integer"))?;
            let a: i64 = val.trim().parse().map_err(|_| perr(tok, pos, "value is not an integer"))?;
            if i < 1 || i > n as i64 {
                return Err(perr(tok, pos, "row index outside 1..=n"));
            }
            if j <= i {
                return Err(perr(tok, pos, "column index must exceed row index"));
            }
            if a < 1 {
                return Err(perr(tok, pos, "value must be positive"));
            }
            if m.entries.contains_key(&(i, j)) {
                return Err(perr(tok, pos, "duplicate entry"));
            }
            m.add_raw(i, j, a);
            pos += part.len() + 1;
        }
        Ok(m)
    }
}

/// All A with `dim_vector(A) = d`, sorted, segment lengths up to `total(d)`.
pub fn enumerate_by_dimvec(d: &DimVector) -> Result<Vec<CyclicMatrix>> {
    enumerate_by_dimvec_maxlen(d, d.total().max(0))
}

/// As [`enumerate_by_dimvec`] but only segments of length ≤ `max_len`.
pub fn enumerate_by_dimvec_maxlen(d: &DimVector, max_len: i64) -> Result<Vec<CyclicMatrix>> {
    if !d.is_nonnegative() {
        return Err(Error::Invalid(format!("dimension vector {d} has a negative entry")));
    }
    let n = d.n();
    let segs: Vec<(Segment, DimVector)> = (1..=max_len as usize)
        .rev()
        .flat_map(|l| (1..=n).map(move |i| Segment { n, i, l }))
        .map(|s| (s, s.dim_vector()))
        .collect();
    let mut out = Vec::new();
    let mut cur = CyclicMatrix::zero(n)?;
    let mut rem = d.clone();
    fill(&segs, 0, &mut rem, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn fill(
    segs: &[(Segment, DimVector)],
    k: usize,
    rem: &mut DimVector,
    cur: &mut CyclicMatrix,
    out: &mut Vec<CyclicMatrix>,
) {
    if rem.is_zero() {
        out.push(cur.clone());
        return;
    }
    if k == segs.len() {
        return;
    }
    let (seg, dv) = &segs[k];
    let cap = dv
        .as_slice()
        .iter()
        .zip(rem.as_slice())
        .filter(|(c, _)| **c > 0)
        .map(|(c, r)| r / c)
        .min()
        .unwrap_or(0);
    let (i, j) = seg.key();
    for mult in (0..=cap).rev() {
        let mut next = rem.clone();
        for v in 1..=seg.n as i64 {
            next.set(v, rem.get(v) - mult * dv.get(v));
        }
        cur.add_raw(i, j, mult);
        let mut next_rem = next;
        fill(segs, k + 1, &mut next_rem, cur, out);
        cur.add_raw(i, j, -mult);
    }
}

/// Θ_A = {B : B ≤_dg A}, sorted.
pub fn poset_ideal(a: &CyclicMatrix) -> Result<Vec<CyclicMatrix>> {
    let mut out = Vec::new();
    for b in enumerate_by_dimvec_maxlen(&a.dim_vector(), a.loewy_length())? {
        if b.preceq(a)? {
            out.push(b);
        }
    }
    Ok(out)
}
