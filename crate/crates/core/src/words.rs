//! Generic extensions and distinguished words.
//!
//! Words are read right to left: ℘(b_1^{e_1} ⋯ b_m^{e_m}) = S_1 * (S_2 * (⋯ * 0))
//! where `*` is the generic extension and each factor is the semisimple
//! module of the letter's dimension vector. The leftmost letter is the top.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::hallmult::{apply_t, enumerate_t_supported, tilde_shift};
use crate::matrix::{reduce, CyclicMatrix, DimVector};

/// A letter of the alphabet I ∪ I^sin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Simple(usize),
    Sincere(DimVector),
}

/// A word in tight form: `(letter, exponent)` pairs, adjacent equal simple
/// letters merged, sincere letters always with exponent 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<(Letter, i64)>,
}

impl Word {
    pub fn empty(n: usize) -> Self {
        Self { n, letters: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[(Letter, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends `i^e` on the right, merging with a trailing `i`.
    pub fn push_simple(&mut self, i: i64, e: i64) -> Result<()> {
        if e < 1 {
            return Err(Error::Invalid(format!("exponent must be positive, got {e}")));
        }
        let i = reduce(i, self.n);
        if let Some((Letter::Simple(last), k)) = self.letters.last_mut() {
            if *last == i {
                *k += e;
                return Ok(());
            }
        }
        self.letters.push((Letter::Simple(i), e));
        Ok(())
    }

    /// Appends a sincere letter on the right.
    pub fn push_sincere(&mut self, alpha: DimVector) -> Result<()> {
        if alpha.n() != self.n {
            return Err(Error::RankMismatch { left: self.n, right: alpha.n() });
        }
        if !alpha.is_sincere() {
            return Err(Error::Invalid(format!("letter {alpha} is not sincere")));
        }
        self.letters.push((Letter::Sincere(alpha), 1));
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        let mut w = self.clone();
        for (l, e) in &other.letters {
            match l {
                Letter::Simple(i) => w.push_simple(*i as i64, *e)?,
                Letter::Sincere(a) => w.push_sincere(a.clone())?,
            }
        }
        Ok(w)
    }

    /// Dimension vectors of the letters, left to right (exponents applied).
    pub fn factors(&self) -> Vec<DimVector> {
        self.letters
            .iter()
            .map(|(l, e)| match l {
                Letter::Simple(i) => {
                    let mut d = DimVector::zeros(self.n);
                    d.set(*i as i64, *e);
                    d
                }
                Letter::Sincere(a) => a.clone(),
            })
            .collect()
    }

    /// The exponents e_k of simple letters (sincere letters count as 1).
    pub fn exponents(&self) -> Vec<i64> {
        self.letters.iter().map(|(_, e)| *e).collect()
    }

    /// Parses the text form, e.g. `1^3.2^5.(6,6,3)`. A bare `i` means `i^1`.
    pub fn parse(n: usize, s: &str) -> Result<Word> {
        let mut w = Word::empty(n);
        let t = s.trim();
        if t.is_empty() {
            return Ok(w);
        }
        let mut pos = 0;
        for tok in split_letters(t) {
            let perr = |reason| Error::Parse { token: tok.to_string(), pos, reason };
            if tok.starts_with('(') {
                let alpha: DimVector = tok.parse().map_err(|_| perr("malformed sincere letter"))?;
                w.push_sincere(alpha).map_err(|_| perr("sincere letter must have n positive entries"))?;
            } else {
                let (i, e) = match tok.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (tok, "1"),
                };
                let i: i64 = i.trim().parse().map_err(|_| perr("vertex is not an integer"))?;
                let e: i64 = e.trim().parse().map_err(|_| perr("exponent is not an integer"))?;
                if i < 1 || i > n as i64 {
                    return Err(perr("vertex outside 1..=n"));
                }
                w.push_simple(i, e).map_err(|_| perr("exponent must be positive"))?;
            }
            pos += tok.len() + 1;
        }
        Ok(w)
    }
}

/// Splits on '.' outside parentheses.
fn split_letters(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '.' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            match l {
                Letter::Simple(i) => write!(f, "{i}^{e}")?,
                Letter::Sincere(a) => write!(f, "{a}")?,
            }
        }
        Ok(())
    }
}

/// S_α * M(A): the extension with the smallest endomorphism algebra.
pub fn generic_extension(alpha: &DimVector, a: &CyclicMatrix) -> Result<CyclicMatrix> {
    let mut cands: Vec<CyclicMatrix> = enumerate_t_supported(alpha, a)?
        .iter()
        .filter_map(|t| apply_t(a, t))
        .collect();
    cands.sort();
    cands.dedup();
    let best = cands.iter().map(|c| c.end_dim()).min().ok_or(Error::NoUniqueMaximum)?;
    let mut tops = cands.iter().filter(|c| c.end_dim() == best);
    let top = tops.next().ok_or(Error::NoUniqueMaximum)?;
    if tops.next().is_some() {
        return Err(Error::NoUniqueMaximum);
    }
    for c in &cands {
        if !c.deg_leq(top)? {
            return Err(Error::NoUniqueMaximum);
        }
    }
    Ok(top.clone())
}

/// ℘(w).
pub fn wp(w: &Word) -> Result<CyclicMatrix> {
    let mut m = CyclicMatrix::zero(w.n())?;
    for alpha in w.factors().iter().rev() {
        m = generic_extension(alpha, &m)?;
    }
    Ok(m)
}

/// The distinguished pair (A′, A″): A′ strongly periodic with Loewy length
/// p(A), A″ aperiodic.
pub fn distinguished_pair(a: &CyclicMatrix) -> Result<(CyclicMatrix, CyclicMatrix)> {
    let n = a.n() as i64;
    let p = a.periodicity();
    if p == 0 {
        return Ok((CyclicMatrix::zero(a.n())?, a.clone()));
    }
    let mut a1 = CyclicMatrix::zero(a.n())?;
    let mut a2 = CyclicMatrix::zero(a.n())?;
    for ((i, j), x) in a.entries() {
        if j - i < p {
            a1.add_raw(i, j, x);
        } else if j - i > p {
            a2.add_raw(i, j - p, x);
        }
    }
    let l = a.loewy_length();
    for i in 1..=n {
        let col = i + p;
        let s: i64 = (col - l..=i).map(|i0| a.get(i0, col)).sum();
        a1.add_raw(i, col, s);
    }
    Ok((a1, a2))
}

/// One step of either word algorithm: the letter emitted, the matrix T that
/// was peeled off and the remainder B afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub letter: Letter,
    pub exponent: i64,
    pub t: CyclicMatrix,
    pub b: CyclicMatrix,
}

fn peel(b: &mut CyclicMatrix, t: &CyclicMatrix) {
    for ((i, j), x) in t.entries() {
        b.add_raw(i, j, -x);
    }
    for ((i, j), x) in tilde_shift(t).entries() {
        b.add_raw(i, j, x);
    }
}

/// The word a_1 a_2 ⋯ a_p of a strongly periodic matrix, with its trace.
pub fn word_strongly_periodic_trace(a: &CyclicMatrix) -> Result<(Word, Vec<TraceStep>)> {
    if !a.is_zero() && !a.is_strongly_periodic() {
        return Err(Error::InputNotStronglyPeriodic);
    }
    let n = a.n() as i64;
    let p = a.periodicity();
    let mut w = Word::empty(a.n());
    let mut trace = Vec::new();
    let mut b = a.clone();
    for j in 1..=p {
        let d = p - j + 1;
        let t = CyclicMatrix::from_entries(a.n(), (1..=n).map(|i| ((i, i + d), b.get(i, i + d))))?;
        peel(&mut b, &t);
        let alpha = t.row_vector();
        w.push_sincere(alpha.clone()).map_err(|_| Error::InputNotStronglyPeriodic)?;
        trace.push(TraceStep { letter: Letter::Sincere(alpha), exponent: 1, t, b: b.clone() });
    }
    debug_assert!(b.is_zero());
    Ok((w, trace))
}

pub fn word_strongly_periodic(a: &CyclicMatrix) -> Result<Word> {
    Ok(word_strongly_periodic_trace(a)?.0)
}

/// Longest segment starting at vertex `i` in `b` (0 if none).
fn row_length(b: &CyclicMatrix, i: i64) -> i64 {
    let i = reduce(i, b.n()) as i64;
    b.entries().filter(|((r, _), _)| *r == i).map(|((r, c), _)| c - r).max().unwrap_or(0)
}

/// The simple-letter word of an aperiodic matrix, with its trace.
///
/// Diagonals are emptied from the longest one down. On diagonal L the row j
/// is the largest vertex with b_{j,j+L} ≠ 0 and b_{j+1,j+1+L} = 0; the peeled
/// block is row j from column j+j′ to j+L, where j′ is minimal with
/// b_{j,j+j′} ≠ 0 and j′ longer than every segment in row j+1.
pub fn word_aperiodic_trace(a: &CyclicMatrix) -> Result<(Word, Vec<TraceStep>)> {
    if !a.is_aperiodic() {
        return Err(Error::InputNotAperiodic);
    }
    let n = a.n() as i64;
    let mut w = Word::empty(a.n());
    let mut trace = Vec::new();
    let mut b = a.clone();
    for l in (1..=a.loewy_length()).rev() {
        while (1..=n).any(|i| b.get(i, i + l) != 0) {
            let j = (1..=n)
                .rev()
                .find(|&j| b.get(j, j + l) != 0 && b.get(j + 1, j + 1 + l) == 0)
                .ok_or(Error::InputNotAperiodic)?;
            let below = row_length(&b, j + 1);
            let jp = (1..=l)
                .find(|&k| b.get(j, j + k) != 0 && k > below)
                .ok_or(Error::InputNotAperiodic)?;
            let t = CyclicMatrix::from_entries(a.n(), (jp..=l).map(|k| ((j, j + k), b.get(j, j + k))))?;
            let e = t.row_vector().get(j);
            peel(&mut b, &t);
            w.push_simple(j, e)?;
            trace.push(TraceStep { letter: Letter::Simple(j as usize), exponent: e, t, b: b.clone() });
        }
    }
    debug_assert!(b.is_zero());
    Ok((w, trace))
}

pub fn word_aperiodic(a: &CyclicMatrix) -> Result<Word> {
    Ok(word_aperiodic_trace(a)?.0)
}

/// w_A = w_{A″} w_{A′}.
pub fn distinguished_word(a: &CyclicMatrix) -> Result<Word> {
    let (a1, a2) = distinguished_pair(a)?;
    word_aperiodic(&a2)?.concat(&word_strongly_periodic(&a1)?)
}

/// A line-per-step transcript of both word algorithms on `a`.
///
/// Periodic steps are labelled by j and print the sincere letter a_j;
/// aperiodic steps are labelled x_{i,j}, where i counts diagonals from the
/// longest one and j is the row that was peeled.
pub fn trace_report(a: &CyclicMatrix) -> Result<String> {
    use core::fmt::Write;
    let (a1, a2) = distinguished_pair(a)?;
    let (w1, per) = word_strongly_periodic_trace(&a1)?;
    let (w2, aper) = word_aperiodic_trace(&a2)?;
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("A = {a}"));
    line(format!("p(A) = {}, l(A) = {}", a.periodicity(), a.loewy_length()));
    line(format!("A' = {a1}"));
    line(format!("A'' = {a2}"));
    line(format!("l(A') = {}, l(A'') = {}", a1.loewy_length(), a2.loewy_length()));
    for (k, step) in per.iter().enumerate() {
        let j = k + 1;
        if let Letter::Sincere(alpha) = &step.letter {
            line(format!("periodic j={j}: T = {} | B = {} | a_{j} = {alpha}", step.t, step.b));
        }
    }
    line(format!("w_A' = {w1}"));
    let l = a2.loewy_length();
    for step in &aper {
        if let Letter::Simple(j) = step.letter {
            let diag = step.t.entries().map(|((r, c), _)| c - r).max().unwrap_or(0);
            let i = l - diag + 1;
            let mut s = String::new();
            let _ = write!(s, "aperiodic i={i}: T = {} | B = {} | x_{{{i},{j}}} = {j}^{}", step.t, step.b, step.exponent);
            line(s);
        }
    }
    line(format!("w_A'' = {w2}"));
    line(format!("w_A = {}", w2.concat(&w1)?));
    Ok(out)
}

/// Whether `a` is unimodal (weakly up, then weakly down) with positive entries.
pub fn is_pyramidic(a: &[i64]) -> bool {
    if a.is_empty() || a.iter().any(|&x| x <= 0) {
        return false;
    }
    let peak = a.iter().enumerate().max_by_key(|(k, x)| (**x, core::cmp::Reverse(*k))).map(|(k, _)| k).unwrap();
    a[..=peak].windows(2).all(|w| w[0] <= w[1]) && a[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// For n = 2: the aperiodic A with m^{(A)} = E_i^{(a_1)} E_{i+1}^{(a_2)} ⋯.
pub fn pyramidic_to_matrix(i: i64, a: &[i64]) -> Result<CyclicMatrix> {
    if !is_pyramidic(a) {
        return Err(Error::NotPyramidic);
    }
    let mut w = Word::empty(2);
    for (k, &x) in a.iter().enumerate() {
        w.push_simple(i + k as i64, x)?;
    }
    wp(&w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> CyclicMatrix {
        s.parse().unwrap()
    }

    fn dv(c: &[i64]) -> DimVector {
        DimVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn generic_extension_examples() {
        assert_eq!(generic_extension(&dv(&[1, 0]), &m("n=2;2,3:1")).unwrap(), m("n=2;1,3:1"));
        let z = CyclicMatrix::zero(2).unwrap();
        assert_eq!(generic_extension(&dv(&[2, 1]), &z).unwrap(), m("n=2;1,2:2;2,3:1"));
        assert_eq!(generic_extension(&dv(&[0, 1]), &m("n=2;2,3:1")).unwrap(), m("n=2;2,3:2"));
    }

    #[test]
    fn wp_examples() {
        assert_eq!(wp(&Word::parse(3, "2").unwrap()).unwrap(), m("n=3;2,3:1"));
        for (a, b) in [(1, 1), (2, 3), (0, 2)] {
            let w = Word::parse(2, &format!("1^{}.2^{}", a + b, b)).unwrap();
            let want = CyclicMatrix::from_entries(2, [((1, 2), a), ((1, 3), b)]).unwrap();
            assert_eq!(wp(&w).unwrap(), want);
        }
    }

    #[test]
    fn word_text() {
        let w = Word::parse(3, "1^3.2^5.1.(6,6,3)").unwrap();
        assert_eq!(w.to_string(), "1^3.2^5.1^1.(6,6,3)");
        assert_eq!(Word::parse(2, "1.1").unwrap().to_string(), "1^2");
        assert!(matches!(Word::parse(2, "1.3"), Err(Error::Parse { pos: 2, .. })));
        assert!(Word::parse(2, "(1,0)").is_err());
    }

    #[test]
    fn degenerate_words() {
        let s1 = m("n=2;1,2:1;2,3:1");
        assert_eq!(word_strongly_periodic(&s1).unwrap().to_string(), "(1,1)");
        assert_eq!(word_aperiodic(&m("n=2;1,3:1")).unwrap().to_string(), "1^1.2^1");
        assert_eq!(word_aperiodic(&m("n=2;1,2:4")).unwrap().to_string(), "1^4");
        assert_eq!(distinguished_pair(&s1).unwrap(), (s1.clone(), CyclicMatrix::zero(2).unwrap()));
        let ap = m("n=2;1,3:2");
        assert_eq!(distinguished_pair(&ap).unwrap(), (CyclicMatrix::zero(2).unwrap(), ap));
        assert_eq!(word_aperiodic(&s1), Err(Error::InputNotAperiodic));
        assert_eq!(word_strongly_periodic(&m("n=2;1,2:1")), Err(Error::InputNotStronglyPeriodic));
    }

    #[test]
    fn pyramidic() {
        assert!(is_pyramidic(&[2, 3, 5, 8, 9, 6, 4, 3, 1]));
        assert!(is_pyramidic(&[1, 1, 2, 2, 1]));
        assert!(!is_pyramidic(&[2, 1, 2]));
        assert!(!is_pyramidic(&[]));
        assert_eq!(pyramidic_to_matrix(1, &[3]).unwrap(), m("n=2;1,2:3"));
        assert_eq!(pyramidic_to_matrix(1, &[2, 1, 2]), Err(Error::NotPyramidic));
    }
}
