//! Dense linear algebra over a prime field F_p.

use alloc::vec;
use alloc::vec::Vec;

/// A dense matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(k: usize, p: u32) -> Self {
        let mut m = Self::zeros(k, k, p);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x % p);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u32) {
        self.data[r * self.cols + c] = x % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = Mat::zeros(self.rows, other.cols, self.p);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % p) as u32;
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| (self.row(r).iter().zip(x).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32)
            .collect()
    }

    /// Reduced row-echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            self.swap_rows(r, pr);
            let inv = inv_mod(self.get(r, c), p);
            for k in 0..self.cols {
                let x = mul_mod(self.get(r, k), inv, p);
                self.set(r, k, x);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for k in 0..self.cols {
                        let x = sub_mod(self.get(i, k), mul_mod(f, self.get(r, k), p), p);
                        self.set(i, k, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Whether the matrix is in reduced row-echelon form with full row rank.
    pub fn is_full_rank_rref(&self) -> bool {
        let mut last = None;
        for r in 0..self.rows {
            let Some(c) = (0..self.cols).find(|&c| self.get(r, c) != 0) else { return false };
            if self.get(r, c) != 1 || last.is_some_and(|l| c <= l) {
                return false;
            }
            if (0..self.rows).any(|i| i != r && self.get(i, c) != 0) {
                return false;
            }
            last = Some(c);
        }
        true
    }

    pub fn inverse(&self) -> Option<Mat> {
        let k = self.rows;
        if k != self.cols {
            return None;
        }
        let mut aug = Mat::zeros(k, 2 * k, self.p);
        for r in 0..k {
            for c in 0..k {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, k + r, 1);
        }
        let piv = aug.rref_in_place();
        if piv.len() < k || piv[k - 1] >= k {
            return None;
        }
        let mut inv = Mat::zeros(k, k, self.p);
        for r in 0..k {
            for c in 0..k {
                inv.set(r, c, aug.get(r, k + c));
            }
        }
        Some(inv)
    }
}

pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    (a + p - b % p) % p
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Calls `f` on every m × nn matrix over F_q in reduced row-echelon form of
/// rank m. Pivot sets are visited in lexicographic order, free entries
/// (right of a pivot, outside pivot columns) in odometer order.
pub fn rref_for_each(m: usize, nn: usize, q: u32, mut f: impl FnMut(&Mat)) {
    if m > nn {
        return;
    }
    let mut pivots: Vec<usize> = (0..m).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| {
                let pv = pivots.clone();
                (pivots[r] + 1..nn).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut mat = Mat::zeros(m, nn, q);
        for (r, &c) in pivots.iter().enumerate() {
            mat.set(r, c, 1);
        }
        let mut digits = vec![0u32; free.len()];
        'fill: loop {
            f(&mat);
            for (k, &(r, c)) in free.iter().enumerate() {
                digits[k] += 1;
                if digits[k] < q {
                    mat.set(r, c, digits[k]);
                    continue 'fill;
                }
                digits[k] = 0;
                mat.set(r, c, 0);
            }
            break;
        }
        // next pivot combination
        let mut k = m;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if pivots[k] < nn - m + k {
                pivots[k] += 1;
                for t in k + 1..m {
                    pivots[t] = pivots[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All rank-m RREF matrices of size m × nn over F_q.
pub fn rref_enumerate(m: usize, nn: usize, q: u32) -> Vec<Mat> {
    let mut out = Vec::new();
    rref_for_each(m, nn, q, |x| out.push(x.clone()));
    out
}
