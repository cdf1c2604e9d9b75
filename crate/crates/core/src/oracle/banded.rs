//! Complex banded LU factorisation with partial pivoting.
//!
//! Rows are stored densely over the band that pivoting can fill:
//! entry `(i, j)` lives at `i·W + (j + kl − i)` for `i − kl ≤ j ≤ i + kl + ku`,
//! `W = 2kl + ku + 1`. With the finite-volume grid numbered axially-major the
//! half-bandwidth is the number of radial cells, so this is a direct solver
//! with `O(n·kl·(kl+ku))` work.

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![Complex64::new(0.0, 0.0); n * width],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku);
        i * self.width + j + self.kl - i
    }

    /// Adds `v` at `(i, j)`; `j` must lie within the original band.
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(j <= i + self.ku, "entry outside the upper band");
        let o = self.offset(i, j);
        self.data[o] += v;
    }

    /// In-place factorisation. Returns `None` on an exactly zero pivot.
    pub fn factor(mut self) -> Option<BandLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let mut pivots = vec![0usize; n];
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.offset(k, k)].norm();
            for i in k + 1..=last_row {
                let v = self.data[self.offset(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return None;
            }
            pivots[k] = p;
            let last_col = (k + kl + ku).min(n - 1);
            if p != k {
                let (ok, op) = (self.offset(k, k), self.offset(p, k));
                for d in 0..=last_col - k {
                    self.data.swap(ok + d, op + d);
                }
            }
            let pivot_start = self.offset(k, k);
            let inv = 1.0 / self.data[pivot_start];
            let len = last_col - k;
            for i in k + 1..=last_row {
                let oi = self.offset(i, k);
                let l = self.data[oi] * inv;
                self.data[oi] = l;
                if l.re == 0.0 && l.im == 0.0 {
                    continue;
                }
                let (head, tail) = self.data.split_at_mut(oi);
                let pivot_row = &head[pivot_start + 1..pivot_start + 1 + len];
                for (a, b) in tail[1..=len].iter_mut().zip(pivot_row) {
                    *a -= l * b;
                }
            }
        }
        Some(BandLu { m: self, pivots })
    }
}

#[derive(Debug, Clone)]
pub struct BandLu {
    m: BandMatrix,
    pivots: Vec<usize>,
}

impl BandLu {
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let (n, kl, ku) = (self.m.n, self.m.kl, self.m.ku);
        let mut x = b.to_vec();
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                x.swap(k, p);
            }
            let xk = x[k];
            if xk.re == 0.0 && xk.im == 0.0 {
                continue;
            }
            for i in k + 1..=(k + kl).min(n - 1) {
                x[i] -= self.m.data[self.m.offset(i, k)] * xk;
            }
        }
        for k in (0..n).rev() {
            let o = self.m.offset(k, k);
            let last_col = (k + kl + ku).min(n - 1);
            let mut s = x[k];
            for (d, xj) in x[k + 1..=last_col].iter().enumerate() {
                s -= self.m.data[o + 1 + d] * xj;
            }
            x[k] = s / self.m.data[o];
        }
        x
    }
}
