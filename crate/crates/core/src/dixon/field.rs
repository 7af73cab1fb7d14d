//! Arithmetic and small dense linear algebra over a prime field `F_p`, `p < 2^31`.

use crate::arith::{is_prime, pow_mod, FactoredInt};

pub type Matrix = Vec<Vec<u64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 31 && is_prime(p));
        Self { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Inverse of a nonzero element by Fermat.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u64 {
        let order = self.p - 1;
        let primes: Vec<u64> = FactoredInt::factorize(order).expect("p > 1").primes().collect();
        (2..self.p).find(|&g| primes.iter().all(|&q| self.pow(g, order / q) != 1)).unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, m: &mut Matrix) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let inv = self.inv(m[r][c]);
            for v in m[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        pivots
    }

    /// Basis of `{x : m x = 0}` as row vectors.
    pub fn nullspace(self, m: &Matrix) -> Vec<Vec<u64>> {
        let cols = m.first().map_or(0, Vec::len);
        let mut a = m.clone();
        let pivots = self.rref(&mut a);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(a[row][f]);
                }
                v
            })
            .collect()
    }

    /// `m · v` for a column vector `v`.
    pub fn mat_vec(self, m: &Matrix, v: &[u64]) -> Vec<u64> {
        m.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b) % self.p)).collect()
    }

    /// Characteristic polynomial `det(xI - m)`, ascending coefficients,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(self, m: &Matrix) -> Vec<u64> {
        let n = m.len();
        let mut h = m.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let inv = self.inv(h[j + 1][j]);
            for k in j + 2..n {
                let u = self.mul(h[k][j], inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let t = self.mul(u, h[j + 1][c]);
                    h[k][c] = self.sub(h[k][c], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(u, row[k]);
                    row[j + 1] = self.add(row[j + 1], t);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i (prod subdiagonal) h_{m-i,m} p_{m-i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0u64; m + 2];
            for (k, &c) in prev.iter().enumerate() {
                next[k + 1] = self.add(next[k + 1], c);
                next[k] = self.sub(next[k], self.mul(h[m][m], c));
            }
            let mut t = 1u64;
            for i in 1..=m {
                t = self.mul(t, h[m - i + 1][m - i]);
                let f = self.mul(t, h[m - i][m]);
                if f == 0 {
                    continue;
                }
                for (k, &c) in polys[m - i].iter().enumerate() {
                    next[k] = self.sub(next[k], self.mul(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap_or_else(|| vec![1])
    }

    pub fn eval_poly(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// All roots in `F_p` by exhaustive evaluation; `p` is small here.
    pub fn roots(self, poly: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval_poly(poly, x) == 0).collect()
    }
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > lower`.
pub fn dixon_prime(e: u64, lower: u64) -> Option<u64> {
    let mut p = (lower.saturating_sub(1) / e + 1) * e + 1;
    while p < 1 << 31 {
        if is_prime(p) {
            return Some(p);
        }
        p += e;
    }
    None
}
