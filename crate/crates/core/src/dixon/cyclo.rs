//! Exact arithmetic in `Z[ζ_E]`, used to check orthogonality relations
//! without floating point.

use serde::{Deserialize, Serialize};

/// `χ(g) = Σ_k m_k ζ_e^k` where `e` is the order of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclotomicValue {
    pub order: u64,
    pub mult: Vec<u64>,
}

impl CyclotomicValue {
    pub fn rational(order: u64, value: u64) -> Self {
        let mut mult = vec![0; order as usize];
        mult[0] = value;
        Self { order, mult }
    }

    /// Sum of multiplicities, which is `χ(1)`.
    pub fn total(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// True when all mass sits at `ζ^0`, i.e. the value equals the degree.
    pub fn is_degree(&self, degree: u64) -> bool {
        self.mult.first() == Some(&degree) && self.total() == degree
    }

    pub fn is_real(&self) -> bool {
        let e = self.mult.len();
        (1..e).all(|k| self.mult[k] == self.mult[e - k])
    }

    /// The value as an integer, if all mass sits at `±1`.
    pub fn as_integer(&self) -> Option<i64> {
        let e = self.mult.len();
        let mut acc = self.mult[0] as i64;
        for (k, &m) in self.mult.iter().enumerate().skip(1) {
            if m == 0 {
                continue;
            }
            if 2 * k == e {
                acc -= m as i64;
            } else {
                return None;
            }
        }
        Some(acc)
    }
}

/// Coefficients of the cyclotomic polynomial `Φ_n`, ascending.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // Φ_d = (x^d - 1) / ∏ Φ_{d'} over proper divisors d' of d, built bottom up
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut known: Vec<(u64, Vec<i64>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut num = vec![0i64; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        for (dd, phi) in &known {
            if d % dd == 0 {
                num = div_monic(&num, phi);
            }
        }
        known.push((d, num));
    }
    known.pop().map(|(_, p)| p).unwrap_or_else(|| vec![1])
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of the group ring `Z[C_E]`, reduced to `Z[ζ_E]` on demand.
#[derive(Clone, Debug)]
pub struct CycloAcc {
    e: u64,
    phi: Vec<i64>,
    coeffs: Vec<i128>,
}

impl CycloAcc {
    pub fn new(e: u64) -> Self {
        Self { e, phi: cyclotomic_poly(e), coeffs: vec![0; e as usize] }
    }

    /// A zeroed accumulator sharing this one's modulus.
    pub fn fresh(&self) -> Self {
        Self { e: self.e, phi: self.phi.clone(), coeffs: vec![0; self.e as usize] }
    }

    /// Adds `weight · a · conj(b)`; the orders of `a` and `b` must divide `E`.
    pub fn add_product_conj(&mut self, weight: i128, a: &CyclotomicValue, b: &CyclotomicValue) {
        let (sa, sb) = (self.e / a.order, self.e / b.order);
        for (i, &ma) in a.mult.iter().enumerate().filter(|(_, &m)| m != 0) {
            for (j, &mb) in b.mult.iter().enumerate().filter(|(_, &m)| m != 0) {
                let idx = (i as u64 * sa + self.e - (j as u64 * sb) % self.e) % self.e;
                self.coeffs[idx as usize] += weight * (ma * mb) as i128;
            }
        }
    }

    /// Canonical representative modulo `Φ_E`: coefficients of degree `< φ(E)`.
    pub fn reduce(&self) -> Vec<i128> {
        let phi = &self.phi;
        let d = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            for (j, &b) in phi.iter().enumerate() {
                rem[i - d + j] -= c * b as i128;
            }
        }
        rem.truncate(d);
        rem
    }

    /// The reduced value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i128> {
        let r = self.reduce();
        if r.iter().skip(1).all(|&c| c == 0) {
            Some(r.first().copied().unwrap_or(0))
        } else {
            None
        }
    }
}
