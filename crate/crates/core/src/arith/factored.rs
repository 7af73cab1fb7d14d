use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArithError;

/// A positive integer held as its prime factorization.
///
/// The empty map is 1. Keys are primes in ascending order, exponents are at
/// least 1. Values can exceed 64 bits (orders of the large sporadic groups);
/// [`FactoredInt::value`] reports `None` in that case.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FactoredInt {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInt {
    pub fn one() -> Self {
        Self::default()
    }

    /// Trial division with a mod-30 wheel.
    pub fn factorize(n: u64) -> Result<Self, ArithError> {
        if n == 0 {
            return Err(ArithError::Domain(0));
        }
        let mut factors = BTreeMap::new();
        let mut n = n;
        for p in [2u64, 3, 5] {
            while n.is_multiple_of(p) {
                *factors.entry(p).or_insert(0) += 1;
                n /= p;
            }
        }
        const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
        let mut d = 7u64;
        let mut w = 0;
        while d.checked_mul(d).is_some_and(|sq| sq <= n) {
            while n.is_multiple_of(d) {
                *factors.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += WHEEL[w];
            w = (w + 1) % WHEEL.len();
        }
        if n > 1 {
            *factors.entry(n).or_insert(0) += 1;
        }
        Ok(Self { factors })
    }

    pub fn from_i128(n: i128) -> Result<Self, ArithError> {
        if n <= 0 {
            return Err(ArithError::Domain(n));
        }
        let n = u64::try_from(n).map_err(|_| ArithError::Overflow)?;
        Self::factorize(n)
    }

    /// Builds from explicit (prime, exponent) pairs. Primality is checked.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Result<Self, ArithError> {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            if e > 0 {
                *factors.entry(p).or_insert(0) += e;
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The integer value, or `None` when it does not fit in 64 bits.
    pub fn value(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (&p, &e) in &self.factors {
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for (&p, &e) in &self.factors {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            *factors.entry(p).or_insert(0) += e;
        }
        Self { factors }
    }

    pub fn pow(&self, k: u32) -> Self {
        Self { factors: self.factors.iter().filter(|_| k > 0).map(|(&p, &e)| (p, e * k)).collect() }
    }

    /// True when `d` divides `self`.
    pub fn is_divisible_by(&self, d: &Self) -> bool {
        d.factors.iter().all(|(p, &e)| self.factors.get(p).is_some_and(|&mine| mine >= e))
    }

    pub fn div_exact(&self, d: &Self) -> Result<Self, ArithError> {
        if !self.is_divisible_by(d) {
            return Err(ArithError::InexactDivision { dividend: self.to_string(), divisor: d.to_string() });
        }
        let mut factors = self.factors.clone();
        for (p, &e) in &d.factors {
            let slot = factors.get_mut(p).expect("checked above");
            *slot -= e;
            if *slot == 0 {
                factors.remove(p);
            }
        }
        Ok(Self { factors })
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Self {
            factors: self.factors.iter().filter_map(|(p, &e)| other.factors.get(p).map(|&f| (*p, e.min(f)))).collect(),
        }
    }

    /// `Some((p, k))` when the value is p^k with k ≥ 1.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        if self.factors.len() == 1 {
            self.factors.iter().next().map(|(&p, &e)| (p, e))
        } else {
            None
        }
    }

    /// Decimal rendering, exact for any size.
    pub fn decimal(&self) -> String {
        match self.value() {
            Some(v) => v.to_string(),
            None => self.to_biguint().to_string(),
        }
    }
}

impl Ord for FactoredInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.to_biguint().cmp(&other.to_biguint()),
        }
    }
}

impl PartialOrd for FactoredInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u32> for FactoredInt {
    fn from(n: u32) -> Self {
        // u32 zero is the only failure and callers never pass it
        Self::factorize(n as u64).unwrap_or_default()
    }
}

/// Dot notation: `2^5.3^3.7`; the empty product prints as `1`.
impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                write!(f, ".")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FactoredInt {
    type Err = ArithError;

    /// Accepts dot notation or a plain decimal integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ArithError::Parse(s.to_string()));
        }
        if s == "1" {
            return Ok(Self::one());
        }
        if !s.contains('.') && !s.contains('^') {
            let n: u64 = s.parse().map_err(|_| ArithError::Parse(s.to_string()))?;
            return Self::factorize(n);
        }
        let mut pairs = Vec::new();
        for part in s.split('.') {
            let (p, e) = match part.split_once('^') {
                Some((p, e)) => (p, e),
                None => (part, "1"),
            };
            let p: u64 = p.trim().parse().map_err(|_| ArithError::Parse(s.to_string()))?;
            let e: u32 = e.trim().parse().map_err(|_| ArithError::Parse(s.to_string()))?;
            pairs.push((p, e));
        }
        Self::from_pairs(pairs)
    }
}

impl Serialize for FactoredInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FactoredInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `Some((p, k))` with p^k = n when n is a prime power; n must be ≥ 2.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    FactoredInt::factorize(n).ok()?.as_prime_power()
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fi(pairs: &[(u64, u32)]) -> FactoredInt {
        FactoredInt::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(FactoredInt::factorize(6048).unwrap(), fi(&[(2, 5), (3, 3), (7, 1)]));
        assert!(FactoredInt::factorize(1).unwrap().is_one());
        // |Sz(8)| = q^4 (q^4+1)(q^2-1) at q^2 = 8
        let sz8 = 64u64 * 65 * 7;
        assert_eq!(sz8, 29120);
        assert_eq!(FactoredInt::factorize(sz8).unwrap(), fi(&[(2, 6), (5, 1), (7, 1), (13, 1)]));
        assert!(matches!(FactoredInt::factorize(0), Err(ArithError::Domain(0))));
        assert!(matches!(FactoredInt::from_i128(-4), Err(ArithError::Domain(-4))));
    }

    #[test]
    fn large_prime_factor() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let f = FactoredInt::factorize(p * 6).unwrap();
        assert_eq!(f.exponent_of(p), 1);
        assert_eq!(f.value(), Some(p * 6));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn multiply_and_divide() {
        assert_eq!(fi(&[(2, 1)]).mul(&fi(&[(3, 1)])), fi(&[(2, 1), (3, 1)]));
        let a = fi(&[(2, 4), (3, 2), (7, 1)]);
        assert_eq!(a.mul(&FactoredInt::one()), a);
        let prod = fi(&[(2, 5), (3, 3)]).mul(&fi(&[(7, 1)]));
        assert_eq!(prod.value(), Some(864 * 7));

        let n6048 = FactoredInt::factorize(6048).unwrap();
        let n864 = FactoredInt::factorize(864).unwrap();
        assert!(n6048.is_divisible_by(&n864));
        assert_eq!(n6048.div_exact(&n864).unwrap(), fi(&[(7, 1)]));

        // |GL(5,2)| = prod (2^5 - 2^i)
        let gl52: u64 = (0..5).map(|i| 32 - (1u64 << i)).product();
        assert_eq!(gl52, 9_999_360);
        let gl = FactoredInt::factorize(gl52).unwrap();
        assert!(!gl.is_divisible_by(&n6048));
        assert_eq!(gl52 % 6048, 2016);
        assert!(gl.div_exact(&n6048).is_err());

        assert!(n6048.div_exact(&n6048).unwrap().is_one());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(is_prime_power(27), Some((3, 3)));
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(2048), Some((2, 11)));
        assert_eq!(is_prime_power(1), None);
    }

    #[test]
    fn dot_notation_round_trip() {
        let f: FactoredInt = "2^4.3^2.7".parse().unwrap();
        assert_eq!(f.value(), Some(1008));
        assert_eq!(f.to_string(), "2^4.3^2.7");
        assert_eq!("1".parse::<FactoredInt>().unwrap(), FactoredInt::one());
        assert_eq!("864".parse::<FactoredInt>().unwrap().to_string(), "2^5.3^3");
        assert!("4^2".parse::<FactoredInt>().is_err());
    }

    #[test]
    fn ordering_beyond_64_bits() {
        let monster: FactoredInt = "2^46.3^20.5^9.7^6.11^2.13^3.17.19.23.29.31.41.47.59.71".parse().unwrap();
        assert!(monster.value().is_none());
        assert!(monster > FactoredInt::factorize(u64::MAX).unwrap());
        assert!(monster.decimal().starts_with("808017424794512875886459904961710757005754368"));
    }

    proptest! {
        #[test]
        fn factorize_round_trips(n in 1u64..5_000_000_000u64) {
            let f = FactoredInt::factorize(n).unwrap();
            prop_assert_eq!(f.value(), Some(n));
            prop_assert!(f.primes().all(is_prime));
        }

        #[test]
        fn div_exact_inverts_mul(a in 1u64..1_000_000, b in 1u64..1_000_000) {
            let fa = FactoredInt::factorize(a).unwrap();
            let fb = FactoredInt::factorize(b).unwrap();
            prop_assert_eq!(fa.mul(&fb).div_exact(&fb).unwrap(), fa);
        }
    }
}
