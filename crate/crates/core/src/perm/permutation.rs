use std::fmt;

use super::PermError;

/// A bijection of `{0, .., n-1}`, stored as its image list.
///
/// Products compose left to right: `a.then(b)` maps `p` to `b[a[p]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Self { images: images.into_iter().map(|i| i as u16).collect() })
    }

    /// Parses 0-based cycle notation such as `(0,1,2)(3,4)`; `()` is the identity.
    pub fn parse_cycles(src: &str, degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let bad = || PermError::Parse(src.to_string());
        let mut rest = src.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let cycle = &body[..body_end - 1];
            rest = rest[body_end + 1..].trim_start();
            let points = cycle
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            for (k, &p) in points.iter().enumerate() {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                let next = points[(k + 1) % points.len()];
                if images[p] != p {
                    return Err(PermError::NotBijection(src.to_string()));
                }
                images[p] = next;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn image(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self { images: self.images.iter().map(|&p| other.images[p as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            inv[q as usize] = p as u16;
        }
        Self { images: inv.into() }
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        other.inverse().then(self).then(other)
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut acc = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image(p);
                len += 1;
            }
            acc = lcm(acc, len);
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let p = Permutation::parse_cycles("(0,1,2)(3,4)", 6).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3, 5]);
        assert_eq!(p.to_string(), "(0,1,2)(3,4)");
        assert_eq!(p.order(), 6);
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
        assert!(Permutation::parse_cycles("(0,5)", 3).is_err());
        assert!(Permutation::parse_cycles("(0,1)(1,2)", 3).is_err());
        assert!(Permutation::parse_cycles("(0,1", 3).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse_cycles("(0,1)", 3).unwrap();
        let b = Permutation::parse_cycles("(1,2)", 3).unwrap();
        // 0 -> 1 under a, then 1 -> 2 under b
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!(a.then(&b).to_string(), "(0,2,1)");
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_and_power(a in arb_perm(9), b in arb_perm(9)) {
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert!(a.pow(a.order()).is_identity());
            let ab = a.then(&b);
            prop_assert_eq!(ab.inverse(), b.inverse().then(&a.inverse()));
            prop_assert_eq!(Permutation::parse_cycles(&a.to_string(), 9).unwrap(), a);
        }
    }
}
