//! Degree formulas for thirteen irreducible characters of `S_n` whose
//! restrictions to `A_n` stay irreducible, and the certificate that they
//! give at least 14 distinct degrees of `A_n` for `n ≥ 14`.

use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::arith::{first_certified_start, ArithError, Env, Expr, FactoredInt, IntPoly, PositivityCertificate};

/// First value of `n` covered by the certificate.
pub const N_START: i128 = 14;
/// Range on which each closed form is compared with the hook length formula.
pub const HOOK_CHECK: (u32, u32) = (14, 60);

/// Shapes `(n - k, tail...)` with the printed closed forms. One printed form
/// has the wrong normalizing constant; `validated` carries the corrected one.
const FORMULAS: [(&[u32], &str, Option<&str>); 13] = [
    (&[1], "n-1", None),
    (&[2], "n*(n-3)/2", None),
    (&[1, 1], "(n-1)*(n-2)/2", None),
    (&[3], "n*(n-1)*(n-5)/6", None),
    (&[2, 1], "n*(n-2)*(n-4)/3", None),
    (&[1, 1, 1], "(n-1)*(n-2)*(n-3)/6", None),
    (&[4], "n*(n-1)*(n-2)*(n-7)/24", None),
    (&[3, 1], "n*(n-1)*(n-3)*(n-6)/8", None),
    (&[2, 2], "n*(n-1)*(n-4)*(n-5)/12", None),
    (&[1, 1, 1, 1], "(n-1)*(n-2)*(n-3)*(n-4)/24", None),
    (&[5], "n*(n-1)*(n-2)*(n-3)*(n-9)/120", None),
    (&[4, 1], "n*(n-1)*(n-2)*(n-4)*(n-8)/24", Some("n*(n-1)*(n-2)*(n-4)*(n-8)/30")),
    (&[3, 2], "n*(n-1)*(n-2)*(n-5)*(n-7)/24", None),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFormula {
    /// Parts after the first, so the shape is `(n - |tail|, tail...)`.
    pub tail: Vec<u32>,
    pub printed: Expr,
    pub validated: Expr,
}

impl PartitionFormula {
    pub fn shape_label(&self) -> String {
        let k: u32 = self.tail.iter().sum();
        let rest: Vec<String> = self.tail.iter().map(u32::to_string).collect();
        format!("(n-{k},{})", rest.join(","))
    }

    pub fn shape_at(&self, n: u32) -> Option<Vec<u32>> {
        let k: u32 = self.tail.iter().sum();
        let first = n.checked_sub(k)?;
        if first < self.tail[0] {
            return None;
        }
        let mut shape = vec![first];
        shape.extend(&self.tail);
        Some(shape)
    }

    pub fn is_corrected(&self) -> bool {
        self.printed != self.validated
    }

    /// Degree as `P(n) / D` with `P` integral.
    pub fn poly(&self) -> Result<(IntPoly, i128), ArithError> {
        self.validated.to_poly("n", &Env::new())
    }

    pub fn eval(&self, n: i128) -> Result<i128, ArithError> {
        self.validated.eval_int(&Env::from([("n".to_string(), n)]))
    }
}

pub fn partition_formulas() -> Vec<PartitionFormula> {
    FORMULAS
        .iter()
        .map(|(tail, printed, fixed)| {
            let printed = Expr::parse(printed).expect("built-in formula parses");
            let validated =
                fixed.map(|f| Expr::parse(f).expect("built-in formula parses")).unwrap_or_else(|| printed.clone());
            PartitionFormula { tail: tail.to_vec(), printed, validated }
        })
        .collect()
}

/// `n! / ∏ hooks` for a partition given in nonincreasing parts.
pub fn hook_degree(shape: &[u32]) -> Result<u64, CatalogError> {
    if shape.windows(2).any(|w| w[0] < w[1]) {
        return Err(CatalogError::Partition(format!("{shape:?} is not nonincreasing")));
    }
    let n: u32 = shape.iter().sum();
    let mut num = FactoredInt::one();
    for k in 2..=n as u64 {
        num = num.mul(&FactoredInt::factorize(k)?);
    }
    let mut den = FactoredInt::one();
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = shape[i + 1..].iter().filter(|&&r| r as usize > j).count();
            den = den.mul(&FactoredInt::factorize((arm + leg + 1) as u64)?);
        }
    }
    let deg = num.div_exact(&den)?;
    deg.value().ok_or_else(|| CatalogError::Partition(format!("degree for {shape:?} exceeds 64 bits")))
}

/// One pairwise distinctness proof: `|P_a D_b - P_b D_a|` has no zero at an
/// integer `n ≥ 14`. Points before the certified start are listed exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessCertificate {
    pub left: String,
    pub right: String,
    pub difference: IntPoly,
    /// Values of `difference` on `[14, positivity.from_value)`, all nonzero.
    pub checked_values: Vec<i128>,
    pub positivity: PositivityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookMismatch {
    pub shape: String,
    pub n: u32,
    pub printed: i128,
    pub hook: u64,
}

/// Everything needed to conclude `|cd(A_n)| ≥ 14` for `n ≥ 14`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingCertificate {
    pub formulas: Vec<PartitionFormula>,
    pub pairs: Vec<DistinctnessCertificate>,
    /// `degree - 1 > 0` for each formula.
    pub nontrivial: Vec<DistinctnessCertificate>,
    /// Comparisons against the hook length formula on `HOOK_CHECK`.
    pub hook_checks: usize,
    /// Printed forms that disagree with the hook formula (expected: one shape).
    pub printed_mismatches: Vec<HookMismatch>,
}

impl AlternatingCertificate {
    pub fn distinct_degree_count(&self) -> usize {
        // 13 pairwise distinct nontrivial degrees plus the trivial one
        self.formulas.len() + 1
    }
}

fn nonvanishing(left: &str, right: &str, mut diff: IntPoly) -> Result<DistinctnessCertificate, CatalogError> {
    if diff.is_zero() {
        return Err(CatalogError::Partition(format!("{left} and {right} agree identically")));
    }
    if diff.leading() < 0 {
        diff = diff.neg()?;
    }
    let positivity = first_certified_start(&diff, N_START, 10_000)?;
    let mut checked_values = Vec::new();
    for n in N_START..positivity.from_value {
        let v = diff.eval(n)?;
        if v == 0 {
            return Err(CatalogError::Partition(format!("{left} and {right} coincide at n = {n}")));
        }
        checked_values.push(v);
    }
    Ok(DistinctnessCertificate {
        left: left.to_string(),
        right: right.to_string(),
        difference: diff,
        checked_values,
        positivity,
    })
}

pub fn alternating_certificate() -> Result<AlternatingCertificate, CatalogError> {
    let formulas = partition_formulas();
    let polys: Vec<(IntPoly, i128)> = formulas.iter().map(|f| f.poly()).collect::<Result<_, _>>()?;
    let labels: Vec<String> = formulas.iter().map(|f| f.shape_label()).collect();

    let mut pairs = Vec::new();
    for a in 0..formulas.len() {
        for b in a + 1..formulas.len() {
            let (pa, da) = &polys[a];
            let (pb, db) = &polys[b];
            let diff = pa.scale(*db)?.sub(&pb.scale(*da)?)?;
            pairs.push(nonvanishing(&labels[a], &labels[b], diff)?);
        }
    }
    let mut nontrivial = Vec::new();
    for (i, (p, d)) in polys.iter().enumerate() {
        let diff = p.sub(&IntPoly::constant(*d))?;
        nontrivial.push(nonvanishing(&labels[i], "(n)", diff)?);
    }

    let mut hook_checks = 0;
    let mut printed_mismatches = Vec::new();
    for f in &formulas {
        for n in HOOK_CHECK.0..=HOOK_CHECK.1 {
            let shape = f.shape_at(n).expect("n is large enough");
            let hook = hook_degree(&shape)?;
            let value = f.eval(n as i128)?;
            hook_checks += 1;
            if value != hook as i128 {
                return Err(CatalogError::Partition(format!(
                    "{} at n = {n}: closed form {value}, hook formula {hook}",
                    f.shape_label()
                )));
            }
            if f.is_corrected() {
                let env = Env::from([("n".to_string(), n as i128)]);
                let printed = match f.printed.eval_int(&env) {
                    Ok(v) => v,
                    // non-integral printed values are mismatches too; record 0
                    Err(ArithError::InexactDivision { .. }) => 0,
                    Err(e) => return Err(e.into()),
                };
                if printed != hook as i128 {
                    printed_mismatches.push(HookMismatch { shape: f.shape_label(), n, printed, hook });
                }
            }
        }
    }
    Ok(AlternatingCertificate { formulas, pairs, nontrivial, hook_checks, printed_mismatches })
}

impl AlternatingCertificate {
    /// Re-derives every positivity certificate and the listed values.
    pub fn recheck(&self) -> Result<(), CatalogError> {
        for c in self.pairs.iter().chain(&self.nontrivial) {
            c.positivity.recheck()?;
            if c.positivity.poly != c.difference {
                return Err(CatalogError::Partition(format!("{} vs {}: polynomial mismatch", c.left, c.right)));
            }
            let expected = (c.positivity.from_value - N_START).max(0) as usize;
            if c.checked_values.len() != expected {
                return Err(CatalogError::Partition(format!("{} vs {}: gap before certified start", c.left, c.right)));
            }
            for (i, &v) in c.checked_values.iter().enumerate() {
                if v == 0 || c.difference.eval(N_START + i as i128)? != v {
                    return Err(CatalogError::Partition(format!("{} vs {}: listed value wrong", c.left, c.right)));
                }
            }
        }
        let n = self.formulas.len();
        if self.pairs.len() != n * (n - 1) / 2 || self.nontrivial.len() != n {
            return Err(CatalogError::Partition("certificate does not cover every pair".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hook_examples() {
        assert_eq!(hook_degree(&[13, 1]).unwrap(), 13);
        assert_eq!(hook_degree(&[14]).unwrap(), 1);
        assert_eq!(hook_degree(&[9, 3, 2]).unwrap(), 5733);
        assert_eq!(hook_degree(&[2, 2]).unwrap(), 2);
        assert_eq!(hook_degree(&[3, 2, 1]).unwrap(), 16);
        assert!(hook_degree(&[1, 2]).is_err());
    }

    #[test]
    fn thirteen_formulas_and_one_correction() {
        let fs = partition_formulas();
        assert_eq!(fs.len(), 13);
        let fixed: Vec<_> = fs.iter().filter(|f| f.is_corrected()).collect();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].shape_label(), "(n-5,4,1)");
        let last = fs.last().unwrap();
        assert_eq!(last.eval(14).unwrap(), 14 * 13 * 12 * 9 * 7 / 24);
    }

    #[test]
    fn certificate_covers_all_pairs() {
        let cert = alternating_certificate().unwrap();
        assert_eq!(cert.pairs.len(), 78);
        assert_eq!(cert.nontrivial.len(), 13);
        assert_eq!(cert.hook_checks, 13 * 47);
        assert_eq!(cert.distinct_degree_count(), 14);
        assert!(!cert.printed_mismatches.is_empty());
        assert!(cert.printed_mismatches.iter().all(|m| m.shape == "(n-5,4,1)"));
        cert.recheck().unwrap();
    }

    #[test]
    fn tampered_pair_is_caught() {
        let mut cert = alternating_certificate().unwrap();
        cert.pairs.pop();
        assert!(cert.recheck().is_err());
    }
}
