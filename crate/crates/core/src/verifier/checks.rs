use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{TargetSpec, VerifyError};
use crate::arith::{is_prime_power, FactoredInt};
use crate::codegree::{cod_from_data, DegreeData};

/// A self-contained arithmetic claim. `holds` is what the producer computed;
/// [`Check::evaluate`] recomputes it from the embedded data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    /// No codegree of the target other than 1 is a prime power.
    NoPrimePowers { target: String, holds: bool },
    /// `|cod(T)| = |cd(T)| = count`.
    CountsAgree { target: String, count: usize, holds: bool },
    /// `order = |GL(n, q)| = ∏_{i<n} (q^n - q^i)`.
    GlOrder { n: u32, q: u64, order: FactoredInt, holds: bool },
    /// `label`: `divisor ∤ dividend`.
    NotDivides { label: String, divisor: FactoredInt, dividend: FactoredInt, holds: bool },
    /// `label`: `divisor | dividend`.
    Divides { label: String, divisor: FactoredInt, dividend: FactoredInt, holds: bool },
    /// `Σ d² = |G|` for the embedded degree data.
    SumOfSquares { data: DegreeData, holds: bool },
    /// `witness ∈ cd(target)` but `witness ∉ cd(data)`.
    DegreeNotContained { target: String, data: DegreeData, witness: u64, holds: bool },
    /// `witness ∈ cod(data)` (kernels honoured) and `witness ∉ cod(target)`.
    CodegreeOutside { target: String, data: DegreeData, witness: FactoredInt, holds: bool },
    /// Degrees of the faithful characters, with 1, equal `expected`.
    FaithfulDegrees { data: DegreeData, expected: Vec<u64>, holds: bool },
    /// The primes dividing the target order.
    PrimeSupport { target: String, primes: Vec<u64>, holds: bool },
    /// No codegree of the target is divisible by its order.
    NoCodegreeDivisibleByOrder { target: String, holds: bool },
    /// `|T|² / d_max² ∉ cod(T)`: a faithful character of `T × T` with both
    /// factors of largest degree has a codegree outside `cod(T)`.
    SquareWitness { target: String, value: FactoredInt, holds: bool },
    /// The Schur multiplier recorded for the target has the given order.
    Multiplier { target: String, order: u64, holds: bool },
}

pub(super) type Targets<'a> = BTreeMap<&'a str, &'a TargetSpec>;

fn target<'a>(ts: &Targets<'a>, name: &str) -> Result<&'a TargetSpec, VerifyError> {
    ts.get(name).copied().ok_or_else(|| VerifyError::Recheck(format!("check refers to unknown target {name}")))
}

pub fn gl_order(n: u32, q: u64) -> Result<FactoredInt, VerifyError> {
    let qn = (q as u128).checked_pow(n).ok_or(crate::arith::ArithError::Overflow)?;
    let mut acc = FactoredInt::one();
    for i in 0..n {
        let term = qn - (q as u128).pow(i);
        let term = u64::try_from(term).map_err(|_| crate::arith::ArithError::Overflow)?;
        acc = acc.mul(&FactoredInt::factorize(term)?);
    }
    Ok(acc)
}

impl Check {
    pub fn holds(&self) -> bool {
        use Check::*;
        match self {
            NoPrimePowers { holds, .. }
            | CountsAgree { holds, .. }
            | GlOrder { holds, .. }
            | NotDivides { holds, .. }
            | Divides { holds, .. }
            | SumOfSquares { holds, .. }
            | DegreeNotContained { holds, .. }
            | CodegreeOutside { holds, .. }
            | FaithfulDegrees { holds, .. }
            | PrimeSupport { holds, .. }
            | NoCodegreeDivisibleByOrder { holds, .. }
            | SquareWitness { holds, .. }
            | Multiplier { holds, .. } => *holds,
        }
    }

    /// Recomputes the claim.
    pub fn evaluate(&self, ts: &Targets) -> Result<bool, VerifyError> {
        use Check::*;
        Ok(match self {
            NoPrimePowers { target: t, .. } => {
                target(ts, t)?.cod.iter().filter(|c| !c.is_one()).all(|c| c.as_prime_power().is_none())
            }
            CountsAgree { target: t, count, .. } => {
                let t = target(ts, t)?;
                let cd: BTreeSet<u64> = t.degrees.iter().copied().collect();
                t.cod.len() == cd.len() && cd.len() == *count
            }
            GlOrder { n, q, order, .. } => is_prime_power(*q).is_some() && &gl_order(*n, *q)? == order,
            NotDivides { divisor, dividend, .. } => !dividend.is_divisible_by(divisor),
            Divides { divisor, dividend, .. } => dividend.is_divisible_by(divisor),
            SumOfSquares { data, .. } => data.order.value().map(u128::from) == Some(data.sum_of_squares()?),
            DegreeNotContained { target: t, data, witness, .. } => {
                target(ts, t)?.degrees.contains(witness) && !data.degrees.contains(witness)
            }
            CodegreeOutside { target: t, data, witness, .. } => {
                cod_from_data(data)?.contains(witness) && !target(ts, t)?.contains(witness)
            }
            FaithfulDegrees { data, expected, .. } => {
                let Some(kernels) = &data.kernels else { return Ok(false) };
                let mut faithful: BTreeSet<u64> =
                    data.degrees.iter().zip(kernels).filter(|(_, &k)| k == 1).map(|(&d, _)| d).collect();
                faithful.insert(1);
                faithful == expected.iter().copied().collect()
            }
            PrimeSupport { target: t, primes, .. } => &target(ts, t)?.order.primes().collect::<Vec<_>>() == primes,
            NoCodegreeDivisibleByOrder { target: t, .. } => {
                let t = target(ts, t)?;
                t.cod.iter().all(|c| !c.is_divisible_by(&t.order))
            }
            SquareWitness { target: t, value, .. } => {
                let t = target(ts, t)?;
                let dmax = t.degrees.iter().max().copied().unwrap_or(1);
                let expected = t.order.pow(2).div_exact(&FactoredInt::factorize(dmax)?.pow(2))?;
                &expected == value && !t.contains(value)
            }
            Multiplier { target: t, order, .. } => target(ts, t)?.schur_multiplier == Some(*order),
        })
    }

    /// Builds the check and fills in `holds`.
    pub fn computed(mut self, ts: &Targets) -> Result<Self, VerifyError> {
        let v = self.evaluate(ts)?;
        use Check::*;
        match &mut self {
            NoPrimePowers { holds, .. }
            | CountsAgree { holds, .. }
            | GlOrder { holds, .. }
            | NotDivides { holds, .. }
            | Divides { holds, .. }
            | SumOfSquares { holds, .. }
            | DegreeNotContained { holds, .. }
            | CodegreeOutside { holds, .. }
            | FaithfulDegrees { holds, .. }
            | PrimeSupport { holds, .. }
            | NoCodegreeDivisibleByOrder { holds, .. }
            | SquareWitness { holds, .. }
            | Multiplier { holds, .. } => *holds = v,
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(5, 2).unwrap().value(), Some(9_999_360));
        assert_eq!(gl_order(3, 3).unwrap().value(), Some(11_232));
        assert_eq!(gl_order(1, 7).unwrap().value(), Some(6));
        assert_eq!(gl_order(4, 3).unwrap().value(), Some(24_261_120));
        // 9 999 360 = 1653 · 6048 + 2016
        assert_eq!(9_999_360 % 6048, 2016);
    }
}
