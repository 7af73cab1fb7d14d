use serde::{Deserialize, Serialize};

use super::{ArithError, IntPoly};

/// Largest interval `[q0, B]` that is enumerated point by point.
pub const ENUMERATION_LIMIT: i128 = 200_000;

/// How the interval between the start point and the Cauchy bound was covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum Coverage {
    /// The start point already lies beyond the root bound.
    Vacuous,
    /// Every integer in `[from, to]` was evaluated.
    Enumerated { from: i128, to: i128, count: u64, min_value: i128, min_at: i128 },
    /// Every coefficient of `p(from + t)` is nonnegative and the constant
    /// term is positive, so `p` is positive on `[from, ∞)`.
    Shifted { shifted: IntPoly },
}

/// Proof that `poly(q) > 0` for every integer `q ≥ from_value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityCertificate {
    pub poly: IntPoly,
    pub from_value: i128,
    pub cauchy_bound: i128,
    pub coverage: Coverage,
}

/// `⌈1 + max_{i<d} |a_i| / |a_d|⌉`; every real root lies strictly below it.
pub fn cauchy_bound(p: &IntPoly) -> i128 {
    let lead = p.leading().abs();
    let coeffs = p.coeffs();
    let max = coeffs[..coeffs.len().saturating_sub(1)].iter().map(|c| c.abs()).max().unwrap_or(0);
    if lead == 0 {
        return 1;
    }
    1 + (max + lead - 1) / lead
}

/// Certifies `p(q) > 0` for all integers `q ≥ q0`.
///
/// Beyond the Cauchy bound `B` the sign is that of the leading coefficient.
/// Integers in `[q0, B]` are enumerated when that range is at most
/// [`ENUMERATION_LIMIT`]; wider ranges are covered by a Taylor shift to `q0`
/// with nonnegative coefficients.
pub fn positivity_beyond(p: &IntPoly, q0: i128) -> Result<PositivityCertificate, ArithError> {
    if p.leading() <= 0 {
        return Err(ArithError::NonPositiveLeading(p.to_string()));
    }
    let bound = cauchy_bound(p);
    let coverage = if q0 > bound {
        Coverage::Vacuous
    } else if bound - q0 < ENUMERATION_LIMIT {
        enumerate(p, q0, bound)?
    } else {
        let shifted = p.taylor_shift(q0)?;
        let c = shifted.coeffs();
        if c[0] <= 0 {
            return Err(ArithError::PositivityFails { at: q0, value: c[0] });
        }
        if c.iter().any(|&a| a < 0) {
            return Err(ArithError::CannotCertify(p.to_string()));
        }
        Coverage::Shifted { shifted }
    };
    Ok(PositivityCertificate { poly: p.clone(), from_value: q0, cauchy_bound: bound, coverage })
}

/// Finds a start point `q1 ≥ q0` from which [`positivity_beyond`] succeeds
/// and returns its certificate. Failing points move the start just past
/// them; uncertifiable shifts move it geometrically. Gives up once the start
/// passes `q0 + max_scan`.
pub fn first_certified_start(p: &IntPoly, q0: i128, max_scan: i128) -> Result<PositivityCertificate, ArithError> {
    let mut q = q0;
    let mut step = 1;
    loop {
        match positivity_beyond(p, q) {
            Ok(cert) => return Ok(cert),
            Err(ArithError::PositivityFails { at, .. }) => {
                q = at.max(q) + 1;
                step = 1;
            }
            Err(ArithError::CannotCertify(_)) => {
                q += step;
                step = step.saturating_mul(2);
            }
            Err(e) => return Err(e),
        }
        if q > q0.saturating_add(max_scan) {
            return Err(ArithError::CannotCertify(format!("{p} from any start in [{q0}, {}]", q0 + max_scan)));
        }
    }
}

fn enumerate(p: &IntPoly, from: i128, to: i128) -> Result<Coverage, ArithError> {
    let mut min = (i128::MAX, from);
    for q in from..=to {
        let v = p.eval(q)?;
        if v <= 0 {
            return Err(ArithError::PositivityFails { at: q, value: v });
        }
        if v < min.0 {
            min = (v, q);
        }
    }
    Ok(Coverage::Enumerated { from, to, count: (to - from + 1) as u64, min_value: min.0, min_at: min.1 })
}

impl PositivityCertificate {
    /// Re-derives the certificate from its polynomial and start point alone.
    pub fn recheck(&self) -> Result<(), ArithError> {
        if self.poly.leading() <= 0 {
            return Err(ArithError::NonPositiveLeading(self.poly.to_string()));
        }
        let bound = cauchy_bound(&self.poly);
        if self.cauchy_bound < bound {
            return Err(ArithError::CertificateMismatch(format!(
                "recorded bound {} below Cauchy bound {bound}",
                self.cauchy_bound
            )));
        }
        match &self.coverage {
            Coverage::Vacuous => {
                if self.from_value <= bound {
                    return Err(ArithError::CertificateMismatch(
                        "vacuous coverage but start point is within the root bound".into(),
                    ));
                }
            }
            Coverage::Enumerated { from, to, .. } => {
                if *from != self.from_value || *to < bound {
                    return Err(ArithError::CertificateMismatch(format!(
                        "enumerated range [{from}, {to}] does not cover [{}, {bound}]",
                        self.from_value
                    )));
                }
                enumerate(&self.poly, *from, *to)?;
            }
            Coverage::Shifted { shifted } => {
                let recomputed = self.poly.taylor_shift(self.from_value)?;
                if &recomputed != shifted {
                    return Err(ArithError::CertificateMismatch("shifted coefficients differ".into()));
                }
                let c = shifted.coeffs();
                if c.is_empty() || c[0] <= 0 || c.iter().any(|&a| a < 0) {
                    return Err(ArithError::CertificateMismatch("shifted coefficients not positive".into()));
                }
            }
        }
        Ok(())
    }
}
