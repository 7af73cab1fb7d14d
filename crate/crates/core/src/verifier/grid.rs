//! Reduction of a parametric family to a finite grid.
//!
//! A group with a faithful irreducible character `χ` has `χ(1)² ≤ |G|`, so
//! `cod(χ) = |G|/χ(1) ≥ √|G|`. If `cod(G) ⊆ cod(T)` then `|G| ≤ M²` with
//! `M = max cod(T)`. Each family is cut down to the parameter points that
//! satisfy this bound, and every bound used is backed by a certificate.

use serde::{Deserialize, Serialize};

use super::{Outcome, PointOutcome, TargetSpec, VerifyError};
use crate::arith::{first_certified_start, Env, Expr, FactoredInt, IntPoly, PositivityCertificate};
use crate::catalog::{format_point, GroupFamily};

/// Largest distance scanned for a certifiable start point.
const MAX_SCAN: i128 = 1_000_000;
/// Largest rank tried before giving up on bounding the outer parameter.
const MAX_OUTER: i128 = 200;

/// Bound on the rank parameter: `q^N(n) ≤ |G|` (the Sylow subgroup for the
/// defining characteristic), `N` increasing, and `q_min^N(cut) > M²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterBound {
    pub var: String,
    pub exponent: Expr,
    pub cut: i128,
    pub cut_exponent: i128,
    /// `N(n+1) - N(n) > 0` for `n` from the family minimum, numerator form.
    pub monotone: PositivityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "data", rename_all = "snake_case")]
pub enum SliceBound {
    /// `|G| ≥ q^N ≥ q_min^N > M²` for every admissible `q`.
    Exponent { exponent: i128, q_min: i128 },
    /// `|G| ≥ P(q) / scale` and `P(q) - scale·M² > 0` for `q ≥ start`.
    Polynomial { scale: i128, certificate: PositivityCertificate },
}

impl SliceBound {
    /// First grid value not covered by enumeration.
    pub fn start(&self) -> Option<i128> {
        match self {
            SliceBound::Exponent { .. } => None,
            SliceBound::Polynomial { certificate, .. } => Some(certificate.from_value),
        }
    }
}

/// The grid for one value of the outer parameter (or the only grid).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    pub outer_value: Option<i128>,
    pub bound: SliceBound,
    /// Admissible values below the start whose exact order exceeds `M²`.
    pub above_bound: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub point: Env,
    pub order: FactoredInt,
    pub outcomes: Vec<PointOutcome>,
}

impl GridPoint {
    pub fn closed(&self) -> bool {
        self.outcomes.iter().all(|o| o.outcome.closed())
    }
}

/// Everything needed to re-derive a grid case from the file alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEvidence {
    pub family: GroupFamily,
    pub variants: Vec<Option<String>>,
    pub m_squared: FactoredInt,
    pub outer: Option<OuterBound>,
    pub slices: Vec<Slice>,
    pub points: Vec<GridPoint>,
}

impl GridEvidence {
    pub fn closed(&self) -> bool {
        self.points.iter().all(GridPoint::closed)
    }

    /// Grid as a list of parameter points, sorted by `(n, q)`.
    pub fn grid(&self) -> Vec<Env> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }
}

fn pow_exceeds(base: i128, exponent: i128, bound: &FactoredInt) -> Result<bool, VerifyError> {
    let b = FactoredInt::from_i128(base)?;
    let e = u32::try_from(exponent).map_err(|_| VerifyError::Reduction(format!("exponent {exponent} out of range")))?;
    Ok(&b.pow(e) > bound)
}

fn base_env(outer: Option<(&str, i128)>) -> Env {
    outer.map(|(v, n)| Env::from([(v.to_string(), n)])).unwrap_or_default()
}

fn m_squared_i128(m2: &FactoredInt) -> Result<i128, VerifyError> {
    m2.value().map(i128::from).ok_or_else(|| VerifyError::Reduction("M² exceeds 64 bits".into()))
}

/// Exponent rule if it applies, else the polynomial rule.
fn slice_bound(f: &GroupFamily, base: &Env, m2: &FactoredInt) -> Result<SliceBound, VerifyError> {
    let q_min = f.grid.min as i128;
    if let Some(e) = &f.q_exponent {
        if !e.mentions(&f.grid.var) {
            let exponent = e.eval_int(base)?;
            if pow_exceeds(q_min, exponent, m2)? {
                return Ok(SliceBound::Exponent { exponent, q_min });
            }
        }
    }
    let (poly, scale) = polynomial_rule(f, base, m2)?;
    let certificate = first_certified_start(&poly, q_min, MAX_SCAN)
        .map_err(|e| VerifyError::Reduction(format!("{}: {e}", f.name)))?;
    Ok(SliceBound::Polynomial { scale, certificate })
}

/// `P(q) - scale·M²` with `|G| ≥ P(q)/scale` for every admissible `q`.
fn polynomial_rule(f: &GroupFamily, base: &Env, m2: &FactoredInt) -> Result<(IntPoly, i128), VerifyError> {
    let rational = f.order_rational();
    let (p, d) = rational.numerator_poly(&f.grid.var, base)?;
    let c = rational.denominator_bound(base)?;
    let scale = d.checked_mul(c).ok_or(crate::arith::ArithError::Overflow)?;
    let shift = scale.checked_mul(m_squared_i128(m2)?).ok_or(crate::arith::ArithError::Overflow)?;
    Ok((p.sub(&IntPoly::constant(shift))?, scale))
}

fn outer_bound(f: &GroupFamily, m2: &FactoredInt) -> Result<OuterBound, VerifyError> {
    let o = f.outer.as_ref().expect("two-parameter family");
    let exponent = f
        .q_exponent
        .clone()
        .ok_or_else(|| VerifyError::Reduction(format!("{}: no q-exponent to bound {}", f.name, o.var)))?;
    let monotone = monotone_certificate(&exponent, &o.var, o.min as i128)?;
    let q_min = f.grid.min as i128;
    let mut n = o.min as i128;
    loop {
        let e = exponent.eval_int(&base_env(Some((&o.var, n))))?;
        if pow_exceeds(q_min, e, m2)? {
            return Ok(OuterBound { var: o.var.clone(), exponent, cut: n, cut_exponent: e, monotone });
        }
        n += 1;
        if n > MAX_OUTER {
            return Err(VerifyError::Reduction(format!("{}: no cut for {} below {MAX_OUTER}", f.name, o.var)));
        }
    }
}

fn monotone_certificate(exponent: &Expr, var: &str, from: i128) -> Result<PositivityCertificate, VerifyError> {
    let (p, _) = exponent.to_poly(var, &Env::new())?;
    let diff = p.forward_difference()?;
    crate::arith::positivity_beyond(&diff, from)
        .map_err(|e| VerifyError::Reduction(format!("{exponent} not increasing: {e}")))
}

/// The grid of `f` under the bound `|G| ≤ M²`, with every point closed
/// against the target where possible.
pub fn sqrt_bound_grid(f: &GroupFamily, target: &TargetSpec) -> Result<GridEvidence, VerifyError> {
    let m2 = target.m_squared.clone();
    let (outer, outer_values) = match &f.outer {
        None => (None, vec![None]),
        Some(o) => {
            let b = outer_bound(f, &m2)?;
            let values = (o.min as i128..b.cut).map(Some).collect();
            (Some(b), values)
        }
    };
    let variants: Vec<Option<String>> = {
        let v = f.variants();
        if v.is_empty() {
            vec![None]
        } else {
            v.into_iter().map(Some).collect()
        }
    };
    let mut slices = Vec::new();
    let mut points = Vec::new();
    for n in outer_values {
        let base = base_env(n.map(|n| (f.outer.as_ref().unwrap().var.as_str(), n)));
        let bound = slice_bound(f, &base, &m2)?;
        let mut above_bound = Vec::new();
        if let Some(start) = bound.start() {
            for q in f.grid_values(&base, f.grid.min as i128, start - 1) {
                let mut point = base.clone();
                point.insert(f.grid.var.clone(), q);
                let order = f.eval_order(&point)?;
                if order > m2 {
                    above_bound.push(q);
                    continue;
                }
                let outcomes = close_point(f, &point, &variants, target)?;
                points.push(GridPoint { point, order, outcomes });
            }
        }
        slices.push(Slice { outer_value: n, bound, above_bound });
    }
    Ok(GridEvidence { family: f.clone(), variants, m_squared: m2, outer, slices, points })
}

/// Finds, for each variant, a codegree outside `cod(target)`, or records
/// why the point is closed otherwise.
pub fn close_point(
    f: &GroupFamily,
    point: &Env,
    variants: &[Option<String>],
    target: &TargetSpec,
) -> Result<Vec<PointOutcome>, VerifyError> {
    let fp = f.eval(point)?;
    let identified = f.identification(point).filter(|id| id.group == target.name);
    let mut out = Vec::with_capacity(variants.len());
    for variant in variants {
        let v = variant.as_deref();
        let witness = fp.cods_for(v).find(|c| !target.contains(&c.value));
        let outcome = match (identified, witness) {
            (Some(id), None) => Outcome::Identified { group: id.group.clone() },
            (Some(_), Some(w)) => Outcome::Open {
                reason: format!(
                    "identified with {} but {} = {} is outside its codegree set",
                    target.name, w.label, w.value
                ),
            },
            (None, Some(w)) => Outcome::Witness { label: w.label.clone(), value: w.value.clone() },
            (None, None) => match f.cod_count_min {
                Some(min) if min > target.cod.len() => Outcome::CountExceeds { min, target: target.cod.len() },
                _ => Outcome::Open {
                    reason: format!("every listed codegree at {} lies in cod({})", format_point(point), target.name),
                },
            },
        };
        out.push(PointOutcome { variant: variant.clone(), outcome });
    }
    Ok(out)
}

/// Re-derives a grid certificate from its embedded family and the target.
pub fn recheck_grid(ev: &GridEvidence, target: &TargetSpec) -> Result<(), VerifyError> {
    let f = &ev.family;
    let fail = |msg: String| Err(VerifyError::Recheck(format!("{}: {msg}", f.name)));
    f.validate()?;
    if ev.m_squared != target.m_squared {
        return fail("M² differs from the target's".into());
    }
    let expected_outer: Vec<Option<i128>> = match (&f.outer, &ev.outer) {
        (None, None) => vec![None],
        (Some(o), Some(b)) => {
            if Some(&b.exponent) != f.q_exponent.as_ref() || b.var != o.var {
                return fail("outer bound does not use the family exponent".into());
            }
            let (p, _) = b.exponent.to_poly(&b.var, &Env::new())?;
            if b.monotone.poly != p.forward_difference()? || b.monotone.from_value > o.min as i128 {
                return fail("monotonicity certificate does not match the exponent".into());
            }
            b.monotone.recheck()?;
            let e = b.exponent.eval_int(&base_env(Some((&b.var, b.cut))))?;
            if e != b.cut_exponent || !pow_exceeds(f.grid.min as i128, e, &ev.m_squared)? {
                return fail(format!("cut {} = {} does not exceed M²", b.var, b.cut));
            }
            (o.min as i128..b.cut).map(Some).collect()
        }
        _ => return fail("outer bound present for a one-parameter family or missing".into()),
    };
    let got: Vec<Option<i128>> = ev.slices.iter().map(|s| s.outer_value).collect();
    if got != expected_outer {
        return fail("slices do not cover the outer range".into());
    }

    let mut listed = ev.points.iter();
    for s in &ev.slices {
        let base = base_env(s.outer_value.map(|n| (f.outer.as_ref().unwrap().var.as_str(), n)));
        match &s.bound {
            SliceBound::Exponent { exponent, q_min } => {
                let e = f.q_exponent.as_ref().map(|x| x.eval_int(&base)).transpose()?;
                if e != Some(*exponent)
                    || *q_min > f.grid.min as i128
                    || !pow_exceeds(*q_min, *exponent, &ev.m_squared)?
                {
                    return fail("exponent rule does not hold".into());
                }
            }
            SliceBound::Polynomial { scale, certificate } => {
                let (poly, sc) = polynomial_rule(f, &base, &ev.m_squared)?;
                if sc != *scale || poly != certificate.poly {
                    return fail("bounding polynomial does not match the order formula".into());
                }
                certificate.recheck()?;
                let mut above = s.above_bound.iter();
                for q in f.grid_values(&base, f.grid.min as i128, certificate.from_value - 1) {
                    let mut point = base.clone();
                    point.insert(f.grid.var.clone(), q);
                    let order = f.eval_order(&point)?;
                    if order > ev.m_squared {
                        if above.next() != Some(&q) {
                            return fail(format!("{} missing from the above-bound list", format_point(&point)));
                        }
                        continue;
                    }
                    let Some(gp) = listed.next() else {
                        return fail(format!("{} missing from the grid", format_point(&point)));
                    };
                    if gp.point != point || gp.order != order {
                        return fail(format!("grid point {} does not match", format_point(&gp.point)));
                    }
                    recheck_point(f, gp, &ev.variants, target)?;
                }
                if above.next().is_some() {
                    return fail("extra above-bound entries".into());
                }
            }
        }
    }
    if listed.next().is_some() {
        return fail("extra grid points".into());
    }
    Ok(())
}

fn recheck_point(
    f: &GroupFamily,
    gp: &GridPoint,
    variants: &[Option<String>],
    target: &TargetSpec,
) -> Result<(), VerifyError> {
    let fp = f.eval(&gp.point)?;
    if gp.outcomes.len() != variants.len() {
        return Err(VerifyError::Recheck(format!("{}: outcome count differs", f.name)));
    }
    for (po, variant) in gp.outcomes.iter().zip(variants) {
        if &po.variant != variant {
            return Err(VerifyError::Recheck(format!("{}: variant order differs", f.name)));
        }
        let ok = match &po.outcome {
            Outcome::Witness { label, value } => {
                fp.cods_for(variant.as_deref()).any(|c| &c.label == label && &c.value == value)
                    && !target.contains(value)
            }
            Outcome::Identified { group } => {
                group == &target.name
                    && f.identification(&gp.point).is_some_and(|id| &id.group == group)
                    && fp.cods_for(variant.as_deref()).all(|c| target.contains(&c.value))
            }
            Outcome::CountExceeds { min, target: t } => {
                f.cod_count_min == Some(*min) && *t == target.cod.len() && min > t
            }
            Outcome::Open { .. } => true,
        };
        if !ok {
            return Err(VerifyError::Recheck(format!(
                "{} at {}: outcome {:?} does not hold",
                f.name,
                format_point(&gp.point),
                po.outcome
            )));
        }
    }
    Ok(())
}
