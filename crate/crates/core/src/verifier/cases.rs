//! The case table for each target and the code that closes one case.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::checks::{gl_order, Check, Targets};
use super::grid::{recheck_grid, sqrt_bound_grid};
use super::{Certificate, Evidence, Method, TargetSpec, Verdict, VerifyError};
use crate::arith::FactoredInt;
use crate::catalog::{alternating_certificate, AlternatingCertificate, Catalog, GroupRecord};
use crate::codegree::{cod_from_data, DegreeData};

/// A fixed group with the codegree the argument cites, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedRef {
    pub record: String,
    pub cited: Option<u64>,
    pub expected_cd_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckSet {
    Abelian,
    CountOnly,
    Multiplier { order: u64 },
    CentralExtension { cover: String, faithful: Vec<u64> },
    GeneralLinear,
    PrimeSupport { primes: Vec<u64> },
    DirectSquare,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseKind {
    Grid { family: String },
    Fixed { groups: Vec<FixedRef> },
    Count { tags: Vec<String>, listed: Vec<String>, range: (usize, usize) },
    Checks { set: CheckSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub id: String,
    pub target: String,
    pub kind: CaseKind,
    /// What the case establishes, in one line.
    pub claim: String,
    pub trusted: Vec<String>,
}

impl CaseSpec {
    pub fn method(&self) -> Method {
        match &self.kind {
            CaseKind::Grid { .. } => Method::Grid,
            CaseKind::Fixed { .. } => Method::FixedData,
            CaseKind::Count { .. } => Method::Count,
            CaseKind::Checks { .. } => Method::DataFact,
        }
    }
}

fn case(target: &str, id: &str, kind: CaseKind, claim: &str) -> CaseSpec {
    CaseSpec {
        id: format!("{target}/{id}"),
        target: target.to_string(),
        kind,
        claim: claim.to_string(),
        trusted: Vec::new(),
    }
}

fn grid(target: &str, family: &str, claim: &str) -> CaseSpec {
    case(target, &family.to_lowercase().replace('_', "-"), CaseKind::Grid { family: family.into() }, claim)
}

fn fixed(target: &str, id: &str, groups: &[(&str, Option<u64>, Option<usize>)], claim: &str) -> CaseSpec {
    let groups =
        groups.iter().map(|&(r, cited, cd)| FixedRef { record: r.into(), cited, expected_cd_count: cd }).collect();
    case(target, id, CaseKind::Fixed { groups }, claim)
}

fn checks(target: &str, id: &str, set: CheckSet, claim: &str) -> CaseSpec {
    case(target, id, CaseKind::Checks { set }, claim)
}

fn trusting(mut c: CaseSpec, fact: &str) -> CaseSpec {
    c.trusted.push(fact.to_string());
    c
}

const SMALL_ALTERNATING_SPORADIC: [&str; 9] = ["A5", "A6", "A7", "A8", "M11", "M12", "M22", "M23", "J1"];

/// Every case for `target`, in a fixed order.
pub fn case_specs(target: &str) -> Vec<CaseSpec> {
    let t = target;
    match target {
        "U3_3" => vec![
            checks(t, "abelian", CheckSet::Abelian, "an abelian group has a prime codegree; cod(U3(3)) has none"),
            trusting(
                checks(t, "cd-classification", CheckSet::CountOnly, "|cod| = |cd| = 8 for U3(3)"),
                "simple groups with at most seven character degrees are classified (PSL(2,q), Sz(q), PSL(3,4), PSL(3,3), A7, M11, J1)",
            ),
            grid(t, "PSL2_even", "PSL(2,2^f): some codegree lies outside cod(U3(3)) under both transcriptions"),
            grid(t, "PSL2_odd", "PSL(2,q), q odd: some codegree lies outside cod(U3(3))"),
            grid(t, "Suzuki", "Sz(q): some codegree lies outside cod(U3(3))"),
            fixed(t, "psl3-4", &[("L3_4", Some(320), Some(6))], "2^6.5 ∈ cod(PSL(3,4)) \\ cod(U3(3))"),
            fixed(
                t,
                "seven-degrees",
                &[("L3_3", None, Some(7)), ("A7", None, Some(7)), ("M11", Some(495), Some(7)), ("J1", Some(3135), Some(7))],
                "PSL(3,3), A7, M11 and J1 each have a codegree outside cod(U3(3))",
            ),
            checks(t, "multiplier", CheckSet::Multiplier { order: 1 }, "Mult(U3(3)) = 1: no nonsplit central extension"),
            checks(t, "general-linear", CheckSet::GeneralLinear, "6048 divides none of |GL(5,2)|, |GL(3,3)|, |GL(1,7)|"),
            checks(t, "prime-support", CheckSet::PrimeSupport { primes: vec![2, 3, 7] }, "|U3(3)| has prime divisors 2, 3, 7"),
            checks(t, "direct-square", CheckSet::DirectSquare, "U3(3) × U3(3) has a codegree outside cod(U3(3))"),
        ],
        "U4_2" => vec![
            checks(t, "abelian", CheckSet::Abelian, "an abelian group has a prime codegree; cod(U4(2)) has none"),
            trusting(
                checks(t, "huppert", CheckSet::CountOnly, "|cod| = |cd| = 13 for U4(2)"),
                "Huppert's conjecture for U4(2): cd(H) = cd(U4(2)) forces H ≅ U4(2) × A with A abelian",
            ),
            case(
                t,
                "alternating-sporadic-count",
                CaseKind::Count {
                    tags: vec!["alternating".into(), "sporadic".into()],
                    listed: SMALL_ALTERNATING_SPORADIC.iter().map(|s| s.to_string()).collect(),
                    range: (4, 12),
                },
                "exactly nine alternating or sporadic groups have 4 ≤ |cod| ≤ 12; A_n has ≥ 14 degrees for n ≥ 14",
            ),
            fixed(
                t,
                "alternating-sporadic-small",
                &SMALL_ALTERNATING_SPORADIC.map(|r| (r, None, None)),
                "each of the nine small alternating or sporadic groups has a codegree outside cod(U4(2))",
            ),
            grid(t, "PSL2_even", "PSL(2,2^f)"),
            grid(t, "PSL2_odd", "PSL(2,q), q odd"),
            grid(t, "Suzuki", "Sz(q): only q = 8 survives the bound"),
            grid(t, "Ree", "2G2(q): no point survives the bound"),
            grid(t, "G2", "G2(q): only q = 3 survives, closed by the cuspidal codegree"),
            grid(t, "F4", "F4(q)"),
            grid(t, "E6", "E6(q)"),
            grid(t, "twoE6", "2E6(q)"),
            grid(t, "E7", "E7(q)"),
            grid(t, "E8", "E8(q)"),
            grid(t, "twoF4", "2F4(q), q > 2"),
            grid(t, "threeD4", "3D4(q)"),
            fixed(t, "tits", &[("Tits", None, None)], "the Tits group has a codegree outside cod(U4(2))"),
            grid(t, "PSL_n", "PSL(n+1,q), n ≥ 2"),
            grid(t, "PSU_n", "PSU(n+1,q), n ≥ 2"),
            grid(t, "BC2", "B2(q): q = 3 is U4(2) itself"),
            grid(t, "BC_n", "B_n(q), C_n(q), n ≥ 3: Steinberg codegree"),
            grid(t, "D2_even", "D2 branch, q even"),
            grid(t, "D2_odd", "D2 branch, q odd"),
            grid(t, "D_n", "D_n(q), n ≥ 4"),
            grid(t, "twoD_n", "2D_n(q), n ≥ 4"),
            checks(t, "multiplier", CheckSet::Multiplier { order: 2 }, "Mult(U4(2)) = 2"),
            checks(
                t,
                "central-extension",
                CheckSet::CentralExtension { cover: "2U4_2".into(), faithful: vec![1, 4, 20, 36, 60, 64, 80] },
                "2.U4(2) has a codegree outside cod(U4(2))",
            ),
            checks(
                t,
                "general-linear",
                CheckSet::GeneralLinear,
                "25920 ∤ |GL(5,2)|, |GL(3,3)|, |GL(1,5)|; cd(U4(2)) ⊄ cd(GL(6,2)), cd(GL(4,3))",
            ),
            checks(t, "prime-support", CheckSet::PrimeSupport { primes: vec![2, 3, 5] }, "|U4(2)| has prime divisors 2, 3, 5"),
            checks(t, "direct-square", CheckSet::DirectSquare, "U4(2) × U4(2) has a codegree outside cod(U4(2))"),
        ],
        _ => Vec::new(),
    }
}

pub fn case_ids(target: &str) -> Vec<String> {
    case_specs(target).into_iter().map(|c| c.id).collect()
}

/// A fixed group and the codegree that separates it from the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedWitness {
    pub group: String,
    pub data: DegreeData,
    /// Ascending; for partial records only the listed degrees contribute.
    pub cod: Vec<FactoredInt>,
    pub cd_count: usize,
    pub expected_cd_count: Option<usize>,
    pub cited: Option<FactoredInt>,
    /// The cited codegree when it separates, else the smallest that does.
    pub witness: Option<FactoredInt>,
    pub smallest_outside: Option<FactoredInt>,
}

impl FixedWitness {
    fn closed(&self) -> bool {
        let count_ok = self.expected_cd_count.is_none_or(|c| c == self.cd_count);
        let cited_ok = self.cited.is_none() || self.cited == self.witness;
        self.witness.is_some() && count_ok && cited_ok
    }
}

/// Codegrees certainly present in the group. For a simple group every
/// nontrivial character is faithful, so each listed degree contributes
/// `|G|/d` even when the list is partial.
fn known_cod(d: &DegreeData) -> Result<BTreeSet<FactoredInt>, VerifyError> {
    if d.partial && d.simple {
        let mut set = BTreeSet::from([FactoredInt::one()]);
        for &deg in d.degrees.iter().filter(|&&x| x > 1) {
            set.insert(d.order.div_exact(&FactoredInt::factorize(deg)?)?);
        }
        return Ok(set);
    }
    Ok(cod_from_data(d)?.elements)
}

fn fixed_witness(
    data: &DegreeData,
    cd_count: usize,
    r: &FixedRef,
    target: &TargetSpec,
) -> Result<FixedWitness, VerifyError> {
    let cod = known_cod(data)?;
    let smallest_outside = cod.iter().find(|c| !target.contains(c)).cloned();
    let cited = r.cited.map(FactoredInt::factorize).transpose()?;
    let witness = match &cited {
        Some(c) if cod.contains(c) && !target.contains(c) => Some(c.clone()),
        Some(_) => None,
        None => smallest_outside.clone(),
    };
    Ok(FixedWitness {
        group: data.name.clone(),
        data: data.clone(),
        cod: cod.into_iter().collect(),
        cd_count,
        expected_cd_count: r.expected_cd_count,
        cited,
        witness,
        smallest_outside,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub group: String,
    /// `|cd| = |cod|` (simple groups).
    pub count: usize,
    /// The count rests on a recorded lower bound rather than a full list.
    pub trusted: bool,
    pub in_range: bool,
    pub listed: bool,
    /// For rows whose count equals `|cod(target)|`: a separating codegree.
    pub witness: Option<FactoredInt>,
    pub data: DegreeData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountEvidence {
    pub range: (usize, usize),
    pub target_count: usize,
    pub rows: Vec<CountRow>,
    pub listed: Vec<String>,
    pub alternating: AlternatingCertificate,
}

impl CountEvidence {
    fn closed(&self) -> bool {
        self.rows.iter().all(|r| r.in_range == r.listed)
            && self.rows.iter().filter(|r| r.listed).count() == self.listed.len()
            && self.rows.iter().filter(|r| r.count == self.target_count).all(|r| r.witness.is_some())
            && self.alternating.distinct_degree_count() > self.target_count
    }
}

fn count_row(
    d: &DegreeData,
    count: usize,
    trusted: bool,
    ev_range: (usize, usize),
    listed: &[String],
    target: &TargetSpec,
) -> Result<CountRow, VerifyError> {
    let witness =
        if count == target.cod.len() { known_cod(d)?.into_iter().find(|c| !target.contains(c)) } else { None };
    Ok(CountRow {
        group: d.name.clone(),
        count,
        trusted,
        in_range: (ev_range.0..=ev_range.1).contains(&count),
        listed: listed.contains(&d.name),
        witness,
        data: d.clone(),
    })
}

fn check_set(set: &CheckSet, cat: &Catalog, target: &TargetSpec) -> Result<Vec<Check>, VerifyError> {
    let name = target.name.clone();
    let mut out = Vec::new();
    match set {
        CheckSet::Abelian => out.push(Check::NoPrimePowers { target: name, holds: false }),
        CheckSet::CountOnly => out.push(Check::CountsAgree { target: name, count: target.cod.len(), holds: false }),
        CheckSet::Multiplier { order } => out.push(Check::Multiplier { target: name, order: *order, holds: false }),
        CheckSet::CentralExtension { cover, faithful } => {
            let data = cat.record(cover)?.data.clone();
            out.push(Check::SumOfSquares { data: data.clone(), holds: false });
            out.push(Check::FaithfulDegrees { data: data.clone(), expected: faithful.clone(), holds: false });
            let cod = cod_from_data(&data)?;
            let witness = cod
                .elements
                .iter()
                .find(|c| !target.contains(c))
                .cloned()
                .ok_or_else(|| VerifyError::Reduction(format!("cod({cover}) ⊆ cod({})", target.name)))?;
            out.push(Check::CodegreeOutside { target: name, data, witness, holds: false });
        }
        CheckSet::GeneralLinear => general_linear(cat, target, &mut out)?,
        CheckSet::PrimeSupport { primes } => {
            out.push(Check::PrimeSupport { target: name, primes: primes.clone(), holds: false })
        }
        CheckSet::DirectSquare => {
            let dmax = target.degrees.iter().max().copied().unwrap_or(1);
            let value = target.order.pow(2).div_exact(&FactoredInt::factorize(dmax)?.pow(2))?;
            out.push(Check::SquareWitness { target: name.clone(), value, holds: false });
            out.push(Check::NoCodegreeDivisibleByOrder { target: name, holds: false });
        }
    }
    Ok(out)
}

/// For each prime `p^a ‖ |T|`, `GL(a, p)`: either `|T|` does not divide its
/// order, or a degree of `T` is not a degree of it.
fn general_linear(cat: &Catalog, target: &TargetSpec, out: &mut Vec<Check>) -> Result<(), VerifyError> {
    let mut groups: Vec<(u32, u64)> = target.order.factors().iter().map(|(&p, &a)| (a, p)).collect();
    // the smaller linear groups are ruled out for U4(2) as well
    if target.name == "U4_2" {
        groups.extend([(5, 2), (3, 3)]);
    }
    for (n, q) in groups {
        let order = gl_order(n, q)?;
        let label = format!("GL({n},{q})");
        let record = cat.record(&format!("GL{n}_{q}")).ok();
        if let Some(r) = record {
            out.push(Check::GlOrder { n, q, order: r.order().clone(), holds: false });
        } else {
            out.push(Check::GlOrder { n, q, order: order.clone(), holds: false });
        }
        if !order.is_divisible_by(&target.order) {
            out.push(Check::NotDivides { label, divisor: target.order.clone(), dividend: order, holds: false });
            continue;
        }
        out.push(Check::Divides { label: label.clone(), divisor: target.order.clone(), dividend: order, holds: false });
        let r = record
            .ok_or_else(|| VerifyError::Reduction(format!("{label} divides by |{}| and has no record", target.name)))?;
        out.push(Check::SumOfSquares { data: r.data.clone(), holds: false });
        let cd = r.distinct_degrees();
        let witness = target
            .degrees
            .iter()
            .copied()
            .filter(|d| !cd.contains(d))
            .min()
            .ok_or_else(|| VerifyError::Reduction(format!("cd({}) ⊆ cd({label})", target.name)))?;
        out.push(Check::DegreeNotContained {
            target: target.name.clone(),
            data: r.data.clone(),
            witness,
            holds: false,
        });
    }
    Ok(())
}

fn record_for_case<'a>(cat: &'a Catalog, name: &str) -> Result<&'a GroupRecord, VerifyError> {
    Ok(cat.record(name)?)
}

fn build_evidence(spec: &CaseSpec, cat: &Catalog, target: &TargetSpec) -> Result<Evidence, VerifyError> {
    let ts: Targets = Targets::from([(target.name.as_str(), target)]);
    Ok(match &spec.kind {
        CaseKind::Grid { family } => Evidence::Grid(Box::new(sqrt_bound_grid(cat.family(family)?, target)?)),
        CaseKind::Fixed { groups } => Evidence::Fixed {
            groups: groups
                .iter()
                .map(|r| {
                    let rec = record_for_case(cat, &r.record)?;
                    fixed_witness(&rec.data, rec.cd_count().0, r, target)
                })
                .collect::<Result<_, _>>()?,
        },
        CaseKind::Count { tags, listed, range } => {
            let mut rows = Vec::new();
            for rec in cat.records.values().filter(|r| tags.iter().any(|t| r.has_tag(t))) {
                let (count, trusted) = rec.cd_count();
                rows.push(count_row(&rec.data, count, trusted, *range, listed, target)?);
            }
            Evidence::Count(Box::new(CountEvidence {
                range: *range,
                target_count: target.cod.len(),
                rows,
                listed: listed.clone(),
                alternating: alternating_certificate()?,
            }))
        }
        CaseKind::Checks { set } => Evidence::Checks {
            checks: check_set(set, cat, target)?.into_iter().map(|c| c.computed(&ts)).collect::<Result<_, _>>()?,
        },
    })
}

fn verdict(evidence: &Evidence) -> Verdict {
    let open = |reason: String| Verdict::Open { reason };
    match evidence {
        Evidence::Grid(g) => match g.points.iter().find(|p| !p.closed()) {
            None => Verdict::Closed,
            Some(p) => {
                open(format!("{} has an open point at {}", g.family.name, crate::catalog::format_point(&p.point)))
            }
        },
        Evidence::Fixed { groups } => match groups.iter().find(|g| !g.closed()) {
            None => Verdict::Closed,
            Some(g) => open(format!("{}: no separating codegree (or count/cited value mismatch)", g.group)),
        },
        Evidence::Count(c) => {
            if c.closed() {
                Verdict::Closed
            } else {
                open("degree counts do not match the listed groups".into())
            }
        }
        Evidence::Checks { checks } => match checks.iter().find(|c| !c.holds()) {
            None => Verdict::Closed,
            Some(c) => open(format!("check fails: {c:?}")),
        },
        Evidence::Missing { error } => open(error.clone()),
    }
}

fn summary(spec: &CaseSpec, evidence: &Evidence) -> String {
    match evidence {
        Evidence::Grid(g) if g.points.is_empty() => format!("{}; empty grid, closed vacuously", spec.claim),
        Evidence::Grid(g) => {
            let pts: Vec<String> = g.points.iter().map(|p| crate::catalog::format_point(&p.point)).collect();
            format!("{}; grid [{}]", spec.claim, pts.join("; "))
        }
        _ => spec.claim.clone(),
    }
}

fn notes(evidence: &Evidence) -> Vec<String> {
    let mut notes = Vec::new();
    if let Evidence::Grid(g) = evidence {
        let f = &g.family;
        for ex in &f.exclusions {
            notes.push(format!("excluded {}: {}", crate::catalog::format_point(&ex.point), ex.reason));
        }
        if !f.simple {
            notes.push(format!("{} is not simple; the branch is closed anyway", f.display));
        }
        if g.variants.len() > 1 {
            let v: Vec<&str> = g.variants.iter().flatten().map(String::as_str).collect();
            notes.push(format!("closed under every transcription variant: {}", v.join(", ")));
        }
    }
    notes
}

fn trusted_for(spec: &CaseSpec, evidence: &Evidence) -> Vec<String> {
    let mut t = spec.trusted.clone();
    match evidence {
        Evidence::Grid(g) => {
            let counted = g
                .points
                .iter()
                .flat_map(|p| &p.outcomes)
                .any(|o| matches!(o.outcome, super::Outcome::CountExceeds { .. }));
            if counted {
                t.push(format!("|cod({})| ≥ {} (literature)", g.family.display, g.family.cod_count_min.unwrap_or(0)));
            }
        }
        Evidence::Count(c) => {
            for r in c.rows.iter().filter(|r| r.trusted) {
                t.push(format!("|cd({})| ≥ {} (literature)", r.group, r.count));
            }
        }
        _ => {}
    }
    t
}

/// Builds and closes one case. Setup failures (missing files, failed
/// reductions) produce an open certificate rather than an error.
pub fn close_case(spec: &CaseSpec, cat: &Catalog, target: &TargetSpec) -> Certificate {
    let evidence = build_evidence(spec, cat, target).unwrap_or_else(|e| Evidence::Missing { error: e.to_string() });
    Certificate {
        id: spec.id.clone(),
        target: target.name.clone(),
        method: spec.method(),
        summary: summary(spec, &evidence),
        target_max: target.max.clone(),
        trusted: trusted_for(spec, &evidence),
        notes: notes(&evidence),
        verdict: verdict(&evidence),
        evidence,
    }
}

fn recheck_fixed(w: &FixedWitness, target: &TargetSpec) -> Result<(), VerifyError> {
    let fail = |m: &str| Err(VerifyError::Recheck(format!("{}: {m}", w.group)));
    let cod: Vec<FactoredInt> = known_cod(&w.data)?.into_iter().collect();
    if cod != w.cod {
        return fail("codegree list does not match the degree data");
    }
    if !w.data.partial && w.cd_count != w.data.distinct_degrees().len() {
        return fail("degree count does not match the degree data");
    }
    let smallest = cod.iter().find(|c| !target.contains(c)).cloned();
    if smallest != w.smallest_outside {
        return fail("smallest separating codegree differs");
    }
    if let Some(x) = &w.witness {
        if !cod.contains(x) || target.contains(x) {
            return fail("witness does not separate");
        }
    }
    Ok(())
}

fn recheck_count(c: &CountEvidence, target: &TargetSpec) -> Result<(), VerifyError> {
    if c.target_count != target.cod.len() {
        return Err(VerifyError::Recheck("target count differs".into()));
    }
    for r in &c.rows {
        let listed = r.data.distinct_degrees().len();
        let fail = |m: &str| Err(VerifyError::Recheck(format!("{}: {m}", r.group)));
        if (!r.trusted && r.count != listed) || (r.trusted && (!r.data.partial || r.count < listed)) {
            return fail("count does not follow from the data");
        }
        if r.in_range != (c.range.0..=c.range.1).contains(&r.count) || r.listed != c.listed.contains(&r.group) {
            return fail("range or listing flag wrong");
        }
        if let Some(w) = &r.witness {
            if !known_cod(&r.data)?.contains(w) || target.contains(w) {
                return fail("witness does not separate");
            }
        }
    }
    c.alternating.recheck()?;
    Ok(())
}

/// Re-derives a certificate's evidence and verdict from the file alone.
pub(super) fn recheck_certificate(cert: &Certificate, ts: &Targets) -> Result<(), VerifyError> {
    let target = ts
        .get(cert.target.as_str())
        .copied()
        .ok_or_else(|| VerifyError::Recheck(format!("{}: unknown target", cert.id)))?;
    if cert.target_max != target.max {
        return Err(VerifyError::Recheck(format!("{}: target maximum differs", cert.id)));
    }
    match &cert.evidence {
        Evidence::Grid(g) => recheck_grid(g, target)?,
        Evidence::Fixed { groups } => groups.iter().try_for_each(|w| recheck_fixed(w, target))?,
        Evidence::Count(c) => recheck_count(c, target)?,
        Evidence::Checks { checks } => {
            for c in checks {
                if c.evaluate(ts)? != c.holds() {
                    return Err(VerifyError::Recheck(format!("{}: check disagrees: {c:?}", cert.id)));
                }
            }
        }
        Evidence::Missing { .. } => {}
    }
    if verdict(&cert.evidence) != cert.verdict {
        return Err(VerifyError::Recheck(format!("{}: verdict does not follow from the evidence", cert.id)));
    }
    Ok(())
}
