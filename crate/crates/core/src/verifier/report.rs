use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cases::{case_specs, close_case, recheck_certificate};
use super::checks::Targets;
use super::{Certificate, Evidence, TargetSpec, VerifyError};
use crate::arith::FactoredInt;
use crate::catalog::Catalog;
use crate::codegree::cod_from_table;
use crate::dixon::{dixon_table, DixonOptions};

/// Version of the report layout; [`recheck_report`] refuses any other.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub targets: Vec<String>,
    /// Run the character-table oracle on the records tagged `K3`.
    pub oracle: bool,
    pub dixon: DixonOptions,
    /// Stored as given; the rest of the report is deterministic.
    pub generated_at: String,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            targets: vec!["U3_3".into(), "U4_2".into()],
            oracle: true,
            dixon: DixonOptions::default(),
            generated_at: String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataSummary {
    pub records: usize,
    pub families: usize,
    pub groups: usize,
    /// Complete simple records on which `cod · degree = |G|` and
    /// `|cod| = |cd|` were checked.
    pub simple_records_checked: usize,
    pub problems: Vec<String>,
}

/// Oracle table against the record of the same group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub group: String,
    pub classes: usize,
    pub record_degrees: Vec<u64>,
    pub oracle_degrees: Vec<u64>,
    pub record_cod: Vec<FactoredInt>,
    pub oracle_cod: Vec<FactoredInt>,
    pub error: Option<String>,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.record_degrees == self.oracle_degrees && self.record_cod == self.oracle_cod
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofReport {
    pub format_version: u32,
    pub generated_at: String,
    pub targets: Vec<TargetSpec>,
    pub data_validation: DataSummary,
    pub oracle: Vec<OracleCheck>,
    pub certificates: Vec<Certificate>,
    /// Flagged discrepancies and caveats.
    pub notes: Vec<String>,
    pub trusted_inputs: Vec<String>,
    /// True iff every certificate is closed.
    pub closed: bool,
}

impl ProofReport {
    pub fn oracle_passed(&self) -> bool {
        self.oracle.iter().all(OracleCheck::passed)
    }

    pub fn certificate(&self, id: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.id == id)
    }

    pub fn open(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.verdict.is_closed())
    }
}

fn validate_data(cat: &Catalog) -> DataSummary {
    let mut problems = Vec::new();
    let mut checked = 0;
    for r in cat.records.values().filter(|r| r.data.simple && !r.data.partial) {
        checked += 1;
        let Ok(cod) = r.cod() else {
            problems.push(format!("{}: codegrees do not divide the order", r.name()));
            continue;
        };
        if cod.len() != r.distinct_degrees().len() {
            problems.push(format!("{}: |cod| = {} but |cd| = {}", r.name(), cod.len(), r.distinct_degrees().len()));
        }
        for &d in r.distinct_degrees().iter().filter(|&&d| d > 1) {
            let ok = FactoredInt::factorize(d)
                .ok()
                .and_then(|f| r.order().div_exact(&f).ok().map(|c| c.mul(&f) == *r.order() && cod.contains(&c)))
                .unwrap_or(false);
            if !ok {
                problems.push(format!("{}: cod · {d} is not |G|", r.name()));
            }
        }
    }
    DataSummary {
        records: cat.records.len(),
        families: cat.families.len(),
        groups: cat.groups.len(),
        simple_records_checked: checked,
        problems,
    }
}

fn oracle_check(cat: &Catalog, name: &str, opts: DixonOptions) -> OracleCheck {
    let rec = cat.record(name).ok();
    let mut record_degrees = rec.map(|r| r.data.degrees.clone()).unwrap_or_default();
    record_degrees.sort_unstable();
    let record_cod = rec.and_then(|r| r.cod().ok()).map(|c| c.elements.into_iter().collect()).unwrap_or_default();
    let mut out = OracleCheck {
        group: name.to_string(),
        classes: 0,
        record_degrees,
        oracle_degrees: Vec::new(),
        record_cod,
        oracle_cod: Vec::new(),
        error: None,
    };
    let table =
        cat.group(name).map_err(|e| e.to_string()).and_then(|g| dixon_table(g, opts).map_err(|e| e.to_string()));
    match table {
        Ok(t) => {
            out.classes = t.class_count();
            out.oracle_degrees = t.degrees();
            match cod_from_table(&t) {
                Ok(c) => out.oracle_cod = c.elements.into_iter().collect(),
                Err(e) => out.error = Some(e.to_string()),
            }
        }
        Err(e) => out.error = Some(e),
    }
    out
}

fn report_notes(cat: &Catalog, certs: &[Certificate]) -> Vec<String> {
    let mut notes = BTreeSet::new();
    for c in certs {
        match &c.evidence {
            Evidence::Grid(g) if g.variants.len() > 1 => {
                let f = &g.family;
                let printed: Vec<&str> =
                    f.cod.iter().filter(|e| e.transcribed_only).map(|e| e.label.as_str()).collect();
                notes.insert(format!(
                    "{}: the printed codegree set ({}) differs from the character table; both transcriptions are carried and each closes",
                    f.name,
                    printed.join(", ")
                ));
            }
            Evidence::Grid(g) if !g.family.simple => {
                notes.insert(format!(
                    "{}: the group is not simple for these parameters; the branch is closed regardless",
                    g.family.name
                ));
            }
            Evidence::Count(e) => {
                for m in e.alternating.printed_mismatches.iter().take(1) {
                    notes.insert(format!(
                        "A_n degree for {}: the printed closed form disagrees with the hook length formula (e.g. n = {}: {} vs {}); the corrected form is used",
                        m.shape, m.n, m.printed, m.hook
                    ));
                }
            }
            _ => {}
        }
    }
    if let Ok(bc2) = cat.family("BC2") {
        for ex in &bc2.exclusions {
            notes.insert(format!("BC2 at {}: {}", crate::catalog::format_point(&ex.point), ex.reason));
        }
    }
    notes.into_iter().collect()
}

/// Loads the targets, validates the data, runs the oracle and closes every
/// case. Cases run in parallel on the current rayon pool.
pub fn verify_all(cat: &Catalog, opts: &VerifyOptions) -> Result<ProofReport, VerifyError> {
    let targets: Vec<TargetSpec> =
        opts.targets.iter().map(|t| TargetSpec::from_record(cat.record(t)?)).collect::<Result<_, _>>()?;
    let specs: Vec<_> = targets.iter().flat_map(|t| case_specs(&t.name).into_iter().map(move |s| (s, t))).collect();
    let certificates: Vec<Certificate> = specs.par_iter().map(|(s, t)| close_case(s, cat, t)).collect();

    let oracle = if opts.oracle {
        let k3: Vec<String> = cat.records_tagged("K3").map(|r| r.name().to_string()).collect();
        k3.par_iter().map(|n| oracle_check(cat, n, opts.dixon)).collect()
    } else {
        Vec::new()
    };

    let trusted_inputs: BTreeSet<String> = certificates.iter().flat_map(|c| c.trusted.iter().cloned()).collect();
    Ok(ProofReport {
        format_version: FORMAT_VERSION,
        generated_at: opts.generated_at.clone(),
        data_validation: validate_data(cat),
        notes: report_notes(cat, &certificates),
        closed: certificates.iter().all(|c| c.verdict.is_closed()),
        trusted_inputs: trusted_inputs.into_iter().collect(),
        targets,
        oracle,
        certificates,
    })
}

/// Recomputes every certificate from the report alone: target data, grids,
/// witnesses, positivity certificates and verdicts.
pub fn recheck_report(report: &ProofReport) -> Result<(), VerifyError> {
    if report.format_version != FORMAT_VERSION {
        return Err(VerifyError::Format(format!(
            "format version {} (this build reads {FORMAT_VERSION})",
            report.format_version
        )));
    }
    for t in &report.targets {
        t.recheck()?;
    }
    let ts: Targets = report.targets.iter().map(|t| (t.name.as_str(), t)).collect();
    let mut ids = BTreeSet::new();
    for c in &report.certificates {
        if !ids.insert(&c.id) {
            return Err(VerifyError::Recheck(format!("duplicate certificate {}", c.id)));
        }
    }
    for t in &report.targets {
        for id in super::case_ids(&t.name) {
            if !ids.contains(&id) {
                return Err(VerifyError::Recheck(format!("certificate {id} is missing")));
            }
        }
    }
    report.certificates.par_iter().try_for_each(|c| recheck_certificate(c, &ts))?;
    for o in &report.oracle {
        let mut d = o.record_degrees.clone();
        d.sort_unstable();
        if d != o.record_degrees || o.oracle_degrees.len() != o.classes && o.error.is_none() {
            return Err(VerifyError::Recheck(format!("oracle entry {} is inconsistent", o.group)));
        }
    }
    let closed = report.certificates.iter().all(|c| c.verdict.is_closed());
    if closed != report.closed {
        return Err(VerifyError::Recheck("closed flag does not match the certificates".into()));
    }
    Ok(())
}
