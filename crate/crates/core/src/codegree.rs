//! Codegree sets: `cod(χ) = |G : ker χ| / χ(1)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, FactoredInt};
use crate::dixon::{dixon_from_classes, CharTable, CycloAcc, DixonError, DixonOptions};
use crate::perm::{conjugacy_classes, normal_subgroups_small, quotient_group, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodegreeError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Dixon(#[from] DixonError),
    #[error("data error in {group}: {reason}")]
    Data { group: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodSource {
    Oracle,
    Data,
    Formula,
}

/// A set of codegrees. Always contains 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeSet {
    pub elements: BTreeSet<FactoredInt>,
    pub source: CodSource,
}

impl CodegreeSet {
    pub fn new(source: CodSource) -> Self {
        Self { elements: BTreeSet::from([FactoredInt::one()]), source }
    }

    pub fn from_elements<I: IntoIterator<Item = FactoredInt>>(source: CodSource, items: I) -> Self {
        let mut s = Self::new(source);
        s.elements.extend(items);
        s
    }

    pub fn insert(&mut self, c: FactoredInt) {
        self.elements.insert(c);
    }

    pub fn contains(&self, c: &FactoredInt) -> bool {
        self.elements.contains(c)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> &FactoredInt {
        self.elements.iter().next_back().expect("1 is always present")
    }

    /// Elements as decimal integers, ascending. `None` if any exceeds 64 bits.
    pub fn values(&self) -> Option<Vec<u64>> {
        self.elements.iter().map(FactoredInt::value).collect()
    }

    /// Same elements, regardless of source.
    pub fn same_elements(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

/// Descending, one element per line, dot notation then decimal.
impl fmt::Display for CodegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.elements.iter().rev() {
            writeln!(f, "{c}\t{}", c.decimal())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Containment {
    Contained,
    Witness { element: FactoredInt },
}

impl Containment {
    pub fn witness(&self) -> Option<&FactoredInt> {
        match self {
            Containment::Contained => None,
            Containment::Witness { element } => Some(element),
        }
    }
}

/// Either `a ⊆ b` or the smallest element of `a \ b`.
pub fn subset_check(a: &CodegreeSet, b: &CodegreeSet) -> Containment {
    match a.elements.iter().find(|c| !b.contains(c)) {
        Some(c) => Containment::Witness { element: c.clone() },
        None => Containment::Contained,
    }
}

/// Degree data for one group, as stored in record files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeData {
    pub name: String,
    pub order: FactoredInt,
    pub degrees: Vec<u64>,
    /// Kernel order of each character, aligned with `degrees`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernels: Option<Vec<u64>>,
    pub simple: bool,
    #[serde(default)]
    pub partial: bool,
    #[serde(default)]
    pub provenance: String,
}

impl DegreeData {
    pub fn distinct_degrees(&self) -> BTreeSet<u64> {
        self.degrees.iter().copied().collect()
    }

    fn data_error(&self, reason: impl Into<String>) -> CodegreeError {
        CodegreeError::Data { group: self.name.clone(), reason: reason.into() }
    }

    /// `Σ d²` as a factored integer, or an error on overflow.
    pub fn sum_of_squares(&self) -> Result<u128, CodegreeError> {
        self.degrees.iter().try_fold(0u128, |acc, &d| {
            acc.checked_add((d as u128) * (d as u128)).ok_or_else(|| self.data_error("sum of squares overflows"))
        })
    }
}

/// `{1} ∪ {|G|/d : d > 1}` for a simple group, where every nontrivial
/// character is faithful.
pub fn cod_simple(d: &DegreeData) -> Result<CodegreeSet, CodegreeError> {
    if !d.simple {
        return Err(d.data_error("not flagged simple"));
    }
    if d.partial {
        return Err(d.data_error("degree list is partial"));
    }
    let mut set = CodegreeSet::new(CodSource::Data);
    for &deg in d.degrees.iter().filter(|&&x| x > 1) {
        let f = FactoredInt::factorize(deg)?;
        set.insert(d.order.div_exact(&f).map_err(|_| d.data_error(format!("degree {deg} does not divide |G|")))?);
    }
    Ok(set)
}

/// Codegrees from degree data with per-character kernel orders. Simple
/// groups without kernel data fall back to [`cod_simple`].
pub fn cod_from_data(d: &DegreeData) -> Result<CodegreeSet, CodegreeError> {
    let Some(kernels) = &d.kernels else {
        return cod_simple(d);
    };
    if d.partial {
        return Err(d.data_error("degree list is partial"));
    }
    if kernels.len() != d.degrees.len() {
        return Err(d.data_error("kernel list length differs from degree list"));
    }
    let mut set = CodegreeSet::new(CodSource::Data);
    for (&deg, &k) in d.degrees.iter().zip(kernels) {
        let index = d
            .order
            .div_exact(&FactoredInt::factorize(k)?)
            .map_err(|_| d.data_error(format!("kernel order {k} does not divide |G|")))?;
        let c = index
            .div_exact(&FactoredInt::factorize(deg)?)
            .map_err(|_| d.data_error(format!("degree {deg} does not divide |G:ker|")))?;
        set.insert(c);
    }
    Ok(set)
}

/// Codegree of one row of a table.
pub fn row_codegree(t: &CharTable, row: usize) -> Result<FactoredInt, CodegreeError> {
    let index = t.order.div_exact(&t.kernel_order(row))?;
    let deg = FactoredInt::factorize(t.rows[row].degree)?;
    index.div_exact(&deg).map_err(|_| CodegreeError::Data {
        group: t.group.clone(),
        reason: format!("degree {} does not divide |G:ker| for row {row}", t.rows[row].degree),
    })
}

pub fn cod_from_table(t: &CharTable) -> Result<CodegreeSet, CodegreeError> {
    let mut set = CodegreeSet::new(CodSource::Oracle);
    for row in 0..t.rows.len() {
        set.insert(row_codegree(t, row)?);
    }
    Ok(set)
}

/// Results of checking both divisibility properties on one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalSubgroupReport {
    pub group: String,
    pub normal_subgroup_orders: Vec<u64>,
    /// `cod(G/N) ⊆ cod(G)` checks performed.
    pub quotient_checks: usize,
    /// Constituent pairs `(χ, φ)` with `φ` under `χ|_M` checked for `cod φ | cod χ`.
    pub constituent_checks: usize,
    pub violations: Vec<String>,
}

impl NormalSubgroupReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every normal `N`: `cod(G/N) ⊆ cod(G)`. For every normal `M`, every
/// `χ ∈ Irr(G)` and every constituent `φ` of `χ|_M`: `cod(φ) | cod(χ)`.
/// Constituents are found from exact inner products in `Z[ζ_E]`.
pub fn normal_subgroup_suite(g: &PermGroup, opts: DixonOptions) -> Result<NormalSubgroupReport, CodegreeError> {
    let eg = g.enumerate()?;
    let cd = conjugacy_classes(&eg);
    let table = dixon_from_classes(&eg, &cd, opts)?;
    let cod_g = cod_from_table(&table)?;
    let row_cods: Vec<FactoredInt> =
        (0..table.rows.len()).map(|r| row_codegree(&table, r)).collect::<Result<_, _>>()?;
    let normals = normal_subgroups_small(&eg, &cd)?;
    let mut report = NormalSubgroupReport {
        group: g.name.clone(),
        normal_subgroup_orders: normals.iter().map(|n| cd.union_size(n)).collect(),
        quotient_checks: 0,
        constituent_checks: 0,
        violations: Vec::new(),
    };

    for n in &normals {
        let q = quotient_group(&eg, &cd, n)?;
        let qt = crate::dixon::dixon_table(&q, opts)?;
        let cod_q = cod_from_table(&qt)?;
        report.quotient_checks += 1;
        if let Containment::Witness { element } = subset_check(&cod_q, &cod_g) {
            report.violations.push(format!(
                "{}: quotient by normal subgroup of order {} has codegree {element} outside cod(G)",
                g.name,
                cd.union_size(n)
            ));
        }
    }

    for m_classes in &normals {
        let members: Vec<usize> = (0..eg.order()).filter(|&e| m_classes.contains(&cd.class_of(e))).collect();
        let m = eg.subgroup(&format!("{}:M{}", g.name, members.len()), &members)?;
        let em = m.enumerate()?;
        let mcd = conjugacy_classes(&em);
        let mt = dixon_from_classes(&em, &mcd, opts)?;
        let m_cods: Vec<FactoredInt> = (0..mt.rows.len()).map(|r| row_codegree(&mt, r)).collect::<Result<_, _>>()?;
        // G-class of each M-class representative
        let fuse: Vec<usize> =
            mcd.reps.iter().map(|&r| cd.class_of(eg.id_of(em.element(r)).expect("M is inside G"))).collect();
        let acc0 = CycloAcc::new(table.exponent);
        for (ci, chi) in table.rows.iter().enumerate() {
            for (pi, phi) in mt.rows.iter().enumerate() {
                let mut acc = acc0.fresh();
                for (c, &gc) in fuse.iter().enumerate() {
                    acc.add_product_conj(mcd.sizes[c] as i128, &chi.values[gc], &phi.values[c]);
                }
                let total = acc.as_integer().ok_or_else(|| CodegreeError::Data {
                    group: g.name.clone(),
                    reason: "restriction inner product is not rational".into(),
                })?;
                let size = members.len() as i128;
                if total % size != 0 || total < 0 {
                    return Err(CodegreeError::Data {
                        group: g.name.clone(),
                        reason: format!("inner product {total}/{size} is not a nonnegative integer"),
                    });
                }
                if total == 0 {
                    continue;
                }
                report.constituent_checks += 1;
                if !row_cods[ci].is_divisible_by(&m_cods[pi]) {
                    report.violations.push(format!(
                        "{}: M of order {}, χ{ci} (cod {}) has constituent φ{pi} with cod {} not dividing it",
                        g.name,
                        members.len(),
                        row_cods[ci],
                        m_cods[pi]
                    ));
                }
            }
        }
    }
    Ok(report)
}
