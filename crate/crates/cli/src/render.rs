use std::fmt::Write;

use codegree_core::arith::FactoredInt;
use codegree_core::codegree::CodegreeSet;
use codegree_core::dixon::CharTable;
use codegree_core::perm::PermGroup;
use codegree_core::verifier::{Evidence, GridPoint, Outcome, ProofReport, Verdict};

/// One codegree per line: dot notation, then decimal.
pub fn codegrees(desc: &[&FactoredInt]) -> String {
    let width = desc.iter().map(|c| c.to_string().len()).max().unwrap_or(1);
    desc.iter().map(|c| format!("{:<width$}  {}\n", c.to_string(), c.decimal())).collect()
}

pub fn table(t: &CharTable, cod: &CodegreeSet) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group    {}", t.group);
    let _ = writeln!(s, "order    {} = {}", t.order, t.order.decimal());
    let _ = writeln!(s, "classes  {}", t.class_count());
    let _ = writeln!(s, "prime    {} (exponent {})", t.prime, t.exponent);
    let _ = writeln!(s, "degrees  {}", join(&t.degrees()));
    let _ = writeln!(s, "codegrees ({}):", cod.len());
    let desc: Vec<_> = cod.elements.iter().rev().collect();
    s.push_str(&indent(&codegrees(&desc)));
    s
}

pub fn diff(name: &str, t: &CharTable, cod: &CodegreeSet, record_degrees: &[u64], record_cod: &CodegreeSet) -> String {
    let mut s = table(t, cod);
    let mark = |ok: bool| if ok { "match" } else { "MISMATCH" };
    let _ = writeln!(
        s,
        "record {name}: degrees {}, codegrees {}",
        mark(t.degrees() == record_degrees),
        mark(cod.same_elements(record_cod))
    );
    if t.degrees() != record_degrees {
        let _ = writeln!(s, "  record degrees {}", join(record_degrees));
    }
    s
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

/// A record file for the group, rows sorted by degree.
pub fn record_toml(t: &CharTable, g: &PermGroup) -> String {
    let mut rows: Vec<(u64, u64)> =
        (0..t.rows.len()).map(|r| (t.rows[r].degree, t.kernel_order(r).value().unwrap_or(0))).collect();
    rows.sort_by_key(|&(d, _)| d);
    let order = t.order_value();
    let abelian = t.class_count() as u64 == order;
    let simple = !abelian && rows.iter().skip(1).all(|&(_, k)| k == 1);
    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    let kernels: Vec<u64> = rows.iter().map(|r| r.1).collect();
    let list = |xs: &[u64]| format!("[{}]", xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", "));
    let mut s = String::new();
    let _ = writeln!(s, "name = \"{}\"", g.name);
    let _ = writeln!(s, "order = \"{}\"", t.order);
    let _ = writeln!(s, "simple = {simple}");
    let _ = writeln!(s, "partial = false");
    let _ = writeln!(s, "degrees = {}", list(&degrees));
    if !simple {
        let _ = writeln!(s, "kernels = {}", list(&kernels));
    }
    let _ = writeln!(s, "class_count = {}", t.class_count());
    let _ = writeln!(
        s,
        "provenance = \"Dixon-Schneider table of the shipped permutation representation (data/groups/{0}.toml), exported with `codeg oracle {0} --emit-record`\"",
        g.name
    );
    s
}

fn outcome(o: &Outcome) -> String {
    match o {
        Outcome::Witness { label, value } => format!("{label} = {value} ∉ cod"),
        Outcome::Identified { group } => format!("is {group}"),
        Outcome::CountExceeds { min, target } => format!("|cod| ≥ {min} > {target}"),
        Outcome::Open { reason } => format!("OPEN: {reason}"),
    }
}

pub fn report(r: &ProofReport) -> String {
    let mut s = String::new();
    let targets: Vec<&str> = r.targets.iter().map(|t| t.display.as_str()).collect();
    let _ = writeln!(s, "report v{} for {}", r.format_version, targets.join(", "));
    for t in &r.targets {
        let _ = writeln!(
            s,
            "  {}: |G| = {}, max cod M = {} = {}, |cod| = {}",
            t.display,
            t.order,
            t.max,
            t.max.decimal(),
            t.cod.len()
        );
    }
    let d = &r.data_validation;
    let _ = writeln!(
        s,
        "data: {} records, {} families, {} groups; {} simple records checked, {} problems",
        d.records,
        d.families,
        d.groups,
        d.simple_records_checked,
        d.problems.len()
    );
    for p in &d.problems {
        let _ = writeln!(s, "  problem: {p}");
    }
    if !r.oracle.is_empty() {
        let pass = r.oracle.iter().filter(|o| o.passed()).count();
        let _ = writeln!(s, "oracle: {pass}/{} tables agree with the records", r.oracle.len());
        for o in r.oracle.iter().filter(|o| !o.passed()) {
            let _ = writeln!(s, "  {}: {}", o.group, o.error.as_deref().unwrap_or("mismatch"));
        }
    }
    let _ = writeln!(s, "certificates:");
    for c in &r.certificates {
        let status = match &c.verdict {
            Verdict::Closed => "closed".to_string(),
            Verdict::Open { reason } => format!("OPEN ({reason})"),
        };
        let _ = writeln!(s, "  {:<38} {:<10} {}", c.id, status, c.summary);
        if let Evidence::Grid(g) = &c.evidence {
            // grids can be long: show only points not closed by a plain witness
            let of_note = |p: &&GridPoint| p.outcomes.iter().any(|o| !matches!(o.outcome, Outcome::Witness { .. }));
            for p in g.points.iter().filter(of_note) {
                let outs: Vec<String> = p.outcomes.iter().map(|o| outcome(&o.outcome)).collect();
                let _ = writeln!(s, "      {}: {}", codegree_core::catalog::format_point(&p.point), outs.join("; "));
            }
        }
    }
    if !r.notes.is_empty() {
        let _ = writeln!(s, "notes:");
        for n in &r.notes {
            let _ = writeln!(s, "  - {n}");
        }
    }
    if !r.trusted_inputs.is_empty() {
        let _ = writeln!(s, "trusted inputs:");
        for t in &r.trusted_inputs {
            let _ = writeln!(s, "  - {t}");
        }
    }
    let open = r.open().count();
    let _ =
        writeln!(s, "{}: {} certificates, {open} open", if r.closed { "CLOSED" } else { "OPEN" }, r.certificates.len());
    s
}
