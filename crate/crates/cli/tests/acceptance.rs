//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p codegree-cli --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use codegree_core::arith::FactoredInt;
use codegree_core::catalog::{alternating_certificate, hook_degree, partition_formulas, Catalog, HOOK_CHECK};
use codegree_core::codegree::{cod_from_table, cod_simple, normal_subgroup_suite};
use codegree_core::dixon::{dixon_table, DixonOptions};
use codegree_core::verifier::{
    gl_order, verify_all, Certificate, Check, Evidence, Outcome, ProofReport, VerifyOptions,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn(&Ctx) -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const K3: [&str; 8] = ["A5", "A6", "L2_7", "L2_8", "L2_17", "L3_3", "U3_3", "U4_2"];
const U3_3_COD: [u64; 8] = [1, 1008, 864, 432, 288, 224, 216, 189];
const U4_2_COD: [u64; 13] = [1, 5184, 4320, 2592, 1728, 1296, 1080, 864, 648, 576, 432, 405, 320];

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

struct Ctx {
    cat: Catalog,
    report: ProofReport,
}

impl Ctx {
    fn cert(&self, id: &str) -> Result<&Certificate, String> {
        self.report.certificate(id).ok_or_else(|| format!("no certificate {id}"))
    }

    fn checks(&self, id: &str) -> Result<&[Check], String> {
        match &self.cert(id)?.evidence {
            Evidence::Checks { checks } => Ok(checks),
            e => Err(format!("{id}: unexpected evidence {e:?}")),
        }
    }
}

fn n(v: u64) -> FactoredInt {
    FactoredInt::factorize(v).unwrap()
}

fn set(xs: &[u64]) -> BTreeSet<u64> {
    xs.iter().copied().collect()
}

fn cli_cod(name: &str) -> Result<BTreeSet<u64>, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_codeg"))
        .arg("--data")
        .arg(data_dir())
        .args(["cod", name])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(o.status.success(), "codeg cod {name} exited with {:?}", o.status.code());
    Ok(String::from_utf8_lossy(&o.stdout).lines().filter_map(|l| l.split_whitespace().last()?.parse().ok()).collect())
}

fn golden_sets(ctx: &Ctx) -> Verdict {
    let mut oracle_secs = 0.0;
    for (name, golden) in [("U3_3", set(&U3_3_COD)), ("U4_2", set(&U4_2_COD))] {
        let record: BTreeSet<u64> = cod_simple(&ctx.cat.record(name).map_err(|e| e.to_string())?.data)
            .map_err(|e| e.to_string())?
            .values()
            .unwrap()
            .into_iter()
            .collect();
        let start = Instant::now();
        let t = dixon_table(ctx.cat.group(name).unwrap(), DixonOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let oracle: BTreeSet<u64> = cod_from_table(&t).unwrap().values().unwrap().into_iter().collect();
        ensure!(record == golden, "{name}: record gives {record:?}");
        ensure!(oracle == golden, "{name}: oracle gives {oracle:?}");
        let cli = cli_cod(name)?;
        ensure!(cli == golden, "{name}: codeg cod gives {cli:?}");
        if name == "U4_2" {
            ensure!(elapsed < Duration::from_secs(60), "oracle on U4(2) took {elapsed:?}");
            oracle_secs = elapsed.as_secs_f64();
        }
    }
    Ok(format!("U3(3) 8 and U4(2) 13 codegrees via oracle, record and CLI; U4(2) oracle {oracle_secs:.2}s"))
}

fn oracle_matches_data(ctx: &Ctx) -> Verdict {
    for name in K3 {
        let rec = ctx.cat.record(name).map_err(|e| e.to_string())?;
        let t =
            dixon_table(ctx.cat.group(name).unwrap(), DixonOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let mut degrees = rec.data.degrees.clone();
        degrees.sort_unstable();
        ensure!(t.degrees() == degrees, "{name}: degrees differ");
        ensure!(cod_from_table(&t).unwrap().same_elements(&rec.cod().unwrap()), "{name}: codegrees differ");
    }
    Ok(format!("{} groups: degree multisets and codegree sets agree", K3.len()))
}

fn u3_3_cases(ctx: &Ctx) -> Verdict {
    let open: Vec<&str> = ctx
        .report
        .certificates
        .iter()
        .filter(|c| c.target == "U3_3" && !c.verdict.is_closed())
        .map(|c| c.id.as_str())
        .collect();
    ensure!(open.is_empty(), "open: {open:?}");

    let c = ctx.cert("U3_3/psl2-even")?;
    let Evidence::Grid(g) = &c.evidence else { return Err("psl2-even is not a grid".into()) };
    let qs: Vec<i128> = g.grid().iter().map(|p| p["q"]).collect();
    ensure!(qs == [4, 8, 16, 32, 64], "even-characteristic grid {qs:?}");
    ensure!(g.variants.len() == 2, "variants {:?}", g.variants);
    let all_witness = g
        .points
        .iter()
        .all(|p| p.outcomes.len() == 2 && p.outcomes.iter().all(|o| matches!(o.outcome, Outcome::Witness { .. })));
    ensure!(all_witness, "a PSL(2,q) point is not closed under both variants");

    let mut seen = Vec::new();
    for (id, group, cited) in [
        ("U3_3/psl3-4", "L3_4", "2^6.5"),
        ("U3_3/seven-degrees", "M11", "3^2.5.11"),
        ("U3_3/seven-degrees", "J1", "3.5.11.19"),
    ] {
        let Evidence::Fixed { groups } = &ctx.cert(id)?.evidence else { return Err(format!("{id} is not fixed")) };
        let w = groups.iter().find(|g| g.group == group).and_then(|g| g.witness.clone());
        let w = w.ok_or_else(|| format!("{group}: no witness"))?;
        ensure!(w.to_string() == cited, "{group}: witness {w}, cited {cited}");
        seen.push(format!("{group} {}", w.decimal()));
    }
    Ok(format!("all U3(3) cases closed; PSL(2,2^f) grid {{4,8,16,32,64}} under both variants; {}", seen.join(", ")))
}

fn alternating(_: &Ctx) -> Verdict {
    let cert = alternating_certificate().map_err(|e| e.to_string())?;
    ensure!(cert.pairs.len() == 78, "{} distinctness certificates", cert.pairs.len());
    let expected = partition_formulas().len() * (HOOK_CHECK.1 - HOOK_CHECK.0 + 1) as usize;
    ensure!(cert.hook_checks == expected, "{} hook checks, expected {expected}", cert.hook_checks);
    ensure!(HOOK_CHECK == (14, 60), "hook range {HOOK_CHECK:?}");
    let f = partition_formulas().into_iter().find(|f| f.tail == [3, 2]).ok_or("no (n-5,3,2)")?;
    let v = f.eval(14).map_err(|e| e.to_string())?;
    let hook = hook_degree(&[9, 3, 2]).map_err(|e| e.to_string())?;
    ensure!(v == 5733 && hook == 5733, "(n-5,3,2) at 14: formula {v}, hook {hook}");
    Ok(format!("78 distinctness certificates, {expected} hook checks on n in [14,60], (9,3,2) -> 5733"))
}

fn u4_2_lie_type(ctx: &Ctx) -> Verdict {
    let open: Vec<&str> = ctx
        .report
        .certificates
        .iter()
        .filter(|c| c.target == "U4_2" && !c.verdict.is_closed())
        .map(|c| c.id.as_str())
        .collect();
    ensure!(open.is_empty(), "open: {open:?}");

    let Evidence::Grid(g) = &ctx.cert("U4_2/suzuki")?.evidence else { return Err("suzuki".into()) };
    let qs: Vec<i128> = g.grid().iter().map(|p| p["q2"]).collect();
    ensure!(qs == [8], "Suzuki grid {qs:?}");

    let Evidence::Grid(g) = &ctx.cert("U4_2/bc-n")?.evidence else { return Err("bc-n".into()) };
    let pts: Vec<(i128, i128)> = g.grid().iter().map(|p| (p["n"], p["q"])).collect();
    ensure!(pts == [(3, 2)], "BC grid {pts:?}");
    let w = match &g.points[0].outcomes[0].outcome {
        Outcome::Witness { value, .. } => value.clone(),
        o => return Err(format!("BC (3,2): {o:?}")),
    };
    ensure!(w == n(2835), "BC (3,2) witness {w}");

    let Evidence::Grid(g) = &ctx.cert("U4_2/bc2")?.evidence else { return Err("bc2".into()) };
    let at3 = g.points.iter().find(|p| p.point["q"] == 3).ok_or("B2 grid has no q = 3")?;
    ensure!(
        at3.outcomes.iter().all(|o| o.outcome == Outcome::Identified { group: "U4_2".into() }),
        "B2(3) not identified"
    );
    let fp = g.family.eval(&at3.point).map_err(|e| e.to_string())?;
    ensure!(fp.cods.iter().any(|c| c.value == n(1080)), "B2(3) codegrees lack 1080");
    ensure!(ctx.report.targets.iter().any(|t| t.name == "U4_2" && t.contains(&n(1080))), "1080 not in cod(U4(2))");
    Ok("all U4(2) branches closed; Suzuki grid {8}; BC grid {(3,2)} witness 2835; B2(3) = U4(2) via 1080".into())
}

fn linear_and_cover(ctx: &Ctx) -> Verdict {
    let gl52 = gl_order(5, 2).map_err(|e| e.to_string())?;
    ensure!(gl52.value() == Some(9_999_360), "|GL(5,2)| = {gl52}");
    let not_divides = |id: &str, divisor: u64| -> Result<(), String> {
        let found = ctx.checks(id)?.iter().any(|c| {
            matches!(c, Check::NotDivides { divisor: d, dividend, holds: true, .. }
                if *d == n(divisor) && dividend.value() == Some(9_999_360))
        });
        ensure!(found, "{id}: no certificate that {divisor} does not divide |GL(5,2)|");
        Ok(())
    };
    not_divides("U3_3/general-linear", 6048)?;
    not_divides("U4_2/general-linear", 25920)?;

    let checks = ctx.checks("U4_2/general-linear")?;
    for order in [20_158_709_760u64, 24_261_120] {
        let ok = checks
            .iter()
            .any(|c| matches!(c, Check::SumOfSquares { data, holds: true } if data.order.value() == Some(order)));
        ensure!(ok, "no sum of squares check for order {order}");
    }
    let mut witnesses = Vec::new();
    for id in ["U3_3/general-linear", "U4_2/general-linear"] {
        for c in ctx.checks(id)? {
            match c {
                Check::Divides { holds: true, .. } => {}
                Check::DegreeNotContained { witness, holds: true, .. } => witnesses.push(*witness),
                Check::DegreeNotContained { .. } | Check::Divides { .. } => return Err(format!("{id}: {c:?} fails")),
                _ => {}
            }
        }
        let divides = ctx.checks(id)?.iter().filter(|c| matches!(c, Check::Divides { .. })).count();
        let nc = ctx.checks(id)?.iter().filter(|c| matches!(c, Check::DegreeNotContained { .. })).count();
        ensure!(divides == nc, "{id}: {divides} divisibilities but {nc} non-containment witnesses");
    }
    let cover = ctx.checks("U4_2/central-extension")?.iter().find_map(|c| match c {
        Check::CodegreeOutside { witness, holds: true, .. } => Some(witness.clone()),
        _ => None,
    });
    let cover = cover.ok_or("no codegree of 2.U4(2) outside cod(U4(2))")?;
    Ok(format!(
        "|GL(5,2)| = 9999360, 6048 and 25920 do not divide it; cd witnesses {witnesses:?}; 2.U4(2) codegree {} outside",
        cover.decimal()
    ))
}

fn property_suites(ctx: &Ctx) -> Verdict {
    for name in ["S3", "S4", "A4", "D8", "Q8", "SL2_3", "C6"] {
        let g = ctx.cat.group(name).map_err(|e| e.to_string())?;
        let r = normal_subgroup_suite(g, DixonOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.passed(), "{name}: {:?}", r.violations);
    }
    let mut simple = 0;
    for rec in ctx.cat.records.values().filter(|r| r.data.simple && !r.data.partial) {
        let cod = rec.cod().map_err(|e| e.to_string())?;
        ensure!(cod.len() == rec.distinct_degrees().len(), "{}: |cod| != |cd|", rec.name());
        for &d in rec.distinct_degrees().iter().filter(|&&d| d > 1) {
            let c = rec.order().div_exact(&n(d)).map_err(|e| format!("{}: {e}", rec.name()))?;
            ensure!(c.mul(&n(d)) == *rec.order() && cod.contains(&c), "{}: cod * {d} != |G|", rec.name());
        }
        simple += 1;
    }
    for name in K3 {
        let rec = ctx.cat.record(name).unwrap();
        let max = rec.cod().unwrap().max().clone();
        ensure!(max.pow(2) >= *rec.order(), "{name}: max cod below sqrt |G|");
    }
    Ok(format!("normal subgroup properties on 7 groups; codegree identities on {simple} simple records; sqrt bound on 8 groups"))
}

fn end_to_end(_: &Ctx) -> Verdict {
    let dir = std::env::temp_dir().join(format!("codeg-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("report.json");
    let start = Instant::now();
    let run = |args: &[&std::ffi::OsStr]| {
        Command::new(env!("CARGO_BIN_EXE_codeg"))
            .arg("--data")
            .arg(data_dir())
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let v = run(&["verify".as_ref(), "--target".as_ref(), "both".as_ref(), "-o".as_ref(), path.as_os_str()])?;
    let r = run(&["recheck".as_ref(), path.as_os_str()])?;
    let elapsed = start.elapsed();
    let _ = std::fs::remove_dir_all(&dir);
    ensure!(v.status.code() == Some(0), "verify exited {:?}: {}", v.status.code(), String::from_utf8_lossy(&v.stderr));
    ensure!(r.status.code() == Some(0), "recheck exited {:?}: {}", r.status.code(), String::from_utf8_lossy(&r.stdout));
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!("verify and recheck exit 0 in {:.1}s", elapsed.as_secs_f64()))
}

fn main() {
    let cat = Catalog::load(&data_dir()).expect("data directory loads");
    let opts = VerifyOptions { oracle: false, ..VerifyOptions::default() };
    let report = verify_all(&cat, &opts).expect("verification runs");
    let ctx = Ctx { cat, report };

    let criteria: [Criterion; 8] = [
        ("golden codegree sets", golden_sets),
        ("oracle agrees with data", oracle_matches_data),
        ("U3(3) cases", u3_3_cases),
        ("alternating degree formulas", alternating),
        ("U4(2) Lie-type branches", u4_2_lie_type),
        ("linear groups and central extension", linear_and_cover),
        ("property suites", property_suites),
        ("verify and recheck", end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(|| f(&ctx))).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
