use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use codegree_core::arith::{Env, FactoredInt};
use codegree_core::catalog::Catalog;
use codegree_core::verifier::{
    case_ids, recheck_report, verify_all, Certificate, Check, Evidence, Outcome, ProofReport, Verdict, VerifyError,
    VerifyOptions, FORMAT_VERSION,
};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run(dir: &Path, targets: &[&str]) -> ProofReport {
    let cat = Catalog::load(dir).unwrap();
    let opts = VerifyOptions {
        targets: targets.iter().map(|s| s.to_string()).collect(),
        oracle: false,
        ..VerifyOptions::default()
    };
    verify_all(&cat, &opts).unwrap()
}

fn report() -> &'static ProofReport {
    static R: OnceLock<ProofReport> = OnceLock::new();
    R.get_or_init(|| run(&data_dir(), &["U3_3", "U4_2"]))
}

fn cert(id: &str) -> &'static Certificate {
    report().certificate(id).unwrap_or_else(|| panic!("no certificate {id}"))
}

fn n(v: u64) -> FactoredInt {
    FactoredInt::factorize(v).unwrap()
}

fn grid_points(c: &Certificate) -> Vec<Env> {
    match &c.evidence {
        Evidence::Grid(g) => g.grid(),
        e => panic!("{} is not a grid case: {e:?}", c.id),
    }
}

fn qs(c: &Certificate) -> Vec<i128> {
    grid_points(c).iter().map(|p| *p.values().last().unwrap()).collect()
}

#[test]
fn every_case_closes() {
    let r = report();
    let open: Vec<_> = r.open().map(|c| (&c.id, &c.verdict)).collect();
    assert!(open.is_empty(), "{open:?}");
    assert!(r.closed);
    let ids: Vec<&str> = r.certificates.iter().map(|c| c.id.as_str()).collect();
    let expected: Vec<String> = case_ids("U3_3").into_iter().chain(case_ids("U4_2")).collect();
    assert_eq!(ids, expected);
}

#[test]
fn even_characteristic_rank_one_grid() {
    let c = cert("U3_3/psl2-even");
    assert_eq!(qs(c), vec![4, 8, 16, 32, 64]);
    let Evidence::Grid(g) = &c.evidence else { unreachable!() };
    assert_eq!(g.variants.len(), 2);
    for p in &g.points {
        assert_eq!(p.outcomes.len(), 2);
        assert!(p.outcomes.iter().all(|o| matches!(o.outcome, Outcome::Witness { .. })));
    }
    // q = 4: 12 is outside cod(U3(3))
    assert!(matches!(&g.points[0].outcomes[0].outcome, Outcome::Witness { value, .. } if *value == n(12)));
}

#[test]
fn fixed_witnesses_match_the_cited_values() {
    let Evidence::Fixed { groups } = &cert("U3_3/psl3-4").evidence else { panic!() };
    assert_eq!(groups[0].witness, Some(n(320)));
    assert_eq!(groups[0].cd_count, 6);
    let Evidence::Fixed { groups } = &cert("U3_3/seven-degrees").evidence else { panic!() };
    let w: BTreeMap<&str, Option<u64>> =
        groups.iter().map(|g| (g.group.as_str(), g.witness.as_ref().and_then(|x| x.value()))).collect();
    assert_eq!(w["M11"], Some(495));
    assert_eq!(w["J1"], Some(3135));
    assert!(groups.iter().all(|g| g.cd_count == 7));
}

#[test]
fn lie_type_grids_for_u4_2() {
    assert_eq!(qs(cert("U4_2/suzuki")), vec![8]);
    assert_eq!(qs(cert("U4_2/g2")), vec![3]);
    assert!(grid_points(cert("U4_2/ree")).is_empty());
    for fam in ["f4", "e6", "twoe6", "e7", "e8", "twof4", "threed4", "d-n", "twod-n"] {
        assert!(grid_points(cert(&format!("U4_2/{fam}"))).is_empty(), "{fam}");
    }

    let bcn = cert("U4_2/bc-n");
    let Evidence::Grid(g) = &bcn.evidence else { unreachable!() };
    assert_eq!(g.grid(), vec![Env::from([("n".into(), 3), ("q".into(), 2)])]);
    assert!(matches!(&g.points[0].outcomes[0].outcome, Outcome::Witness { value, .. } if *value == n(2835)));

    let Evidence::Grid(g) = &cert("U4_2/bc2").evidence else { panic!() };
    let at3 = g.points.iter().find(|p| p.point["q"] == 3).unwrap();
    assert_eq!(at3.outcomes[0].outcome, Outcome::Identified { group: "U4_2".into() });
    let fp = g.family.eval(&at3.point).unwrap();
    assert_eq!(fp.cods[0].value, n(1080));
    assert!(report().targets[1].contains(&n(1080)));
}

#[test]
fn central_extension_and_linear_groups() {
    let Evidence::Checks { checks } = &cert("U4_2/central-extension").evidence else { panic!() };
    assert!(checks.iter().any(|c| matches!(c, Check::CodegreeOutside { witness, .. } if *witness == n(810) || *witness == n(1440) || *witness == n(12960))));
    let Evidence::Checks { checks } = &cert("U3_3/general-linear").evidence else { panic!() };
    assert!(checks
        .iter()
        .any(|c| matches!(c, Check::NotDivides { dividend, .. } if dividend.value() == Some(9_999_360))));
    let Evidence::Checks { checks } = &cert("U4_2/general-linear").evidence else { panic!() };
    let witnesses: Vec<u64> = checks
        .iter()
        .filter_map(|c| match c {
            Check::DegreeNotContained { witness, .. } => Some(*witness),
            _ => None,
        })
        .collect();
    assert_eq!(witnesses.len(), 2);
    assert!(checks.iter().all(Check::holds));
}

#[test]
fn report_survives_json_and_recheck() {
    let r = report();
    let json = serde_json::to_string(r).unwrap();
    let back: ProofReport = serde_json::from_str(&json).unwrap();
    assert_eq!(&back, r);
    recheck_report(&back).unwrap();
}

#[test]
fn recheck_rejects_tampering() {
    let mut r = report().clone();
    r.format_version = FORMAT_VERSION + 1;
    assert!(matches!(recheck_report(&r), Err(VerifyError::Format(_))));

    let mut r = report().clone();
    let c = r.certificates.iter_mut().find(|c| c.id == "U4_2/bc-n").unwrap();
    let Evidence::Grid(g) = &mut c.evidence else { panic!() };
    g.points[0].outcomes[0].outcome = Outcome::Witness { label: "steinberg".into(), value: n(1080) };
    assert!(recheck_report(&r).is_err());

    let mut r = report().clone();
    let c = r.certificates.iter_mut().find(|c| c.id == "U3_3/psl2-even").unwrap();
    let Evidence::Grid(g) = &mut c.evidence else { panic!() };
    g.points.pop();
    assert!(recheck_report(&r).is_err());

    let mut r = report().clone();
    r.certificates[0].verdict = Verdict::Open { reason: "x".into() };
    assert!(recheck_report(&r).is_err());
}

#[test]
fn deterministic_output() {
    let a = serde_json::to_string(&run(&data_dir(), &["U3_3"])).unwrap();
    let b = serde_json::to_string(&run(&data_dir(), &["U3_3"])).unwrap();
    assert_eq!(a, b);
}

#[test]
fn target_filter() {
    let r = run(&data_dir(), &["U3_3"]);
    assert!(r.certificates.iter().all(|c| c.target == "U3_3"));
    assert_eq!(r.certificates.len(), case_ids("U3_3").len());
}

#[test]
fn missing_family_leaves_the_case_open() {
    let tmp = std::env::temp_dir().join(format!("codeg-missing-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&tmp);
    for sub in ["records", "families", "groups"] {
        std::fs::create_dir_all(tmp.join(sub)).unwrap();
        for e in std::fs::read_dir(data_dir().join(sub)).unwrap() {
            let e = e.unwrap();
            if e.file_name() != "PSL2_even.toml" {
                std::fs::copy(e.path(), tmp.join(sub).join(e.file_name())).unwrap();
            }
        }
    }
    let r = run(&tmp, &["U3_3"]);
    let c = r.certificate("U3_3/psl2-even").unwrap();
    assert!(matches!(c.evidence, Evidence::Missing { .. }));
    assert!(!c.verdict.is_closed());
    assert!(!r.closed);
    recheck_report(&r).unwrap();
    std::fs::remove_dir_all(&tmp).unwrap();
}
