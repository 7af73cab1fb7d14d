use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use codegree_core::arith::FactoredInt;
use codegree_core::catalog::Catalog;
use codegree_core::codegree::{cod_from_table, cod_simple, normal_subgroup_suite};
use codegree_core::dixon::{dixon_table, verify_table, DixonOptions};

fn catalog() -> Catalog {
    Catalog::load(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")).unwrap()
}

const K3: [&str; 8] = ["A5", "A6", "L2_7", "L2_8", "L2_17", "L3_3", "U3_3", "U4_2"];

#[test]
fn k3_records_are_tagged() {
    let cat = catalog();
    let tagged: BTreeSet<&str> = cat.records_tagged("K3").map(|r| r.name()).collect();
    assert_eq!(tagged, K3.into_iter().collect());
}

#[test]
fn oracle_agrees_with_every_k3_record() {
    let cat = catalog();
    for name in K3 {
        let rec = cat.record(name).unwrap();
        let t = dixon_table(cat.group(name).unwrap(), DixonOptions::default()).unwrap();
        assert!(verify_table(&t).passed());
        let mut degrees = rec.data.degrees.clone();
        degrees.sort_unstable();
        assert_eq!(t.degrees(), degrees, "{name}: degree multiset");
        assert_eq!(Some(t.class_count()), rec.class_count, "{name}: classes");
        assert!(cod_from_table(&t).unwrap().same_elements(&rec.cod().unwrap()), "{name}: codegrees");
    }
}

#[test]
fn golden_codegree_sets() {
    let cat = catalog();
    let u33: BTreeSet<u64> = [1, 1008, 864, 432, 288, 224, 216, 189].into();
    let u42: BTreeSet<u64> = [1, 5184, 4320, 2592, 1728, 1296, 1080, 864, 648, 576, 432, 405, 320].into();
    for (name, golden) in [("U3_3", u33), ("U4_2", u42)] {
        let from_record: BTreeSet<u64> =
            cod_simple(&cat.record(name).unwrap().data).unwrap().values().unwrap().into_iter().collect();
        let t = dixon_table(cat.group(name).unwrap(), DixonOptions::default()).unwrap();
        let from_oracle: BTreeSet<u64> = cod_from_table(&t).unwrap().values().unwrap().into_iter().collect();
        assert_eq!(from_record, golden, "{name} record");
        assert_eq!(from_oracle, golden, "{name} oracle");
    }
}

#[test]
fn oracle_on_u4_2_is_fast() {
    let cat = catalog();
    let g = cat.group("U4_2").unwrap();
    assert_eq!(g.degree, 27);
    let start = Instant::now();
    let t = dixon_table(g, DixonOptions::default()).unwrap();
    assert_eq!(t.order_value(), 25920);
    assert_eq!(t.class_count(), 20);
    assert!(start.elapsed() < Duration::from_secs(60));
}

#[test]
fn cover_record_matches_the_oracle() {
    // 34 classes, above the default cap
    let cat = catalog();
    let t = dixon_table(cat.group("2U4_2").unwrap(), DixonOptions { seed: 0, class_cap: 40 }).unwrap();
    let rec = cat.record("2U4_2").unwrap();
    let mut oracle: Vec<(u64, u64)> =
        (0..t.rows.len()).map(|r| (t.rows[r].degree, t.kernel_order(r).value().unwrap())).collect();
    let mut record: Vec<(u64, u64)> = rec.data.degrees.iter().copied().zip(rec.data.kernels.clone().unwrap()).collect();
    oracle.sort_unstable();
    record.sort_unstable();
    assert_eq!(oracle, record);
    assert!(cod_from_table(&t).unwrap().same_elements(&rec.cod().unwrap()));
}

#[test]
fn square_root_bound_on_k3_groups() {
    let cat = catalog();
    for name in K3 {
        let rec = cat.record(name).unwrap();
        let max = rec.cod().unwrap().max().clone();
        assert!(max.pow(2) >= *rec.order(), "{name}: max cod {max} below sqrt|G|");
    }
}

#[test]
fn simple_records_satisfy_the_codegree_identities() {
    let cat = catalog();
    let mut checked = 0;
    for rec in cat.records.values().filter(|r| r.data.simple && !r.data.partial) {
        let cod = rec.cod().unwrap();
        assert_eq!(cod.len(), rec.distinct_degrees().len(), "{}: |cod| = |cd|", rec.name());
        for &d in rec.distinct_degrees().iter().filter(|&&d| d > 1) {
            let f = FactoredInt::factorize(d).unwrap();
            let c = rec.order().div_exact(&f).unwrap();
            assert_eq!(c.mul(&f), *rec.order());
            assert!(cod.contains(&c));
        }
        checked += 1;
    }
    assert!(checked >= 20, "{checked}");
}

#[test]
fn normal_subgroup_properties_on_small_groups() {
    let cat = catalog();
    for name in ["S3", "S4", "A4", "D8", "Q8", "SL2_3", "C6", "A5", "C2", "C3", "trivial"] {
        let r = normal_subgroup_suite(cat.group(name).unwrap(), DixonOptions::default()).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.violations);
        assert!(r.quotient_checks >= 1, "{name}");
    }
}

#[test]
fn seeds_do_not_change_the_table() {
    let cat = catalog();
    let g = cat.group("L3_3").unwrap();
    let a = dixon_table(g, DixonOptions { seed: 1, ..DixonOptions::default() }).unwrap();
    let b = dixon_table(g, DixonOptions { seed: 99, ..DixonOptions::default() }).unwrap();
    assert_eq!(a.degrees(), b.degrees());
    assert!(cod_from_table(&a).unwrap().same_elements(&cod_from_table(&b).unwrap()));
}
