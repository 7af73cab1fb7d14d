use std::collections::BTreeSet;
use std::path::PathBuf;

use codegree_core::arith::Env;
use codegree_core::catalog::{Catalog, CatalogError, FamilyPoint};
use codegree_core::codegree::cod_from_table;
use codegree_core::dixon::{dixon_table, DixonOptions};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn catalog() -> Catalog {
    Catalog::load(&data_dir()).expect("shipped data loads")
}

fn pt(pairs: &[(&str, i128)]) -> Env {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn cod_values(p: &FamilyPoint, variant: Option<&str>) -> BTreeSet<u64> {
    let mut s: BTreeSet<u64> = p.cods_for(variant).map(|c| c.value.value().unwrap()).collect();
    s.insert(1);
    s
}

fn oracle_cod(cat: &Catalog, group: &str) -> BTreeSet<u64> {
    let t = dixon_table(cat.group(group).unwrap(), DixonOptions::default()).unwrap();
    cod_from_table(&t).unwrap().values().unwrap().into_iter().collect()
}

#[test]
fn shipped_data_loads() {
    let cat = catalog();
    assert!(cat.records.len() >= 47);
    assert_eq!(cat.families.len(), 20);
    assert!(cat.groups.contains_key("U4_2"));
    let u42 = cat.record("U4_2").unwrap();
    assert_eq!(u42.data.sum_of_squares().unwrap(), 25920);
    assert!(matches!(cat.record("nope"), Err(CatalogError::Unknown { .. })));
}

#[test]
fn complete_families_match_the_oracle() {
    let cat = catalog();
    let even = cat.family("PSL2_even").unwrap();
    let odd = cat.family("PSL2_odd").unwrap();
    for (fam, q, group) in [(even, 4, "A5"), (even, 8, "L2_8"), (odd, 7, "L2_7"), (odd, 9, "A6"), (odd, 17, "L2_17")] {
        let p = fam.eval(&pt(&[("q", q)])).unwrap();
        let variant = if fam.name == "PSL2_even" { Some("validated") } else { None };
        assert_eq!(cod_values(&p, variant), oracle_cod(&cat, group), "{} at q = {q}", fam.name);
    }
}

#[test]
fn printed_even_variant_differs_at_four() {
    let cat = catalog();
    let p = cat.family("PSL2_even").unwrap().eval(&pt(&[("q", 4)])).unwrap();
    assert_eq!(cod_values(&p, Some("as_printed")), BTreeSet::from([1, 12, 20, 17]));
    assert_eq!(cod_values(&p, Some("validated")), BTreeSet::from([1, 12, 20, 15]));
}

#[test]
fn odd_family_at_seven() {
    let cat = catalog();
    let p = cat.family("PSL2_odd").unwrap().eval(&pt(&[("q", 7)])).unwrap();
    assert_eq!(cod_values(&p, None), BTreeSet::from([1, 21, 28, 24, 56]));
}

#[test]
fn suzuki_and_exceptional_values() {
    let cat = catalog();
    let sz = cat.family("Suzuki").unwrap().eval(&pt(&[("q2", 8)])).unwrap();
    assert_eq!(sz.order.value(), Some(29120));
    assert_eq!(cod_values(&sz, None), BTreeSet::from([1, 455, 448, 832, 320, 2080]));
    let degrees: BTreeSet<u64> = sz.cods.iter().map(|c| c.degree.as_ref().unwrap().value().unwrap()).collect();
    assert_eq!(degrees, BTreeSet::from([64, 65, 35, 91, 14]));

    let g2 = cat.family("G2").unwrap().eval(&pt(&[("q", 3)])).unwrap();
    assert_eq!(g2.cods[0].value.value(), Some(40824));
    assert_eq!(g2.cods[0].degree.as_ref().unwrap().value(), Some(104));

    let ree = cat.family("Ree").unwrap().eval(&pt(&[("q", 27)])).unwrap();
    assert_eq!(ree.cods[0].value.value(), Some(27u64.pow(3) * 28));
}

#[test]
fn identification_points() {
    let cat = catalog();
    let u = cat.family("PSU_n").unwrap();
    let p = u.eval(&pt(&[("n", 3), ("q", 2)])).unwrap();
    assert_eq!(p.order.value(), Some(25920));
    assert_eq!(u.identification(&pt(&[("n", 3), ("q", 2)])).unwrap().group, "U4_2");
    let p = u.eval(&pt(&[("n", 2), ("q", 3)])).unwrap();
    assert_eq!(p.order.value(), Some(6048));
    assert_eq!(p.cods[0].value.value(), Some(1008));
    let bc2 = cat.family("BC2").unwrap();
    assert_eq!(bc2.eval(&pt(&[("q", 3)])).unwrap().order.value(), Some(25920));
    assert!(bc2.eval(&pt(&[("q", 2)])).is_err());
}

#[test]
fn orders_agree_with_records() {
    let cat = catalog();
    let cases = [
        ("PSL_n", pt(&[("n", 2), ("q", 3)]), "L3_3"),
        ("PSL_n", pt(&[("n", 2), ("q", 4)]), "L3_4"),
        ("PSL2_odd", pt(&[("q", 17)]), "L2_17"),
        ("PSU_n", pt(&[("n", 2), ("q", 3)]), "U3_3"),
        ("BC2", pt(&[("q", 3)]), "U4_2"),
    ];
    for (fam, point, rec) in cases {
        let order = cat.family(fam).unwrap().eval_order(&point).unwrap();
        assert_eq!(&order, cat.record(rec).unwrap().order(), "{fam} vs {rec}");
    }
}

#[test]
fn witness_degrees_are_degrees_of_the_records() {
    // where a record exists, the family's witness degree must be in its degree list
    let cat = catalog();
    let cases = [
        ("PSL_n", pt(&[("n", 2), ("q", 3)]), "L3_3"),
        ("PSL_n", pt(&[("n", 2), ("q", 4)]), "L3_4"),
        ("PSU_n", pt(&[("n", 2), ("q", 3)]), "U3_3"),
        ("BC2", pt(&[("q", 3)]), "U4_2"),
    ];
    for (fam, point, rec) in cases {
        let p = cat.family(fam).unwrap().eval(&point).unwrap();
        let deg = p.cods[0].degree.as_ref().unwrap().value().unwrap();
        assert!(cat.record(rec).unwrap().data.degrees.contains(&deg), "{fam}: {deg} not a degree of {rec}");
    }
}

#[test]
fn every_family_evaluates_on_small_points() {
    let cat = catalog();
    for fam in cat.families.values() {
        let mut base = Env::new();
        if let Some(o) = &fam.outer {
            base.insert(o.var.clone(), o.min as i128);
        }
        let qs = fam.grid_values(&base, 0, 64);
        assert!(!qs.is_empty(), "{}", fam.name);
        for q in qs.into_iter().take(3) {
            let mut point = base.clone();
            point.insert(fam.grid.var.clone(), q);
            let p = fam.eval(&point).unwrap_or_else(|e| panic!("{e}"));
            assert!(p.order.value().is_none_or(|v| v > 1), "{}", fam.name);
        }
    }
}
