use super::*;
use crate::dcv::{candidate_count, search_dcv, CandidateShape, SlotKind, DEFAULT_CANDIDATE_CAP};
use crate::doubleore::{Exponent, ExtElement};
use crate::presring::RingElement;
use crate::report::ToReport;
use crate::F3;

fn data_q(f: &Fixture) -> &FixtureData<Q> {
    match &f.instance {
        Instance::Q(d) => d,
        other => panic!("expected a rational fixture, got {}", other.field()),
    }
}

fn data_f5(f: &Fixture) -> &FixtureData<F5> {
    match &f.instance {
        Instance::F5(d) => d,
        other => panic!("expected an F5 fixture, got {}", other.field()),
    }
}

#[test]
fn names_are_unique_and_resolvable() {
    let names = fixture_names();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), names.len());
    for required in [
        "subcase-4.1.1",
        "D",
        "E",
        "H",
        "N",
        "table1-row-1",
        "table2-row-1",
        "example-degree2-const",
        "dcv-HtoH-lambda",
        "dcv-DtoE",
        "nakayama-N",
    ] {
        assert!(names.contains(&required), "{required}");
    }
    assert_eq!(get_fixture("table1-row-9").unwrap_err(), CatalogError::UnknownFixture("table1-row-9".into()));
}

#[test]
fn h_fixture_is_trimmed() {
    let f = get_fixture("H").unwrap();
    let alg = &data_q(&f).algebra;
    assert!(alg.is_trimmed());
    assert_eq!(alg.p12(), &Q::from_i64(-1));
    // y1 x2 = x1 y2 + x2 y2 with f = 1
    let r = alg.ring();
    let prod = alg.mul(&alg.y1(), &ExtElement::from_ring(r.gen(1)));
    assert_eq!(prod, ExtElement::monomial(0, 1, &r.gen(0) + &r.gen(1)));
}

#[test]
fn d_to_e_fixture_values() {
    let f = get_fixture("dcv-DtoE").unwrap();
    let d = data_f5(&f);
    let c = &d.dcv.as_ref().unwrap().matrix;
    let r = d.algebra.ring();
    assert_eq!(c.q1, ExtElement::from_ring(r.gen(0)));
    assert_eq!(c.q2, ExtElement::from_ring(r.gen(1)));
    assert_eq!(c.source.p12, F5::new(-1));
    assert_eq!(d.dcv.as_ref().unwrap().scope, Scope::Scalars);
}

#[test]
fn table1_row1_values() {
    let f = get_fixture("table1-row-1").unwrap();
    let c = &data_f5(&f).dcv.as_ref().unwrap().matrix;
    assert_eq!(c.q1, ExtElement::scalar(F5::new(3)));
    assert_eq!(c.q2, ExtElement::scalar(F5::new(2)));
    // c d c^-1 d^-1 = 1 for commuting units
    assert_eq!(c.source.p12, F5::new(1));
}

#[test]
fn parameter_constraints() {
    assert!(matches!(algebra_n::<Q>(1, 1, NReading::all()[0]), Err(CatalogError::Parameter(_))));
    assert!(matches!(algebra_n::<Q>(2, -2, NReading::all()[0]), Err(CatalogError::Parameter(_))));
    assert!(matches!(algebra_d::<Q>(2), Err(CatalogError::Parameter(_))));
    assert!(matches!(algebra_e::<Q>(1), Err(CatalogError::Parameter(_))));
    assert!(matches!(algebra_e::<F5>(1), Err(CatalogError::Parameter(_))));
    assert!(algebra_e::<F13>(5).is_ok());
    assert!(matches!(algebra_h::<Q>(0), Err(CatalogError::Parameter(_))));
    assert!(matches!(algebra_subcase_411::<Q>(0, 1, 1, 1), Err(CatalogError::Parameter(_))));
}

#[test]
fn n_reading_pin_is_first_passer() {
    let pin = pin_n_reading(1, 2, 2).unwrap();
    assert_eq!(pin.passers.first(), Some(&pin.chosen));
    assert!(pin.passers.len() < NReading::all().len());
    let all = NReading::all();
    let positions: Vec<usize> = pin.passers.iter().map(|p| all.iter().position(|r| r == p).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn corrupted_h_is_one_mismatch() {
    let mut list: Vec<Fixture> = ["H", "subcase-4.1.1", "dcv-HtoH-lambda"].iter().map(|n| get_fixture(n).unwrap()).collect();
    assert!(verify_fixtures(&list, 2).passed());
    list.push(corrupted_h().unwrap());
    let rep = verify_fixtures(&list, 2);
    assert_eq!(rep.mismatches(), 1);
    let bad = rep.fixtures.iter().find(|f| !f.matched()).unwrap();
    let failed: Vec<Check> = bad.outcomes.iter().filter(|o| !o.matched()).map(|o| o.check).collect();
    assert_eq!(failed, vec![Check::Compatibility, Check::Associativity]);
}

#[test]
fn degree_zero_is_vacuous() {
    let list: Vec<Fixture> =
        ["H", "N:literal-ring", "table1-row-4:anticommuting", "dcv-DtoE"].iter().map(|n| get_fixture(n).unwrap()).collect();
    let rep = verify_fixtures(&list, 0);
    assert!(rep.passed(), "{:?}", rep.fixtures.iter().filter(|f| !f.matched()).map(|f| &f.name).collect::<Vec<_>>());
    let anti = &rep.fixtures[2];
    assert!(anti.outcomes.iter().all(|o| o.actual || o.check == Check::IsoDegree));
}

#[test]
fn reports_are_deterministic() {
    let list: Vec<Fixture> = ["table2-row-1", "nakayama-N", "E"].iter().map(|n| get_fixture(n).unwrap()).collect();
    let a = crate::report::Value::from(verify_fixtures(&list, 2).to_report()).render_json();
    let b = crate::report::Value::from(verify_fixtures(&list, 2).to_report()).render_json();
    assert_eq!(a, b);
}

#[test]
fn expect_semantics() {
    assert!(Expect::Pass.verdict_at(0));
    assert!(!Expect::Fail.verdict_at(5));
    assert!(Expect::FailFrom(1).verdict_at(0));
    assert!(!Expect::FailFrom(1).verdict_at(1));
}

fn row2_shape() -> CandidateShape {
    CandidateShape {
        q1: vec![(Exponent::new(0, 0), SlotKind::General), (Exponent::new(1, 0), SlotKind::Unit)],
        q2: vec![(Exponent::new(0, 0), SlotKind::General)],
    }
}

#[test]
fn table1_row2_template_over_f3() {
    let target = target_anticommuting::<F3>().unwrap();
    let pool = F3::elements().unwrap();
    let row = TableRow::First(2);
    let out = search_dcv(&table_template(&target, row), &target, &row2_shape(), &pool, 2, DEFAULT_CANDIDATE_CAP).unwrap();
    // two units for a1, five choices each for a0 and c
    assert_eq!(candidate_count(&target, &row2_shape(), &pool), 50);
    assert_eq!(out.hits.len(), 50);
    for h in &out.hits {
        assert!(table_conditions_hold(&target, row, &h.matrix.q1, &h.matrix.q2, &h.matrix.source));
        assert_eq!(h.matrix.source.tau[1], h.matrix.q2.as_ring().unwrap());
    }
}

#[test]
fn table_maps_reject_other_shapes() {
    let target = target_weyl::<F5>().unwrap();
    let y1 = target.y1();
    let c = ExtElement::scalar(F5::new(2));
    assert!(table_maps(&target, TableRow::First(2), &target.y2(), &c).is_none());
    assert!(table_maps(&target, TableRow::First(2), &y1, &y1).is_none());
    assert!(table_maps(&target, TableRow::Second(1), &y1, &c).is_none());
    let q1 = ExtElement::from_ring(RingElement::one());
    assert!(table_maps(&target, TableRow::Second(1), &q1, &target.y2()).is_some());
}
