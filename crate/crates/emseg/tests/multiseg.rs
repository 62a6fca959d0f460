mod common;

use common::{arb_ems, fixture, line, sp8_members};
use emseg::multiseg::{parse_symbol, render_symbol};
use emseg::{Ems, ExtSegment, HalfInt, RhoLabel, Sign, Violation};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generator_is_valid(e in arb_ems()) {
        prop_assert!(e.validate().is_empty(), "{}", e.to_line());
        prop_assert!(e.ctx.dual_dim() <= 20);
    }

    #[test]
    fn text_forms_round_trip(e in arb_ems()) {
        prop_assert_eq!(Ems::parse_line(&e.to_line()).unwrap(), e.clone());
        prop_assert_eq!(Ems::parse_rows(&e.to_rows_text()).unwrap(), e.clone());
        prop_assert_eq!(Ems::from_json(&e.to_json()).unwrap(), e.clone());
        prop_assert_eq!(parse_symbol(&render_symbol(&e).unwrap()).unwrap(), e.clone());
    }

    #[test]
    fn shift_and_unshift(e in arb_ems(), z in -5i64..=5) {
        let z = HalfInt::int(z);
        let s = e.shift(z).unwrap();
        prop_assert_eq!(s.sign(), e.sign());
        prop_assert_eq!(s.shift(-z).unwrap(), e);
    }

    #[test]
    fn sign_is_a_product_of_row_factors(e in arb_ems()) {
        let p = e.blocks().flat_map(|(_, rs)| rs).fold(Sign::Plus, |s, r| s * r.sign_factor());
        prop_assert_eq!(p, e.sign());
    }
}

#[test]
fn half_shift_is_refused() {
    assert!(sp8_members()[0].shift(HalfInt::HALF).is_err());
}

#[test]
fn weak_equivalence_forgets_eta_at_full_l() {
    let a = ExtSegment::twice(1, -1, 1, Sign::Minus);
    assert_eq!(a.eta, Sign::Plus);
    assert_eq!(a.representatives().len(), 2);
    assert_eq!(
        ExtSegment::twice(2, 0, 0, Sign::Minus)
            .representatives()
            .len(),
        1
    );
}

#[test]
fn phantoms() {
    assert!(ExtSegment::twice(0, -2, 1, Sign::Plus).is_phantom());
    assert!(ExtSegment::twice(1, -3, 1, Sign::Plus).is_phantom());
    assert!(ExtSegment::twice(-1, -1, 0, Sign::Plus).is_phantom());
    assert!(!ExtSegment::twice(0, 0, 0, Sign::Plus).is_phantom());
}

#[test]
fn row_file_parses() {
    let e = Ems::parse_rows(&fixture("e1.ems")).unwrap();
    assert_eq!(e, sp8_members()[0]);
    assert!(Ems::parse_rows(&fixture("empty.ems")).unwrap().is_empty());
}

#[test]
fn symbol_drawing() {
    let e = sp8_members()[7].clone();
    let s = render_symbol(&e).unwrap();
    assert_eq!(
        s,
        "group Sp rank 4\n-2 -1  0  1  2\n <  <  -  >  >\n       +  -\n"
    );
    assert_eq!(parse_symbol(&s).unwrap(), e);
}

#[test]
fn line_parse_errors_have_positions() {
    for bad in [
        "group Sp rank 4",
        "group Sp rank 4 | ([0,0],0,-",
        "group Sp rank 4 | [0,0]",
        "grp | ([0,0],0,+)",
    ] {
        assert!(Ems::parse_line(bad).is_err(), "{bad}");
    }
}

#[test]
fn validate_reports_each_condition() {
    let base = line("group Sp rank 4 | ([0,0],0,-) ([1,1],0,+) ([2,2],0,-)");
    let one = RhoLabel::trivial();
    let with = |rs: Vec<ExtSegment>| base.with_rows(&one, rs);
    let rows = base.rows(&one).to_vec();

    let mut r = rows.clone();
    r[1].eta = Sign::Minus;
    assert!(with(r).validate().contains(&Violation::SignCondition));

    let mut r = rows.clone();
    r[2].l = 1;
    assert!(with(r)
        .validate()
        .iter()
        .any(|v| matches!(v, Violation::LRange { index: 2, .. })));

    let mut r = rows.clone();
    r.swap(0, 2);
    assert!(with(r)
        .validate()
        .iter()
        .any(|v| matches!(v, Violation::Order { .. })));

    let mut r = rows.clone();
    r[0] = ExtSegment::twice(-1, -1, 0, Sign::Minus);
    assert!(with(r)
        .validate()
        .iter()
        .any(|v| matches!(v, Violation::APlusB { index: 0, .. })));

    let mut r = rows;
    r.pop();
    assert!(with(r).validate().iter().any(|v| matches!(
        v,
        Violation::Dimension {
            expected: 9,
            found: 4
        }
    )));
}

#[test]
fn nonvanishing_screen() {
    let e = line("group Sp rank 4 | ([2,-2],2,-) ([1,0],0,+)");
    assert!(e.necessary_nonvanishing().passes);
    let bad = line("group Sp rank 4 | ([2,-2],0,-) ([1,0],0,+)");
    assert!(!bad.necessary_nonvanishing().passes);
}
