mod common;

use common::{fixture, line};
use emseg::arthur::{
    check_m_consistency, ex_supp_of_langlands, k_profile, lift_minus, lift_plus, packet_candidates,
    step2_candidate, DerivativeAnswer, DerivativeOracle, Direction, EvalOracle, Residual, Step2,
};
use emseg::{
    decide_arthur, list_all_psi, AParameter, ArthurVerdict, Bounds, Error, FixtureDerivatives,
    FixtureEval, HalfInt, LanglandsData, RhoLabel, RuleKernel,
};

fn half(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn decide(id: &str) -> ArthurVerdict {
    let d = FixtureDerivatives::shipped();
    let l = d.pi(id).unwrap().clone();
    decide_arthur(
        &l,
        &RuleKernel,
        &d,
        &FixtureEval::shipped(),
        &Bounds::default(),
    )
    .unwrap()
}

#[test]
fn langlands_files_parse_and_validate() {
    for eps in [
        "plus_plus_plus",
        "minus_minus_plus",
        "minus_plus_minus",
        "plus_minus_minus",
    ] {
        let l = LanglandsData::parse(&fixture(&format!("so31_{eps}.lng"))).unwrap();
        assert!(l.validate().is_empty(), "{eps}: {:?}", l.validate());
        assert_eq!(l.ctx.dual_dim(), 30);
        assert_eq!(LanglandsData::parse(&l.render()).unwrap(), l);
        assert!(check_m_consistency(&l) || l.deltas().iter().any(|d| d.x < HalfInt::ZERO));
    }
}

#[test]
fn ex_supp_counts_both_halves_of_each_factor() {
    let l = LanglandsData::parse("group SOodd rank 4 L( D[1/2,-3/2] ; (1/2)^+ (1/2)^+ )").unwrap();
    let m = ex_supp_of_langlands(&l);
    let one = RhoLabel::trivial();
    let at = |t: i64| m.get(&(one.clone(), half(t))).copied().unwrap_or(0);
    assert_eq!((at(-3), at(-1), at(1), at(3)), (1, 4, 4, 1));
}

#[test]
fn k_profile_and_m() {
    let d = FixtureDerivatives::shipped();
    let l = d.pi("pi2_pmm").unwrap();
    let k = k_profile(l);
    let one = RhoLabel::trivial();
    assert_eq!(k[&(one.clone(), half(1))], 2);
    assert_eq!(k[&(one.clone(), half(3))], 2);
    assert_eq!(k[&(one, half(5))], 1);
    assert!(check_m_consistency(l));
}

#[test]
fn step2_requires_nonnegative_x() {
    let d = FixtureDerivatives::shipped();
    assert!(matches!(
        step2_candidate(d.pi("pi_ppp").unwrap()),
        Err(Error::Contract(_))
    ));
}

#[test]
fn step2_detects_increasing_counts() {
    let l = LanglandsData::parse("group SOodd rank 5 L( ; (1/2)^+ (3/2)^+ (3/2)^+ )").unwrap();
    match step2_candidate(&l).unwrap() {
        Step2::NotArthur { z, .. } => assert_eq!(z, half(1)),
        s => panic!("{s:?}"),
    }
}

#[test]
fn packet_candidates_share_psi() {
    let d = FixtureDerivatives::shipped();
    let Step2::Candidate(psi) = step2_candidate(d.pi("pi2_pmm").unwrap()).unwrap() else {
        panic!()
    };
    let cands = packet_candidates(&psi).unwrap();
    assert!(!cands.is_empty());
    for e in &cands {
        assert_eq!(e.psi_of(), psi);
        assert!(e.validate().is_empty());
    }
    let target = line("group SOodd rank 9 | ([3/2,1/2],0,+) ([5/2,1/2],1,-)");
    assert!(cands.contains(&target));
}

#[test]
fn lift_plus_moves_the_top_rows() {
    let one = RhoLabel::trivial();
    let e = line("group SOodd rank 9 | ([3/2,1/2],0,+) ([5/2,1/2],1,-)");
    let c = emseg::enumerate_class(&e, &RuleKernel, &Bounds::default());
    let lifted: Vec<_> = c
        .raw
        .iter()
        .filter_map(|m| lift_plus(m, &one, half(3), &[1, 1]).ok())
        .collect();
    assert!(lifted.contains(&line(
        "group SOodd rank 11 | ([5/2,1/2],0,+) ([5/2,3/2],0,+)"
    )));
}

#[test]
fn lift_preconditions() {
    let one = RhoLabel::trivial();
    let e = line("group SOodd rank 9 | ([3/2,1/2],0,+) ([5/2,1/2],1,-)");
    let msg = |r: emseg::Result<emseg::Ems>| match r {
        Err(Error::Precondition(m)) => m,
        other => panic!("{other:?}"),
    };
    assert!(msg(lift_plus(&e, &one, half(5), &[1])).starts_with("bullet 2"));
    assert!(msg(lift_plus(&e, &one, half(3), &[3])).starts_with("bullet 3"));
    assert!(msg(lift_plus(&e, &one, half(3), &[1, 2])).contains("counts increase"));
    assert!(msg(lift_minus(&e, &one, half(1), &[1])).contains("x < 0"));
    assert_eq!(lift_plus(&e, &one, half(3), &[]).unwrap(), e);
}

#[test]
fn lift_minus_at_minus_half_adds_phantoms() {
    let one = RhoLabel::trivial();
    let e = line("group SOodd rank 11 | ([3/2,1/2],0,+) ([5/2,3/2],1,+) ([5/2,5/2],0,-)");
    let out = lift_minus(&e, &one, half(-1), &[2, 1, 1]).unwrap();
    assert_eq!(out.ctx.rank, 15);
    assert_eq!(
        out,
        line("group SOodd rank 15 | ([1/2,-1/2],1,+) ([5/2,-1/2],1,+) ([5/2,3/2],1,+) ([5/2,5/2],0,-)")
    );
}

#[test]
fn verdicts() {
    assert_eq!(decide("pi_ppp").status(), "NotArthurType");
    assert_eq!(decide("pi_mmp").status(), "NotArthurType");
    for id in ["pi_mpm", "pi_pmm"] {
        let v = decide(id);
        assert_eq!(v.status(), "ArthurType");
        let l = FixtureDerivatives::shipped().pi(id).unwrap().clone();
        for w in v.witnesses() {
            assert!(w.ems.validate().is_empty());
            assert_eq!(w.ems.ctx, l.ctx);
            assert_eq!(w.psi, w.ems.psi_of());
        }
    }
}

#[test]
fn verdict_json_shape() {
    let j = decide("pi_pmm").to_json();
    assert_eq!(j["status"], "ArthurType");
    assert!(j["witnesses"][0]["E"]
        .as_str()
        .unwrap()
        .starts_with("group SOodd rank 15 |"));
    assert!(j["trace"]
        .as_array()
        .unwrap()
        .iter()
        .any(|t| t.as_str().unwrap().contains("Step 2: psi")));
}

#[test]
fn missing_data_is_unknown() {
    let l = LanglandsData::parse("group SOodd rank 1 L( ; (1/2)^+ )").unwrap();
    let v = decide_arthur(
        &l,
        &RuleKernel,
        &FixtureDerivatives::default(),
        &FixtureEval::default(),
        &Bounds::default(),
    )
    .unwrap();
    match v {
        ArthurVerdict::Unknown { gaps, .. } => assert!(!gaps.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn opaque_residual_is_unknown() {
    let text = "PI a = group SOodd rank 1 L( ; (1/2)^+ )\nD a 1 + x=3/2 k=1 -> b\n";
    let d = FixtureDerivatives::parse(text).unwrap();
    let l = d.pi("a").unwrap();
    match d.query(l, &RhoLabel::trivial(), Direction::Plus) {
        DerivativeAnswer::Report(r) => assert_eq!(r.residual, Residual::Opaque("b".into())),
        other => panic!("{other:?}"),
    }
    let v = decide_arthur(
        l,
        &RuleKernel,
        &d,
        &FixtureEval::default(),
        &Bounds::default(),
    )
    .unwrap();
    assert_eq!(v.status(), "Unknown");
}

#[test]
fn invalid_data_is_an_error() {
    let l = LanglandsData::parse("group SOodd rank 2 L( ; (1/2)^+ )").unwrap();
    let r = decide_arthur(
        &l,
        &RuleKernel,
        &FixtureDerivatives::default(),
        &FixtureEval::default(),
        &Bounds::default(),
    );
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn empty_representation_is_arthur() {
    let l = LanglandsData::parse("group SOodd rank 0 L( ; )").unwrap();
    let v = decide_arthur(
        &l,
        &RuleKernel,
        &FixtureDerivatives::default(),
        &FixtureEval::default(),
        &Bounds::default(),
    )
    .unwrap();
    assert_eq!(v.status(), "ArthurType");
}

#[test]
fn fixture_errors() {
    for bad in [
        "PI a group SOodd rank 1 L( ; (1/2)^+ )",
        "D a 1 * none",
        "D a 1 + x=1/2 k=0 -> b",
        "D a 1 + x=1/2 k=1 b",
        "Q something",
    ] {
        assert!(
            matches!(FixtureDerivatives::parse(bad), Err(Error::Parse { .. })),
            "{bad}"
        );
    }
    assert!(FixtureEval::parse("EVAL nonsense").is_err());
}

#[test]
fn eval_fixture_lookups() {
    let ev = FixtureEval::shipped();
    assert_eq!(ev.len(), 4);
    let d = FixtureDerivatives::shipped();
    let pi = d.pi("pi2_pmm").unwrap();
    assert_eq!(
        ev.ems_of(pi),
        vec![line("group SOodd rank 9 | ([3/2,1/2],0,+) ([5/2,1/2],1,-)")]
    );
}

#[test]
fn all_psi_of_the_sp8_class() {
    let e = common::sp8_members()[0].clone();
    let (psis, done) = list_all_psi(&e, &RuleKernel, &Bounds::default());
    assert!(done);
    assert_eq!(psis.len(), 9);
    assert!(psis.contains(&AParameter::parse(e.ctx, "S_3*S_3").unwrap()));
}
