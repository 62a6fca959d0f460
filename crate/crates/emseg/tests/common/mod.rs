#![allow(dead_code)]

use emseg::{Ems, ExtSegment, Family, GroupContext, HalfInt, RhoLabel, Sign};
use proptest::prelude::*;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn line(s: &str) -> Ems {
    Ems::parse_line(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// The nine members of the Sp(8) class, numbered as in the worked example.
pub fn sp8_members() -> Vec<Ems> {
    [
        "([0,0],0,-) ([1,1],0,+) ([2,2],0,-)",
        "([1,0],0,-) ([2,2],0,-)",
        "([1,-1],1,-) ([0,0],0,+) ([2,2],0,-)",
        "([0,0],0,-) ([2,1],0,+)",
        "([2,0],0,-)",
        "([2,-1],1,-) ([0,0],0,-)",
        "([2,-2],2,-) ([0,0],0,+) ([1,1],0,-)",
        "([2,-2],2,-) ([1,0],0,+)",
        "([2,-2],2,-) ([1,-1],1,+) ([0,0],0,-)",
    ]
    .iter()
    .map(|r| line(&format!("group Sp rank 4 | {r}")))
    .collect()
}

pub const SP8_PSI: [&str; 9] = [
    "S_1 + S_3 + S_5",
    "S_2*S_2 + S_5",
    "S_1*S_3 + S_1 + S_5",
    "S_1 + S_4*S_2",
    "S_3*S_3",
    "S_2*S_4 + S_1",
    "S_1*S_5 + S_1 + S_3",
    "S_1*S_5 + S_2*S_2",
    "S_1*S_5 + S_1*S_3 + S_1",
];

/// Multiset {2x+1 : |B| <= x <= A} over every row with A + B >= 0.
pub fn interval_oracle(e: &Ems) -> Vec<i64> {
    let mut out = Vec::new();
    for (_, rs) in e.blocks() {
        for r in rs {
            if r.a() < 1 {
                continue;
            }
            let mut x = r.lower.abs();
            while x <= r.upper {
                out.push(x.twice() + 1);
                x = x + 1;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Dimensions of the diagonal restriction of psi_E, sorted.
pub fn diagonal_dims(e: &Ems) -> Vec<i64> {
    let mut d: Vec<i64> = e
        .psi_of()
        .diagonal_restriction()
        .summands()
        .iter()
        .map(|s| s.a as i64)
        .collect();
    d.sort_unstable();
    d
}

fn build(sp: bool, raw: Vec<(u32, u32, u32, bool)>, perm: Vec<usize>) -> Ems {
    let family = if sp { Family::Sp } else { Family::SOodd };
    let mut rows = Vec::new();
    let mut dim = 0u32;
    for (a, b0, l0, up) in raw {
        let b = if ((a + b0) % 2 == 0) == sp {
            b0
        } else {
            b0 + 1
        };
        if dim + a * b > 19 {
            continue;
        }
        dim += a * b;
        let l = l0.min(b / 2);
        let eta = if up { Sign::Plus } else { Sign::Minus };
        rows.push(ExtSegment::twice(
            (a + b) as i64 - 2,
            a as i64 - b as i64,
            l,
            eta,
        ));
    }
    if sp && dim.is_multiple_of(2) {
        rows.push(ExtSegment::twice(0, 0, 0, Sign::Plus));
        dim += 1;
    }
    rows.sort_by_key(|r| (r.lower, r.upper));
    let ordered: Vec<ExtSegment> = perm
        .iter()
        .filter(|&&i| i < rows.len())
        .map(|&i| rows[i])
        .collect();
    let ctx = GroupContext::new(family, 0)
        .with_dual_dim(dim as u64)
        .expect("parity fixed above");
    let rho = RhoLabel::trivial();
    let mut e = Ems::new(ctx, rho.clone(), ordered);
    if !e.is_admissible() {
        e = e.very_admissible_sorted();
    }
    if e.sign() == Sign::Minus {
        let mut rs = e.rows(&rho).to_vec();
        let i = rs.iter().position(|r| r.b() % 2 == 1).unwrap_or(0);
        let r = &mut rs[i];
        if r.b() % 2 == 1 {
            r.eta = -r.eta;
        } else if 2 * (r.l as i64 + 1) <= r.b() {
            r.l += 1;
        } else {
            r.l -= 1;
        }
        *r = r.normalized();
        e = e.with_rows(&rho, rs);
    }
    e
}

/// Valid multi-segments on the trivial label with dual dimension at most 20.
pub fn arb_ems() -> impl Strategy<Value = Ems> {
    (
        any::<bool>(),
        prop::collection::vec((1u32..=6, 1u32..=5, 0u32..=3, any::<bool>()), 1..=5),
        Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(|(sp, raw, perm)| build(sp, raw, perm))
}

pub fn arb_halfint() -> impl Strategy<Value = HalfInt> {
    (-40i64..=40).prop_map(HalfInt::from_twice)
}
