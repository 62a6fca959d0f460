use emseg::{hi, Family, GroupContext, HalfInt, Parity, RhoLabel, Sign};
use num_rational::Rational64;
use proptest::prelude::*;

fn rat(h: HalfInt) -> Rational64 {
    Rational64::new(h.twice(), 2)
}

proptest! {
    #[test]
    fn arithmetic_matches_rationals(p in -200i64..200, q in -200i64..200, n in -50i64..50) {
        let (x, y) = (HalfInt::from_twice(p), HalfInt::from_twice(q));
        prop_assert_eq!(rat(x + y), rat(x) + rat(y));
        prop_assert_eq!(rat(x - y), rat(x) - rat(y));
        prop_assert_eq!(rat(-x), -rat(x));
        prop_assert_eq!(rat(x + n), rat(x) + Rational64::from_integer(n));
        prop_assert_eq!(x < y, rat(x) < rat(y));
        prop_assert_eq!(x.floor(), rat(x).floor().to_integer());
        prop_assert_eq!(rat(x.abs()), if x.twice() < 0 { -rat(x) } else { rat(x) });
        prop_assert_eq!(x.is_integer(), rat(x).is_integer());
    }

    #[test]
    fn display_parse_round_trip(p in -400i64..400) {
        let x = HalfInt::from_twice(p);
        prop_assert_eq!(x.to_string().parse::<HalfInt>().unwrap(), x);
    }
}

#[test]
fn literals() {
    assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
    assert_eq!("-1/2".parse::<HalfInt>().unwrap(), -HalfInt::HALF);
    assert_eq!("4".parse::<HalfInt>().unwrap(), HalfInt::int(4));
    for bad in ["2/2", "1/3", "x", "1.5", ""] {
        assert!(bad.parse::<HalfInt>().is_err(), "{bad}");
    }
    assert_eq!(hi(3, Parity::Half).unwrap(), HalfInt::from_twice(3));
    assert!(hi(2, Parity::Half).is_err());
}

#[test]
fn sign_algebra() {
    assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
    assert_eq!(Sign::Minus.pow(3), Sign::Minus);
    assert_eq!(Sign::parity(4), Sign::Plus);
    assert_eq!(Sign::parity(-3), Sign::Minus);
    assert_eq!(Sign::from_i64(-1), Some(Sign::Minus));
    assert_eq!(Sign::from_i64(0), None);
}

#[test]
fn group_contexts() {
    let sp = GroupContext::new(Family::Sp, 4);
    assert_eq!(sp.dual_dim(), 9);
    assert_eq!(
        sp.with_dual_dim(31),
        Some(GroupContext::new(Family::Sp, 15))
    );
    assert_eq!(sp.with_dual_dim(30), None);
    let so = GroupContext::new(Family::SOodd, 15);
    assert_eq!(so.dual_dim(), 30);
    assert_eq!(GroupContext::parse_header(&so.header()).unwrap(), so);
    let one = RhoLabel::trivial();
    assert!(sp.good_parity(one.duality, 3, 1));
    assert!(!sp.good_parity(one.duality, 2, 1));
    assert!(so.good_parity(one.duality, 2, 1));
}
