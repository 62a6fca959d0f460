//! Half-integers, cuspidal labels, segments and group contexts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of (1/2)Z stored as twice its value.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + o.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - o.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, n: i64) -> HalfInt {
        HalfInt {
            twice: self.twice + 2 * n,
        }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, n: i64) -> HalfInt {
        HalfInt {
            twice: self.twice - 2 * n,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Literal(s.to_string());
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::int).map_err(|_| bad()),
            Some((p, q)) => {
                if q.trim() != "2" {
                    return Err(bad());
                }
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                hi(p, Parity::Half).map_err(|_| bad())
            }
        }
    }
}

/// Literal form accepted by [`hi`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Whole,
    Half,
}

/// Builds `p` (whole) or `p/2` (half, `p` odd).
pub fn hi(p: i64, q: Parity) -> Result<HalfInt> {
    match q {
        Parity::Whole => Ok(HalfInt::int(p)),
        Parity::Half if p % 2 != 0 => Ok(HalfInt::from_twice(p)),
        Parity::Half => Err(Error::Literal(format!("{p}/2"))),
    }
}

/// A sign in {+1, -1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// (-1)^n.
    pub fn parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pow(self, n: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::parity(n),
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Parses `+`, `-`, `+1`, `-1`.
    pub fn parse(s: &str) -> Option<Sign> {
        match s.trim() {
            "+" | "+1" | "1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom("eta must be +1 or -1"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Duality {
    Orthogonal,
    Symplectic,
}

/// Self-dual cuspidal label: an opaque name with dimension and duality type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RhoLabel {
    pub name: String,
    pub dim: u32,
    pub duality: Duality,
}

impl RhoLabel {
    pub fn new(name: impl Into<String>, dim: u32, duality: Duality) -> Self {
        RhoLabel {
            name: name.into(),
            dim,
            duality,
        }
    }

    /// The trivial character of GL_1.
    pub fn trivial() -> Self {
        RhoLabel::new("triv", 1, Duality::Orthogonal)
    }

    pub fn is_trivial(&self) -> bool {
        *self == RhoLabel::trivial()
    }
}

impl fmt::Display for RhoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let t = match self.duality {
            Duality::Orthogonal => 'O',
            Duality::Symplectic => 'S',
        };
        write!(f, "rho:{}:{}:{}", self.name, self.dim, t)
    }
}

impl FromStr for RhoLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(RhoLabel::trivial());
        }
        let bad = || Error::Literal(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 || parts[0] != "rho" || parts[1].is_empty() {
            return Err(bad());
        }
        let dim: u32 = parts[2].parse().map_err(|_| bad())?;
        if dim == 0 {
            return Err(bad());
        }
        let duality = match parts[3] {
            "O" => Duality::Orthogonal,
            "S" => Duality::Symplectic,
            _ => return Err(bad()),
        };
        Ok(RhoLabel::new(parts[1], dim, duality))
    }
}

/// A segment [A,B]_rho. The stored form has A >= B - 1; A = B - 1 is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub rho: RhoLabel,
    pub upper: HalfInt,
    pub lower: HalfInt,
}

impl Segment {
    pub fn new(rho: RhoLabel, upper: HalfInt, lower: HalfInt) -> Result<Self> {
        if !(upper - lower).is_integer() || upper < lower - 1 {
            return Err(Error::Precondition(format!(
                "bad segment [{upper},{lower}]"
            )));
        }
        Ok(Segment { rho, upper, lower })
    }

    /// b = A - B + 1.
    pub fn len(&self) -> u32 {
        ((self.upper - self.lower).twice() / 2 + 1) as u32
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Number of elements of [A,B].
pub fn seg_length(s: &Segment) -> u32 {
    s.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "SOodd")]
    SOodd,
    #[serde(rename = "Sp")]
    Sp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::SOodd => "SOodd",
            Family::Sp => "Sp",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SOodd" | "SO" => Ok(Family::SOodd),
            "Sp" => Ok(Family::Sp),
            _ => Err(Error::Literal(s.to_string())),
        }
    }
}

/// SO_{2n+1} or Sp_{2n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupContext {
    pub family: Family,
    pub rank: u32,
}

impl GroupContext {
    pub fn new(family: Family, rank: u32) -> Self {
        GroupContext { family, rank }
    }

    pub fn dual_dim(&self) -> u64 {
        match self.family {
            Family::SOodd => 2 * self.rank as u64,
            Family::Sp => 2 * self.rank as u64 + 1,
        }
    }

    pub fn dual_type(&self) -> Duality {
        match self.family {
            Family::SOodd => Duality::Symplectic,
            Family::Sp => Duality::Orthogonal,
        }
    }

    /// The group of the same family whose dual has dimension `dim`.
    pub fn with_dual_dim(&self, dim: u64) -> Option<GroupContext> {
        let rank = match self.family {
            Family::SOodd if dim.is_multiple_of(2) => dim / 2,
            Family::Sp if dim % 2 == 1 => (dim - 1) / 2,
            _ => return None,
        };
        Some(GroupContext::new(self.family, rank as u32))
    }

    /// Good parity for rho x S_a x S_b in this family.
    pub fn good_parity(&self, duality: Duality, a: u64, b: u64) -> bool {
        let even = (a + b).is_multiple_of(2);
        match (self.family, duality) {
            (Family::Sp, Duality::Orthogonal) | (Family::SOodd, Duality::Symplectic) => even,
            _ => !even,
        }
    }

    /// `group <family> rank <n>`.
    pub fn header(&self) -> String {
        format!("group {} rank {}", self.family, self.rank)
    }

    /// Parses `group <family> rank <n>`.
    pub fn parse_header(s: &str) -> Result<Self> {
        let t: Vec<&str> = s.split_whitespace().collect();
        if t.len() != 4 || t[0] != "group" || t[2] != "rank" {
            return Err(Error::Literal(s.to_string()));
        }
        let rank = t[3].parse().map_err(|_| Error::Literal(t[3].to_string()))?;
        Ok(GroupContext::new(t[1].parse()?, rank))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(hi(2, Parity::Whole).unwrap().twice(), 4);
        assert_eq!(hi(5, Parity::Half).unwrap().twice(), 5);
        assert!(hi(4, Parity::Half).is_err());
        assert_eq!("5/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(5));
        assert_eq!("-3".parse::<HalfInt>().unwrap(), HalfInt::int(-3));
        assert!("4/2".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
    }

    #[test]
    fn rho_literals() {
        assert!("1".parse::<RhoLabel>().unwrap().is_trivial());
        let r: RhoLabel = "rho:sigma:2:S".parse().unwrap();
        assert_eq!(r.dim, 2);
        assert_eq!(r.to_string(), "rho:sigma:2:S");
        assert!("rho:x:0:O".parse::<RhoLabel>().is_err());
    }

    #[test]
    fn segment_lengths() {
        let t = RhoLabel::trivial();
        let s = |a: i64, b: i64| {
            Segment::new(t.clone(), HalfInt::from_twice(a), HalfInt::from_twice(b)).unwrap()
        };
        assert_eq!(s(4, 4).len(), 1);
        assert_eq!(s(3, -5).len(), 5);
        assert_eq!(s(-1, 1).len(), 0);
        assert!(Segment::new(t, HalfInt::int(0), HalfInt::int(2)).is_err());
    }

    #[test]
    fn contexts() {
        assert_eq!(GroupContext::new(Family::SOodd, 15).dual_dim(), 30);
        assert_eq!(GroupContext::new(Family::Sp, 4).dual_dim(), 9);
        assert_eq!(
            GroupContext::new(Family::Sp, 4).dual_type(),
            Duality::Orthogonal
        );
    }
}
