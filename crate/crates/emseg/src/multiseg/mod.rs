//! Extended segments and extended multi-segments.

mod symbol;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::aparam::{AParameter, Summand};
use crate::error::{Error, Result};
use crate::foundation::{GroupContext, HalfInt, RhoLabel, Sign};

pub use symbol::{parse_symbol, render_symbol};
pub use text::{EmsJson, RowJson};

/// ([A,B]_rho, l, eta) without its label; the label is the key it is filed under.
///
/// `new` stores eta = + whenever 2l = b, the canonical weak-equivalence form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtSegment {
    pub upper: HalfInt,
    pub lower: HalfInt,
    pub l: u32,
    pub eta: Sign,
}

impl ExtSegment {
    pub fn new(upper: HalfInt, lower: HalfInt, l: u32, eta: Sign) -> Self {
        ExtSegment {
            upper,
            lower,
            l,
            eta,
        }
        .normalized()
    }

    /// Shorthand on doubled coordinates.
    pub fn twice(upper: i64, lower: i64, l: u32, eta: Sign) -> Self {
        ExtSegment::new(
            HalfInt::from_twice(upper),
            HalfInt::from_twice(lower),
            l,
            eta,
        )
    }

    pub fn normalized(mut self) -> Self {
        if 2 * self.l as i64 == self.b() {
            self.eta = Sign::Plus;
        }
        self
    }

    /// Every eta giving the same weak-equivalence class.
    pub fn representatives(&self) -> Vec<ExtSegment> {
        if 2 * self.l as i64 == self.b() {
            vec![
                ExtSegment {
                    eta: Sign::Plus,
                    ..*self
                },
                ExtSegment {
                    eta: Sign::Minus,
                    ..*self
                },
            ]
        } else {
            vec![*self]
        }
    }

    /// b = A - B + 1 (0 when A - B is not integral).
    pub fn b(&self) -> i64 {
        let d = (self.upper - self.lower).twice();
        if d % 2 != 0 {
            return 0;
        }
        d / 2 + 1
    }

    /// a = A + B + 1.
    pub fn a(&self) -> i64 {
        (self.upper + self.lower).twice() / 2 + 1
    }

    /// (-1)^(floor(b/2) + l) * eta^b.
    pub fn sign_factor(&self) -> Sign {
        let b = self.b();
        Sign::parity(b / 2 + self.l as i64) * self.eta.pow(b)
    }

    /// Segment containment [A,B] of `other` inside ours.
    pub fn contains(&self, other: &ExtSegment) -> bool {
        other.upper <= self.upper && other.lower >= self.lower
    }

    /// ([l-1,-l], l, +) with l > 0 or ([l-1/2,-l-1/2], l, +) with l >= 0.
    pub fn is_phantom(&self) -> bool {
        let l = self.l as i64;
        if self.eta != Sign::Plus {
            return false;
        }
        let (u, d) = (self.upper.twice(), self.lower.twice());
        (l > 0 && u == 2 * l - 2 && d == -2 * l) || (u == 2 * l - 1 && d == -2 * l - 1)
    }

    pub fn shifted(&self, z: HalfInt) -> ExtSegment {
        ExtSegment {
            upper: self.upper + z,
            lower: self.lower + z,
            ..*self
        }
    }

    pub fn l_in_range(&self) -> bool {
        2 * self.l as i64 <= self.b()
    }
}

impl fmt::Display for ExtSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "([{},{}],{},{})",
            self.upper, self.lower, self.l, self.eta
        )
    }
}

/// A failed multi-segment condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A - B not integral or b < 1.
    Shape {
        rho: RhoLabel,
        index: usize,
    },
    LRange {
        rho: RhoLabel,
        index: usize,
    },
    APlusB {
        rho: RhoLabel,
        index: usize,
    },
    Order {
        rho: RhoLabel,
        first: usize,
        second: usize,
    },
    GoodParity {
        rho: RhoLabel,
        index: usize,
    },
    Dimension {
        expected: u64,
        found: u64,
    },
    SignCondition,
}

impl Violation {
    pub fn id(&self) -> &'static str {
        match self {
            Violation::Shape { .. } => "shape",
            Violation::LRange { .. } => "l-range",
            Violation::APlusB { .. } => "A+B>=0",
            Violation::Order { .. } => "admissible-order",
            Violation::GoodParity { .. } => "good-parity",
            Violation::Dimension { .. } => "dimension",
            Violation::SignCondition => "sign-condition",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { rho, index }
            | Violation::LRange { rho, index }
            | Violation::APlusB { rho, index }
            | Violation::GoodParity { rho, index } => {
                write!(f, "{} (row {index} at {rho})", self.id())
            }
            Violation::Order { rho, first, second } => {
                write!(f, "{} (rows {first} and {second} at {rho})", self.id())
            }
            Violation::Dimension { expected, found } => {
                write!(f, "{} (expected {expected}, found {found})", self.id())
            }
            Violation::SignCondition => f.write_str(self.id()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowId {
    pub rho: RhoLabel,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonvanishingRule {
    /// A + B >= 0.
    APlusB,
    /// B + l >= -1/2.
    BPlusL,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessaryNonvanishingReport {
    pub passes: bool,
    pub violations: Vec<(RowId, NonvanishingRule)>,
    /// Rows with B + l = -1/2, where eta is forced.
    pub forced_eta: Vec<RowId>,
}

/// An extended multi-segment: per label, rows in admissible order (smallest first).
///
/// Equality and hashing look at the group and the rows; `strict` only records
/// whether A + B >= 0 is expected to hold.
#[derive(Clone, Debug)]
pub struct Ems {
    pub ctx: GroupContext,
    rows: BTreeMap<RhoLabel, Vec<ExtSegment>>,
    pub strict: bool,
}

impl PartialEq for Ems {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.rows == o.rows
    }
}

impl Eq for Ems {}

impl Hash for Ems {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.ctx.hash(h);
        self.rows.hash(h);
    }
}

impl Ems {
    pub fn empty(ctx: GroupContext) -> Self {
        Ems {
            ctx,
            rows: BTreeMap::new(),
            strict: true,
        }
    }

    /// Single-label multi-segment.
    pub fn new(ctx: GroupContext, rho: RhoLabel, rows: Vec<ExtSegment>) -> Self {
        let mut e = Ems::empty(ctx);
        e.set_rows(rho, rows);
        e
    }

    /// Trivial-label multi-segment from doubled coordinates (A2, B2, l, eta).
    pub fn from_twice(ctx: GroupContext, rows: &[(i64, i64, u32, i8)]) -> Self {
        let rows = rows
            .iter()
            .map(|&(u, d, l, e)| {
                ExtSegment::twice(u, d, l, if e > 0 { Sign::Plus } else { Sign::Minus })
            })
            .collect();
        Ems::new(ctx, RhoLabel::trivial(), rows)
    }

    pub fn rows(&self, rho: &RhoLabel) -> &[ExtSegment] {
        self.rows.get(rho).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&RhoLabel, &Vec<ExtSegment>)> {
        self.rows.iter()
    }

    pub fn rhos(&self) -> impl Iterator<Item = &RhoLabel> {
        self.rows.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row_count(&self) -> usize {
        self.rows.values().map(Vec::len).sum()
    }

    /// Replaces the rows at `rho`, normalizing them; an empty list removes the label.
    pub fn set_rows(&mut self, rho: RhoLabel, rows: Vec<ExtSegment>) {
        if rows.is_empty() {
            self.rows.remove(&rho);
        } else {
            self.rows
                .insert(rho, rows.into_iter().map(ExtSegment::normalized).collect());
        }
    }

    pub fn with_rows(&self, rho: &RhoLabel, rows: Vec<ExtSegment>) -> Ems {
        let mut e = self.clone();
        e.set_rows(rho.clone(), rows);
        e
    }

    pub fn with_ctx(mut self, ctx: GroupContext) -> Ems {
        self.ctx = ctx;
        self
    }

    pub fn sign(&self) -> Sign {
        self.rows
            .values()
            .flatten()
            .fold(Sign::Plus, |s, r| s * r.sign_factor())
    }

    /// Admissibility of every label's order.
    pub fn is_admissible(&self) -> bool {
        self.rows.values().all(|rs| order_violation(rs).is_none())
    }

    /// A + B >= 0 on every row.
    pub fn is_strict(&self) -> bool {
        self.rows.values().flatten().all(|r| r.a() >= 1)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let mut dim = 0u64;
        for (rho, rs) in &self.rows {
            for (index, r) in rs.iter().enumerate() {
                if r.b() < 1 {
                    v.push(Violation::Shape {
                        rho: rho.clone(),
                        index,
                    });
                    continue;
                }
                if !r.l_in_range() {
                    v.push(Violation::LRange {
                        rho: rho.clone(),
                        index,
                    });
                }
                if r.a() < 1 {
                    v.push(Violation::APlusB {
                        rho: rho.clone(),
                        index,
                    });
                    continue;
                }
                let (a, b) = (r.a() as u64, r.b() as u64);
                if !self.ctx.good_parity(rho.duality, a, b) {
                    v.push(Violation::GoodParity {
                        rho: rho.clone(),
                        index,
                    });
                }
                dim += rho.dim as u64 * a * b;
            }
            if let Some((first, second)) = order_violation(rs) {
                v.push(Violation::Order {
                    rho: rho.clone(),
                    first,
                    second,
                });
            }
        }
        if dim != self.ctx.dual_dim() {
            v.push(Violation::Dimension {
                expected: self.ctx.dual_dim(),
                found: dim,
            });
        }
        if self.sign() != Sign::Plus {
            v.push(Violation::SignCondition);
        }
        v
    }

    /// psi_E; rows with a <= 0 contribute nothing.
    pub fn psi_of(&self) -> AParameter {
        let mut s = Vec::new();
        for (rho, rs) in &self.rows {
            for r in rs {
                if r.a() >= 1 && r.b() >= 1 {
                    s.push(Summand::new(rho.clone(), r.a() as u32, r.b() as u32));
                }
            }
        }
        AParameter::new(self.ctx, s)
    }

    pub fn necessary_nonvanishing(&self) -> NecessaryNonvanishingReport {
        let mut violations = Vec::new();
        let mut forced_eta = Vec::new();
        for (rho, rs) in &self.rows {
            for (index, r) in rs.iter().enumerate() {
                let id = RowId {
                    rho: rho.clone(),
                    index,
                };
                if r.a() < 1 {
                    violations.push((id.clone(), NonvanishingRule::APlusB));
                }
                let bl = r.lower.twice() + 2 * r.l as i64;
                if bl < -1 {
                    violations.push((id, NonvanishingRule::BPlusL));
                } else if bl == -1 {
                    forced_eta.push(id);
                }
            }
        }
        NecessaryNonvanishingReport {
            passes: violations.is_empty(),
            violations,
            forced_eta,
        }
    }

    /// Adds an integer `z` to every A and B.
    pub fn shift(&self, z: HalfInt) -> Result<Ems> {
        if !z.is_integer() {
            return Err(Error::Precondition(format!("shift by non-integer {z}")));
        }
        let mut e = self.clone();
        for rs in e.rows.values_mut() {
            for r in rs.iter_mut() {
                *r = r.shifted(z);
            }
        }
        Ok(e)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows
            .values()
            .flatten()
            .all(|r| r.lower >= HalfInt::ZERO)
    }

    pub fn weak_normalize(&self) -> Ems {
        let mut e = self.clone();
        for rs in e.rows.values_mut() {
            for r in rs.iter_mut() {
                *r = r.normalized();
            }
        }
        e
    }

    /// The same rows, each label reordered very admissibly (sorted by (B, A)).
    pub fn very_admissible_sorted(&self) -> Ems {
        let mut e = self.clone();
        for rs in e.rows.values_mut() {
            rs.sort_by_key(|r| (r.lower, r.upper));
        }
        e
    }

    /// B non-decreasing along every label's order.
    pub fn is_very_admissible(&self) -> bool {
        self.rows
            .values()
            .all(|rs| rs.windows(2).all(|w| w[0].lower <= w[1].lower))
    }
}

/// First pair (i, j), i < j, with A_j < A_i and B_j < B_i.
fn order_violation(rs: &[ExtSegment]) -> Option<(usize, usize)> {
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            if rs[j].upper < rs[i].upper && rs[j].lower < rs[i].lower {
                return Some((i, j));
            }
        }
    }
    None
}

impl fmt::Display for Ems {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Free-standing forms of the multi-segment queries.
pub fn validate(e: &Ems) -> Vec<Violation> {
    e.validate()
}

pub fn psi_of(e: &Ems) -> AParameter {
    e.psi_of()
}

pub fn necessary_nonvanishing(e: &Ems) -> NecessaryNonvanishingReport {
    e.necessary_nonvanishing()
}

pub fn shift(e: &Ems, z: HalfInt) -> Result<Ems> {
    e.shift(z)
}

pub fn is_nonnegative(e: &Ems) -> bool {
    e.is_nonnegative()
}

pub fn weak_normalize(e: &Ems) -> Ems {
    e.weak_normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::Family;

    #[test]
    fn normalization() {
        let r = ExtSegment::twice(2, 0, 1, Sign::Minus);
        assert_eq!(r.eta, Sign::Plus);
        let r = ExtSegment::twice(4, 0, 1, Sign::Minus);
        assert_eq!(r.eta, Sign::Minus);
    }

    #[test]
    fn phantom_shapes() {
        assert!(ExtSegment::twice(0, -2, 1, Sign::Plus).is_phantom());
        assert!(ExtSegment::twice(2, -4, 2, Sign::Plus).is_phantom());
        assert!(ExtSegment::twice(-1, -1, 0, Sign::Plus).is_phantom());
        assert!(ExtSegment::twice(1, -3, 1, Sign::Plus).is_phantom());
        assert!(!ExtSegment::twice(4, 4, 0, Sign::Minus).is_phantom());
        assert_eq!(
            ExtSegment::twice(0, -2, 1, Sign::Plus).sign_factor(),
            Sign::Plus
        );
        assert_eq!(
            ExtSegment::twice(1, -3, 1, Sign::Plus).sign_factor(),
            Sign::Plus
        );
    }

    #[test]
    fn relaxed_rows_are_flagged() {
        let e = Ems::from_twice(GroupContext::new(Family::Sp, 0), &[(0, -2, 1, 1)]);
        assert!(e.validate().iter().any(|v| v.id() == "A+B>=0"));
        assert!(e.psi_of().summands().is_empty());
    }
}
