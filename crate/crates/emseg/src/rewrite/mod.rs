//! The operations (C), (UI), (P), their inverses, and class enumeration.

mod kernel;
mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::foundation::{HalfInt, RhoLabel, Sign};
use crate::multiseg::{Ems, ExtSegment};

pub use kernel::{
    pattern_key, Kernel, KernelAnswer, KernelGap, KernelOp, Layered, RuleKernel, TableEntry,
    TableKernel,
};
pub use search::{
    enumerate_class, neighbors, strongly_equivalent, Bounds, ClassEnumeration, Edge, Equivalence,
    Neighborhood,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhantomKind {
    /// ([l-1,-l], l, +), l > 0.
    Integral,
    /// ([l-1/2,-l-1/2], l, +), l >= 0.
    HalfIntegral,
}

impl PhantomKind {
    pub fn row(self, l: u32) -> Result<ExtSegment> {
        let l2 = 2 * l as i64;
        match self {
            PhantomKind::Integral if l == 0 => {
                Err(Error::Precondition("integral phantom needs l > 0".into()))
            }
            PhantomKind::Integral => Ok(ExtSegment::twice(l2 - 2, -l2, l, Sign::Plus)),
            PhantomKind::HalfIntegral => Ok(ExtSegment::twice(l2 - 1, -l2 - 1, l, Sign::Plus)),
        }
    }
}

/// Which rows a (UI) inverse rebuilds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UiTarget {
    /// Rows i (union) and i+1 (intersection).
    Pair(usize),
    /// Row `index` as a union with empty intersection, split into [A',B] and [A,A'+1].
    Split { index: usize, at: HalfInt },
}

/// One replayable rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RewriteStep {
    /// (C) at rows index, index+1 (either direction).
    C {
        rho: RhoLabel,
        index: usize,
    },
    /// (UI) at rows index, index+1, choosing output `variant` of the kernel.
    UI {
        rho: RhoLabel,
        index: usize,
        variant: usize,
    },
    /// Inverse of (UI) producing `first`, `second` at `index`.
    UIinv {
        rho: RhoLabel,
        index: usize,
        split: Option<HalfInt>,
        first: ExtSegment,
        second: ExtSegment,
    },
    Padd {
        rho: RhoLabel,
        kind: PhantomKind,
        l: u32,
    },
    Premove {
        rho: RhoLabel,
    },
}

impl RewriteStep {
    pub fn op_name(&self) -> &'static str {
        match self {
            RewriteStep::C { .. } => "C",
            RewriteStep::UI { .. } => "UI",
            RewriteStep::UIinv { .. } => "UIinv",
            RewriteStep::Padd { .. } => "P+",
            RewriteStep::Premove { .. } => "P-",
        }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteStep::C { rho, index } => write!(f, "C@{rho} i={index}"),
            RewriteStep::UI {
                rho,
                index,
                variant: 0,
            } => write!(f, "UI@{rho} i={index}"),
            RewriteStep::UI {
                rho,
                index,
                variant,
            } => write!(f, "UI@{rho} i={index} v={variant}"),
            RewriteStep::UIinv {
                rho,
                index,
                first,
                second,
                ..
            } => {
                write!(f, "UIinv@{rho} i={index} -> {first} {second}")
            }
            RewriteStep::Padd { rho, kind, l } => {
                let row = kind.row(*l).map(|r| r.to_string()).unwrap_or_default();
                write!(f, "P+@{rho} {row}")
            }
            RewriteStep::Premove { rho } => write!(f, "P-@{rho}"),
        }
    }
}

/// Results of a single operation: every admissible output and every kernel gap met.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub results: Vec<Ems>,
    pub gaps: Vec<KernelGap>,
}

impl Outcome {
    /// No result and no gap: the move is not available (or gives zero).
    pub fn vanishes(&self) -> bool {
        self.results.is_empty() && self.gaps.is_empty()
    }
}

fn rows_of<'a>(e: &'a Ems, rho: &RhoLabel, need: usize) -> Result<&'a [ExtSegment]> {
    let rs = e.rows(rho);
    if need > rs.len() {
        return Err(Error::Precondition(format!("no row {} at {rho}", need - 1)));
    }
    Ok(rs)
}

fn splice(e: &Ems, rho: &RhoLabel, at: usize, remove: usize, new: &[ExtSegment]) -> Ems {
    let mut rs = e.rows(rho).to_vec();
    rs.splice(at..at + remove, new.iter().copied());
    let mut out = e.with_rows(rho, rs);
    out.strict = out.is_strict();
    out
}

/// Every row on segment [upper, lower], up to weak equivalence.
pub fn decorations(upper: HalfInt, lower: HalfInt) -> Vec<ExtSegment> {
    let b = (upper - lower).twice() / 2 + 1;
    let mut out = Vec::new();
    for l in 0..=(b / 2) as u32 {
        for eta in [Sign::Plus, Sign::Minus] {
            let r = ExtSegment::new(upper, lower, l, eta);
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// (C) at rows `index`, `index + 1`.
///
/// With the smaller row first this applies the kernel directly; with the
/// larger row first it searches the kernel's preimage.
pub fn op_c(e: &Ems, rho: &RhoLabel, index: usize, kernel: &dyn Kernel) -> Result<Outcome> {
    let rs = rows_of(e, rho, index + 2)?;
    let (x, y) = (rs[index], rs[index + 1]);
    let mut out = Outcome::default();
    if y.contains(&x) {
        match kernel.swap(&x, &y) {
            KernelAnswer::Applies(v) => out
                .results
                .extend(v.iter().map(|w| splice(e, rho, index, 2, w))),
            KernelAnswer::Gap(g) => out.gaps.push(g),
            KernelAnswer::NotApplicable => {}
        }
    } else if x.contains(&y) {
        for p in decorations(y.upper, y.lower) {
            for q in decorations(x.upper, x.lower) {
                match kernel.swap(&p, &q) {
                    KernelAnswer::Applies(v) if v.iter().any(|w| w[..] == [x, y]) => {
                        let s = splice(e, rho, index, 2, &[p, q]);
                        if !out.results.contains(&s) {
                            out.results.push(s);
                        }
                    }
                    KernelAnswer::Gap(g)
                        if p.sign_factor() * q.sign_factor()
                            == x.sign_factor() * y.sign_factor() =>
                    {
                        out.gaps.push(g)
                    }
                    _ => {}
                }
            }
        }
        if !out.results.is_empty() {
            out.gaps.clear();
        }
    } else {
        return Err(Error::Precondition(format!(
            "rows {index}, {} are not nested",
            index + 1
        )));
    }
    Ok(out)
}

/// (UI) at rows `index`, `index + 1`.
pub fn op_ui(e: &Ems, rho: &RhoLabel, index: usize, kernel: &dyn Kernel) -> Result<Outcome> {
    let rs = rows_of(e, rho, index + 2)?;
    let (x, y) = (rs[index], rs[index + 1]);
    if !(x.lower < y.lower && x.upper < y.upper && y.lower <= x.upper + 1) {
        return Err(Error::Precondition(format!(
            "rows {index}, {} are not in (UI) position",
            index + 1
        )));
    }
    let mut out = Outcome::default();
    match kernel.union_intersection(&x, &y) {
        KernelAnswer::Applies(v) => out
            .results
            .extend(v.iter().map(|w| splice(e, rho, index, 2, w))),
        KernelAnswer::Gap(g) => out.gaps.push(g),
        KernelAnswer::NotApplicable => {}
    }
    Ok(out)
}

/// A candidate for a (UI) inverse.
#[derive(Clone, Debug)]
pub(crate) struct Preimage {
    pub state: Ems,
    pub step: RewriteStep,
    pub gap: Option<KernelGap>,
}

pub(crate) fn ui_preimages(
    e: &Ems,
    rho: &RhoLabel,
    target: UiTarget,
    kernel: &dyn Kernel,
) -> Result<Vec<Preimage>> {
    let (index, remove, want, k, k1, split) = match target {
        UiTarget::Pair(i) => {
            let rs = rows_of(e, rho, i + 2)?;
            let (u, w) = (rs[i], rs[i + 1]);
            if !(u.lower < w.lower && w.upper < u.upper) {
                return Err(Error::Precondition(format!(
                    "rows {i}, {} are not union and intersection",
                    i + 1
                )));
            }
            (
                i,
                2,
                vec![u, w],
                (w.upper, u.lower),
                (u.upper, w.lower),
                None,
            )
        }
        UiTarget::Split { index, at } => {
            let rs = rows_of(e, rho, index + 1)?;
            let x = rs[index];
            if !(at - x.lower).is_integer() || at < x.lower || at + 1 > x.upper {
                return Err(Error::Precondition(format!("split at {at} outside {x}")));
            }
            (
                index,
                1,
                vec![x],
                (at, x.lower),
                (x.upper, at + 1),
                Some(at),
            )
        }
    };
    let target_sign = want.iter().fold(Sign::Plus, |s, r| s * r.sign_factor());
    let mut out = Vec::new();
    for p in decorations(k.0, k.1) {
        for q in decorations(k1.0, k1.1) {
            if p.sign_factor() * q.sign_factor() != target_sign {
                continue;
            }
            let gap = match kernel.union_intersection(&p, &q) {
                KernelAnswer::Applies(v) => {
                    if !v.contains(&want) {
                        continue;
                    }
                    None
                }
                KernelAnswer::Gap(g) => Some(g),
                KernelAnswer::NotApplicable => continue,
            };
            let state = splice(e, rho, index, remove, &[p, q]);
            let step = RewriteStep::UIinv {
                rho: rho.clone(),
                index,
                split,
                first: p,
                second: q,
            };
            out.push(Preimage { state, step, gap });
        }
    }
    Ok(out)
}

/// Inverse of (UI): every pair of rows whose (UI) gives the target rows.
pub fn op_ui_inverse(
    e: &Ems,
    rho: &RhoLabel,
    target: UiTarget,
    kernel: &dyn Kernel,
) -> Result<Outcome> {
    let mut out = Outcome::default();
    for p in ui_preimages(e, rho, target, kernel)? {
        match p.gap {
            None => out.results.push(p.state),
            Some(g) => out.gaps.push(g),
        }
    }
    Ok(out)
}

/// (P): prepends a phantom row. The result is relaxed.
pub fn op_p_add(e: &Ems, rho: &RhoLabel, kind: PhantomKind, l: u32) -> Result<Ems> {
    let row = kind.row(l)?;
    let mut out = splice(e, rho, 0, 0, &[row]);
    out.strict = false;
    Ok(out)
}

/// Inverse of (P): removes the first row, which must be phantom-shaped.
pub fn op_p_remove(e: &Ems, rho: &RhoLabel, index: usize) -> Result<Ems> {
    let rs = rows_of(e, rho, index + 1)?;
    if index != 0 {
        return Err(Error::Precondition(
            "only the first row can disappear".into(),
        ));
    }
    if !rs[0].is_phantom() {
        return Err(Error::Precondition(format!("{} is not a phantom", rs[0])));
    }
    Ok(splice(e, rho, 0, 1, &[]))
}

/// Replays one step.
pub fn apply_step(e: &Ems, step: &RewriteStep, kernel: &dyn Kernel) -> Result<Ems> {
    let pick = |o: Outcome, v: usize| {
        o.results
            .into_iter()
            .nth(v)
            .ok_or_else(|| Error::Precondition(format!("step `{step}` does not apply")))
    };
    match step {
        RewriteStep::C { rho, index } => pick(op_c(e, rho, *index, kernel)?, 0),
        RewriteStep::UI {
            rho,
            index,
            variant,
        } => pick(op_ui(e, rho, *index, kernel)?, *variant),
        RewriteStep::UIinv {
            rho,
            index,
            split,
            first,
            second,
        } => {
            let target = match split {
                Some(at) => UiTarget::Split {
                    index: *index,
                    at: *at,
                },
                None => UiTarget::Pair(*index),
            };
            ui_preimages(e, rho, target, kernel)?
                .into_iter()
                .find(|p| p.gap.is_none() && p.step == *step)
                .map(|p| p.state)
                .ok_or_else(|| Error::Precondition(format!("no (UI) gives back {first} {second}")))
        }
        RewriteStep::Padd { rho, kind, l } => op_p_add(e, rho, *kind, *l),
        RewriteStep::Premove { rho } => op_p_remove(e, rho, 0),
    }
}

/// Replays a path.
pub fn replay(e: &Ems, steps: &[RewriteStep], kernel: &dyn Kernel) -> Result<Ems> {
    steps
        .iter()
        .try_fold(e.clone(), |cur, s| apply_step(&cur, s, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::{Family, GroupContext};

    fn sp(rank: u32, rows: &[(i64, i64, u32, i8)]) -> Ems {
        Ems::from_twice(GroupContext::new(Family::Sp, rank), rows)
    }

    #[test]
    fn phantom_roundtrip() {
        let e = sp(4, &[(2, 0, 0, -1), (4, 4, 0, -1)]);
        let t = RhoLabel::trivial();
        let p = op_p_add(&e, &t, PhantomKind::Integral, 1).unwrap();
        assert_eq!(p.rows(&t)[0], ExtSegment::twice(0, -2, 1, Sign::Plus));
        assert_eq!(op_p_remove(&p, &t, 0).unwrap(), e);
        assert!(op_p_remove(&e, &t, 0).is_err());
        assert!(op_p_add(&e, &t, PhantomKind::Integral, 0).is_err());
    }

    #[test]
    fn nesting_precondition() {
        let e = sp(4, &[(0, 0, 0, -1), (2, 2, 0, 1), (4, 4, 0, -1)]);
        assert!(op_c(&e, &RhoLabel::trivial(), 0, &RuleKernel).is_err());
    }

    #[test]
    fn split_outside_support() {
        let e = sp(4, &[(4, 4, 0, -1), (2, 0, 0, 1)]);
        let t = RhoLabel::trivial();
        let r = op_ui_inverse(
            &e,
            &t,
            UiTarget::Split {
                index: 1,
                at: HalfInt::int(1),
            },
            &RuleKernel,
        );
        assert!(r.is_err());
    }
}
