//! Local (l, eta) updates for (C) and (UI).
//!
//! A kernel sees two adjacent rows and answers with the replacement rows, a
//! definite "does not apply", or a gap when it has no data for the pattern.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::foundation::{HalfInt, Sign};
use crate::multiseg::ExtSegment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelOp {
    C,
    UI,
}

impl fmt::Display for KernelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelOp::C => "C",
            KernelOp::UI => "UI",
        })
    }
}

/// A pattern the kernel could not answer, in fixture-key form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelGap {
    pub op: KernelOp,
    pub pattern: String,
}

impl fmt::Display for KernelGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.op, self.pattern)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelAnswer {
    /// One or more replacement row lists.
    Applies(Vec<Vec<ExtSegment>>),
    NotApplicable,
    Gap(KernelGap),
}

pub trait Kernel: Sync {
    /// (C) with `inner` first and `outer` second, inner contained in outer.
    /// Output order is [outer', inner'].
    fn swap(&self, inner: &ExtSegment, outer: &ExtSegment) -> KernelAnswer;

    /// (UI) on adjacent rows k, k+1 with B_k < B_{k+1}, A_k < A_{k+1}, B_{k+1} <= A_k + 1.
    /// Output order is [union, intersection]; an empty intersection is omitted.
    fn union_intersection(&self, k: &ExtSegment, k1: &ExtSegment) -> KernelAnswer;
}

/// Translation-normalized key of a row pair: the first row's B is moved into {0, 1/2}.
pub fn pattern_key(x: &ExtSegment, y: &ExtSegment) -> String {
    let z = HalfInt::int(-x.lower.floor());
    format!(
        "{} {}",
        x.normalized().shifted(z),
        y.normalized().shifted(z)
    )
}

fn par(d: HalfInt) -> Sign {
    Sign::parity(d.twice() / 2)
}

/// Closed-form kernel.
///
/// (C) is covered everywhere. (UI) is covered when the pair is in the
/// "opposite sign" adjacency case; the two "same sign" cases are gaps unless
/// they coincide with it.
#[derive(Clone, Copy, Debug, Default)]
pub struct RuleKernel;

impl RuleKernel {
    fn swap_rule(k: &ExtSegment, k1: &ExtSegment) -> Option<[ExtSegment; 2]> {
        let d = k.b() - 2 * k.l as i64;
        let dd = k1.b() - 2 * k1.l as i64;
        let pk = par(k.upper - k.lower);
        let eps = pk * k.eta * k1.eta;
        let inner = ExtSegment::new(k.upper, k.lower, k.l, par(k1.upper - k1.lower) * k.eta);
        let l1 = k1.l as i64;
        let (l2, e2) = if eps == Sign::Plus && dd >= 2 * d {
            (l1 + d, -(pk * k1.eta))
        } else if eps == Sign::Plus {
            (k1.b() - l1 - d, pk * k1.eta)
        } else {
            (l1 - d, -(pk * k1.eta))
        };
        if l2 < 0 || 2 * l2 > k1.b() {
            return None;
        }
        Some([ExtSegment::new(k1.upper, k1.lower, l2 as u32, e2), inner])
    }
}

impl Kernel for RuleKernel {
    fn swap(&self, inner: &ExtSegment, outer: &ExtSegment) -> KernelAnswer {
        if !outer.contains(inner) {
            return KernelAnswer::NotApplicable;
        }
        match RuleKernel::swap_rule(inner, outer) {
            Some(rows) => KernelAnswer::Applies(vec![rows.to_vec()]),
            None => KernelAnswer::NotApplicable,
        }
    }

    fn union_intersection(&self, k: &ExtSegment, k1: &ExtSegment) -> KernelAnswer {
        if !(k.lower < k1.lower && k.upper < k1.upper && k1.lower <= k.upper + 1) {
            return KernelAnswer::NotApplicable;
        }
        let mut outs: Vec<Vec<ExtSegment>> = Vec::new();
        let mut pending = false;
        for p in k.representatives() {
            for q in k1.representatives() {
                let same = q.eta == par(p.upper - p.lower) * p.eta;
                let (lk, l1) = (p.l as i64, q.l as i64);
                let case3 = !same && q.lower.twice() + 2 * l1 == p.upper.twice() - 2 * lk + 2;
                if !case3 {
                    let case1 = same && q.upper.twice() - 2 * l1 == p.upper.twice() - 2 * lk;
                    let case2 = same && q.lower.twice() + 2 * l1 == p.lower.twice() + 2 * lk;
                    pending |= case1 || case2;
                    continue;
                }
                let mut rows = vec![ExtSegment::new(q.upper, p.lower, p.l, p.eta)];
                if p.upper >= q.lower {
                    let flip = par(q.upper - p.upper);
                    let eta = match lk.cmp(&l1) {
                        std::cmp::Ordering::Greater => flip * q.eta,
                        std::cmp::Ordering::Less => -(flip * q.eta),
                        std::cmp::Ordering::Equal => Sign::Plus,
                    };
                    rows.push(ExtSegment::new(p.upper, q.lower, p.l.min(q.l), eta));
                }
                if rows.iter().all(ExtSegment::l_in_range) && !outs.contains(&rows) {
                    outs.push(rows);
                }
            }
        }
        if !outs.is_empty() {
            KernelAnswer::Applies(outs)
        } else if pending {
            KernelAnswer::Gap(KernelGap {
                op: KernelOp::UI,
                pattern: pattern_key(k, k1),
            })
        } else {
            KernelAnswer::NotApplicable
        }
    }
}

/// One fixture record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub op: KernelOp,
    pub input: [ExtSegment; 2],
    /// `None` records that the move gives zero.
    pub output: Option<Vec<ExtSegment>>,
    pub source: String,
}

/// Kernel backed by a fixture of explicit transitions.
#[derive(Clone, Debug, Default)]
pub struct TableKernel {
    entries: BTreeMap<(KernelOp, String), TableEntry>,
}

impl TableKernel {
    /// Parses records `C|UI ([A,B],l,e) ([A,B],l,e) -> l1 e1 [l2 e2] # source=<id>`.
    ///
    /// For (C) the output pairs are for [outer', inner']; for (UI) they are for
    /// [union, intersection], the second pair omitted when the intersection is
    /// empty. `-> none` records a vanishing move.
    pub fn parse(text: &str) -> Result<Self> {
        let mut t = TableKernel::default();
        for (n, raw) in text.lines().enumerate() {
            let lineno = n + 1;
            let (body, comment) = match raw.split_once('#') {
                Some((b, c)) => (b.trim(), c.trim()),
                None => (raw.trim(), ""),
            };
            if body.is_empty() {
                continue;
            }
            let source = comment
                .strip_prefix("source=")
                .unwrap_or(comment)
                .trim()
                .to_string();
            let e = parse_entry(body, source).map_err(|m| Error::parse(lineno, 1, m))?;
            t.insert(e);
        }
        Ok(t)
    }

    pub fn insert(&mut self, e: TableEntry) {
        let key = (e.op, pattern_key(&e.input[0], &e.input[1]));
        self.entries.insert(key, e);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.values()
    }

    fn lookup(&self, op: KernelOp, x: &ExtSegment, y: &ExtSegment) -> KernelAnswer {
        let key = pattern_key(x, y);
        match self.entries.get(&(op, key.clone())) {
            None => KernelAnswer::Gap(KernelGap { op, pattern: key }),
            Some(TableEntry { output: None, .. }) => KernelAnswer::NotApplicable,
            Some(TableEntry {
                output: Some(rows),
                input,
                ..
            }) => {
                let z = x.lower - input[0].lower;
                KernelAnswer::Applies(vec![rows.iter().map(|r| r.shifted(z)).collect()])
            }
        }
    }
}

impl Kernel for TableKernel {
    fn swap(&self, inner: &ExtSegment, outer: &ExtSegment) -> KernelAnswer {
        if !outer.contains(inner) {
            return KernelAnswer::NotApplicable;
        }
        self.lookup(KernelOp::C, inner, outer)
    }

    fn union_intersection(&self, k: &ExtSegment, k1: &ExtSegment) -> KernelAnswer {
        if !(k.lower < k1.lower && k.upper < k1.upper && k1.lower <= k.upper + 1) {
            return KernelAnswer::NotApplicable;
        }
        self.lookup(KernelOp::UI, k, k1)
    }
}

/// Table entries first, then the fallback for patterns the table lacks.
pub struct Layered<'a> {
    pub table: &'a TableKernel,
    pub fallback: &'a dyn Kernel,
}

impl Kernel for Layered<'_> {
    fn swap(&self, inner: &ExtSegment, outer: &ExtSegment) -> KernelAnswer {
        match self.table.swap(inner, outer) {
            KernelAnswer::Gap(_) => self.fallback.swap(inner, outer),
            a => a,
        }
    }

    fn union_intersection(&self, k: &ExtSegment, k1: &ExtSegment) -> KernelAnswer {
        match self.table.union_intersection(k, k1) {
            KernelAnswer::Gap(_) => self.fallback.union_intersection(k, k1),
            a => a,
        }
    }
}

fn parse_row(s: &str) -> std::result::Result<ExtSegment, String> {
    let s = s.trim();
    let inner = s
        .strip_prefix("([")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("bad row `{s}`"))?;
    let (seg, rest) = inner
        .split_once(']')
        .ok_or_else(|| format!("bad row `{s}`"))?;
    let (a, b) = seg
        .split_once(',')
        .ok_or_else(|| format!("bad row `{s}`"))?;
    let mut f = rest.split(',').map(str::trim);
    if f.next() != Some("") {
        return Err(format!("bad row `{s}`"));
    }
    let l: u32 = f
        .next()
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| format!("bad l in `{s}`"))?;
    let eta = f
        .next()
        .and_then(Sign::parse)
        .ok_or_else(|| format!("bad eta in `{s}`"))?;
    let a: HalfInt = a.parse().map_err(|e: Error| e.to_string())?;
    let b: HalfInt = b.parse().map_err(|e: Error| e.to_string())?;
    Ok(ExtSegment::new(a, b, l, eta))
}

fn parse_entry(body: &str, source: String) -> std::result::Result<TableEntry, String> {
    let (lhs, rhs) = body.split_once("->").ok_or("missing `->`")?;
    let lhs = lhs.trim();
    let (op, rows) = lhs.split_once(char::is_whitespace).ok_or("missing rows")?;
    let op = match op {
        "C" => KernelOp::C,
        "UI" => KernelOp::UI,
        o => return Err(format!("unknown op `{o}`")),
    };
    let rows = rows.trim();
    let split = rows.find(") (").ok_or("expected two rows")?;
    let x = parse_row(&rows[..=split])?;
    let y = parse_row(&rows[split + 2..])?;
    let rhs = rhs.trim();
    let output = if rhs == "none" {
        None
    } else {
        let toks: Vec<&str> = rhs.split_whitespace().collect();
        if toks.len() != 2 && toks.len() != 4 {
            return Err("expected `l eta` or `l eta l eta` after `->`".into());
        }
        let pair = |i: usize| -> std::result::Result<(u32, Sign), String> {
            let l = toks[i]
                .parse()
                .map_err(|_| format!("bad l `{}`", toks[i]))?;
            let e = Sign::parse(toks[i + 1]).ok_or_else(|| format!("bad eta `{}`", toks[i + 1]))?;
            Ok((l, e))
        };
        let (l1, e1) = pair(0)?;
        let second = if toks.len() == 4 {
            Some(pair(2)?)
        } else {
            None
        };
        let segs: Vec<(HalfInt, HalfInt)> = match op {
            KernelOp::C => vec![(y.upper, y.lower), (x.upper, x.lower)],
            KernelOp::UI if x.upper >= y.lower => vec![(y.upper, x.lower), (x.upper, y.lower)],
            KernelOp::UI => vec![(y.upper, x.lower)],
        };
        if segs.len() != if second.is_some() { 2 } else { 1 } {
            return Err("output row count does not match the pattern".into());
        }
        let mut out = vec![ExtSegment::new(segs[0].0, segs[0].1, l1, e1)];
        if let Some((l2, e2)) = second {
            out.push(ExtSegment::new(segs[1].0, segs[1].1, l2, e2));
        }
        Some(out)
    };
    Ok(TableEntry {
        op,
        input: [x, y],
        output,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(u: i64, d: i64, l: u32, e: i8) -> ExtSegment {
        ExtSegment::twice(u, d, l, if e > 0 { Sign::Plus } else { Sign::Minus })
    }

    #[test]
    fn ui_first_union() {
        let out = RuleKernel.union_intersection(&r(0, 0, 0, -1), &r(2, 2, 0, 1));
        assert_eq!(out, KernelAnswer::Applies(vec![vec![r(2, 0, 0, -1)]]));
    }

    #[test]
    fn swap_keeps_a_fixed_pair() {
        let out = RuleKernel.swap(&r(0, 0, 0, 1), &r(4, 0, 1, 1));
        assert_eq!(
            out,
            KernelAnswer::Applies(vec![vec![r(4, 0, 1, 1), r(0, 0, 0, 1)]])
        );
    }

    #[test]
    fn table_parse_and_shift() {
        let t = TableKernel::parse("UI ([0,0],0,-) ([1,1],0,+) -> 0 - # source=t\n").unwrap();
        assert_eq!(t.len(), 1);
        let out = t.union_intersection(&r(4, 4, 0, -1), &r(6, 6, 0, 1));
        assert_eq!(out, KernelAnswer::Applies(vec![vec![r(6, 4, 0, -1)]]));
        assert!(matches!(
            t.union_intersection(&r(0, 0, 0, 1), &r(2, 2, 0, 1)),
            KernelAnswer::Gap(_)
        ));
        assert!(TableKernel::parse("UI ([0,0],0,-) ([1,1],0,+) -> 0 - 0 +\n").is_err());
    }
}
