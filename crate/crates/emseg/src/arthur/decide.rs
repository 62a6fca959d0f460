//! The recursive Arthur-type decision.

use serde_json::{json, Value};

use super::oracle::{
    DerivativeAnswer, DerivativeOracle, DerivativeReport, Direction, EvalOracle, Residual,
};
use super::steps::{lift_minus, lift_plus, step2_candidate, Step2};
use super::LanglandsData;
use crate::aparam::AParameter;
use crate::error::{Error, Result};
use crate::foundation::{HalfInt, RhoLabel};
use crate::multiseg::{Ems, ExtSegment};
use crate::rewrite::{decorations, enumerate_class, Bounds, Kernel};

/// Step 2 gives up beyond this many decorated candidates.
pub const STEP2_CANDIDATE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub ems: Ems,
    pub psi: AParameter,
}

impl Witness {
    fn new(ems: Ems) -> Self {
        let psi = ems.psi_of();
        Witness { ems, psi }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArthurVerdict {
    ArthurType {
        witnesses: Vec<Witness>,
        trace: Vec<String>,
    },
    NotArthurType {
        trace: Vec<String>,
    },
    Unknown {
        gaps: Vec<String>,
        trace: Vec<String>,
    },
}

impl ArthurVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            ArthurVerdict::ArthurType { .. } => "ArthurType",
            ArthurVerdict::NotArthurType { .. } => "NotArthurType",
            ArthurVerdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn trace(&self) -> &[String] {
        match self {
            ArthurVerdict::ArthurType { trace, .. }
            | ArthurVerdict::NotArthurType { trace }
            | ArthurVerdict::Unknown { trace, .. } => trace,
        }
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            ArthurVerdict::ArthurType { witnesses, .. } => witnesses,
            _ => &[],
        }
    }

    pub fn to_json(&self) -> Value {
        let witnesses: Vec<Value> = self
            .witnesses()
            .iter()
            .map(|w| json!({ "E": w.ems.to_line(), "psi": w.psi.render() }))
            .collect();
        let gaps: &[String] = match self {
            ArthurVerdict::Unknown { gaps, .. } => gaps,
            _ => &[],
        };
        json!({ "status": self.status(), "witnesses": witnesses, "gaps": gaps, "trace": self.trace() })
    }

    fn with_trace_prefix(mut self, mut head: Vec<String>) -> Self {
        let t = match &mut self {
            ArthurVerdict::ArthurType { trace, .. }
            | ArthurVerdict::NotArthurType { trace }
            | ArthurVerdict::Unknown { trace, .. } => trace,
        };
        head.append(t);
        *t = head;
        self
    }
}

/// Decides whether the representation with Langlands data `l` is of Arthur type.
///
/// Errors only on invalid input; every incompleteness ends up in the verdict.
pub fn decide_arthur(
    l: &LanglandsData,
    kernel: &dyn Kernel,
    derivatives: &dyn DerivativeOracle,
    eval: &dyn EvalOracle,
    bounds: &Bounds,
) -> Result<ArthurVerdict> {
    let problems = l.validate();
    if !problems.is_empty() {
        return Err(Error::Precondition(format!(
            "invalid Langlands data: {}",
            problems.join("; ")
        )));
    }
    Ok(Decider {
        kernel,
        derivatives,
        eval,
        bounds,
    }
    .run(l, 0))
}

/// Every psi with pi(E) in its packet, via the strong-equivalence class of `e`.
pub fn list_all_psi(e: &Ems, kernel: &dyn Kernel, bounds: &Bounds) -> (Vec<AParameter>, bool) {
    let class = enumerate_class(e, kernel, bounds);
    (class.psis(), class.exhausted)
}

struct Decider<'a> {
    kernel: &'a dyn Kernel,
    derivatives: &'a dyn DerivativeOracle,
    eval: &'a dyn EvalOracle,
    bounds: &'a Bounds,
}

impl Decider<'_> {
    fn run(&self, l: &LanglandsData, depth: usize) -> ArthurVerdict {
        let pad = "  ".repeat(depth);
        let head = vec![format!("{pad}pi = {}", l.render())];
        if l.is_empty() {
            let w = Witness::new(Ems::empty(l.ctx));
            return ArthurVerdict::ArthurType {
                witnesses: vec![w],
                trace: head,
            };
        }
        let mut answers = Vec::new();
        for rho in l.labels() {
            for dir in [Direction::Plus, Direction::Minus] {
                answers.push((rho.clone(), dir, self.derivatives.query(l, &rho, dir)));
            }
        }
        let step1 = |dir: Direction| {
            answers.iter().find_map(|(_, d, a)| match a {
                DerivativeAnswer::Report(r) if *d == dir => {
                    let triggers = match dir {
                        Direction::Plus => r.x >= HalfInt::ONE,
                        Direction::Minus => r.x < HalfInt::ZERO,
                    };
                    triggers.then_some(r)
                }
                _ => None,
            })
        };
        let v = match step1(Direction::Plus).or_else(|| step1(Direction::Minus)) {
            Some(r) => self.step1(r, l, depth),
            None => self.step2(l, &answers, depth),
        };
        v.with_trace_prefix(head)
    }

    fn step1(&self, r: &DerivativeReport, l: &LanglandsData, depth: usize) -> ArthurVerdict {
        let pad = "  ".repeat(depth);
        let counts: Vec<String> = r.counts.iter().map(u32::to_string).collect();
        let mut trace = vec![format!(
            "{pad}Step 1{}: rho={} x={} k=({})",
            r.direction,
            r.rho,
            r.x,
            counts.join(",")
        )];
        let residual = match &r.residual {
            Residual::Data(d) => d,
            Residual::Opaque(id) => {
                return ArthurVerdict::Unknown {
                    gaps: vec![format!("residual `{id}` has no Langlands data")],
                    trace,
                }
            }
        };
        let sub = self.run(residual, depth + 1);
        let base = match &sub {
            ArthurVerdict::ArthurType { witnesses, .. } => witnesses[0].ems.clone(),
            _ => {
                trace.extend(sub.trace().iter().cloned());
                return match sub {
                    ArthurVerdict::Unknown { gaps, .. } => ArthurVerdict::Unknown { gaps, trace },
                    _ => ArthurVerdict::NotArthurType { trace },
                };
            }
        };
        trace.extend(sub.trace().iter().cloned());
        let class = enumerate_class(&base, self.kernel, self.bounds);
        trace.push(format!(
            "{pad}class of the residual: {} members, {} states, exhausted={}",
            class.members.len(),
            class.raw.len(),
            class.exhausted
        ));
        let mut witnesses: Vec<Witness> = Vec::new();
        for m in &class.raw {
            let lifted = match r.direction {
                Direction::Plus => lift_plus(m, &r.rho, r.x, &r.counts),
                Direction::Minus => lift_minus(m, &r.rho, r.x, &r.counts),
            };
            if let Ok(e) = lifted {
                if e.ctx == l.ctx && !witnesses.iter().any(|w| w.ems == e) {
                    trace.push(format!(
                        "{pad}lift of {} gives {}",
                        m.to_line(),
                        e.to_line()
                    ));
                    witnesses.push(Witness::new(e));
                }
            }
        }
        if !witnesses.is_empty() {
            ArthurVerdict::ArthurType { witnesses, trace }
        } else if class.exhausted {
            trace.push(format!(
                "{pad}no member of the class meets the Step 1{} conditions",
                r.direction
            ));
            ArthurVerdict::NotArthurType { trace }
        } else {
            let mut gaps: Vec<String> = class
                .gaps
                .iter()
                .map(|g| format!("kernel gap: {g}"))
                .collect();
            if class.bound_hit {
                gaps.push("state limit reached".into());
            }
            ArthurVerdict::Unknown { gaps, trace }
        }
    }

    fn step2(
        &self,
        l: &LanglandsData,
        answers: &[(RhoLabel, Direction, DerivativeAnswer)],
        depth: usize,
    ) -> ArthurVerdict {
        let pad = "  ".repeat(depth);
        let mut trace = Vec::new();
        let missing: Vec<String> = answers
            .iter()
            .filter(|(_, _, a)| *a == DerivativeAnswer::NoData)
            .map(|(rho, d, _)| format!("no derivative data for rho={rho} direction {d}"))
            .collect();
        if !missing.is_empty() {
            return ArthurVerdict::Unknown {
                gaps: missing,
                trace,
            };
        }
        let psi = match step2_candidate(l) {
            Ok(Step2::Candidate(p)) => p,
            Ok(Step2::NotArthur { rho, z }) => {
                trace.push(format!(
                    "{pad}Step 2: k_{{{rho},{z}}} < k_{{{rho},{}}}",
                    z + 1
                ));
                return ArthurVerdict::NotArthurType { trace };
            }
            Err(e) => {
                return ArthurVerdict::Unknown {
                    gaps: vec![format!("derivative data inconsistent with Step 2: {e}")],
                    trace,
                }
            }
        };
        trace.push(format!("{pad}Step 2: psi = {}", psi.render()));
        let candidates = match packet_candidates(&psi) {
            Some(c) => c,
            None => {
                return ArthurVerdict::Unknown {
                    gaps: vec![format!(
                        "more than {STEP2_CANDIDATE_CAP} candidates for {}",
                        psi.render()
                    )],
                    trace,
                }
            }
        };
        let mut unknown = 0;
        let mut witnesses = Vec::new();
        for e in candidates {
            match self.eval.langlands_of(&e) {
                Some(x) if x == *l => {
                    trace.push(format!("{pad}pi = pi({})", e.to_line()));
                    witnesses.push(Witness::new(e));
                }
                Some(_) => {}
                None => unknown += 1,
            }
        }
        if !witnesses.is_empty() {
            ArthurVerdict::ArthurType { witnesses, trace }
        } else if unknown > 0 {
            ArthurVerdict::Unknown {
                gaps: vec![format!(
                    "{unknown} candidates in the packet have no eval data"
                )],
                trace,
            }
        } else {
            trace.push(format!("{pad}pi is not in the packet of {}", psi.render()));
            ArthurVerdict::NotArthurType { trace }
        }
    }
}

/// Every valid, not obviously vanishing E with psi_E = psi, rows sorted by (B, A).
///
/// `None` when the number of decorations exceeds the cap.
pub fn packet_candidates(psi: &AParameter) -> Option<Vec<Ems>> {
    let mut out = vec![Ems::empty(psi.ctx)];
    let mut total = 1usize;
    let mut by_rho: std::collections::BTreeMap<_, Vec<(HalfInt, HalfInt)>> = Default::default();
    for s in psi.summands() {
        let upper = HalfInt::from_twice(s.a as i64 + s.b as i64 - 2);
        let lower = HalfInt::from_twice(s.a as i64 - s.b as i64);
        by_rho
            .entry(s.rho.clone())
            .or_default()
            .push((upper, lower));
    }
    for (rho, mut segs) in by_rho {
        segs.sort_by_key(|&(u, d)| (d, u));
        let choices: Vec<Vec<ExtSegment>> = segs.iter().map(|&(u, d)| decorations(u, d)).collect();
        total = choices
            .iter()
            .try_fold(total, |t, c| t.checked_mul(c.len()))?;
        if total > STEP2_CANDIDATE_CAP {
            return None;
        }
        let mut rows: Vec<Vec<ExtSegment>> = vec![Vec::new()];
        for c in &choices {
            rows = rows
                .iter()
                .flat_map(|prefix| {
                    c.iter().map(move |r| {
                        let mut p = prefix.clone();
                        p.push(*r);
                        p
                    })
                })
                .collect();
        }
        out = out
            .iter()
            .flat_map(|e| rows.iter().map(|r| e.with_rows(&rho, r.clone())))
            .collect();
    }
    out.retain(|e| e.validate().is_empty() && e.necessary_nonvanishing().passes);
    Some(out)
}
