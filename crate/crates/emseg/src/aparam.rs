//! A-parameters as sorted multisets of summands rho x S_a x S_b.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundation::{GroupContext, HalfInt, RhoLabel, Sign};

/// Extended cuspidal support: multiplicity of each rho|.|^x.
pub type ExSupp = BTreeMap<(RhoLabel, HalfInt), u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub rho: RhoLabel,
    pub a: u32,
    pub b: u32,
}

impl Summand {
    pub fn new(rho: RhoLabel, a: u32, b: u32) -> Self {
        Summand { rho, a, b }
    }

    pub fn dim(&self) -> u64 {
        self.rho.dim as u64 * self.a as u64 * self.b as u64
    }
}

/// A multiset of summands, kept sorted so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AParameter {
    pub ctx: GroupContext,
    summands: Vec<Summand>,
}

impl AParameter {
    pub fn new(ctx: GroupContext, mut summands: Vec<Summand>) -> Self {
        summands.sort();
        AParameter { ctx, summands }
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn total_dim(&self) -> u64 {
        self.summands.iter().map(Summand::dim).sum()
    }

    pub fn is_good_parity(&self) -> bool {
        self.summands.iter().all(|s| {
            s.a > 0 && s.b > 0 && self.ctx.good_parity(s.rho.duality, s.a as u64, s.b as u64)
        })
    }

    pub fn is_tempered(&self) -> bool {
        self.summands.iter().all(|s| s.b == 1)
    }

    /// psi_d: each S_a x S_b becomes the sum of S_{a+b-1-2k}, 0 <= k < min(a,b).
    pub fn diagonal_restriction(&self) -> AParameter {
        let mut out = Vec::new();
        for s in &self.summands {
            for k in 0..s.a.min(s.b) {
                out.push(Summand::new(s.rho.clone(), s.a + s.b - 1 - 2 * k, 1));
            }
        }
        AParameter::new(self.ctx, out)
    }

    pub fn ex_supp(&self) -> ExSupp {
        let mut m = ExSupp::new();
        for s in self.diagonal_restriction().summands {
            let top = s.a as i64 - 1;
            for t in (-top..=top).step_by(2) {
                *m.entry((s.rho.clone(), HalfInt::from_twice(t)))
                    .or_default() += 1;
            }
        }
        m
    }

    /// Multiplicity of rho x S_a in a tempered parameter.
    pub fn multiplicity(&self, rho: &RhoLabel, a: u32) -> Result<u32> {
        if !self.is_tempered() {
            return Err(Error::Contract(
                "multiplicity needs a tempered parameter".into(),
            ));
        }
        Ok(self
            .summands
            .iter()
            .filter(|s| &s.rho == rho && s.a == a)
            .count() as u32)
    }

    /// Text form, e.g. `S_2*S_2 + S_5` or `S_2^3 + S_3*S_2`; `0` when empty.
    pub fn render(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.summands.len() {
            let s = &self.summands[i];
            let m = self.summands[i..].iter().take_while(|t| *t == s).count();
            let mut p = format!("S_{}", s.a);
            if s.b != 1 {
                p.push_str(&format!("*S_{}", s.b));
            }
            if !s.rho.is_trivial() {
                p.push_str(&format!("@{}", s.rho));
            }
            if m > 1 {
                p.push_str(&format!("^{m}"));
            }
            parts.push(p);
            i += m;
        }
        parts.join(" + ")
    }

    /// Inverse of [`AParameter::render`].
    pub fn parse(ctx: GroupContext, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(AParameter::new(ctx, vec![]));
        }
        let mut out = Vec::new();
        for tok in text.split('+') {
            let tok = tok.trim();
            let bad = || Error::Literal(tok.to_string());
            let (body, mult) = match tok.rsplit_once('^') {
                Some((b, m)) => (b, m.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let (body, rho) = match body.split_once('@') {
                Some((b, r)) => (b, r.parse::<RhoLabel>()?),
                None => (body, RhoLabel::trivial()),
            };
            let mut ab = body.split('*').map(|f| {
                f.trim()
                    .strip_prefix("S_")
                    .and_then(|n| n.parse::<u32>().ok())
                    .filter(|&n| n > 0)
            });
            let a = ab.next().flatten().ok_or_else(bad)?;
            let b = match ab.next() {
                None => 1,
                Some(b) => b.ok_or_else(bad)?,
            };
            if ab.next().is_some() {
                return Err(bad());
            }
            out.extend(std::iter::repeat_n(Summand::new(rho, a, b), mult));
        }
        Ok(AParameter::new(ctx, out))
    }
}

impl fmt::Display for AParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Free-standing forms of the parameter predicates.
pub fn is_good_parity(psi: &AParameter) -> bool {
    psi.is_good_parity()
}

pub fn is_tempered(psi: &AParameter) -> bool {
    psi.is_tempered()
}

pub fn diagonal_restriction(psi: &AParameter) -> AParameter {
    psi.diagonal_restriction()
}

pub fn ex_supp_of_psi(psi: &AParameter) -> ExSupp {
    psi.ex_supp()
}

/// A tempered parameter together with a character of its component group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TemperedParamWithSign {
    pub phi: AParameter,
    pub eps: BTreeMap<(RhoLabel, u32), Sign>,
}

impl TemperedParamWithSign {
    /// Builds pi(x_1^e_1, ...) from entries (rho, x, e) with phi summand rho x S_{2x+1}.
    pub fn from_entries(ctx: GroupContext, entries: &[(RhoLabel, HalfInt, Sign)]) -> Result<Self> {
        let mut summands = Vec::new();
        let mut eps = BTreeMap::new();
        for (rho, x, e) in entries {
            if x.twice() < 0 {
                return Err(Error::Precondition(format!(
                    "tempered exponent {x} is negative"
                )));
            }
            let a = (x.twice() + 1) as u32;
            if let Some(prev) = eps.insert((rho.clone(), a), *e) {
                if prev != *e {
                    return Err(Error::Precondition(format!("inconsistent sign at ({x})")));
                }
            }
            summands.push(Summand::new(rho.clone(), a, 1));
        }
        Ok(TemperedParamWithSign {
            phi: AParameter::new(ctx, summands),
            eps,
        })
    }

    /// Entries (rho, x, e) in sorted order, repeated by multiplicity.
    pub fn entries(&self) -> Vec<(RhoLabel, HalfInt, Sign)> {
        self.phi
            .summands()
            .iter()
            .map(|s| {
                let e = self
                    .eps
                    .get(&(s.rho.clone(), s.a))
                    .copied()
                    .unwrap_or(Sign::Plus);
                (s.rho.clone(), HalfInt::from_twice(s.a as i64 - 1), e)
            })
            .collect()
    }

    /// `(1/2)^- (3/2)^+ ...`; non-trivial labels get an `@rho` suffix.
    pub fn render(&self) -> String {
        self.entries()
            .iter()
            .map(|(rho, x, e)| {
                if rho.is_trivial() {
                    format!("({x})^{e}")
                } else {
                    format!("({x})^{e}@{rho}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The with-multiplicity product of signs is +1.
    pub fn validate_sign_character(&self) -> Result<bool> {
        let mut prod = Sign::Plus;
        for s in self.phi.summands() {
            let e = self.eps.get(&(s.rho.clone(), s.a)).ok_or_else(|| {
                Error::Precondition(format!("incomplete character: no sign for S_{}", s.a))
            })?;
            prod = prod * *e;
        }
        Ok(prod == Sign::Plus)
    }
}
