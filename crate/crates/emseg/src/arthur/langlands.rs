//! Langlands data L(D[x_1,y_1], ..., D[x_r,y_r]; pi(phi, eps)).

use std::fmt;

use crate::aparam::{ExSupp, TemperedParamWithSign};
use crate::error::{Error, Result};
use crate::foundation::{GroupContext, HalfInt, RhoLabel, Sign};

/// A factor D_rho[x, y] with x >= y.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Delta {
    pub rho: RhoLabel,
    pub x: HalfInt,
    pub y: HalfInt,
}

/// Langlands data with factors kept sorted by x + y.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LanglandsData {
    pub ctx: GroupContext,
    deltas: Vec<Delta>,
    pub tempered: TemperedParamWithSign,
}

impl LanglandsData {
    pub fn new(ctx: GroupContext, mut deltas: Vec<Delta>, tempered: TemperedParamWithSign) -> Self {
        deltas.sort_by_key(|d| (d.x + d.y, d.rho.clone(), d.x));
        let mut tempered = tempered;
        tempered.phi.ctx = ctx;
        LanglandsData {
            ctx,
            deltas,
            tempered,
        }
    }

    pub fn deltas(&self) -> &[Delta] {
        &self.deltas
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty() && self.tempered.phi.summands().is_empty()
    }

    /// Labels occurring anywhere in the data.
    pub fn labels(&self) -> Vec<RhoLabel> {
        let mut out: Vec<RhoLabel> = self.deltas.iter().map(|d| d.rho.clone()).collect();
        out.extend(self.tempered.phi.summands().iter().map(|s| s.rho.clone()));
        out.sort();
        out.dedup();
        out
    }

    /// Dimension of the L-parameter: each factor counts twice.
    pub fn dual_dim(&self) -> u64 {
        let d: u64 = self
            .deltas
            .iter()
            .map(|d| 2 * d.rho.dim as u64 * ((d.x - d.y).twice() / 2 + 1).max(0) as u64)
            .sum();
        d + self.tempered.phi.total_dim()
    }

    /// Problems with the data; empty when valid and of good parity.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        for d in &self.deltas {
            if !(d.x - d.y).is_integer() || d.x < d.y {
                v.push(format!("bad factor D[{},{}]", d.x, d.y));
                continue;
            }
            if (d.x + d.y).twice() >= 0 {
                v.push(format!("factor D[{},{}] has x + y >= 0", d.x, d.y));
            }
            let n = (d.x.abs().twice() + 1) as u64;
            if !self.ctx.good_parity(d.rho.duality, n, 1) {
                v.push(format!("factor D[{},{}] is not of good parity", d.x, d.y));
            }
        }
        if !self.tempered.phi.is_good_parity() {
            v.push("tempered part is not of good parity".into());
        }
        match self.tempered.validate_sign_character() {
            Ok(true) => {}
            Ok(false) => v.push("tempered sign character has product -1".into()),
            Err(e) => v.push(e.to_string()),
        }
        if self.dual_dim() != self.ctx.dual_dim() {
            v.push(format!(
                "dimension {} does not match {}",
                self.dual_dim(),
                self.ctx.dual_dim()
            ));
        }
        v
    }

    pub fn ex_supp(&self) -> ExSupp {
        let mut m = ExSupp::new();
        let mut add = |rho: &RhoLabel, lo: HalfInt, hi: HalfInt| {
            let mut t = lo;
            while t <= hi {
                *m.entry((rho.clone(), t)).or_default() += 1;
                t = t + 1;
            }
        };
        for d in &self.deltas {
            add(&d.rho, d.y, d.x);
            add(&d.rho, -d.x, -d.y);
        }
        for s in self.tempered.phi.summands() {
            let h = HalfInt::from_twice(s.a as i64 - 1);
            add(&s.rho, -h, h);
        }
        m
    }

    /// One-line text: `group F rank n L( D[x,y], ... ; (x)^e ... )`.
    pub fn render(&self) -> String {
        let ds: Vec<String> = self
            .deltas
            .iter()
            .map(|d| {
                if d.rho.is_trivial() {
                    format!("D[{},{}]", d.x, d.y)
                } else {
                    format!("D[{},{}]@{}", d.x, d.y, d.rho)
                }
            })
            .collect();
        format!(
            "{} L( {} ; {} )",
            self.ctx.header(),
            ds.join(", "),
            self.tempered.render()
        )
        .replace("(  ;", "( ;")
        .replace(";  )", "; )")
    }

    /// Parses the Langlands DSL; `#` comments and line breaks are allowed.
    pub fn parse(text: &str) -> Result<Self> {
        let joined: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ");
        let s = joined.trim();
        let open = s
            .find("L(")
            .ok_or_else(|| Error::parse(1, 1, "expected `L(`"))?;
        let ctx = GroupContext::parse_header(s[..open].trim())
            .map_err(|e| Error::parse(1, 1, e.to_string()))?;
        let body = s[open + 2..]
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(1, s.len(), "expected closing `)`"))?;
        let (dpart, tpart) = body
            .split_once(';')
            .ok_or_else(|| Error::parse(1, open + 3, "expected `;`"))?;
        let deltas = parse_deltas(dpart).map_err(|m| Error::parse(1, open + 3, m))?;
        let mut entries = Vec::new();
        for tok in tpart.split_whitespace() {
            entries
                .push(parse_tempered(tok).map_err(|m| Error::parse(1, open + 3 + dpart.len(), m))?);
        }
        let tempered = TemperedParamWithSign::from_entries(ctx, &entries)?;
        Ok(LanglandsData::new(ctx, deltas, tempered))
    }
}

impl fmt::Display for LanglandsData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_deltas(s: &str) -> std::result::Result<Vec<Delta>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("D[")
            .ok_or_else(|| format!("expected `D[` at `{rest}`"))?;
        let close = body.find(']').ok_or("unclosed `D[`")?;
        let (x, y) = body[..close].split_once(',').ok_or("expected `x,y`")?;
        let x: HalfInt = x.parse().map_err(|e: Error| e.to_string())?;
        let y: HalfInt = y.parse().map_err(|e: Error| e.to_string())?;
        rest = &body[close + 1..];
        let mut rho = RhoLabel::trivial();
        if let Some(r) = rest.strip_prefix('@') {
            let end = r
                .find(|c: char| c == ',' || c.is_whitespace())
                .unwrap_or(r.len());
            rho = r[..end].parse().map_err(|e: Error| e.to_string())?;
            rest = &r[end..];
        }
        out.push(Delta { rho, x, y });
        rest = rest.trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

fn parse_tempered(tok: &str) -> std::result::Result<(RhoLabel, HalfInt, Sign), String> {
    let (body, rho) = match tok.split_once('@') {
        Some((b, r)) => (b, r.parse::<RhoLabel>().map_err(|e| e.to_string())?),
        None => (tok, RhoLabel::trivial()),
    };
    let (x, e) = body
        .split_once(")^")
        .ok_or_else(|| format!("expected `(x)^e`, got `{tok}`"))?;
    let x: HalfInt = x
        .strip_prefix('(')
        .ok_or("expected `(`")?
        .parse()
        .map_err(|e: Error| e.to_string())?;
    let e = Sign::parse(e).ok_or_else(|| format!("bad sign in `{tok}`"))?;
    Ok((rho, x, e))
}
