//! Row DSL, one-line form and JSON mirror.

use serde::{Deserialize, Serialize};

use super::{Ems, ExtSegment};
use crate::error::{Error, Result};
use crate::foundation::{Family, GroupContext, HalfInt, RhoLabel, Sign};

impl Ems {
    /// Row DSL: a `group` header, then `[A,B]@rho l=<n> eta=<+1|-1>` per row.
    pub fn to_rows_text(&self) -> String {
        let mut out = self.ctx.header();
        out.push('\n');
        for (rho, rs) in self.blocks() {
            for r in rs {
                out.push_str(&format!(
                    "[{},{}]@{} l={} eta={:+}\n",
                    r.upper,
                    r.lower,
                    rho,
                    r.l,
                    r.eta.to_i8()
                ));
            }
        }
        out
    }

    /// Parses the row DSL. Blank lines and `#` comments are skipped; `@rho` defaults to `1`.
    pub fn parse_rows(text: &str) -> Result<Ems> {
        let mut ctx = None;
        let mut blocks: Vec<(RhoLabel, Vec<ExtSegment>)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = n + 1;
            let col = raw.find(line).unwrap_or(0) + 1;
            if line.starts_with("group") {
                if ctx.is_some() {
                    return Err(Error::parse(lineno, col, "duplicate group header"));
                }
                ctx = Some(
                    GroupContext::parse_header(line)
                        .map_err(|e| Error::parse(lineno, col, e.to_string()))?,
                );
                continue;
            }
            if ctx.is_none() {
                return Err(Error::parse(
                    lineno,
                    col,
                    "missing `group <family> rank <n>` header",
                ));
            }
            let (rho, row) =
                parse_row_line(line).map_err(|(c, m)| Error::parse(lineno, col + c, m))?;
            match blocks.iter_mut().find(|(r, _)| *r == rho) {
                Some((_, rs)) => rs.push(row),
                None => blocks.push((rho, vec![row])),
            }
        }
        let ctx =
            ctx.ok_or_else(|| Error::parse(1, 1, "missing `group <family> rank <n>` header"))?;
        let mut e = Ems::empty(ctx);
        for (rho, rs) in blocks {
            e.set_rows(rho, rs);
        }
        Ok(e)
    }

    /// One-line form: `group Sp rank 4 | ([0,0],0,-) ([1,1],0,+)`.
    ///
    /// Non-trivial labels appear inside the bracket as `[A,B]@rho`.
    pub fn to_line(&self) -> String {
        let mut out = self.ctx.header();
        out.push_str(" |");
        for (rho, rs) in self.blocks() {
            for r in rs {
                let at = if rho.is_trivial() {
                    String::new()
                } else {
                    format!("@{rho}")
                };
                out.push_str(&format!(
                    " ([{},{}]{at},{},{})",
                    r.upper, r.lower, r.l, r.eta
                ));
            }
        }
        out
    }

    pub fn parse_line(text: &str) -> Result<Ems> {
        let (head, body) = text
            .split_once('|')
            .ok_or_else(|| Error::parse(1, 1, "expected `group <family> rank <n> | rows`"))?;
        let ctx = GroupContext::parse_header(head.trim())
            .map_err(|e| Error::parse(1, 1, e.to_string()))?;
        let mut e = Ems::empty(ctx);
        let mut blocks: Vec<(RhoLabel, Vec<ExtSegment>)> = Vec::new();
        let offset = head.len() + 1;
        let mut rest = body;
        let mut pos = offset;
        loop {
            let trimmed = rest.trim_start();
            pos += rest.len() - trimmed.len();
            rest = trimmed;
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(Error::parse(1, pos + 1, "expected `(`"));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::parse(1, pos + 1, "unclosed `(`"))?;
            let inner = &rest[1..close];
            let (rho, row) = parse_tuple(inner).map_err(|m| Error::parse(1, pos + 2, m))?;
            match blocks.iter_mut().find(|(r, _)| *r == rho) {
                Some((_, rs)) => rs.push(row),
                None => blocks.push((rho, vec![row])),
            }
            pos += close + 1;
            rest = &rest[close + 1..];
        }
        for (rho, rs) in blocks {
            e.set_rows(rho, rs);
        }
        Ok(e)
    }

    pub fn to_json_value(&self) -> EmsJson {
        let rows = self
            .blocks()
            .flat_map(|(rho, rs)| {
                rs.iter().map(move |r| RowJson {
                    rho: rho.to_string(),
                    a: r.upper.twice(),
                    b: r.lower.twice(),
                    l: r.l,
                    eta: r.eta,
                })
            })
            .collect();
        EmsJson {
            family: self.ctx.family,
            rank: self.ctx.rank,
            rows,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Ems> {
        let j: EmsJson = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        Ems::try_from(j)
    }
}

/// JSON mirror; A and B are doubled integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmsJson {
    pub family: Family,
    pub rank: u32,
    pub rows: Vec<RowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub rho: String,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub l: u32,
    pub eta: Sign,
}

impl TryFrom<EmsJson> for Ems {
    type Error = Error;
    fn try_from(j: EmsJson) -> Result<Ems> {
        let mut e = Ems::empty(GroupContext::new(j.family, j.rank));
        let mut blocks: Vec<(RhoLabel, Vec<ExtSegment>)> = Vec::new();
        for r in j.rows {
            let rho: RhoLabel = r.rho.parse()?;
            let row = ExtSegment::twice(r.a, r.b, r.l, r.eta);
            match blocks.iter_mut().find(|(x, _)| *x == rho) {
                Some((_, rs)) => rs.push(row),
                None => blocks.push((rho, vec![row])),
            }
        }
        for (rho, rs) in blocks {
            e.set_rows(rho, rs);
        }
        Ok(e)
    }
}

/// `[A,B]` or `[A,B]@rho`; returns (label, A, B, rest after the segment).
fn parse_segment(s: &str) -> std::result::Result<(RhoLabel, HalfInt, HalfInt, &str), String> {
    let s = s.trim_start();
    let body = s.strip_prefix('[').ok_or("expected `[`")?;
    let close = body.find(']').ok_or("unclosed `[`")?;
    let (a, b) = body[..close].split_once(',').ok_or("expected `A,B`")?;
    let a: HalfInt = a.parse().map_err(|e: Error| e.to_string())?;
    let b: HalfInt = b.parse().map_err(|e: Error| e.to_string())?;
    let mut rest = &body[close + 1..];
    let mut rho = RhoLabel::trivial();
    if let Some(r) = rest.strip_prefix('@') {
        let end = r
            .find(|c: char| c.is_whitespace() || c == ',')
            .unwrap_or(r.len());
        rho = r[..end].parse().map_err(|e: Error| e.to_string())?;
        rest = &r[end..];
    }
    if !(a - b).is_integer() {
        return Err(format!("[{a},{b}] mixes integers and half-integers"));
    }
    Ok((rho, a, b, rest))
}

fn parse_row_line(line: &str) -> std::result::Result<(RhoLabel, ExtSegment), (usize, String)> {
    let (rho, a, b, rest) = parse_segment(line).map_err(|m| (0, m))?;
    let at = |part: &str| line.find(part).unwrap_or(0);
    let mut l = None;
    let mut eta = None;
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("l", v)) => {
                l = Some(
                    v.parse::<u32>()
                        .map_err(|_| (at(tok), format!("bad l `{v}`")))?,
                )
            }
            Some(("eta", v)) => {
                eta = Some(Sign::parse(v).ok_or_else(|| (at(tok), format!("bad eta `{v}`")))?)
            }
            _ => return Err((at(tok), format!("unexpected `{tok}`"))),
        }
    }
    let l = l.ok_or((0, "missing l=".to_string()))?;
    let eta = eta.ok_or((0, "missing eta=".to_string()))?;
    Ok((rho, ExtSegment::new(a, b, l, eta)))
}

/// `[A,B]@rho,l,eta`.
fn parse_tuple(s: &str) -> std::result::Result<(RhoLabel, ExtSegment), String> {
    let (rho, a, b, rest) = parse_segment(s)?;
    let mut parts = rest.split(',').map(str::trim);
    if parts.next() != Some("") {
        return Err("expected `,` after segment".into());
    }
    let l: u32 = parts.next().and_then(|v| v.parse().ok()).ok_or("bad l")?;
    let eta = parts.next().and_then(Sign::parse).ok_or("bad eta")?;
    if parts.next().is_some() {
        return Err("trailing fields".into());
    }
    Ok((rho, ExtSegment::new(a, b, l, eta)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_roundtrip() {
        let text =
            "group Sp rank 4\n[0,0] l=0 eta=-1\n[1,1]@1 l=0 eta=+1\n[2,2] l=0 eta=-1 # last\n";
        let e = Ems::parse_rows(text).unwrap();
        assert_eq!(e.row_count(), 3);
        assert_eq!(Ems::parse_rows(&e.to_rows_text()).unwrap(), e);
        assert_eq!(Ems::parse_line(&e.to_line()).unwrap(), e);
        assert_eq!(Ems::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn rows_errors_have_positions() {
        let err = Ems::parse_rows("group Sp rank 4\n[0,0] l=x eta=-1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(Ems::parse_rows("[0,0] l=0 eta=-1\n").is_err());
        assert!(Ems::parse_rows("group Sp rank 4\n[1/2,0] l=0 eta=-1\n").is_err());
    }

    #[test]
    fn labels_in_line_form() {
        let e = Ems::parse_line("group SOodd rank 2 | ([1/2,1/2]@rho:s:2:O,0,-)").unwrap();
        let rho: RhoLabel = "rho:s:2:O".parse().unwrap();
        assert_eq!(e.rows(&rho).len(), 1);
        assert_eq!(Ems::parse_line(&e.to_line()).unwrap(), e);
    }
}
