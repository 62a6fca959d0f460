//! Symbol blocks: one column per exponent, one line per row.
//!
//! A row ([A,B],l,eta) is drawn as l copies of `<` from column B, alternating
//! `+`/`-` starting with eta, and l copies of `>` ending at column A. Labels are
//! right-aligned in cells of equal width and glyphs sit under the last
//! character of their column label.

use super::{Ems, ExtSegment};
use crate::error::{Error, Result};
use crate::foundation::{GroupContext, HalfInt, RhoLabel, Sign};

pub fn render_symbol(e: &Ems) -> Result<String> {
    let mut out = e.ctx.header();
    out.push('\n');
    for (rho, rs) in e.blocks() {
        if !rho.is_trivial() {
            out.push_str(&format!("@{rho}\n"));
        }
        out.push_str(&render_block(rs)?);
    }
    Ok(out)
}

fn render_block(rs: &[ExtSegment]) -> Result<String> {
    for r in rs {
        if r.b() < 1 || !r.l_in_range() {
            return Err(Error::Render(format!("cannot draw {r}")));
        }
    }
    let lo = rs.iter().map(|r| r.lower).min().unwrap_or(HalfInt::ZERO);
    let hi = rs.iter().map(|r| r.upper).max().unwrap_or(HalfInt::ZERO);
    let cols: Vec<HalfInt> = (0..=(hi - lo).twice() / 2).map(|k| lo + k).collect();
    let labels: Vec<String> = cols.iter().map(ToString::to_string).collect();
    let w = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = labels
        .iter()
        .map(|s| format!("{s:>w$}"))
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    for r in rs {
        let mut cells = vec![' '; cols.len()];
        let start = ((r.lower - lo).twice() / 2) as usize;
        let b = r.b() as usize;
        let l = r.l as usize;
        for (k, cell) in cells[start..start + b].iter_mut().enumerate() {
            *cell = if k < l {
                '<'
            } else if k >= b - l {
                '>'
            } else if (k - l).is_multiple_of(2) {
                r.eta.glyph()
            } else {
                (-r.eta).glyph()
            };
        }
        let line = cells
            .iter()
            .map(|c| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

/// Inverse of [`render_symbol`] up to weak equivalence.
pub fn parse_symbol(text: &str) -> Result<Ems> {
    let mut ctx: Option<GroupContext> = None;
    let mut rho = RhoLabel::trivial();
    let mut cols: Option<Vec<(usize, HalfInt)>> = None;
    let mut blocks: Vec<(RhoLabel, Vec<ExtSegment>)> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let lineno = n + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t.starts_with("group") {
            ctx = Some(
                GroupContext::parse_header(t)
                    .map_err(|e| Error::parse(lineno, 1, e.to_string()))?,
            );
            continue;
        }
        if let Some(r) = t.strip_prefix('@') {
            rho = r
                .parse()
                .map_err(|e: Error| Error::parse(lineno, 2, e.to_string()))?;
            cols = None;
            continue;
        }
        if t.chars().any(|c| c.is_ascii_digit()) {
            cols = Some(parse_header(line, lineno)?);
            continue;
        }
        let cs = cols
            .as_ref()
            .ok_or_else(|| Error::parse(lineno, 1, "row before column header"))?;
        let row = parse_row(line, cs, lineno)?;
        match blocks.iter_mut().find(|(x, _)| *x == rho) {
            Some((_, rs)) => rs.push(row),
            None => blocks.push((rho.clone(), vec![row])),
        }
    }
    let ctx = ctx.ok_or_else(|| Error::parse(1, 1, "missing `group <family> rank <n>` header"))?;
    let mut e = Ems::empty(ctx);
    for (r, rs) in blocks {
        e.set_rows(r, rs);
    }
    Ok(e)
}

/// Column labels with the index of their last character.
fn parse_header(line: &str, lineno: usize) -> Result<Vec<(usize, HalfInt)>> {
    let mut cols = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() {
            i += 1;
        }
        let tok: String = chars[start..i].iter().collect();
        let v: HalfInt = tok
            .parse()
            .map_err(|_| Error::parse(lineno, start + 1, format!("bad column label `{tok}`")))?;
        if let Some(&(_, prev)) = cols.last() {
            if v != prev + 1 {
                return Err(Error::parse(
                    lineno,
                    start + 1,
                    "column labels must increase by 1",
                ));
            }
        }
        cols.push((i - 1, v));
    }
    Ok(cols)
}

fn parse_row(line: &str, cols: &[(usize, HalfInt)], lineno: usize) -> Result<ExtSegment> {
    let mut glyphs: Vec<(usize, char)> = Vec::new();
    for (pos, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            continue;
        }
        if !"<>+-".contains(c) {
            return Err(Error::parse(
                lineno,
                pos + 1,
                format!("unknown glyph `{c}`"),
            ));
        }
        let col = cols
            .iter()
            .position(|&(end, _)| end == pos)
            .ok_or_else(|| Error::parse(lineno, pos + 1, "glyph not aligned with a column"))?;
        glyphs.push((col, c));
    }
    if glyphs.is_empty() {
        return Err(Error::parse(lineno, 1, "empty row"));
    }
    if glyphs.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::parse(lineno, 1, "row has a gap"));
    }
    let s: Vec<char> = glyphs.iter().map(|g| g.1).collect();
    let l = s.iter().take_while(|&&c| c == '<').count();
    let r = s.iter().rev().take_while(|&&c| c == '>').count();
    if l != r || l + r > s.len() {
        return Err(Error::parse(lineno, 1, "`<`/`>` count mismatch"));
    }
    let mid = &s[l..s.len() - r];
    if mid.iter().any(|c| !matches!(c, '+' | '-')) {
        return Err(Error::parse(lineno, 1, "brackets inside the sign run"));
    }
    if mid.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::parse(lineno, 1, "signs do not alternate"));
    }
    let eta = match mid.first() {
        Some('-') => Sign::Minus,
        _ => Sign::Plus,
    };
    let lower = cols[glyphs[0].0].1;
    let upper = cols[glyphs[glyphs.len() - 1].0].1;
    Ok(ExtSegment::new(upper, lower, l as u32, eta))
}
