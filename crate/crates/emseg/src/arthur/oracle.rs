//! Derivative and evaluation oracles, with fixture-backed implementations.

use std::collections::BTreeMap;
use std::fmt;

use super::LanglandsData;
use crate::error::{Error, Result};
use crate::foundation::{HalfInt, RhoLabel};
use crate::multiseg::Ems;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Plus,
    Minus,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Plus => "+",
            Direction::Minus => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Data(LanglandsData),
    /// An id with no `PI` binding.
    Opaque(String),
}

/// The cascade [(x, k_0), (x +- 1, k_1), ...; residual].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeReport {
    pub rho: RhoLabel,
    pub direction: Direction,
    pub x: HalfInt,
    pub counts: Vec<u32>,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivativeAnswer {
    Report(DerivativeReport),
    /// Certified: no derivative in this direction.
    Zero,
    NoData,
}

pub trait DerivativeOracle {
    fn query(&self, pi: &LanglandsData, rho: &RhoLabel, direction: Direction) -> DerivativeAnswer;
}

pub trait EvalOracle {
    /// Langlands data of pi(E), when known.
    fn langlands_of(&self, e: &Ems) -> Option<LanglandsData>;
    /// Every recorded E with pi(E) = pi.
    fn ems_of(&self, pi: &LanglandsData) -> Vec<Ems>;
}

#[derive(Clone, Debug)]
enum DerivEntry {
    Report {
        x: HalfInt,
        counts: Vec<u32>,
        residual: String,
    },
    Zero,
}

/// Derivative fixture.
///
/// ```text
/// PI <id> = <langlands>
/// D <id> <rho> <+|-> x=<v> k=<k0,k1,...> -> <id'>
/// D <id> <rho> <+|-> none
/// ```
#[derive(Clone, Debug, Default)]
pub struct FixtureDerivatives {
    pis: BTreeMap<String, LanglandsData>,
    entries: BTreeMap<(String, RhoLabel, Direction), DerivEntry>,
}

const SHIPPED_DERIVATIVES: &str = include_str!("../../fixtures/derivatives.txt");
const SHIPPED_EVAL: &str = include_str!("../../fixtures/eval.txt");

impl FixtureDerivatives {
    pub fn shipped() -> Self {
        FixtureDerivatives::parse(SHIPPED_DERIVATIVES).expect("shipped derivative fixture parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut f = FixtureDerivatives::default();
        for (n, raw) in text.lines().enumerate() {
            let lineno = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| Error::parse(lineno, 1, m);
            if let Some(rest) = line.strip_prefix("PI ") {
                let (id, l) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `PI <id> = ...`".into()))?;
                let l = LanglandsData::parse(l).map_err(|e| err(e.to_string()))?;
                f.pis.insert(id.trim().to_string(), l);
            } else if let Some(rest) = line.strip_prefix("D ") {
                let t: Vec<&str> = rest.split_whitespace().collect();
                if t.len() < 4 {
                    return Err(err("expected `D <id> <rho> <+|-> ...`".into()));
                }
                let rho: RhoLabel = t[1].parse().map_err(|e: Error| err(e.to_string()))?;
                let dir = match t[2] {
                    "+" => Direction::Plus,
                    "-" => Direction::Minus,
                    d => return Err(err(format!("bad direction `{d}`"))),
                };
                let entry = if t[3] == "none" && t.len() == 4 {
                    DerivEntry::Zero
                } else {
                    if t.len() != 7 || t[5] != "->" {
                        return Err(err("expected `x=<v> k=<...> -> <id>`".into()));
                    }
                    let x = t[3]
                        .strip_prefix("x=")
                        .ok_or_else(|| err("expected x=".into()))?;
                    let x: HalfInt = x.parse().map_err(|e: Error| err(e.to_string()))?;
                    let k = t[4]
                        .strip_prefix("k=")
                        .ok_or_else(|| err("expected k=".into()))?;
                    let counts = k
                        .split(',')
                        .map(|c| {
                            c.trim()
                                .parse::<u32>()
                                .map_err(|e| err(format!("bad count `{c}`: {e}")))
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    if counts.is_empty() || counts[0] == 0 {
                        return Err(err("k_0 must be positive".into()));
                    }
                    DerivEntry::Report {
                        x,
                        counts,
                        residual: t[6].to_string(),
                    }
                };
                f.entries.insert((t[0].to_string(), rho, dir), entry);
            } else {
                return Err(err(format!("unknown record `{line}`")));
            }
        }
        Ok(f)
    }

    pub fn pi(&self, id: &str) -> Option<&LanglandsData> {
        self.pis.get(id)
    }

    fn id_of(&self, pi: &LanglandsData) -> Option<&str> {
        self.pis
            .iter()
            .find(|(_, l)| *l == pi)
            .map(|(id, _)| id.as_str())
    }
}

impl DerivativeOracle for FixtureDerivatives {
    fn query(&self, pi: &LanglandsData, rho: &RhoLabel, direction: Direction) -> DerivativeAnswer {
        let Some(id) = self.id_of(pi) else {
            return DerivativeAnswer::NoData;
        };
        match self.entries.get(&(id.to_string(), rho.clone(), direction)) {
            None => DerivativeAnswer::NoData,
            Some(DerivEntry::Zero) => DerivativeAnswer::Zero,
            Some(DerivEntry::Report {
                x,
                counts,
                residual,
            }) => DerivativeAnswer::Report(DerivativeReport {
                rho: rho.clone(),
                direction,
                x: *x,
                counts: counts.clone(),
                residual: match self.pis.get(residual) {
                    Some(l) => Residual::Data(l.clone()),
                    None => Residual::Opaque(residual.clone()),
                },
            }),
        }
    }
}

/// Evaluation fixture: `EVAL <one-line E> = <langlands>`.
#[derive(Clone, Debug, Default)]
pub struct FixtureEval {
    entries: Vec<(Ems, LanglandsData)>,
}

impl FixtureEval {
    pub fn shipped() -> Self {
        FixtureEval::parse(SHIPPED_EVAL).expect("shipped eval fixture parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut f = FixtureEval::default();
        for (n, raw) in text.lines().enumerate() {
            let lineno = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix("EVAL ")
                .ok_or_else(|| Error::parse(lineno, 1, format!("unknown record `{line}`")))?;
            let (e, l) = rest
                .split_once(" = ")
                .ok_or_else(|| Error::parse(lineno, 1, "expected `EVAL <E> = <langlands>`"))?;
            let e = Ems::parse_line(e).map_err(|x| Error::parse(lineno, 1, x.to_string()))?;
            let l = LanglandsData::parse(l).map_err(|x| Error::parse(lineno, 1, x.to_string()))?;
            f.entries.push((e, l));
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl EvalOracle for FixtureEval {
    fn langlands_of(&self, e: &Ems) -> Option<LanglandsData> {
        self.entries
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, l)| l.clone())
    }

    fn ems_of(&self, pi: &LanglandsData) -> Vec<Ems> {
        self.entries
            .iter()
            .filter(|(_, l)| l == pi)
            .map(|(e, _)| e.clone())
            .collect()
    }
}
