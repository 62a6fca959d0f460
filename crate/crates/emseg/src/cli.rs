//! The `emseg` command line.
//!
//! Exit status: 0 for a definite answer, 2 when the answer is Unknown or a
//! search was not exhausted, 1 for input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::arthur::{
    decide_arthur, ex_supp_of_langlands, lift_minus, lift_plus, step2_candidate, ArthurVerdict,
    FixtureDerivatives, FixtureEval, LanglandsData, Step2,
};
use crate::error::{Error, Result};
use crate::foundation::{HalfInt, RhoLabel};
use crate::multiseg::{parse_symbol, render_symbol, Ems};
use crate::rewrite::{
    enumerate_class, neighbors, strongly_equivalent, Bounds, Equivalence, Kernel, Layered,
    RuleKernel, TableKernel,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "emseg",
    version,
    about = "Extended multi-segments and Arthur-type decisions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Kernel table consulted before the built-in rules.
    #[arg(long, global = true)]
    pub kernel: Option<PathBuf>,
    /// Derivative fixture (default: the shipped one).
    #[arg(long, global = true)]
    pub derivatives: Option<PathBuf>,
    /// Evaluation fixture (default: the shipped one).
    #[arg(long, global = true)]
    pub eval: Option<PathBuf>,
    /// Largest phantom l tried by class searches.
    #[arg(long = "phantom-max", global = true)]
    pub phantom_max: Option<u32>,
    #[arg(long, global = true)]
    pub json: bool,
    /// List the raw states of each (C)-orbit.
    #[arg(long = "group-by-C", global = true)]
    pub group_by_c: bool,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Check the multi-segment conditions.
    Validate { file: PathBuf },
    /// Print psi_E.
    Psi { file: PathBuf },
    /// Print the diagonal restriction of psi_E.
    Dr { file: PathBuf },
    /// Extended cuspidal support of an E or of Langlands data (`.lng`).
    Exsupp { file: PathBuf },
    /// Draw the symbol of E.
    Render { file: PathBuf },
    /// Read a drawn symbol and print the row form.
    Parse { file: PathBuf },
    /// States one rewrite away.
    Neighbors { file: PathBuf },
    /// Enumerate the strong-equivalence class.
    Class { file: PathBuf },
    /// Are two multi-segments strongly equivalent?
    Equiv { first: PathBuf, second: PathBuf },
    /// The Step 2 parameter of Langlands data.
    Step2 { file: PathBuf },
    /// Apply a Step 1 lift.
    Lift {
        file: PathBuf,
        /// `+` or `-`.
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Counts k_0,k_1,...
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value = "1")]
        rho: String,
    },
    /// Decide whether Langlands data is of Arthur type.
    Decide { file: PathBuf },
}

/// Parses `args` (including the program name) and runs, writing to `out`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Reads E in any of the text forms: JSON, one-line, rows, or a drawn symbol.
pub fn load_ems(text: &str) -> Result<Ems> {
    let t = text.trim();
    if t.starts_with('{') {
        return Ems::from_json(t);
    }
    if !t.contains('\n') && t.contains('|') {
        return Ems::parse_line(t);
    }
    let body = t
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("group"));
    match body {
        Some(l) if l.trim_start().starts_with('[') => Ems::parse_rows(t),
        Some(_) => parse_symbol(text),
        None => Ems::parse_rows(t),
    }
}

struct Env {
    table: Option<TableKernel>,
}

impl Env {
    fn kernel(&self) -> Box<dyn Kernel + '_> {
        match &self.table {
            Some(t) => Box::new(Layered {
                table: t,
                fallback: &RuleKernel,
            }),
            None => Box::new(RuleKernel),
        }
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let env = Env {
        table: cli
            .kernel
            .as_deref()
            .map(|p| read(p).and_then(|t| TableKernel::parse(&t)))
            .transpose()?,
    };
    let kernel = env.kernel();
    let bounds = Bounds {
        phantom_l_max: cli.phantom_max,
        ..Bounds::default()
    };
    let ems = |p: &Path| read(p).and_then(|t| load_ems(&t));
    let lng = |p: &Path| read(p).and_then(|t| LanglandsData::parse(&t));
    let w =
        |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(|e| Error::Io(e.to_string()));
    match &cli.verb {
        Verb::Validate { file } => {
            let e = ems(file)?;
            let v = e.validate();
            if cli.json {
                let ids: Vec<String> = v.iter().map(ToString::to_string).collect();
                w(
                    out,
                    json!({ "valid": v.is_empty(), "violations": ids }).to_string(),
                )?;
            } else if v.is_empty() {
                w(out, "valid".into())?;
            } else {
                for x in &v {
                    w(out, x.to_string())?;
                }
            }
            Ok(if v.is_empty() { EXIT_OK } else { EXIT_INPUT })
        }
        Verb::Psi { file } => {
            let p = ems(file)?.psi_of();
            w(
                out,
                if cli.json {
                    serde_json::to_string(&p).map_err(|e| Error::Render(e.to_string()))?
                } else {
                    p.render()
                },
            )?;
            Ok(EXIT_OK)
        }
        Verb::Dr { file } => {
            w(out, ems(file)?.psi_of().diagonal_restriction().render())?;
            Ok(EXIT_OK)
        }
        Verb::Exsupp { file } => {
            let m = if file.extension().is_some_and(|x| x == "lng") {
                ex_supp_of_langlands(&lng(file)?)
            } else {
                ems(file)?.psi_of().ex_supp()
            };
            let items: Vec<String> = m
                .iter()
                .map(|((rho, x), n)| {
                    let base = if rho.is_trivial() {
                        x.to_string()
                    } else {
                        format!("{x}@{rho}")
                    };
                    if *n == 1 {
                        base
                    } else {
                        format!("{base}^{n}")
                    }
                })
                .collect();
            w(out, items.join(" "))?;
            Ok(EXIT_OK)
        }
        Verb::Render { file } => {
            let e = ems(file)?;
            w(
                out,
                if cli.json {
                    e.to_json()
                } else {
                    render_symbol(&e)?.trim_end().to_string()
                },
            )?;
            Ok(EXIT_OK)
        }
        Verb::Parse { file } => {
            let e = ems(file)?;
            w(
                out,
                if cli.json {
                    e.to_json()
                } else {
                    e.to_rows_text().trim_end().to_string()
                },
            )?;
            Ok(EXIT_OK)
        }
        Verb::Neighbors { file } => {
            let e = ems(file)?;
            let n = neighbors(&e, kernel.as_ref(), &bounds);
            if cli.json {
                let items: Vec<_> = n
                    .items
                    .iter()
                    .map(|(p, s)| json!({ "steps": p.iter().map(ToString::to_string).collect::<Vec<_>>(), "E": s.to_line() }))
                    .collect();
                let gaps: Vec<String> = n.gaps.iter().map(ToString::to_string).collect();
                w(
                    out,
                    json!({ "neighbors": items, "gaps": gaps, "bound_hit": n.bound_hit })
                        .to_string(),
                )?;
            } else {
                for (p, s) in &n.items {
                    let steps: Vec<String> = p.iter().map(ToString::to_string).collect();
                    w(out, format!("{} -> {}", steps.join(" ; "), s.to_line()))?;
                }
                for g in &n.gaps {
                    w(out, format!("gap: {g}"))?;
                }
            }
            Ok(if n.gaps.is_empty() && !n.bound_hit {
                EXIT_OK
            } else {
                EXIT_UNKNOWN
            })
        }
        Verb::Class { file } => {
            let e = ems(file)?;
            let c = enumerate_class(&e, kernel.as_ref(), &bounds);
            if cli.json {
                w(out, c.to_json(cli.group_by_c).to_string())?;
            } else {
                w(out, format!("members: {}", c.members.len()))?;
                for (m, x) in c.members.iter().enumerate() {
                    w(
                        out,
                        format!(
                            "E{} = {}    psi = {}",
                            m + 1,
                            x.to_line(),
                            x.psi_of().render()
                        ),
                    )?;
                    if cli.group_by_c {
                        for (i, r) in c.raw.iter().enumerate() {
                            if c.orbit[i] == m && r != x {
                                w(out, format!("    ~ {}", r.to_line()))?;
                            }
                        }
                    }
                }
                w(out, format!("exhausted: {}", c.exhausted))?;
                for g in &c.gaps {
                    w(out, format!("gap: {g}"))?;
                }
            }
            Ok(if c.exhausted { EXIT_OK } else { EXIT_UNKNOWN })
        }
        Verb::Equiv { first, second } => {
            let r = strongly_equivalent(&ems(first)?, &ems(second)?, kernel.as_ref(), &bounds);
            let (status, detail, code) = match &r {
                Equivalence::Yes(p) => (
                    "yes",
                    p.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ; "),
                    EXIT_OK,
                ),
                Equivalence::No(why) => ("no", why.clone(), EXIT_OK),
                Equivalence::Unknown(why) => ("unknown", why.clone(), EXIT_UNKNOWN),
            };
            if cli.json {
                w(
                    out,
                    json!({ "status": status, "detail": detail }).to_string(),
                )?;
            } else {
                w(out, format!("{status}: {detail}"))?;
            }
            Ok(code)
        }
        Verb::Step2 { file } => {
            let l = lng(file)?;
            let line = match step2_candidate(&l)? {
                Step2::Candidate(p) => p.render(),
                Step2::NotArthur { rho, z } => format!(
                    "not of Arthur type: k at ({rho},{z}) < k at ({rho},{})",
                    z + 1
                ),
            };
            w(out, line)?;
            Ok(EXIT_OK)
        }
        Verb::Lift {
            file,
            dir,
            x,
            k,
            rho,
        } => {
            let e = ems(file)?;
            let rho: RhoLabel = rho.parse()?;
            let x: HalfInt = x.parse()?;
            let counts = k
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Literal(format!("bad count `{s}`: {e}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            let lifted = match dir.as_str() {
                "+" => lift_plus(&e, &rho, x, &counts)?,
                "-" => lift_minus(&e, &rho, x, &counts)?,
                d => {
                    return Err(Error::Literal(format!(
                        "direction must be + or -, got `{d}`"
                    )))
                }
            };
            w(
                out,
                if cli.json {
                    lifted.to_json()
                } else {
                    render_symbol(&lifted)?.trim_end().to_string()
                },
            )?;
            Ok(EXIT_OK)
        }
        Verb::Decide { file } => {
            let l = lng(file)?;
            let d = match &cli.derivatives {
                Some(p) => FixtureDerivatives::parse(&read(p)?)?,
                None => FixtureDerivatives::shipped(),
            };
            let ev = match &cli.eval {
                Some(p) => FixtureEval::parse(&read(p)?)?,
                None => FixtureEval::shipped(),
            };
            let v = decide_arthur(&l, kernel.as_ref(), &d, &ev, &bounds)?;
            if cli.json {
                w(out, v.to_json().to_string())?;
            } else {
                w(out, v.status().to_string())?;
                for wt in v.witnesses() {
                    w(
                        out,
                        format!("witness: {}    psi = {}", wt.ems.to_line(), wt.psi.render()),
                    )?;
                }
                if let ArthurVerdict::Unknown { gaps, .. } = &v {
                    for g in gaps {
                        w(out, format!("gap: {g}"))?;
                    }
                }
                for t in v.trace() {
                    w(out, format!("# {t}"))?;
                }
            }
            Ok(if matches!(v, ArthurVerdict::Unknown { .. }) {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            })
        }
    }
}
