//! Extended multi-segments for p-adic classical groups.
//!
//! The crate models A-parameters of good parity, extended multi-segments and
//! the rewrite operations (C), (UI) and (P) relating multi-segments that
//! define the same representation. On top of that it runs the decision
//! procedure that tells whether a representation given by Langlands data is
//! of Arthur type.
//!
//! Anything the combinatorics cannot decide by itself (derivatives, the map
//! from a multi-segment to its Langlands data) is supplied by oracles, which
//! ship as plain-text fixtures.

pub mod aparam;
pub mod arthur;
pub mod cli;
mod error;
pub mod foundation;
pub mod multiseg;
pub mod rewrite;

pub use aparam::{AParameter, ExSupp, Summand, TemperedParamWithSign};
pub use arthur::{
    decide_arthur, list_all_psi, ArthurVerdict, DerivativeOracle, EvalOracle, FixtureDerivatives,
    FixtureEval, LanglandsData,
};
pub use error::{Error, Result};
pub use foundation::{hi, Duality, Family, GroupContext, HalfInt, Parity, RhoLabel, Segment, Sign};
pub use multiseg::{Ems, ExtSegment, Violation};
pub use rewrite::{
    enumerate_class, neighbors, strongly_equivalent, Bounds, ClassEnumeration, Equivalence, Kernel,
    RewriteStep, RuleKernel, TableKernel,
};
