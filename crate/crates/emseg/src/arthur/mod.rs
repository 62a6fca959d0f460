//! Langlands data, derivative bookkeeping and the Arthur-type decision.

mod decide;
mod langlands;
mod oracle;
mod steps;

pub use decide::{
    decide_arthur, list_all_psi, packet_candidates, ArthurVerdict, Witness, STEP2_CANDIDATE_CAP,
};
pub use langlands::{Delta, LanglandsData};
pub use oracle::{
    DerivativeAnswer, DerivativeOracle, DerivativeReport, Direction, EvalOracle,
    FixtureDerivatives, FixtureEval, Residual,
};
pub use steps::{
    check_m_consistency, ex_supp_of_langlands, k_profile, lift_minus, lift_plus, step2_candidate,
    Step2,
};
