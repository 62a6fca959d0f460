//! Decides the four members of the SO(31) packet with the shipped fixtures
//! and prints each verdict with its trace.

use emseg::arthur::{decide_arthur, FixtureDerivatives, FixtureEval};
use emseg::rewrite::{Bounds, RuleKernel};

fn main() {
    let derivatives = FixtureDerivatives::shipped();
    let eval = FixtureEval::shipped();
    for id in ["pi_ppp", "pi_mmp", "pi_mpm", "pi_pmm"] {
        let l = derivatives.pi(id).expect("shipped fixture names this id");
        let v = decide_arthur(l, &RuleKernel, &derivatives, &eval, &Bounds::default())
            .expect("valid data");
        println!("{id}: {}", v.status());
        for line in v.trace() {
            println!("    {line}");
        }
        for w in v.witnesses() {
            println!("    witness {}  psi = {}", w.ems.to_line(), w.psi);
        }
    }
}
