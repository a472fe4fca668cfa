//! One verifier per main result. Each reduces its statement to exact
//! polynomial identities over the Lagrangian family and returns a
//! [`VerificationReport`].
//!
//! Suites for the supporting lemmas on Dickson invariants and for the
//! structural counts live in [`structure`].

mod fseq;
mod kernel;
mod nilpotence;
mod rank_two;
pub mod structure;

use crate::report::VerificationReport;

pub use fseq::{compute_f_sequence, FSequence};
pub use kernel::verify_joint_kernel;
pub use nilpotence::{
    lemma_7_1_diagnostics, verify_lemma_7_1, verify_prop_6_4, verify_pth_power_control, verify_theorem_5_2,
    verify_theorem_5_2_all, verify_thm_pth_power, verify_thm_pth_power_all,
};
pub use rank_two::{verify_lemma_8_3, verify_prop_8_1};

/// The default degree bound `2(p^n − p^{n−1})` for ideal-slice comparisons.
pub fn default_degree_bound(p: u32, n: usize) -> u32 {
    let n = n as u32;
    if n == 0 {
        return 2;
    }
    2 * (p.pow(n) - p.pow(n - 1))
}

/// Whether every report passed.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}
