//! Checks of the two conjectures and the propositions they build on.

pub mod conj1;
pub mod conj2;
pub mod periods;
pub mod report;

pub use conj1::{conj1_audit_census, conj1_audit_row, conj1_scan, CONJ1_EXPONENTS};
pub use conj2::{
    conj2_exceptional_set, conj2_period, conj2_predicted_frac, conj2_verify, truncated_shift_sum,
    Conj2Predictor, ExceptionalClassSet,
};
pub use periods::{
    frac_binom, frac_double_binom_2p, frac_period, lu_tsai_period, prop_frac2_2p, prop_frac_p,
};
pub use report::{AuditReport, Scope, Violation, ViolationKind};
