//! Checks of the arising theorem and its consequences.

pub mod checks;
pub mod plan;
pub mod report;

pub use checks::{
    check_corollary2, check_corollary3, check_frames, check_prop5, check_theorem1, explore_problem5, search_nonarising_rank1,
    survey_theorem1, VerifyError,
};
pub use plan::{all_subspaces, Mode, SamplePlan};
pub use report::{CheckReport, ReportKind, Witness};
