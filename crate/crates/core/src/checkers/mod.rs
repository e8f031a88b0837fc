//! Checkers for the single-user feedback-gain conditions.

pub mod additive;
pub mod classes;
pub mod scaling;
pub mod single_rate;
pub mod thm3;
pub mod thm4;

pub use additive::{
    check_lemma1, check_lemma2, verify_additive, z_channel, AdditivityReport, AdditivityViolation,
    GroupSpec, Lemma2Report,
};
pub use classes::{equivalence_classes, EquivClass, EquivClassPartition};
pub use scaling::{erasure_scaling_check, ScalingReport, WeightGap};
pub use single_rate::{single_rate_capacity, Candidate, SingleRate};
pub use thm3::{
    cf_point, cf_rate_curve, check_thm3, evaluate_pair, CFCurve, PairEvaluation, Thm3Report,
    Thm3Witness,
};
pub use thm4::{check_thm4, Conclusion, Thm4Evidence, Thm4Report};
