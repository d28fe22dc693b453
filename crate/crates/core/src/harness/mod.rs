//! Term-by-term evaluation of the inequalities, sharpness sweeps and the dual-norm
//! campaign.

pub mod battery;
pub mod campaign;
pub mod eval;
pub mod identities;
pub mod report;
pub mod sweep;
pub mod theorems;

pub use campaign::{refined_cs_campaign, CampaignSummary, HistogramBin};
pub use eval::{varrho, Evaluator, Integrals, PointData, Route};
pub use identities::{reverse_identity_check, ReverseIdentitySummary};
pub use report::{Check, Extrapolation, InequalityReport, SweepRow, SweepTable, Term};
pub use sweep::{default_eps, hardy_sharpness_sweep, rellich_sharpness_sweep, SweepParams};
pub use theorems::{
    bv_constant, gbeta_report, hardy_bv_report, hardy_report, poincare_constant, poincare_report, rellich_bv_report,
    rellich_report, uncertainty_report, GBETA_BAND,
};
