//! Analytic discs into G₃ and their lifts into Ω₃.

pub mod bounds;
pub mod lift;
pub mod optimize;
pub mod polymap;
pub mod simplex;

pub use bounds::{
    boundary_margin, lempert_upper, relation3_residual, rescale_disc, weighted_disc, DiscCertificate, UpperBound,
    DEFAULT_BOUNDARY_SAMPLES, VERIFY_BOUNDARY_SAMPLES,
};
pub use lift::{full_lift, tilde_lift, LiftedDisc, TildeLift, SIGMA_CHECK_SAMPLES};
pub use optimize::{optimize_disc, DiscConstraints, OptimizedDisc};
pub use polymap::{PolyMap3, DEFAULT_MAX_DEGREE};
