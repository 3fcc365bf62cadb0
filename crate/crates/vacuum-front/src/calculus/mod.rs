//! Discrete Sobolev machinery: mixed finite-difference/spectral norms on the
//! space-time slab and its boundary, Moser-inequality measurement, the
//! mollifier family S_theta, the regularization schedule, and the
//! boundary-to-interior lifting operator.

pub mod lifting;
pub mod norms;
pub mod ops;
pub mod schedule;
pub mod smoothing;

pub use lifting::lifting_operator;
pub use norms::{
    l2_norm, l2_norm_boundary, l2_norm_state, layerwise_norm, moser_check, slab_sobolev_norm,
    sobolev_norm, sobolev_norm_boundary, sobolev_norm_state, tangential_norm, S_CAP,
};
pub use schedule::{theta_schedule, ThetaSchedule};
pub use smoothing::{measure_smoothing_properties, SmoothingFamily, SmoothingReport};
