//! Shared numerical machinery: quadrature, special functions, seeded draws.

pub mod quadrature;
pub mod sampler;
pub mod special;

pub use quadrature::{integrate, integrate_semi_infinite, QuadratureSpec};
pub use sampler::DistributionSampler;
pub use special::{ci_si, erf, erfc, erfcx};
