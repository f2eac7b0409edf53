//! Amalgam and fractional-mean norms on groups with a polynomial volume law.

pub mod amalgam;
pub mod boxes;
pub mod counterexample;
pub mod error;
pub mod exponent;
pub mod fracmean;
pub mod group;
pub mod measure;
pub mod partition;
pub mod scalar;
pub mod simplefn;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision instantiations, the ones the verification suite and CLI use.
pub type Point64 = group::Point<f64>;
pub type Group64 = group::GroupDescriptor<f64>;
pub type Box64 = boxes::HalfOpenBox<f64>;
pub type Exponent64 = exponent::Exponent<f64>;
pub type SimpleFunction64 = simplefn::SimpleFunction<f64>;
pub type Partition64 = partition::UniformPartition<f64>;
pub type Triple64 = fracmean::ExponentTriple<f64>;
pub type Grid64 = fracmean::RadiusGrid<f64>;

/// Single-precision instantiations.
pub type Point32 = group::Point<f32>;
pub type Group32 = group::GroupDescriptor<f32>;
pub type Box32 = boxes::HalfOpenBox<f32>;
pub type Exponent32 = exponent::Exponent<f32>;
pub type SimpleFunction32 = simplefn::SimpleFunction<f32>;
pub type Partition32 = partition::UniformPartition<f32>;
pub type Triple32 = fracmean::ExponentTriple<f32>;
pub type Grid32 = fracmean::RadiusGrid<f32>;
