//! Aggregation of heterogeneous expert priors under ambiguity.
//!
//! Experts suggest priors over a finite state space; the decision maker pools
//! them with a linear, multiple-weight, or dual-self rule (or, for contrast,
//! geometric pooling), conditions on realized events, and can probe the
//! resulting preferences with a seeded randomized axiom harness.
//!
//! Core math is generic over the scalar type via [`Real`]; `*64` aliases at
//! the crate root pin the common double-precision instantiation.

pub mod axiom_lab;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod prob;
pub mod rules;

pub use error::{Error, Result};

use num_traits::Float;

/// Scalar bound for all numeric code in the crate.
pub trait Real: Float + std::fmt::Debug + 'static {}
impl<T: Float + std::fmt::Debug + 'static> Real for T {}

/// Lossy literal lift from f64 into the working scalar type.
pub(crate) fn lit<F: Real>(x: f64) -> F {
    F::from(x).expect("literal representable in scalar type")
}

pub type Tolerance64 = prob::Tolerance<f64>;
pub type Belief64 = prob::Belief<f64>;
pub type Profile64 = prob::Profile<f64>;
pub type Act64 = prob::Act<f64>;
pub type Weight64 = rules::Weight<f64>;
pub type WeightSet64 = rules::WeightSet<f64>;
pub type Rule64 = rules::Rule<f64>;
