//! Record-value distributions and relative-aging stochastic orders.
//!
//! This crate computes the laws of the n-th upper and lower record values of
//! a parametric lifetime distribution and checks, numerically on finite
//! grids, the aging-faster orders
//!
//! * `X ⪯_c Y`: `h_X / h_Y` non-decreasing (hazard rates),
//! * `X ⪯_b Y`: `r_X / r_Y` non-increasing (reversed hazard rates),
//!
//! together with the classical `st`, `hr` and `rh` orders and the
//! sufficient conditions under which an aging-faster relation between base
//! laws carries over to their records.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and JSON emission live in the companion `record-aging-cli` crate.
//!
//! Layout:
//!
//! * [`dist`]: base lifetime families with log-space evaluators.
//! * [`records`]: record laws and the `ξ`, `ψ`, `K` kernels.
//! * [`orders`]: grid verdicts for stochastic orders and TP₂/RR₂ kernels.
//! * [`theorems`]: supremum engine, theorem checks and worked examples.
//! * [`numerics`]: quadrature, golden-section search, limit extrapolation.
//! * [`sim`]: seeded Monte Carlo record sampling and KS distances.

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dist;
pub mod error;
pub mod numerics;
pub mod orders;
pub mod records;
pub mod sim;
pub mod special;
pub mod theorems;

pub use dist::{DistributionModel, Family};
pub use error::{Error, Result};
pub use numerics::{Direction, GridSpec, Spacing};
pub use orders::{LimitMode, LimitPair, OrderKind, OrderVerdict, Status, Witness};
pub use records::{RecordKind, RecordLaw};
pub use sim::{SampleBatch, SamplingMethod};
pub use theorems::{
    CurveSeries, ExampleBundle, ExampleId, Overall, SupLocation, SupSide, SupremumReport,
    TheoremId, TheoremReport,
};
