//! Point-to-point translational motion of flexible payloads that ends in
//! absolute quiescence.
//!
//! The motion law accelerates the carried frame with a single sine period
//! `u(t) = a·sin(p·t)` whose frequency `p = k/n` is tied to the payload's
//! natural frequency `k` through an integer multiple `n ≥ 2`. With that
//! timing the relative oscillation of the payload returns to rest exactly at
//! the end of the move.
//!
//! The crate is `no_std` (it needs `alloc` for sampled traces and filter
//! sections). File formats and the command-line front end live in the
//! `flexmove` crate.
//!
//! - [`profile`]: the motion law, its sampling and its moment conditions
//! - [`beam`]: stiffness and natural frequency of a cantilever with tip mass
//! - [`simulate`]: relative oscillation in closed form and by RK4, the action
//!   functional and end-of-motion residual reports
//! - [`signal`]: Butterworth design and zero-phase filtering
//! - [`analysis`]: sweeps over the period multiple, energy and suppression
//!   figures, matched vs. unmatched tables
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod beam;
mod error;
pub mod profile;
pub mod quad;
pub mod series;
pub mod signal;
pub mod simulate;

pub use error::{Error, Result};
pub use profile::{Mode, MotionSample, MotionSpec};
pub use series::TimeSeries;
