//! Command-line front end for `gauss-rd`: state and channel inspection,
//! rate-distortion points and curves as CSV, the six-curve purity sweep, and
//! a seeded verification suite that checks every closed form against its
//! covariance-matrix oracle.

#![forbid(unsafe_code)]

pub mod app;
pub mod figure;
pub mod format;
pub mod state;
pub mod verify;

pub use app::{run, CliError};
