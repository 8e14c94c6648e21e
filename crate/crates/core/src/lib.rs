//! # gauss-rd
//!
//! Entanglement-information rate-distortion function `R^I(N_n)` of one-mode
//! Gaussian quantum sources, computed at the covariance-matrix level.
//!
//! The pipeline for a source CM `γ`:
//!
//! 1. [`williamson_one_mode`] gives the symplectic eigenvalue `γ_s` and the
//!    source mean photon number `N_s = (γ_s − 1)/2`.
//! 2. [`minimal_distortion`] finds the unit-determinant map `M*` minimizing the
//!    average of the quadratic distortion `½[(X_A − X_B)² + (P_A + P_B)²]`
//!    and the shape factor `Ω = Tr(M*ᵀγM*)/γ_s`.
//! 3. [`rate_distortion`] evaluates `max{0, I_c(δ = N_n², τ = N_n·Ω)}` through
//!    the closed-form symplectic spectrum of the noisy joint state.
//!
//! Every closed form has an independent covariance-matrix route
//! ([`joint_cm`], [`coherent_info_from_cm`], [`quadratic_expectation`],
//! [`brute_force_rate`]) so the two can be checked against each other.
//!
//! All routines are generic over [`Real`]; the `*64` aliases below fix the
//! scalar to `f64`, which is what the documented tolerances assume.

#![forbid(unsafe_code)]

pub mod channel;
pub mod coherent;
pub mod distortion;
pub mod error;
pub mod optimize;
pub mod ratedist;
pub mod scalar;
pub mod symcore;

pub use channel::{
    apply, finite_r_op, general_joint_cm, joint_cm, joint_cm_any_gain, normalize_gain, simon_condition,
    validate_channel, ChannelReport, GaussianChannel, JointCm, OperatorCm,
};
pub use coherent::{
    coherent_info, coherent_info_from_cm, d_values, entropy_derivative_ratio, explicit_noise, tau_from_t, DValues,
    NoiseParams,
};
pub use distortion::{
    average_distortion, build_form, canonical_distortion, canonical_distortion_with, form_expectation,
    minimal_distortion, thermal_m_star, thermal_min_distortion, thermal_omega, thermal_sinh_r, DistortionForm,
    DistortionReport, Gains, MinimalDistortion,
};
pub use error::{Error, Result};
pub use ratedist::{
    brute_force_rate, brute_force_with, clipping_distortion, pure_state_rate, rate_distortion, rate_point, rd_curve,
    rd_curve_with, summarize_source, BruteForce, GridSpec, RatePoint, SourceSummary,
};
pub use scalar::Real;
pub use symcore::{
    bosonic_entropy, check_uncertainty, gaussian_entropy, purification_block, purification_cm, quadratic_expectation,
    sqrt_psd, symplectic_eigenvalues, williamson_one_mode, CovMat, EntropyBase, SymplecticForm, UncertaintyReport,
    Williamson,
};

pub type CovMat64 = CovMat<f64>;
pub type GaussianChannel64 = GaussianChannel<f64>;
pub type JointCm64 = JointCm<f64>;
pub type OperatorCm64 = OperatorCm<f64>;
pub type NoiseParams64 = NoiseParams<f64>;
pub type DValues64 = DValues<f64>;
pub type DistortionReport64 = DistortionReport<f64>;
pub type MinimalDistortion64 = MinimalDistortion<f64>;
pub type RatePoint64 = RatePoint<f64>;
pub type SourceSummary64 = SourceSummary<f64>;
pub type BruteForce64 = BruteForce<f64>;
