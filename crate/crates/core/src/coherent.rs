//! Coherent information of the noisy joint state: closed form in the noise
//! invariants, and the covariance-matrix route used to cross-check it.

use nalgebra::{Matrix2, SymmetricEigen};

use crate::channel::JointCm;
use crate::error::{domain, Result};
use crate::scalar::{lit, Real};
use crate::symcore::{bosonic_entropy, gaussian_entropy, williamson_one_mode, CovMat, EntropyBase, SymplecticForm};

/// Scalar invariants feeding the closed-form coherent information.
///
/// `delta` is `¼·det N` and `tau` is `½·Tr` of the noise matrix after it has
/// been moved into the frame where the source is thermal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams<T> {
    pub n_s: T,
    pub delta: T,
    pub tau: T,
}

impl<T: Real> NoiseParams<T> {
    /// Checks nonnegativity and `τ ≥ 2√δ` (to 1e-12 relative).
    pub fn new(n_s: T, delta: T, tau: T) -> Result<Self> {
        if [n_s, delta, tau].iter().any(|v| !v.is_finite() || *v < T::zero()) {
            return Err(domain("noise parameters must be finite and nonnegative"));
        }
        let two_root = lit::<T>(2.0) * delta.sqrt();
        if tau < two_root - lit::<T>(1e-12) * T::one().max(tau) {
            return Err(domain(format!("τ = {tau} < 2√δ = {two_root}: no real noise matrix")));
        }
        Ok(Self { n_s, delta, tau })
    }

    /// `x = δ + (N_s + ½)τ`.
    pub fn x(&self) -> T {
        self.delta + (self.n_s + lit::<T>(0.5)) * self.tau
    }
}

/// Halved symplectic eigenvalues: `d0` of the output mode, `d1 ≥ d2` of the
/// joint state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DValues<T> {
    pub d0: T,
    pub d1: T,
    pub d2: T,
}

/// `d0 = √(x + (N_s+½)²)`, `d1,2 = √(½[x + ½ ± √(x² − 4N_s(N_s+1)δ)])`.
pub fn d_values<T: Real>(p: &NoiseParams<T>) -> Result<DValues<T>> {
    let half = lit::<T>(0.5);
    let x = p.x();
    let nsh = p.n_s + half;
    let disc = x * x - lit::<T>(4.0) * p.n_s * (p.n_s + T::one()) * p.delta;
    if disc < -lit::<T>(1e-12) * T::one().max(x * x) {
        return Err(domain(format!(
            "negative discriminant {disc}: (δ, τ) do not describe a physical noise matrix"
        )));
    }
    let root = disc.max(T::zero()).sqrt();
    // Grouped so that N_s = 0 (root = x) gives d1 = d0 and d2 = ½ exactly.
    let quarter = lit::<T>(0.25);
    Ok(DValues {
        d0: (x + nsh * nsh).sqrt(),
        d1: (half * (x + root) + quarter).sqrt(),
        d2: (half * (x - root) + quarter).max(T::zero()).sqrt(),
    })
}

fn g_of_half_shift<T: Real>(d: T, base: EntropyBase) -> Result<T> {
    bosonic_entropy((d - lit::<T>(0.5)).max(T::zero()), base)
}

/// `I_c = g(d0 − ½) − g(d1 − ½) − g(d2 − ½)`, unclipped.
pub fn coherent_info<T: Real>(p: &NoiseParams<T>, base: EntropyBase) -> Result<T> {
    let d = d_values(p)?;
    Ok(g_of_half_shift(d.d0, base)? - g_of_half_shift(d.d1, base)? - g_of_half_shift(d.d2, base)?)
}

/// `S(output) − S(joint)` computed from symplectic spectra of the joint CM.
pub fn coherent_info_from_cm<T: Real>(joint: &JointCm<T>, base: EntropyBase) -> Result<T> {
    let out = gaussian_entropy(&joint.output_cov_mat()?, &SymplecticForm::standard(1), base)?;
    let all = gaussian_entropy(&joint.to_cov_mat()?, &JointCm::<T>::form(), base)?;
    Ok(out - all)
}

/// N_n² − δ, with values within rounding of zero snapped to the isotropic boundary.
fn anisotropy_gap<T: Real>(n_n: T, delta: T) -> T {
    let nn2 = n_n * n_n;
    let gap = nn2 - delta;
    if gap <= lit::<T>(1e-14) * nn2 {
        T::zero()
    } else {
        gap
    }
}

/// `τ = N_n·Ω + t·√(N_n² − δ)·√(Ω² − 4)`, the transformed noise trace for a
/// noise matrix of trace `4N_n` and determinant `4δ` whose orientation is
/// encoded by `t ∈ [−1, 1]`.
pub fn tau_from_t<T: Real>(n_n: T, delta: T, omega: T, t: T) -> Result<T> {
    if n_n < T::zero() || delta < T::zero() {
        return Err(domain("N_n and δ must be nonnegative"));
    }
    let nn2 = n_n * n_n;
    if delta > nn2 + lit::<T>(1e-12) * T::one().max(nn2) {
        return Err(domain(format!("δ = {delta} exceeds N_n² = {nn2}")));
    }
    if omega < lit::<T>(2.0) - lit::<T>(1e-9) {
        return Err(domain(format!("Ω = {omega} is below its minimum 2")));
    }
    if t.abs() > T::one() {
        return Err(domain("orientation parameter t must lie in [−1, 1]"));
    }
    let spread = anisotropy_gap(n_n, delta).sqrt() * (omega * omega - lit::<T>(4.0)).max(T::zero()).sqrt();
    Ok(n_n * omega + t * spread)
}

/// Explicit noise matrix with `¼Tr N = N_n`, `¼det N = δ`, oriented so that
/// the channel `(m, N)` on `gamma` realizes `τ = tau_from_t(N_n, δ, Ω, t)`
/// with `Ω = ‖S⁻¹m‖²_F` (`S` the Williamson matrix of `gamma`).
pub fn explicit_noise<T: Real>(gamma: &CovMat<T>, m: &Matrix2<T>, n_n: T, delta: T, t: T) -> Result<Matrix2<T>> {
    tau_from_t(n_n, delta, lit::<T>(2.0), t)?;
    let s = williamson_one_mode(gamma)?.s;
    let w = m.try_inverse().ok_or_else(|| domain("phase-space map is singular"))?;
    let ws = w * s;
    let eig = SymmetricEigen::new(ws * ws.transpose());
    let top = if eig.eigenvalues[0] >= eig.eigenvalues[1] { 0 } else { 1 };
    let u = eig.eigenvectors.column(top).into_owned();
    // Rotate the major noise axis by φ away from u, with cos 2φ = t.
    let phi = t.max(-T::one()).min(T::one()).acos() * lit::<T>(0.5);
    let (sn, cs) = phi.sin_cos();
    let v = nalgebra::Vector2::new(cs * u[0] - sn * u[1], sn * u[0] + cs * u[1]);
    let vp = nalgebra::Vector2::new(-v[1], v[0]);
    let two = lit::<T>(2.0);
    let spread = two * anisotropy_gap(n_n, delta).sqrt();
    let (l1, l2) = (two * n_n + spread, (two * n_n - spread).max(T::zero()));
    let n = v * v.transpose() * l1 + vp * vp.transpose() * l2;
    Ok((n + n.transpose()) * lit::<T>(0.5))
}

/// `f(a) = log((a+1)/a) / (2a+1)`, the weight with which `g′` enters
/// `∂I_c/∂δ`; decreasing and convex on `a > 0`.
pub fn entropy_derivative_ratio<T: Real>(a: T, base: EntropyBase) -> Result<T> {
    if a <= T::zero() {
        return Err(domain("entropy derivative ratio needs a > 0"));
    }
    Ok((T::one() / a).ln_1p() / (lit::<T>(2.0) * a + T::one()) / base.ln_base::<T>())
}
