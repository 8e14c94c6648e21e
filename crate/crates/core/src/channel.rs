//! Trace-preserving one-mode Gaussian channels `γ ↦ MᵀγM + N`.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};
use crate::symcore::{check_uncertainty, purification_block, CovMat, SymplecticForm};

/// Phase-space transposition `Λ = diag(1, −1)`.
pub fn lambda<T: Real>() -> Matrix2<T> {
    Matrix2::new(T::one(), T::zero(), T::zero(), -T::one())
}

/// `J = [[0, −1], [1, 0]]`.
pub fn j2<T: Real>() -> Matrix2<T> {
    Matrix2::new(T::zero(), -T::one(), T::one(), T::zero())
}

pub(crate) fn to_matrix2<T: Real>(m: &nalgebra::DMatrix<T>) -> Matrix2<T> {
    Matrix2::from_fn(|i, j| m[(i, j)])
}

pub(crate) fn from_blocks<T: Real>(a: &Matrix2<T>, b: &Matrix2<T>, c: &Matrix2<T>, d: &Matrix2<T>) -> Matrix4<T> {
    let mut out = Matrix4::zeros();
    out.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    out.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    out.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    out.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    out
}

fn block<T: Real>(m: &Matrix4<T>, i: usize, j: usize) -> Matrix2<T> {
    m.fixed_view::<2, 2>(2 * i, 2 * j).into_owned()
}

/// One-mode Gaussian channel `(M, N)` acting as `γ ↦ MᵀγM + N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianChannel<T: Real> {
    m: Matrix2<T>,
    n: Matrix2<T>,
}

impl<T: Real> GaussianChannel<T> {
    /// Builds a channel; `N` must be symmetric. Validity (`N ≥ 0` and the
    /// gain/noise inequality) is reported by [`validate_channel`].
    pub fn new(m: Matrix2<T>, n: Matrix2<T>) -> Result<Self> {
        if m.iter().chain(n.iter()).any(|x| !x.is_finite()) {
            return Err(domain("channel matrices must be finite"));
        }
        let tol = lit::<T>(1e-12) * T::one().max(n.amax());
        if (n[(0, 1)] - n[(1, 0)]).abs() > tol {
            return Err(domain("noise matrix N must be symmetric"));
        }
        Ok(Self { m, n })
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix2::identity(),
            n: Matrix2::zeros(),
        }
    }

    pub fn m(&self) -> &Matrix2<T> {
        &self.m
    }

    pub fn n(&self) -> &Matrix2<T> {
        &self.n
    }

    /// Gain `K = det M`.
    pub fn gain(&self) -> T {
        self.m.determinant()
    }

    pub fn with_noise(&self, n: Matrix2<T>) -> Result<Self> {
        Self::new(self.m, n)
    }
}

/// Applies the channel to a one-mode CM.
pub fn apply<T: Real>(ch: &GaussianChannel<T>, gamma: &CovMat<T>) -> Result<CovMat<T>> {
    let g = gamma.as_matrix2()?;
    let out = ch.m.transpose() * g * ch.m + ch.n;
    CovMat::from_matrix2(&((out + out.transpose()) * lit::<T>(0.5)))
}

/// Validity of a channel: `N ≥ 0` and `det N − (1 − K)² ≥ 0`, both to −1e-10.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelReport<T> {
    pub valid: bool,
    /// `det N − (1 − K)²`.
    pub slack: T,
    pub noise_psd: bool,
}

pub fn validate_channel<T: Real>(ch: &GaussianChannel<T>) -> ChannelReport<T> {
    let tol = lit::<T>(1e-10);
    let k = ch.gain();
    let slack = ch.n.determinant() - (T::one() - k) * (T::one() - k);
    let eig = SymmetricEigen::new(ch.n);
    let noise_psd = eig.eigenvalues.iter().all(|v| *v >= -tol);
    ChannelReport {
        valid: noise_psd && slack >= -tol,
        slack,
        noise_psd,
    }
}

/// Rescales `M` to unit determinant. Returns the normalized channel and the
/// amplitude factor `k = √K`; `N` is left untouched.
pub fn normalize_gain<T: Real>(ch: &GaussianChannel<T>) -> Result<(GaussianChannel<T>, T)> {
    let k2 = ch.gain();
    if k2 <= T::zero() {
        return Err(Error::Unsupported(format!(
            "gain K = det M = {k2} ≤ 0 (phase-space reflecting map)"
        )));
    }
    let k = k2.sqrt();
    Ok((GaussianChannel { m: ch.m / k, n: ch.n }, k))
}

/// CM of the reference ⊗ output state, output mode first, carrying the form
/// `J ⊕ (−J)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointCm<T: Real> {
    entries: Matrix4<T>,
}

impl<T: Real> JointCm<T> {
    pub fn from_matrix(entries: Matrix4<T>) -> Self {
        Self { entries }
    }

    pub fn matrix(&self) -> &Matrix4<T> {
        &self.entries
    }

    pub fn output_block(&self) -> Matrix2<T> {
        block(&self.entries, 0, 0)
    }

    pub fn cross_block(&self) -> Matrix2<T> {
        block(&self.entries, 0, 1)
    }

    pub fn reference_block(&self) -> Matrix2<T> {
        block(&self.entries, 1, 1)
    }

    pub fn form() -> SymplecticForm {
        SymplecticForm::mixed(1)
    }

    pub fn to_cov_mat(&self) -> Result<CovMat<T>> {
        let sym = (self.entries + self.entries.transpose()) * lit::<T>(0.5);
        CovMat::new(nalgebra::DMatrix::from_fn(4, 4, |i, j| sym[(i, j)]))
    }

    pub fn output_cov_mat(&self) -> Result<CovMat<T>> {
        let o = self.output_block();
        CovMat::from_matrix2(&((o + o.transpose()) * lit::<T>(0.5)))
    }

    /// Whether `Γ′ − i(J ⊕ −J) ≥ 0`.
    pub fn is_physical(&self) -> Result<bool> {
        Ok(check_uncertainty(&self.to_cov_mat()?, &Self::form())?.valid)
    }
}

fn require_valid_input<T: Real>(gamma: &CovMat<T>) -> Result<()> {
    if !check_uncertainty(gamma, &SymplecticForm::standard(gamma.n_modes()))?.valid {
        return Err(domain("input CM violates the uncertainty relation"));
    }
    Ok(())
}

/// Joint CM `[[MᵀγM + N, Mᵀβ], [βᵀM, γ]]` of a unit-gain trace-preserving
/// channel acting on the Schmidt purification of `γ`.
pub fn joint_cm<T: Real>(ch: &GaussianChannel<T>, gamma: &CovMat<T>) -> Result<JointCm<T>> {
    let k = ch.gain();
    if (k - T::one()).abs() > lit::<T>(1e-10) {
        return Err(Error::Precondition(format!(
            "joint_cm needs det M = 1 (got {k}); apply normalize_gain first"
        )));
    }
    joint_cm_any_gain(ch, gamma)
}

/// The block formula of [`joint_cm`] without the unit-gain precondition.
///
/// Used to study physicality of channels with `K ≠ 1`.
pub fn joint_cm_any_gain<T: Real>(ch: &GaussianChannel<T>, gamma: &CovMat<T>) -> Result<JointCm<T>> {
    let g = gamma.as_matrix2()?;
    require_valid_input(gamma)?;
    let beta = to_matrix2(&purification_block(gamma)?);
    let m = ch.m;
    let out = m.transpose() * g * m + ch.n;
    let out = (out + out.transpose()) * lit::<T>(0.5);
    let cross = m.transpose() * beta;
    Ok(JointCm {
        entries: from_blocks(&out, &cross, &cross.transpose(), &g),
    })
}

/// CM of the Gaussian operator isomorphic to a channel, at finite squeezing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorCm<T: Real> {
    pub entries: Matrix4<T>,
    pub squeezing: T,
}

/// `[[MᵀA_rM + N, MᵀC_r], [C_rM, A_r]]` with `A_r = cosh r·I`, `C_r = sinh r·Λ`.
///
/// As `r → ∞` the induced joint state approaches [`joint_cm`] at rate
/// `1/cosh r`; the output block deviates by `Mᵀ(γ² − I)M / cosh r`.
pub fn finite_r_op<T: Real>(m: &Matrix2<T>, n: &Matrix2<T>, r: T) -> Result<OperatorCm<T>> {
    if r <= T::zero() || !r.is_finite() {
        return Err(domain("squeezing parameter r must be positive and finite"));
    }
    if (n[(0, 1)] - n[(1, 0)]).abs() > lit::<T>(1e-12) * T::one().max(n.amax()) {
        return Err(domain("noise matrix N must be symmetric"));
    }
    let a = Matrix2::identity() * r.cosh();
    let c = lambda::<T>() * r.sinh();
    let top = m.transpose() * a * m + n;
    Ok(OperatorCm {
        entries: from_blocks(&top, &(m.transpose() * c), &(c * m), &a),
        squeezing: r,
    })
}

/// Joint reference ⊗ output CM produced by a general Gaussian CP map with
/// operator CM `Γ`:
///
/// `[[Γ̃₁ − Γ̃₁₂(Γ̃₂+γ)⁻¹Γ̃₁₂ᵀ, Γ̃₁₂(Γ̃₂+γ)⁻¹β], [βᵀ(Γ̃₂+γ)⁻¹Γ̃₁₂ᵀ, γ − βᵀ(Γ̃₂+γ)⁻¹β]]`
///
/// where `Γ̃ = (I ⊕ Λ)Γ(I ⊕ Λ)`.
pub fn general_joint_cm<T: Real>(op: &OperatorCm<T>, gamma: &CovMat<T>) -> Result<CovMat<T>> {
    let g = gamma.as_matrix2()?;
    require_valid_input(gamma)?;
    let beta = to_matrix2(&purification_block(gamma)?);
    let l = lambda::<T>();
    let t = from_blocks(&Matrix2::identity(), &Matrix2::zeros(), &Matrix2::zeros(), &l);
    let tilde = t * op.entries * t;
    let (g1, g12, g2) = (block(&tilde, 0, 0), block(&tilde, 0, 1), block(&tilde, 1, 1));
    let inv = (g2 + g)
        .try_inverse()
        .ok_or_else(|| Error::Numerical("Γ̃₂ + γ is singular".into()))?;
    let top = g1 - g12 * inv * g12.transpose();
    let cross = g12 * inv * beta;
    let bottom = g - beta.transpose() * inv * beta;
    let full = from_blocks(&top, &cross, &cross.transpose(), &bottom);
    let full = (full + full.transpose()) * lit::<T>(0.5);
    CovMat::new(nalgebra::DMatrix::from_fn(4, 4, |i, j| full[(i, j)]))
}

/// Determinant form of `det(Γ − i(J ⊕ −J))` for a two-mode CM with blocks
/// `Γ₁, Γ₁₂, Γ₂`:
///
/// `det Γ₁·det Γ₂ − det Γ₁ − det Γ₂ + (1 + det Γ₁₂)² − Tr(JΓ₁JΓ₁₂JΓ₂JΓ₁₂ᵀ)`.
pub fn simon_condition<T: Real>(gamma: &Matrix4<T>) -> T {
    let (a, c, b) = (block(gamma, 0, 0), block(gamma, 0, 1), block(gamma, 1, 1));
    let j = j2::<T>();
    let (da, db, dc) = (a.determinant(), b.determinant(), c.determinant());
    let one_plus = T::one() + dc;
    da * db - da - db + one_plus * one_plus - (j * a * j * c * j * b * j * c.transpose()).trace()
}
