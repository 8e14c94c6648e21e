//! Quadratic distortion observable, its Gaussian average and its minimum over
//! unit-determinant phase-space maps.

use nalgebra::{DMatrix, Matrix2, Rotation2, SMatrix, SVector};

use crate::channel::{joint_cm, lambda, to_matrix2, validate_channel, GaussianChannel};
use crate::error::{domain, Error, Result};
use crate::optimize::{nelder_mead, SimplexSettings};
use crate::scalar::{lit, to_f64, Real};
use crate::symcore::{check_uncertainty, purification_block, williamson_one_mode, CovMat, SymplecticForm};

/// Coefficients of `½Σ[(a_x·X_A − b_x·X_B)² + (a_p·P_A + b_p·P_B)²]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gains<T> {
    pub a_x: T,
    pub b_x: T,
    pub a_p: T,
    pub b_p: T,
}

impl<T: Real> Default for Gains<T> {
    fn default() -> Self {
        Self {
            a_x: T::one(),
            b_x: T::one(),
            a_p: T::one(),
            b_p: T::one(),
        }
    }
}

impl<T: Real> Gains<T> {
    /// Receiver re-amplifies a channel with amplitude gain `k`:
    /// `½[(X_A/k − X_B)² + (P_A/k + k·P_B)²]`.
    pub fn amplify_back(k: T) -> Self {
        Self {
            a_x: T::one() / k,
            b_x: T::one(),
            a_p: T::one() / k,
            b_p: k,
        }
    }

    /// Sender's reference is scaled by `k` before comparison:
    /// `½[(X_A − k·X_B)² + (P_A + k·P_B)²]`.
    pub fn scaled_reference(k: T) -> Self {
        Self {
            a_x: T::one(),
            b_x: k,
            a_p: T::one(),
            b_p: k,
        }
    }
}

/// Coefficient matrix `Q` of the distortion observable `½·rᵀQr` over
/// `r = (X_B1, P_B1, …, X_Bn, P_Bn, X_A1, P_A1, …)`, receiver modes first.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionForm<T: Real> {
    pub n_modes: usize,
    pub gains: Gains<T>,
    pub q: DMatrix<T>,
}

pub fn build_form<T: Real>(n_modes: usize, gains: Gains<T>) -> Result<DistortionForm<T>> {
    if n_modes == 0 {
        return Err(domain("distortion form needs at least one mode"));
    }
    let Gains { a_x, b_x, a_p, b_p } = gains;
    if [a_x, b_x, a_p, b_p].iter().any(|g| *g <= T::zero() || !g.is_finite()) {
        return Err(domain("distortion gains must be positive"));
    }
    let dim = 4 * n_modes;
    let mut q = DMatrix::zeros(dim, dim);
    for i in 0..n_modes {
        let (xb, pb) = (2 * i, 2 * i + 1);
        let (xa, pa) = (2 * n_modes + 2 * i, 2 * n_modes + 2 * i + 1);
        q[(xb, xb)] = b_x * b_x;
        q[(xa, xa)] = a_x * a_x;
        q[(xa, xb)] = -a_x * b_x;
        q[(xb, xa)] = -a_x * b_x;
        q[(pb, pb)] = b_p * b_p;
        q[(pa, pa)] = a_p * a_p;
        q[(pa, pb)] = a_p * b_p;
        q[(pb, pa)] = a_p * b_p;
    }
    Ok(DistortionForm { n_modes, gains, q })
}

fn require_unit_gain<T: Real>(m: &Matrix2<T>) -> Result<()> {
    let k = m.determinant();
    if (k - T::one()).abs() > lit::<T>(1e-10) {
        return Err(Error::Precondition(format!(
            "distortion needs det M = 1 (got {k}); apply normalize_gain first"
        )));
    }
    Ok(())
}

fn require_valid<T: Real>(gamma: &CovMat<T>) -> Result<Matrix2<T>> {
    let g = gamma.as_matrix2()?;
    if !check_uncertainty(gamma, &SymplecticForm::standard(1))?.valid {
        return Err(domain("input CM violates the uncertainty relation"));
    }
    Ok(g)
}

/// `¼[Tr N + Tr MᵀγM + Tr γ − 2·Tr(MβΛ)]`, the average of the default
/// distortion observable over the joint state of a unit-gain channel.
pub fn average_distortion<T: Real>(ch: &GaussianChannel<T>, gamma: &CovMat<T>) -> Result<T> {
    require_unit_gain(ch.m())?;
    let g = require_valid(gamma)?;
    let beta = to_matrix2(&purification_block(gamma)?);
    Ok(distortion_value(ch.m(), ch.n(), &g, &beta))
}

fn distortion_value<T: Real>(m: &Matrix2<T>, n: &Matrix2<T>, g: &Matrix2<T>, beta: &Matrix2<T>) -> T {
    let two = lit::<T>(2.0);
    (n.trace() + (m.transpose() * g * m).trace() + g.trace() - two * (m * beta * lambda::<T>()).trace())
        * lit::<T>(0.25)
}

/// `¼(1/γ_s + 3γ_s)`, the distortion floor of a thermal input.
pub fn thermal_min_distortion<T: Real>(gamma_s: T) -> T {
    (T::one() / gamma_s + lit::<T>(3.0) * gamma_s) * lit::<T>(0.25)
}

/// `Ω = 2cosh(2r_s) = 2 + (γ_s² − 1)/γ_s²` for a thermal input.
pub fn thermal_omega<T: Real>(gamma_s: T) -> T {
    lit::<T>(2.0) + (gamma_s * gamma_s - T::one()) / (gamma_s * gamma_s)
}

/// `sinh r_s = √(γ_s² − 1)/(2γ_s)`.
pub fn thermal_sinh_r<T: Real>(gamma_s: T) -> T {
    (gamma_s * gamma_s - T::one()).max(T::zero()).sqrt() / (lit::<T>(2.0) * gamma_s)
}

/// Distortion-optimal map `[[a, s+κ], [s−κ, a]]` for the thermal input
/// `γ_s·I`, with `s = sinh r_s` and `a = √(1 + s² − κ²)` fixing `det M = 1`.
///
/// Every admissible `κ` gives the same average distortion.
pub fn thermal_m_star<T: Real>(gamma_s: T, kappa: T) -> Result<Matrix2<T>> {
    let s = thermal_sinh_r(gamma_s);
    let a2 = T::one() + s * s - kappa * kappa;
    if a2 < T::zero() {
        return Err(domain(format!("κ = {kappa} leaves no real unit-determinant map")));
    }
    let a = a2.sqrt();
    Ok(Matrix2::new(a, s + kappa, s - kappa, a))
}

/// Minimum of the average distortion over noiseless unit-gain maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalDistortion<T: Real> {
    pub d_min: T,
    pub m_star: Matrix2<T>,
    /// `Tr(M*ᵀγM*)/γ_s`.
    pub omega: T,
    pub gamma_s: T,
    pub evaluations: usize,
}

fn squeeze_map<T: Real>(p: &[T]) -> Matrix2<T> {
    let r1 = *Rotation2::new(p[0]).matrix();
    let r2 = *Rotation2::new(p[2]).matrix();
    let z = p[1].exp();
    r1 * Matrix2::new(z, T::zero(), T::zero(), T::one() / z) * r2
}

/// Newton iteration on the stationarity system of
/// `min Tr(MᵀγM) − 2Tr(MβΛ)` subject to `det M = 1`:
/// `2γM − 2(βΛ)ᵀ − λ·cof(M) = 0`, `det M = 1`.
///
/// Solved through an SVD pseudo-inverse so that degenerate families of
/// minimizers (thermal inputs) do not stall the iteration.
fn polish<T: Real>(m0: &Matrix2<T>, g: &Matrix2<T>, beta: &Matrix2<T>) -> Option<Matrix2<T>> {
    let two = lit::<T>(2.0);
    let c = (beta * lambda::<T>()).transpose();
    let cof = |m: &Matrix2<T>| Matrix2::new(m[(1, 1)], -m[(1, 0)], -m[(0, 1)], m[(0, 0)]);
    let grad = |m: &Matrix2<T>| g * m * two - c * two;

    let mut m = *m0;
    let cm = cof(&m);
    let mut lam = grad(&m).dot(&cm) / cm.dot(&cm);
    let scale = T::one().max(g.amax());
    let mut best_res = T::max_value().unwrap();
    for _ in 0..60 {
        let cm = cof(&m);
        let gr = grad(&m) - cm * lam;
        let mut f = SVector::<T, 5>::zeros();
        for p in 0..4 {
            f[p] = gr[(p / 2, p % 2)];
        }
        f[4] = m.determinant() - T::one();
        let res = f.amax();
        if res <= lit::<T>(1e-15) * scale || res >= best_res {
            break;
        }
        best_res = res;
        let mut jac = SMatrix::<T, 5, 5>::zeros();
        // d cof(M)_p / d M_q, with p, q flattened row-major.
        let dcof = |p: usize, q: usize| -> T {
            match (p, q) {
                (0, 3) | (3, 0) => T::one(),
                (1, 2) | (2, 1) => -T::one(),
                _ => T::zero(),
            }
        };
        for p in 0..4 {
            let (i, j) = (p / 2, p % 2);
            for q in 0..4 {
                let (k, l) = (q / 2, q % 2);
                let dgm = if j == l { g[(i, k)] * two } else { T::zero() };
                jac[(p, q)] = dgm - lam * dcof(p, q);
            }
            jac[(p, 4)] = -cm[(i, j)];
            jac[(4, p)] = cm[(i, j)];
        }
        let step = jac.svd(true, true).solve(&(-f), lit::<T>(1e-13) * scale).ok()?;
        for p in 0..4 {
            m[(p / 2, p % 2)] += step[p];
        }
        lam += step[4];
    }
    Some(m)
}

/// Numerically minimizes the average distortion over `det M = 1`, `N = 0`.
///
/// A Nelder–Mead search over `M = R(θ₁)·diag(z, 1/z)·R(θ₂)` runs from a fixed
/// lattice of 8 starts; the best vertex (ties broken on `(d̄, θ₁, z, θ₂)`) is
/// then refined by Newton iteration on the Lagrange conditions.
pub fn minimal_distortion<T: Real>(gamma: &CovMat<T>) -> Result<MinimalDistortion<T>> {
    let g = require_valid(gamma)?;
    let beta = to_matrix2(&purification_block(gamma)?);
    let gamma_s = williamson_one_mode(gamma)?.gamma_s;
    let zero_noise = Matrix2::zeros();
    let objective = |p: &[T]| distortion_value(&squeeze_map(p), &zero_noise, &g, &beta);

    let settings = SimplexSettings::<T>::default();
    let half_pi = T::frac_pi_2();
    let w0 = lit::<T>(0.5);
    let mut runs = Vec::with_capacity(8);
    for th1 in [T::zero(), half_pi] {
        for w in [-w0, w0] {
            for th2 in [T::zero(), half_pi] {
                runs.push(nelder_mead(objective, &[th1, w, th2], &settings));
            }
        }
    }
    let evaluations = runs.iter().map(|r| r.evals).sum();
    let best = runs
        .into_iter()
        .min_by(|a, b| {
            let key = |r: &crate::optimize::SimplexResult<T>| [r.f, r.x[0], r.x[1], r.x[2]];
            key(a)
                .iter()
                .zip(key(b).iter())
                .map(|(x, y)| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("eight starts");
    let rel_tol = lit::<T>(1e-10) * T::one().max(best.f.abs());
    if !best.converged && best.spread > rel_tol {
        return Err(Error::Numerical(format!(
            "distortion minimization did not converge: best d̄ = {}, simplex spread = {:e} after {} evaluations",
            to_f64(best.f),
            to_f64(best.spread),
            best.evals
        )));
    }

    let m_nm = squeeze_map(&best.x);
    let d_nm = distortion_value(&m_nm, &zero_noise, &g, &beta);
    let m_star = polish(&m_nm, &g, &beta)
        .filter(|m| {
            (m.determinant() - T::one()).abs() <= lit::<T>(1e-12)
                && distortion_value(m, &zero_noise, &g, &beta) <= d_nm + rel_tol
        })
        .unwrap_or(m_nm);
    let d_min = distortion_value(&m_star, &zero_noise, &g, &beta);
    let omega = (m_star.transpose() * g * m_star).trace() / gamma_s;
    Ok(MinimalDistortion {
        d_min,
        m_star,
        omega,
        gamma_s,
        evaluations,
    })
}

/// Average distortion of a channel split into the input-dependent floor and
/// the canonical distortion `N_n = d̄ − d̄_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionReport<T: Real> {
    pub d_avg: T,
    pub d_min: T,
    pub n_n: T,
    pub omega: T,
    pub m_star: Matrix2<T>,
}

pub fn canonical_distortion<T: Real>(ch: &GaussianChannel<T>, gamma: &CovMat<T>) -> Result<DistortionReport<T>> {
    let min = minimal_distortion(gamma)?;
    canonical_distortion_with(ch, gamma, &min)
}

/// [`canonical_distortion`] reusing a precomputed minimum for `gamma`.
pub fn canonical_distortion_with<T: Real>(
    ch: &GaussianChannel<T>,
    gamma: &CovMat<T>,
    min: &MinimalDistortion<T>,
) -> Result<DistortionReport<T>> {
    if !validate_channel(ch).valid {
        return Err(domain("channel violates det N − (1 − K)² ≥ 0 or N ≥ 0"));
    }
    let d_avg = average_distortion(ch, gamma)?;
    Ok(DistortionReport {
        d_avg,
        d_min: min.d_min,
        n_n: d_avg - min.d_min,
        omega: min.omega,
        m_star: min.m_star,
    })
}

/// Average of an arbitrary distortion form over the joint state, evaluated
/// as a Gaussian quadratic expectation.
pub fn form_expectation<T: Real>(form: &DistortionForm<T>, ch: &GaussianChannel<T>, gamma: &CovMat<T>) -> Result<T> {
    let joint = joint_cm(ch, gamma)?;
    crate::symcore::quadratic_expectation(&form.q, &joint.to_cov_mat()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::GaussianChannel;
    use approx::assert_abs_diff_eq;

    fn cm(a: f64, c: f64, b: f64) -> CovMat<f64> {
        CovMat::one_mode(a, c, b).unwrap()
    }

    #[test]
    fn default_form_examples() {
        let form = build_form(1, Gains::default()).unwrap();
        let v = form_expectation(&form, &GaussianChannel::<f64>::identity(), &CovMat::<f64>::vacuum(1)).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);

        let (gb, ga) = (cm(2.0, 0.3, 1.5), cm(1.2, -0.1, 4.0));
        let mut bd = DMatrix::zeros(4, 4);
        bd.view_mut((0, 0), (2, 2)).copy_from(gb.matrix());
        bd.view_mut((2, 2), (2, 2)).copy_from(ga.matrix());
        let v = crate::symcore::quadratic_expectation(&form.q, &CovMat::new(bd).unwrap()).unwrap();
        assert_abs_diff_eq!(v, 0.25 * (gb.trace() + ga.trace()), epsilon = 1e-14);
    }

    #[test]
    fn modified_form_expansion() {
        // ½[(X_A/k − X_B)² + (P_A/k + k·P_B)²] expanded term by term.
        let k = 0.7;
        let f = build_form(1, Gains::amplify_back(k)).unwrap();
        let q = &f.q;
        assert_abs_diff_eq!(q[(0, 0)], 1.0);
        assert_abs_diff_eq!(q[(2, 2)], 1.0 / (k * k), epsilon = 1e-14);
        assert_abs_diff_eq!(q[(0, 2)], -1.0 / k);
        assert_abs_diff_eq!(q[(1, 1)], k * k);
        assert_abs_diff_eq!(q[(3, 3)], 1.0 / (k * k), epsilon = 1e-14);
        assert_abs_diff_eq!(q[(1, 3)], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q[(0, 1)], 0.0);
        let g = build_form(2, Gains::scaled_reference(k)).unwrap();
        assert_eq!(g.q.nrows(), 8);
        assert_abs_diff_eq!(g.q[(1, 5)], k);
        assert_abs_diff_eq!(g.q[(2, 6)], -k);
        assert!(build_form(1, Gains::amplify_back(-1.0)).is_err());
    }

    #[test]
    fn average_distortion_examples() {
        assert_abs_diff_eq!(
            average_distortion(&GaussianChannel::<f64>::identity(), &CovMat::<f64>::vacuum(1)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let m = thermal_m_star(3.0, 0.0).unwrap();
        let g3 = cm(3.0, 0.0, 3.0);
        let ch = GaussianChannel::new(m, Matrix2::zeros()).unwrap();
        assert_abs_diff_eq!(average_distortion(&ch, &g3).unwrap(), 7.0 / 3.0, epsilon = 1e-14);
        let ch = GaussianChannel::new(m, Matrix2::identity()).unwrap();
        assert_abs_diff_eq!(average_distortion(&ch, &g3).unwrap(), 7.0 / 3.0 + 0.5, epsilon = 1e-14);
        let damp = GaussianChannel::new(Matrix2::identity() * 0.5, Matrix2::identity()).unwrap();
        assert!(matches!(average_distortion(&damp, &g3), Err(Error::Precondition(_))));
    }

    #[test]
    fn minimal_distortion_vacuum() {
        let r = minimal_distortion(&CovMat::<f64>::vacuum(1)).unwrap();
        assert_abs_diff_eq!(r.d_min, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r.omega, 2.0, epsilon = 1e-8);
        // Any rotation is optimal for the vacuum.
        assert_abs_diff_eq!(
            r.m_star.transpose() * r.m_star,
            Matrix2::<f64>::identity(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn minimal_distortion_thermal() {
        let r = minimal_distortion(&cm(3.0, 0.0, 3.0)).unwrap();
        assert_abs_diff_eq!(r.d_min, 7.0 / 3.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.omega, 26.0 / 9.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.m_star.determinant(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn minimal_distortion_pure_squeezed() {
        let s5 = 5f64.sqrt();
        let g = cm((3.0 + s5) / 2.0, 0.0, (3.0 - s5) / 2.0);
        let r = minimal_distortion(&g).unwrap();
        assert_abs_diff_eq!(r.omega, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.d_min, 0.25 * (2.0 + 3.0), epsilon = 1e-8);
    }

    #[test]
    fn thermal_closed_forms_agree() {
        for gs in [1.0, 1.5, 3.0, 11.0] {
            let ns: f64 = (gs - 1.0) / 2.0;
            let s = thermal_sinh_r(gs);
            assert_abs_diff_eq!(thermal_omega(gs), 2.0 * (1.0 + 2.0 * s * s), epsilon = 1e-14);
            let alt = 2.0 * (1.0 + 2.0 * ns * (ns + 1.0) / (2.0 * ns + 1.0).powi(2));
            assert_abs_diff_eq!(thermal_omega(gs), alt, epsilon = 1e-14);
        }
        assert!(thermal_m_star(3.0, 5.0).is_err());
    }

    #[test]
    fn kappa_family_is_degenerate() {
        let g = cm(3.0, 0.0, 3.0);
        let base = average_distortion(
            &GaussianChannel::new(thermal_m_star(3.0, 0.0).unwrap(), Matrix2::zeros()).unwrap(),
            &g,
        )
        .unwrap();
        for kappa in [-0.9, -0.3, 0.4, 1.0] {
            let m = thermal_m_star(3.0, kappa).unwrap();
            assert_abs_diff_eq!(m.determinant(), 1.0, epsilon = 1e-14);
            let d = average_distortion(&GaussianChannel::new(m, Matrix2::zeros()).unwrap(), &g).unwrap();
            assert_abs_diff_eq!(d, base, epsilon = 1e-10);
        }
    }

    #[test]
    fn canonical_distortion_examples() {
        let g3 = cm(3.0, 0.0, 3.0);
        let min = minimal_distortion(&g3).unwrap();
        let at_opt = GaussianChannel::new(min.m_star, Matrix2::zeros()).unwrap();
        assert_abs_diff_eq!(
            canonical_distortion_with(&at_opt, &g3, &min).unwrap().n_n,
            0.0,
            epsilon = 1e-10
        );
        let noisy = GaussianChannel::new(min.m_star, Matrix2::identity() * 2.0).unwrap();
        assert_abs_diff_eq!(
            canonical_distortion_with(&noisy, &g3, &min).unwrap().n_n,
            1.0,
            epsilon = 1e-10
        );

        let sq = cm(4.0, 0.0, 1.0);
        let rep = canonical_distortion(&GaussianChannel::<f64>::identity(), &sq).unwrap();
        assert!(rep.n_n > 1e-3);
        assert_abs_diff_eq!(rep.d_avg, 2.5, epsilon = 1e-12);

        let bad = GaussianChannel::new(Matrix2::identity(), Matrix2::identity() * -1.0).unwrap();
        assert!(canonical_distortion_with(&bad, &g3, &min).is_err());
    }
}
