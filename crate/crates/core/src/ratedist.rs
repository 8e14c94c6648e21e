//! Entanglement-information rate-distortion function of a one-mode Gaussian
//! source and the brute-force grid search that checks it.

use nalgebra::Matrix2;

use crate::coherent::{coherent_info, d_values, tau_from_t, DValues, NoiseParams};
use crate::distortion::{minimal_distortion, thermal_m_star, thermal_min_distortion, thermal_omega};
use crate::error::{domain, Result};
use crate::scalar::{lit, Real};
use crate::symcore::{bosonic_entropy, williamson_one_mode, CovMat, EntropyBase};

/// Input-state quantities shared by every point of a rate-distortion curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSummary<T: Real> {
    pub gamma_s: T,
    pub n_s: T,
    pub omega: T,
    pub d_min: T,
    pub m_star: Matrix2<T>,
    /// Whether the closed thermal forms were used instead of the optimizer.
    pub thermal: bool,
}

fn is_thermal<T: Real>(g: &Matrix2<T>) -> bool {
    let tol = lit::<T>(1e-12) * T::one().max(g.amax());
    (g[(0, 1)]).abs() <= tol && (g[(0, 0)] - g[(1, 1)]).abs() <= tol
}

/// Computes `γ_s`, `N_s`, `Ω` and the distortion floor of a valid one-mode CM.
///
/// Thermal inputs (`γ ∝ I`) use the closed forms; anything else goes through
/// [`minimal_distortion`].
pub fn summarize_source<T: Real>(gamma: &CovMat<T>) -> Result<SourceSummary<T>> {
    let g = gamma.as_matrix2()?;
    let w = williamson_one_mode(gamma)?;
    if is_thermal(&g) {
        return Ok(SourceSummary {
            gamma_s: w.gamma_s,
            n_s: w.mean_photons(),
            omega: thermal_omega(w.gamma_s),
            d_min: thermal_min_distortion(w.gamma_s),
            m_star: thermal_m_star(w.gamma_s, T::zero())?,
            thermal: true,
        });
    }
    let min = minimal_distortion(gamma)?;
    Ok(SourceSummary {
        gamma_s: w.gamma_s,
        n_s: w.mean_photons(),
        omega: min.omega,
        d_min: min.d_min,
        m_star: min.m_star,
        thermal: false,
    })
}

/// One point `(N_n, R^I)` of the curve with its witnesses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint<T> {
    pub n_n: T,
    /// `max{0, I_c}`.
    pub r_i: T,
    /// Unclipped coherent information at `δ = N_n²`, `τ = N_n·Ω`.
    pub i_c: T,
    pub delta: T,
    pub tau: T,
    pub d: DValues<T>,
}

fn check_distortion<T: Real>(n_n: T) -> Result<()> {
    if !n_n.is_finite() || n_n < T::zero() {
        return Err(domain(format!("canonical distortion N_n = {n_n} must be nonnegative")));
    }
    Ok(())
}

/// `R^I(N_n) = max{0, I_c(δ = N_n², τ = N_n·Ω)}` for a summarized source.
pub fn rate_point<T: Real>(src: &SourceSummary<T>, n_n: T, base: EntropyBase) -> Result<RatePoint<T>> {
    check_distortion(n_n)?;
    let delta = n_n * n_n;
    let tau = n_n * src.omega;
    let p = NoiseParams::new(src.n_s, delta, tau)?;
    let i_c = coherent_info(&p, base)?;
    Ok(RatePoint {
        n_n,
        r_i: i_c.max(T::zero()),
        i_c,
        delta,
        tau,
        d: d_values(&p)?,
    })
}

pub fn rate_distortion<T: Real>(gamma: &CovMat<T>, n_n: T, base: EntropyBase) -> Result<RatePoint<T>> {
    check_distortion(n_n)?;
    rate_point(&summarize_source(gamma)?, n_n, base)
}

/// `max{0, g(N_s + N_n) − g(N_sn1) − g(N_sn2)}` with
/// `N_sn1,2 = ½(√((N_n+1)² + 4N_nN_s) − 1 ± N_n)`: the `Ω = 2` case.
pub fn pure_state_rate<T: Real>(n_s: T, n_n: T, base: EntropyBase) -> Result<T> {
    if n_s < T::zero() {
        return Err(domain("N_s must be nonnegative"));
    }
    check_distortion(n_n)?;
    let half = lit::<T>(0.5);
    let root = ((n_n + T::one()) * (n_n + T::one()) + lit::<T>(4.0) * n_n * n_s).sqrt() - T::one();
    let n1 = half * (root + n_n);
    let n2 = (half * (root - n_n)).max(T::zero());
    let v = bosonic_entropy(n_s + n_n, base)? - bosonic_entropy(n1, base)? - bosonic_entropy(n2, base)?;
    Ok(v.max(T::zero()))
}

/// Resolution of the `(δ, t)` grid used by [`brute_force_rate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub delta_points: usize,
    pub t_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            delta_points: 201,
            t_points: 81,
        }
    }
}

impl GridSpec {
    pub fn new(delta_points: usize, t_points: usize) -> Result<Self> {
        if delta_points < 3 || t_points < 3 {
            return Err(domain("grid resolutions must be at least 3"));
        }
        Ok(Self { delta_points, t_points })
    }
}

/// Grid minimum of `I_c` over `δ ∈ [0, N_n²]`, `t ∈ [−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForce<T> {
    pub i_min: T,
    pub delta_star: T,
    pub t_star: T,
    /// `I_c(δ = N_n², τ = N_n·Ω)`, the claimed minimizer.
    pub closed_form: T,
    /// Width of one δ step.
    pub delta_step: T,
}

pub fn brute_force_rate<T: Real>(
    gamma: &CovMat<T>,
    n_n: T,
    grid: GridSpec,
    base: EntropyBase,
) -> Result<BruteForce<T>> {
    check_distortion(n_n)?;
    brute_force_with(&summarize_source(gamma)?, n_n, grid, base)
}

/// [`brute_force_rate`] for an already summarized source. Cells are scanned
/// in index order and the first strict minimum wins.
pub fn brute_force_with<T: Real>(
    src: &SourceSummary<T>,
    n_n: T,
    grid: GridSpec,
    base: EntropyBase,
) -> Result<BruteForce<T>> {
    check_distortion(n_n)?;
    let grid = GridSpec::new(grid.delta_points, grid.t_points)?;
    let nn2 = n_n * n_n;
    let delta_step = nn2 / lit::<T>((grid.delta_points - 1) as f64);
    let t_step = lit::<T>(2.0) / lit::<T>((grid.t_points - 1) as f64);
    let mut best: Option<(T, T, T)> = None;
    for i in 0..grid.delta_points {
        let delta = if i + 1 == grid.delta_points {
            nn2
        } else {
            delta_step * lit::<T>(i as f64)
        };
        for j in 0..grid.t_points {
            let t = (-T::one() + t_step * lit::<T>(j as f64)).min(T::one());
            let tau = tau_from_t(n_n, delta, src.omega, t)?;
            let v = coherent_info(&NoiseParams::new(src.n_s, delta, tau)?, base)?;
            if best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, delta, t));
            }
        }
    }
    let (i_min, delta_star, t_star) = best.expect("non-empty grid");
    let closed_form = rate_point(src, n_n, base)?.i_c;
    Ok(BruteForce {
        i_min,
        delta_star,
        t_star,
        closed_form,
        delta_step,
    })
}

/// Rate-distortion points for an ascending list of nonnegative `N_n`.
pub fn rd_curve<T: Real>(gamma: &CovMat<T>, n_n_values: &[T], base: EntropyBase) -> Result<Vec<RatePoint<T>>> {
    let src = summarize_source(gamma)?;
    rd_curve_with(&src, n_n_values, base)
}

pub fn rd_curve_with<T: Real>(
    src: &SourceSummary<T>,
    n_n_values: &[T],
    base: EntropyBase,
) -> Result<Vec<RatePoint<T>>> {
    if n_n_values.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain("N_n values must be ascending"));
    }
    n_n_values.iter().map(|n| rate_point(src, *n, base)).collect()
}

/// Smallest `N_n` where the unclipped `I_c` along the curve reaches zero,
/// located by bisection. `None` when the source is pure (the rate vanishes
/// identically) or no crossing exists below `1e6`.
pub fn clipping_distortion<T: Real>(src: &SourceSummary<T>, base: EntropyBase) -> Result<Option<T>> {
    if src.n_s <= lit::<T>(1e-12) {
        return Ok(None);
    }
    let ic = |n: T| rate_point(src, n, base).map(|p| p.i_c);
    let mut hi = T::one();
    while ic(hi)? > T::zero() {
        hi *= lit::<T>(2.0);
        if hi > lit::<T>(1e6) {
            return Ok(None);
        }
    }
    let mut lo = T::zero();
    for _ in 0..200 {
        let mid = (lo + hi) * lit::<T>(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if ic(mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}
