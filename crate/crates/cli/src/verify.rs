//! Seeded self-verification: every closed form against its independent oracle.
//!
//! Each suite draws from its own ChaCha8 stream, keyed by the suite name, so
//! results do not depend on which suites run or in what order.

use gauss_rd::{
    apply, average_distortion, bosonic_entropy, brute_force_with, build_form, canonical_distortion, check_uncertainty,
    coherent_info, coherent_info_from_cm, d_values, entropy_derivative_ratio, explicit_noise, finite_r_op,
    gaussian_entropy, general_joint_cm, joint_cm, joint_cm_any_gain, minimal_distortion, normalize_gain,
    pure_state_rate, purification_cm, quadratic_expectation, rate_distortion, rd_curve, simon_condition,
    summarize_source, symplectic_eigenvalues, tau_from_t, thermal_m_star, thermal_min_distortion, thermal_omega,
    validate_channel, williamson_one_mode, CovMat64, EntropyBase, Gains, GaussianChannel64, GridSpec, JointCm64,
    NoiseParams64, SymplecticForm,
};
use nalgebra::{DMatrix, Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::figure::figure1_curves;

type Fallible<T> = Result<T, gauss_rd::Error>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: usize,
    pub base: EntropyBase,
    pub grid: GridSpec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            cases: 1000,
            base: EntropyBase::Bits,
            grid: GridSpec::default(),
        }
    }
}

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub tolerance: f64,
    /// `null` in JSON when the check could not be evaluated.
    pub worst_error: f64,
    pub cases: usize,
}

/// Largest error seen so far; a NaN sticks.
#[derive(Debug, Clone, Copy)]
struct Worst {
    value: f64,
    cases: usize,
}

impl Worst {
    fn new() -> Self {
        Self { value: 0.0, cases: 0 }
    }

    fn see(&mut self, err: f64) {
        if err.is_nan() || err > self.value {
            self.value = err;
        }
    }

    fn case(&mut self, err: f64) {
        self.see(err);
        self.cases += 1;
    }

    fn report(self, name: &str, tolerance: f64) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            passed: self.value <= tolerance,
            tolerance,
            worst_error: self.value,
            cases: self.cases,
        }
    }
}

type SuiteFn = fn(&VerifyConfig, &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>>;

/// A group of checks sharing one random stream.
pub struct Suite {
    pub name: &'static str,
    run: SuiteFn,
}

impl Suite {
    pub fn run(&self, cfg: &VerifyConfig) -> Vec<CheckReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream_id(self.name));
        (self.run)(cfg, &mut rng).unwrap_or_else(|_| {
            vec![CheckReport {
                name: self.name.to_string(),
                passed: false,
                tolerance: 0.0,
                worst_error: f64::NAN,
                cases: 0,
            }]
        })
    }
}

/// FNV-1a, fixed so stream assignment is stable across toolchains.
fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "symcore",
            run: symcore_suite,
        },
        Suite {
            name: "channel",
            run: channel_suite,
        },
        Suite {
            name: "finite_r",
            run: finite_r_suite,
        },
        Suite {
            name: "distortion",
            run: distortion_suite,
        },
        Suite {
            name: "thermal_minimum",
            run: thermal_minimum_suite,
        },
        Suite {
            name: "coherent",
            run: coherent_suite,
        },
        Suite {
            name: "oracle",
            run: oracle_suite,
        },
        Suite {
            name: "endpoints",
            run: endpoints_suite,
        },
        Suite {
            name: "isotropic_optimality",
            run: isotropic_optimality_suite,
        },
        Suite {
            name: "curves",
            run: curves_suite,
        },
        Suite {
            name: "figure1",
            run: figure1_suite,
        },
    ]
}

pub fn suite(name: &str) -> Option<Suite> {
    suites().into_iter().find(|s| s.name == name)
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    suites().iter().flat_map(|s| s.run(cfg)).collect()
}

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Matrix2<f64> {
    let z: f64 = rng.random_range(-1.0..1.0f64).exp();
    rotation(rng.random_range(0.0..std::f64::consts::TAU))
        * Matrix2::from_diagonal(&Vector2::new(z, 1.0 / z))
        * rotation(rng.random_range(0.0..std::f64::consts::TAU))
}

fn squeezed_thermal(gamma_s: f64, r: f64, theta: f64) -> Fallible<CovMat64> {
    let rot = rotation(theta);
    let d = Matrix2::from_diagonal(&Vector2::new((2.0 * r).exp(), (-2.0 * r).exp()));
    let m = rot.transpose() * d * rot * gamma_s;
    CovMat64::from_matrix2(&(0.5 * (m + m.transpose())))
}

fn random_state(rng: &mut ChaCha8Rng, max_gamma_s: f64) -> Fallible<CovMat64> {
    let gamma_s = rng.random_range(1.0..max_gamma_s);
    let r = rng.random_range(-1.2..1.2);
    let theta = rng.random_range(0.0..std::f64::consts::PI);
    squeezed_thermal(gamma_s, r, theta)
}

fn random_psd(rng: &mut ChaCha8Rng, scale: f64) -> Matrix2<f64> {
    let mut e = || rng.random_range(-1.5..1.5);
    let l = Matrix2::new(e(), e(), e(), e());
    let n = l * l.transpose() * scale;
    0.5 * (n + n.transpose())
}

fn random_unit_channel(rng: &mut ChaCha8Rng) -> Fallible<GaussianChannel64> {
    let m = random_sl2(rng);
    GaussianChannel64::new(m, random_psd(rng, 1.0))
}

fn random_any_gain_channel(rng: &mut ChaCha8Rng) -> Fallible<GaussianChannel64> {
    let k: f64 = rng.random_range(0.1..2.0);
    let m = random_sl2(rng) * k.sqrt();
    let scale = rng.random_range(0.0..1.5);
    GaussianChannel64::new(m, random_psd(rng, scale))
}

fn random_two_mode(rng: &mut ChaCha8Rng) -> Fallible<CovMat64> {
    let l = DMatrix::from_fn(4, 4, |_, _| rng.random_range(-1.5..1.5));
    let g = &l * l.transpose() + DMatrix::identity(4, 4) * 0.05;
    CovMat64::new(0.5 * (&g + g.transpose()))
}

fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn symcore_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let j = Matrix2::new(0.0, -1.0, 1.0, 0.0);
    let (mut purity, mut williamson, mut entropy, mut accepted, mut bilinear) =
        (Worst::new(), Worst::new(), Worst::new(), Worst::new(), Worst::new());
    for _ in 0..cfg.cases {
        let g = random_state(rng, 8.0)?;
        let psi = purification_cm(&g)?;
        let marginal = psi.matrix().view((2, 2), (2, 2)).into_owned();
        let mut err = if &marginal == g.matrix() { 0.0 } else { f64::INFINITY };
        for nu in symplectic_eigenvalues(&psi, &SymplecticForm::mixed(1))? {
            err = err.max((nu - 1.0).abs());
        }
        purity.case(err);

        let w = williamson_one_mode(&g)?;
        let gm = g.as_matrix2()?;
        let scale = gm.abs().max().max(1.0);
        let thermal = (w.s.transpose() * gm * w.s - Matrix2::identity() * w.gamma_s)
            .abs()
            .max();
        let symp = (w.s.transpose() * j * w.s - j).abs().max();
        williamson.case(thermal.max(symp) / scale);

        let gamma_s = rng.random_range(1.0..50.0);
        let s = gaussian_entropy(
            &CovMat64::one_mode(gamma_s, 0.0, gamma_s)?,
            &SymplecticForm::standard(1),
            cfg.base,
        )?;
        let expected = bosonic_entropy((gamma_s - 1.0) / 2.0, cfg.base)?;
        entropy.case((s - expected).abs() / expected.max(1.0));

        let two = random_two_mode(rng)?;
        for form in [SymplecticForm::standard(2), SymplecticForm::mixed(1)] {
            if check_uncertainty(&two, &form)?.valid {
                let lowest = symplectic_eigenvalues(&two, &form)?
                    .into_iter()
                    .fold(f64::INFINITY, f64::min);
                accepted.see((1.0 - lowest).max(0.0));
            }
        }
        accepted.cases += 1;

        let q1 = DMatrix::from_fn(4, 4, |_, _| rng.random_range(-2.0..2.0));
        let q1 = 0.5 * (&q1 + q1.transpose());
        let q2 = DMatrix::from_fn(4, 4, |_, _| rng.random_range(-2.0..2.0));
        let q2 = 0.5 * (&q2 + q2.transpose());
        let other = random_two_mode(rng)?;
        let t: f64 = rng.random_range(0.0..1.0);
        let mixed_q = quadratic_expectation(&(&q1 * t + &q2 * (1.0 - t)), &two)?;
        let split_q = t * quadratic_expectation(&q1, &two)? + (1.0 - t) * quadratic_expectation(&q2, &two)?;
        let mixed_g = quadratic_expectation(&q1, &CovMat64::new(two.matrix() * t + other.matrix() * (1.0 - t))?)?;
        let split_g = t * quadratic_expectation(&q1, &two)? + (1.0 - t) * quadratic_expectation(&q1, &other)?;
        bilinear.case(
            ((mixed_q - split_q).abs() / mixed_q.abs().max(1.0))
                .max((mixed_g - split_g).abs() / mixed_g.abs().max(1.0)),
        );
    }
    Ok(vec![
        purity.report("symcore.purification_purity", 1e-9),
        williamson.report("symcore.williamson_residual", 1e-12),
        entropy.report("symcore.thermal_entropy", 1e-12),
        accepted.report("symcore.accepted_states_above_one", 1e-9),
        bilinear.report("symcore.quadratic_expectation_bilinear", 1e-12),
    ])
}

fn channel_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let (mut agree, mut positive, mut congruence, mut reference) =
        (Worst::new(), Worst::new(), Worst::new(), Worst::new());
    let mut mismatches = 0.0;
    for _ in 0..cfg.cases {
        let ch = random_any_gain_channel(rng)?;
        let g = random_state(rng, 8.0)?;
        let report = validate_channel(&ch);
        // Channels within rounding of the validity boundary are not decidable.
        if report.slack.abs() > 1e-6 {
            let joint = joint_cm_any_gain(&ch, &g)?;
            let physical = joint.is_physical()?;
            let simon = simon_condition(joint.matrix()) >= -1e-9;
            if report.valid != physical || report.valid != simon {
                mismatches += 1.0;
            }
            agree.cases += 1;
        }
        if report.valid {
            let out = apply(&ch, &g)?;
            positive.case((-check_uncertainty(&out, &SymplecticForm::standard(1))?.min_eigenvalue).max(0.0));
        }
        let (unit, k) = normalize_gain(&ch)?;
        let gm = g.as_matrix2()?;
        let lhs = ch.m().transpose() * gm * ch.m();
        let rhs = unit.m().transpose() * gm * unit.m() * (k * k);
        congruence.case((lhs - rhs).abs().max() / lhs.abs().max().max(1.0));

        let joint = joint_cm(&unit, &g)?;
        reference.case((joint.reference_block() - gm).abs().max());
    }
    agree.see(mismatches);
    Ok(vec![
        agree.report("channel.validity_physicality_simon", 0.0),
        positive.report("channel.output_positivity", 1e-10),
        congruence.report("channel.normalize_gain_congruence", 1e-12),
        reference.report("channel.reference_block_intact", 0.0),
    ])
}

/// Max-entry deviation of the finite-squeezing joint CM from the limit.
pub fn finite_r_deviation(r: f64) -> Fallible<f64> {
    let g = CovMat64::one_mode(3.0, 0.0, 3.0)?;
    let ch = GaussianChannel64::new(Matrix2::identity(), Matrix2::identity())?;
    let target = joint_cm(&ch, &g)?.to_cov_mat()?;
    let got = general_joint_cm(&finite_r_op(ch.m(), ch.n(), r)?, &g)?;
    Ok(max_abs_diff(got.matrix(), target.matrix()))
}

pub const FINITE_R_SQUEEZINGS: [f64; 4] = [5.0, 10.0, 15.0, 20.0];

/// Least-squares decay rate `k` of `err ∝ e^(−k·r)` over [`FINITE_R_SQUEEZINGS`].
pub fn finite_r_decay_rate() -> Fallible<f64> {
    let pts = FINITE_R_SQUEEZINGS
        .iter()
        .map(|&r| finite_r_deviation(r).map(|e| (r, e.ln())))
        .collect::<Fallible<Vec<_>>>()?;
    let n = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(-sxy / sxx)
}

fn finite_r_suite(_cfg: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let mut rate = Worst::new();
    rate.case((2.0 - finite_r_decay_rate()?).max(0.0));
    let mut last = Worst::new();
    last.case(finite_r_deviation(20.0)?);
    let mut rate = rate.report("channel.finite_r_decay_rate_two", 0.05);
    rate.cases = FINITE_R_SQUEEZINGS.len();
    Ok(vec![rate, last.report("channel.finite_r_error_at_20", 1e-8)])
}

fn distortion_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let form = build_form(1, Gains::default())?;
    let fixed = squeezed_thermal(2.2, 0.4, 0.7)?;
    let floor = minimal_distortion(&fixed)?.d_min;
    let (mut bridge, mut above) = (Worst::new(), Worst::new());
    for _ in 0..cfg.cases {
        let ch = random_unit_channel(rng)?;
        let g = random_state(rng, 8.0)?;
        let via_form = quadratic_expectation(&form.q, &joint_cm(&ch, &g)?.to_cov_mat()?)?;
        let closed = average_distortion(&ch, &g)?;
        bridge.case((via_form - closed).abs() / closed.max(1.0));
        above.case((floor - average_distortion(&ch, &fixed)?).max(0.0));
    }
    let mut kappa = Worst::new();
    for gamma_s in [1.5, 3.0, 11.0] {
        let g = CovMat64::one_mode(gamma_s, 0.0, gamma_s)?;
        for i in -9..=9 {
            let m = thermal_m_star(gamma_s, 0.1 * f64::from(i))?;
            let d = average_distortion(&GaussianChannel64::new(m, Matrix2::zeros())?, &g)?;
            kappa.case((d - thermal_min_distortion(gamma_s)).abs());
        }
    }
    let mut canonical = Worst::new();
    for _ in 0..cfg.cases.min(20) {
        let g = random_state(rng, 5.0)?;
        let m_star = minimal_distortion(&g)?.m_star;
        let n = random_psd(rng, 1.0);
        let rep = canonical_distortion(&GaussianChannel64::new(m_star, n)?, &g)?;
        canonical.case((rep.n_n - 0.25 * n.trace()).abs());
    }
    Ok(vec![
        bridge.report("distortion.quadratic_form_bridge", 1e-12),
        above.report("distortion.average_above_floor", 1e-9),
        kappa.report("distortion.kappa_degeneracy", 1e-10),
        canonical.report("distortion.canonical_counts_noise", 1e-10),
    ])
}

pub const THERMAL_GAMMA_S: [f64; 4] = [1.0, 1.5, 3.0, 11.0];

fn thermal_minimum_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let mut closed = Worst::new();
    for gamma_s in THERMAL_GAMMA_S {
        let md = minimal_distortion(&CovMat64::one_mode(gamma_s, 0.0, gamma_s)?)?;
        closed.case(
            (md.d_min - thermal_min_distortion(gamma_s))
                .abs()
                .max((md.omega - thermal_omega(gamma_s)).abs()),
        );
    }
    let mut rotated = Worst::new();
    for _ in 0..cfg.cases.min(20) {
        let g = random_state(rng, 8.0)?;
        let r = rotation(rng.random_range(0.0..std::f64::consts::PI));
        let gm = g.as_matrix2()?;
        let turned = r.transpose() * gm * r;
        let a = minimal_distortion(&g)?;
        let b = minimal_distortion(&CovMat64::from_matrix2(&(0.5 * (turned + turned.transpose())))?)?;
        rotated.case((a.omega - b.omega).abs().max((a.d_min - b.d_min).abs()));
    }
    Ok(vec![
        closed.report("distortion.thermal_closed_forms", 1e-8),
        rotated.report("distortion.rotation_invariance", 1e-6),
    ])
}

fn random_params(rng: &mut ChaCha8Rng) -> Fallible<NoiseParams64> {
    let n_s = rng.random_range(0.0..5.0);
    let delta: f64 = rng.random_range(0.0..4.0);
    let tau = 2.0 * delta.sqrt() + rng.random_range(0.0..5.0);
    NoiseParams64::new(n_s, delta, tau)
}

fn coherent_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let (mut identity, mut monotone) = (Worst::new(), Worst::new());
    for _ in 0..cfg.cases {
        let p = random_params(rng)?;
        let d = d_values(&p)?;
        let lhs = d.d0 * d.d0 - 0.5 * (d.d1 * d.d1 + d.d2 * d.d2);
        let rhs = p.n_s * (p.n_s + 1.0) + 0.5 * p.x();
        identity.case((lhs - rhs).abs() / rhs.max(1.0));

        let n_s: f64 = rng.random_range(0.0..3.0);
        let delta: f64 = rng.random_range(1e-3..2.0);
        let x = delta + (n_s + 0.5) * (2.0 * delta.sqrt() + rng.random_range(0.01..3.0));
        let h = 1e-6;
        let at = |dl: f64| coherent_info(&NoiseParams64::new(n_s, dl, (x - dl) / (n_s + 0.5))?, EntropyBase::Nats);
        monotone.case(((at(delta + h)? - at(delta - h)?) / (2.0 * h)).max(0.0));
    }
    let mut shape = Worst::new();
    let ratios = (1..=5000)
        .map(|i| entropy_derivative_ratio(0.01 * f64::from(i), EntropyBase::Nats))
        .collect::<Fallible<Vec<f64>>>()?;
    for w in ratios.windows(3) {
        shape.case((w[1] - w[0]).max(2.0 * w[1] - w[0] - w[2]).max(0.0));
    }
    Ok(vec![
        identity.report("coherent.convexity_identity", 1e-12),
        monotone.report("coherent.decreasing_in_delta_at_fixed_x", 1e-10),
        shape.report("coherent.derivative_ratio_decreasing_convex", 1e-12),
    ])
}

fn oracle_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let (mut info, mut spectrum, mut product) = (Worst::new(), Worst::new(), Worst::new());
    for _ in 0..cfg.cases {
        let g = random_state(rng, 8.0)?;
        let m = random_sl2(rng);
        let n_n: f64 = rng.random_range(0.01..3.0);
        let delta = rng.random_range(0.0..1.0) * n_n * n_n;
        let t = rng.random_range(-1.0..1.0);
        let w = williamson_one_mode(&g)?;
        let omega = (w.s.try_inverse().expect("symplectic") * m).norm_squared();
        let p = NoiseParams64::new(w.mean_photons(), delta, tau_from_t(n_n, delta, omega, t)?)?;
        let joint = joint_cm(&GaussianChannel64::new(m, explicit_noise(&g, &m, n_n, delta, t)?)?, &g)?;

        info.case((coherent_info(&p, cfg.base)? - coherent_info_from_cm(&joint, cfg.base)?).abs());

        let d = d_values(&p)?;
        let out = symplectic_eigenvalues(&joint.output_cov_mat()?, &SymplecticForm::standard(1))?;
        let all = symplectic_eigenvalues(&joint.to_cov_mat()?, &JointCm64::form())?;
        spectrum.case(
            (2.0 * d.d0 - out[0])
                .abs()
                .max((2.0 * d.d1 - all[0]).abs())
                .max((2.0 * d.d2 - all[1]).abs()),
        );

        let x = p.x();
        let expanded = 4.0 * ((x + 0.5).powi(2) - x * x + 4.0 * p.n_s * (p.n_s + 1.0) * delta);
        let det = joint.matrix().determinant();
        let prod = 16.0 * d.d1 * d.d1 * d.d2 * d.d2;
        product.case(((prod - expanded).abs().max((prod - det).abs())) / det.max(1.0));
    }
    Ok(vec![
        info.report("coherent.closed_form_vs_cm_oracle", 1e-9),
        spectrum.report("coherent.d_values_vs_symplectic_spectrum", 1e-9),
        product.report("coherent.product_identity", 1e-9),
    ])
}

pub const ENDPOINT_NS: [f64; 5] = [0.0, 0.1, 0.25, 1.0, 5.0];
pub const PURE_TRACES: [f64; 3] = [2.0, 3.0, 10.0];
pub const CLIPPING_NS: [f64; 3] = [0.05, 0.25, 1.0];
pub const DESK_RATE: f64 = 0.36873;

fn pure_state_with_trace(trace: f64) -> Fallible<CovMat64> {
    let a = 0.5 * (trace + (trace * trace - 4.0).max(0.0).sqrt());
    CovMat64::one_mode(a, 0.0, 1.0 / a)
}

fn endpoints_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let mut zero = Worst::new();
    for n_s in ENDPOINT_NS {
        let g = bosonic_entropy(n_s, cfg.base)?;
        let squeezed = squeezed_thermal(2.0 * n_s + 1.0, rng.random_range(-1.0..1.0), rng.random_range(0.0..3.0))?;
        for gamma in [CovMat64::thermal(n_s)?, squeezed] {
            zero.case((rate_distortion(&gamma, 0.0, cfg.base)?.r_i - g).abs());
        }
    }
    let grid: Vec<f64> = (0..201).map(|i| 0.025 * f64::from(i)).collect();
    let mut pure = Worst::new();
    for trace in PURE_TRACES {
        for p in rd_curve(&pure_state_with_trace(trace)?, &grid, cfg.base)? {
            pure.case(p.r_i.abs());
        }
    }
    let mut reduction = Worst::new();
    for _ in 0..cfg.cases {
        let n_s: f64 = rng.random_range(0.0..5.0);
        let n_n: f64 = rng.random_range(0.0..4.0);
        let via_ic = coherent_info(&NoiseParams64::new(n_s, n_n * n_n, 2.0 * n_n)?, cfg.base)?.max(0.0);
        reduction.case((pure_state_rate(n_s, n_n, cfg.base)? - via_ic).abs());
    }
    for r in [0.0, 0.4, 1.0] {
        let g = squeezed_thermal(1.0 + 1e-9, r, 0.8)?;
        let n_s = summarize_source(&g)?.n_s;
        for n_n in [0.05, 0.5, 2.0] {
            reduction.case((rate_distortion(&g, n_n, cfg.base)?.r_i - pure_state_rate(n_s, n_n, cfg.base)?).abs());
        }
    }
    let mut clipped = Worst::new();
    for n_s in CLIPPING_NS {
        let omega = thermal_omega(2.0 * n_s + 1.0);
        clipped.case(rate_distortion(&CovMat64::thermal(n_s)?, (omega * omega - 4.0).sqrt(), cfg.base)?.r_i);
    }
    let mut desk = Worst::new();
    let (a, b) = crate::state::family_diagonal(3.0, 0.25).map_err(gauss_rd::Error::Domain)?;
    let bits = rate_distortion(&CovMat64::one_mode(a, 0.0, b)?, 0.1, EntropyBase::Bits)?.r_i;
    desk.case((bits - DESK_RATE).abs());
    Ok(vec![
        zero.report("ratedist.zero_distortion_entropy", 1e-9),
        pure.report("ratedist.pure_state_collapse", 0.0),
        reduction.report("ratedist.omega_two_reduction", 1e-6),
        clipped.report("ratedist.clipped_at_2sinh2r", 0.0),
        desk.report("ratedist.desk_value", 1e-4),
    ])
}

pub const WEAK_SIGNAL_NS: [f64; 3] = [0.001, 0.005, 0.01];

fn isotropic_optimality_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let (mut value, mut argmin) = (Worst::new(), Worst::new());
    for i in 0..cfg.cases.min(50) {
        let (gamma, n_n) = match WEAK_SIGNAL_NS.get(i) {
            Some(&n_s) => (CovMat64::thermal(n_s)?, rng.random_range(0.01..0.5)),
            None => (random_state(rng, 5.0)?, rng.random_range(0.01..2.0)),
        };
        let bf = brute_force_with(&summarize_source(&gamma)?, n_n, cfg.grid, cfg.base)?;
        value.case((bf.closed_form - bf.i_min).max(0.0));
        argmin.case((bf.delta_star - n_n * n_n).abs() / bf.delta_step);
    }
    Ok(vec![
        value.report("ratedist.isotropic_noise_minimizes", 1e-9),
        argmin.report("ratedist.isotropic_argmin_in_steps", 1.0),
    ])
}

fn curves_suite(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let mut monotone = Worst::new();
    for _ in 0..cfg.cases.min(50) {
        let g = random_state(rng, 8.0)?;
        let top: f64 = rng.random_range(0.5..4.0);
        let grid: Vec<f64> = (0..=100).map(|i| top * f64::from(i) / 100.0).collect();
        let curve = rd_curve(&g, &grid, cfg.base)?;
        let rise = curve.windows(2).map(|w| w[1].r_i - w[0].r_i).fold(0.0, f64::max);
        let below = curve.iter().map(|p| -p.r_i).fold(0.0, f64::max);
        monotone.case(rise.max(below));
    }
    Ok(vec![monotone.report("ratedist.curve_nonincreasing", 1e-12)])
}

fn figure1_suite(cfg: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Fallible<Vec<CheckReport>> {
    let curves = figure1_curves(cfg.base).map_err(gauss_rd::Error::Domain)?;
    let mut shape = Worst::new();
    for c in &curves {
        let rise = c.points.windows(2).map(|w| w[1].r_i - w[0].r_i).fold(0.0, f64::max);
        let intercept = (c.points[0].r_i - bosonic_entropy(c.n_s, cfg.base)?).abs();
        let pure = if c.n_s == 0.0 {
            c.points.iter().map(|p| p.r_i.abs()).fold(0.0, f64::max)
        } else {
            0.0
        };
        shape.case(rise.max(intercept).max(pure));
    }
    Ok(vec![shape.report("figure1.curves", 1e-9)])
}
