//! Symplectic linear algebra for Gaussian states at the covariance-matrix level.
//!
//! Conventions: quadratures are ordered `(X₁, P₁, …, Xₙ, Pₙ)`, the covariance
//! matrix is `Γᵢⱼ = ⟨RᵢRⱼ + RⱼRᵢ⟩` so the vacuum is the identity, and a state is
//! physical iff `Γ − iJ ≥ 0` for its symplectic form `J`.

use nalgebra::{DMatrix, Matrix2, SymmetricEigen};

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

/// Logarithm base used for every entropic quantity of one computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EntropyBase {
    #[default]
    Bits,
    Nats,
}

impl EntropyBase {
    /// Natural logarithm of the base (`ln 2` for bits, `1` for nats).
    pub fn ln_base<T: Real>(self) -> T {
        match self {
            EntropyBase::Bits => T::ln_2(),
            EntropyBase::Nats => T::one(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EntropyBase::Bits => "bits",
            EntropyBase::Nats => "nats",
        }
    }
}

impl std::str::FromStr for EntropyBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bits" => Ok(EntropyBase::Bits),
            "nats" => Ok(EntropyBase::Nats),
            other => Err(domain(format!("unknown entropy base `{other}`"))),
        }
    }
}

/// Block-diagonal symplectic form `⊕ sᵢJ` with `J = [[0, −1], [1, 0]]` and
/// per-mode signs `sᵢ = ±1`.
///
/// The reference half of a Schmidt purification carries the sign `−1`: the
/// joint reference/output state lives under `J ⊕ (−J)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    signs: Vec<i8>,
}

impl SymplecticForm {
    /// `Jₙ = J ⊕ … ⊕ J`.
    pub fn standard(n_modes: usize) -> Self {
        Self {
            signs: vec![1; n_modes],
        }
    }

    /// `Jₙ ⊕ (−Jₙ)` over `2n` modes, the form of a purified joint state.
    pub fn mixed(n_modes: usize) -> Self {
        let mut signs = vec![1; n_modes];
        signs.extend(std::iter::repeat_n(-1, n_modes));
        Self { signs }
    }

    pub fn with_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(domain("form signs must be a non-empty list of ±1"));
        }
        Ok(Self { signs })
    }

    pub fn n_modes(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn matrix<T: Real>(&self) -> DMatrix<T> {
        let n = self.n_modes();
        let mut f = DMatrix::zeros(2 * n, 2 * n);
        for (k, s) in self.signs.iter().enumerate() {
            let s: T = if *s > 0 { T::one() } else { -T::one() };
            f[(2 * k, 2 * k + 1)] = -s;
            f[(2 * k + 1, 2 * k)] = s;
        }
        f
    }

    /// Diagonal matrix `D` with `D·form·D = Jₙ`: identity on `+J` modes and
    /// `Λ = diag(1, −1)` on `−J` modes.
    fn standardizer<T: Real>(&self) -> DMatrix<T> {
        let n = self.n_modes();
        let mut d = DMatrix::identity(2 * n, 2 * n);
        for (k, s) in self.signs.iter().enumerate() {
            if *s < 0 {
                d[(2 * k + 1, 2 * k + 1)] = -T::one();
            }
        }
        d
    }
}

/// Real symmetric covariance matrix of an `n`-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMat<T: Real> {
    entries: DMatrix<T>,
}

impl<T: Real> CovMat<T> {
    /// Wraps a `2n × 2n` matrix after checking shape and symmetry.
    ///
    /// Positivity and physicality are not enforced here; see
    /// [`check_uncertainty`].
    pub fn new(entries: DMatrix<T>) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(Error::Dimension {
                expected: "non-empty 2n×2n matrix".into(),
                got: format!("{r}×{c}"),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(domain("covariance matrix has non-finite entries"));
        }
        let scale = T::one().max(entries.amax());
        let tol = lit::<T>(1e-12) * scale;
        for i in 0..r {
            for j in (i + 1)..r {
                if (entries[(i, j)] - entries[(j, i)]).abs() > tol {
                    return Err(domain(format!("covariance matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { entries })
    }

    /// One-mode CM `[[a, c], [c, b]]`.
    pub fn one_mode(a: T, c: T, b: T) -> Result<Self> {
        Self::new(DMatrix::from_row_slice(2, 2, &[a, c, c, b]))
    }

    pub fn from_matrix2(m: &Matrix2<T>) -> Result<Self> {
        Self::new(DMatrix::from_fn(2, 2, |i, j| m[(i, j)]))
    }

    /// Thermal state `(2N_s + 1)·I` with mean photon number `N_s`.
    pub fn thermal(mean_photons: T) -> Result<Self> {
        if mean_photons < T::zero() {
            return Err(domain("mean photon number must be nonnegative"));
        }
        let g = lit::<T>(2.0) * mean_photons + T::one();
        Self::one_mode(g, T::zero(), g)
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            entries: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.entries.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.entries
    }

    pub fn trace(&self) -> T {
        self.entries.trace()
    }

    /// The 2×2 matrix of a one-mode CM.
    pub fn as_matrix2(&self) -> Result<Matrix2<T>> {
        if self.n_modes() != 1 {
            return Err(Error::Dimension {
                expected: "one-mode (2×2) CM".into(),
                got: format!("{}-mode CM", self.n_modes()),
            });
        }
        let m = &self.entries;
        Ok(Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]))
    }
}

/// Bosonic entropy `g(x) = (x+1)·log(x+1) − x·log x` of a thermal mode with
/// mean photon number `x`.
pub fn bosonic_entropy<T: Real>(x: T, base: EntropyBase) -> Result<T> {
    if !x.is_finite() || x < -lit::<T>(1e-12) {
        return Err(domain(format!("bosonic entropy argument {x} is negative")));
    }
    if x <= T::zero() {
        return Ok(T::zero());
    }
    let nats = (x + T::one()) * x.ln_1p() - x * x.ln();
    Ok(nats / base.ln_base::<T>())
}

fn check_form<T: Real>(gamma: &CovMat<T>, form: &SymplecticForm) -> Result<()> {
    if gamma.n_modes() != form.n_modes() {
        return Err(Error::Dimension {
            expected: format!("{}-mode CM", form.n_modes()),
            got: format!("{}-mode CM", gamma.n_modes()),
        });
    }
    Ok(())
}

fn sorted_eigen<T: Real>(m: DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let eig = SymmetricEigen::new(m);
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// `V·diag(f(λ))·Vᵀ` for a symmetric eigen-decomposition.
fn spectral_map<T: Real>(values: &[T], vectors: &DMatrix<T>, f: impl Fn(T) -> T) -> DMatrix<T> {
    let mut scaled = vectors.clone();
    for (j, v) in values.iter().enumerate() {
        let fv = f(*v);
        scaled.column_mut(j).scale_mut(fv);
    }
    scaled * vectors.transpose()
}

/// Principal square root of a symmetric positive semidefinite matrix.
///
/// Eigenvalues in `[−1e-12·s, 0]` (with `s = max(1, max|aᵢⱼ|)`) are clipped to
/// zero; anything more negative is a domain error.
pub fn sqrt_psd<T: Real>(a: &DMatrix<T>) -> Result<DMatrix<T>> {
    let scale = T::one().max(a.amax());
    let sym = (a + a.transpose()) * lit::<T>(0.5);
    let (values, vectors) = sorted_eigen(sym);
    let floor = -lit::<T>(1e-12) * scale;
    if let Some(bad) = values.iter().find(|v| **v < floor) {
        return Err(domain(format!(
            "matrix square root of an indefinite argument (eigenvalue {bad})"
        )));
    }
    Ok(spectral_map(&values, &vectors, |v| v.max(T::zero()).sqrt()))
}

/// Symplectic eigenvalues of `Γ` with respect to `form`, in descending order.
///
/// These are the moduli of the eigenvalues of `i·form⁻¹·Γ`, each doubly
/// degenerate; one value per mode is returned. For one mode this is `√det Γ`.
pub fn symplectic_eigenvalues<T: Real>(gamma: &CovMat<T>, form: &SymplecticForm) -> Result<Vec<T>> {
    check_form(gamma, form)?;
    let d = form.standardizer::<T>();
    let g = &d * gamma.matrix() * &d;
    let (values, vectors) = sorted_eigen(g.clone());
    if values.iter().any(|v| *v <= T::zero()) {
        return Err(domain("covariance matrix is not positive definite"));
    }
    let root = spectral_map(&values, &vectors, |v| v.sqrt());
    let j = SymplecticForm::standard(gamma.n_modes()).matrix::<T>();
    // K = Γ^½ J Γ^½ is antisymmetric with spectrum ±iν; KᵀK carries ν².
    let k = &root * j * &root;
    let (mut nu2, _) = sorted_eigen(k.transpose() * &k);
    nu2.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok(nu2.iter().step_by(2).map(|v| v.max(T::zero()).sqrt()).collect())
}

/// Outcome of the Robertson–Schrödinger check `Γ − i·form ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport<T> {
    pub valid: bool,
    /// Smallest eigenvalue of the Hermitian matrix `Γ − i·form`.
    pub min_eigenvalue: T,
}

/// Tests `Γ − i·form ≥ 0` (to −1e-10).
///
/// The Hermitian matrix `A + iB` is checked through its real symmetric
/// embedding `[[A, −B], [B, A]]`, which has the same spectrum doubled.
pub fn check_uncertainty<T: Real>(gamma: &CovMat<T>, form: &SymplecticForm) -> Result<UncertaintyReport<T>> {
    check_form(gamma, form)?;
    let dim = gamma.matrix().nrows();
    let f = form.matrix::<T>();
    let mut h = DMatrix::zeros(2 * dim, 2 * dim);
    h.view_mut((0, 0), (dim, dim)).copy_from(gamma.matrix());
    h.view_mut((dim, dim), (dim, dim)).copy_from(gamma.matrix());
    // A + iB = Γ − i·F, so B = −F and the embedding's upper-right block is F.
    h.view_mut((0, dim), (dim, dim)).copy_from(&f);
    h.view_mut((dim, 0), (dim, dim)).copy_from(&(-f));
    let (values, _) = sorted_eigen(h);
    let min = values.iter().copied().fold(T::max_value().unwrap(), |a, b| a.min(b));
    Ok(UncertaintyReport {
        valid: min >= -lit::<T>(1e-10),
        min_eigenvalue: min,
    })
}

/// Williamson normal form of a one-mode CM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Williamson<T: Real> {
    /// Symplectic matrix with `Sᵀ·γ·S = γ_s·I`.
    pub s: Matrix2<T>,
    /// Symplectic eigenvalue `√det γ`.
    pub gamma_s: T,
}

impl<T: Real> Williamson<T> {
    /// Mean photon number `N_s = (γ_s − 1)/2` of the thermal normal form.
    pub fn mean_photons(&self) -> T {
        ((self.gamma_s - T::one()) * lit::<T>(0.5)).max(T::zero())
    }
}

/// Brings a valid one-mode CM to `γ_s·I` by a rotation followed by a squeeze.
pub fn williamson_one_mode<T: Real>(gamma: &CovMat<T>) -> Result<Williamson<T>> {
    let g = gamma.as_matrix2()?;
    let report = check_uncertainty(gamma, &SymplecticForm::standard(1))?;
    if !report.valid {
        return Err(domain("invalid one-mode CM (det γ < 1)"));
    }
    let eig = SymmetricEigen::new(g);
    let mut rot = eig.eigenvectors;
    if rot.determinant() < T::zero() {
        rot.column_mut(1).neg_mut();
    }
    let (l1, l2) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    let gamma_s = g.determinant().max(T::zero()).sqrt();
    // det γ of a pure state is only known to a few ulp times the condition number.
    let pure_tol = lit::<T>(1e-13) * (l1.max(l2) / l1.min(l2));
    let gamma_s = if (gamma_s - T::one()).abs() <= pure_tol {
        T::one()
    } else {
        gamma_s
    };
    let squeeze = Matrix2::new((gamma_s / l1).sqrt(), T::zero(), T::zero(), (gamma_s / l2).sqrt());
    Ok(Williamson {
        s: rot * squeeze,
        gamma_s,
    })
}

/// Off-diagonal block `β = Jₙ·√(−(Jₙ⁻¹γ)² − I)` of the Schmidt purification.
///
/// `Jₙ⁻¹γ` is similar to the antisymmetric `K = γ^½·Jₙᵀ·γ^½`, so the square
/// root is taken as `γ^{-½}·√(KᵀK − I)·γ^½` with a symmetric argument. For one
/// mode this is `√(det γ − 1)·J`.
pub fn purification_block<T: Real>(gamma: &CovMat<T>) -> Result<DMatrix<T>> {
    let n = gamma.n_modes();
    let (values, vectors) = sorted_eigen(gamma.matrix().clone());
    if values.iter().any(|v| *v <= T::zero()) {
        return Err(domain("covariance matrix is not positive definite"));
    }
    let root = spectral_map(&values, &vectors, |v| v.sqrt());
    let inv_root = spectral_map(&values, &vectors, |v| T::one() / v.sqrt());
    let j = SymplecticForm::standard(n).matrix::<T>();
    let k = &root * j.transpose() * &root;
    let arg = k.transpose() * &k - DMatrix::identity(2 * n, 2 * n);
    let sq = sqrt_psd(&arg)?;
    Ok(j * inv_root * sq * root)
}

/// CM `[[γ, β], [βᵀ, γ]]` of the Schmidt purification of `γ`.
///
/// The result is pure under `Jₙ ⊕ (−Jₙ)`; both diagonal blocks are copies of
/// `γ`.
pub fn purification_cm<T: Real>(gamma: &CovMat<T>) -> Result<CovMat<T>> {
    let report = check_uncertainty(gamma, &SymplecticForm::standard(gamma.n_modes()))?;
    if !report.valid {
        return Err(domain("cannot purify an unphysical CM"));
    }
    let beta = purification_block(gamma)?;
    let d = gamma.matrix().nrows();
    let mut psi = DMatrix::zeros(2 * d, 2 * d);
    psi.view_mut((0, 0), (d, d)).copy_from(gamma.matrix());
    psi.view_mut((d, d), (d, d)).copy_from(gamma.matrix());
    psi.view_mut((0, d), (d, d)).copy_from(&beta);
    psi.view_mut((d, 0), (d, d)).copy_from(&beta.transpose());
    CovMat::new(psi)
}

/// Von Neumann entropy `Σₖ g((νₖ − 1)/2)` of a Gaussian state.
pub fn gaussian_entropy<T: Real>(gamma: &CovMat<T>, form: &SymplecticForm, base: EntropyBase) -> Result<T> {
    let nus = symplectic_eigenvalues(gamma, form)?;
    let floor = T::one() - lit::<T>(1e-9);
    let half = lit::<T>(0.5);
    nus.iter().try_fold(T::zero(), |acc, nu| {
        if *nu < floor {
            return Err(domain(format!("unphysical CM: symplectic eigenvalue {nu} < 1")));
        }
        Ok(acc + bosonic_entropy(((*nu - T::one()) * half).max(T::zero()), base)?)
    })
}

/// Expectation of `½·rᵀQr` in the zero-mean Gaussian state with CM `Γ`,
/// i.e. `¼·Tr(QΓ)`.
pub fn quadratic_expectation<T: Real>(q: &DMatrix<T>, gamma: &CovMat<T>) -> Result<T> {
    if q.shape() != gamma.matrix().shape() {
        return Err(Error::Dimension {
            expected: format!("{0}×{0}", gamma.matrix().nrows()),
            got: format!("{}×{}", q.nrows(), q.ncols()),
        });
    }
    Ok(q.component_mul(gamma.matrix()).sum() * lit::<T>(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Rotation2;

    fn cm(a: f64, c: f64, b: f64) -> CovMat<f64> {
        CovMat::one_mode(a, c, b).unwrap()
    }

    fn rotated(gamma: &Matrix2<f64>, theta: f64) -> CovMat<f64> {
        let r = *Rotation2::new(theta).matrix();
        CovMat::from_matrix2(&(r.transpose() * gamma * r)).unwrap()
    }

    #[test]
    fn bosonic_entropy_values() {
        assert_eq!(bosonic_entropy(0.0, EntropyBase::Bits).unwrap(), 0.0);
        assert_abs_diff_eq!(bosonic_entropy(1.0, EntropyBase::Bits).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            bosonic_entropy(0.25, EntropyBase::Bits).unwrap(),
            0.902_410_118_609_203,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            bosonic_entropy(1.0, EntropyBase::Nats).unwrap(),
            2.0 * 2f64.ln(),
            epsilon = 1e-15
        );
        assert_eq!(bosonic_entropy(-1e-13, EntropyBase::Bits).unwrap(), 0.0);
        assert!(matches!(
            bosonic_entropy(-1e-6, EntropyBase::Bits),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn bosonic_entropy_increasing_concave() {
        let xs: Vec<f64> = (1..400).map(|i| i as f64 * 0.05).collect();
        let gs: Vec<f64> = xs
            .iter()
            .map(|x| bosonic_entropy(*x, EntropyBase::Nats).unwrap())
            .collect();
        for w in gs.windows(3) {
            assert!(w[1] > w[0]);
            assert!(w[0] + w[2] - 2.0 * w[1] < 0.0);
        }
    }

    #[test]
    fn symplectic_eigenvalues_examples() {
        let std1 = SymplecticForm::standard(1);
        assert_abs_diff_eq!(
            symplectic_eigenvalues(&CovMat::<f64>::vacuum(1), &std1).unwrap()[0],
            1.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            symplectic_eigenvalues(&cm(4.0, 0.0, 1.0), &std1).unwrap()[0],
            2.0,
            epsilon = 1e-14
        );
        let g = cm(2.3, 0.4, 1.7);
        let det: f64 = 2.3 * 1.7 - 0.16;
        assert_abs_diff_eq!(
            symplectic_eigenvalues(&g, &std1).unwrap()[0],
            det.sqrt(),
            epsilon = 1e-13
        );
        let psi = purification_cm(&cm(3.0, 0.0, 3.0)).unwrap();
        let nus = symplectic_eigenvalues(&psi, &SymplecticForm::mixed(1)).unwrap();
        assert_eq!(nus.len(), 2);
        for nu in nus {
            assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn symplectic_eigenvalues_two_mode_product() {
        let mut m = DMatrix::identity(4, 4);
        m[(0, 0)] = 4.0;
        m[(2, 2)] = 3.0;
        m[(3, 3)] = 3.0;
        let nus = symplectic_eigenvalues(&CovMat::new(m).unwrap(), &SymplecticForm::standard(2)).unwrap();
        assert_abs_diff_eq!(nus[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nus[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn symplectic_eigenvalues_rejects_indefinite() {
        let g = cm(1.0, 2.0, 1.0);
        assert!(matches!(
            symplectic_eigenvalues(&g, &SymplecticForm::standard(1)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            symplectic_eigenvalues(&g, &SymplecticForm::standard(2)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn uncertainty_examples() {
        let f = SymplecticForm::standard(1);
        let vac = check_uncertainty(&CovMat::<f64>::vacuum(1), &f).unwrap();
        assert!(vac.valid);
        assert_abs_diff_eq!(vac.min_eigenvalue, 0.0, epsilon = 1e-14);
        assert!(!check_uncertainty(&cm(0.5, 0.0, 0.5), &f).unwrap().valid);
        let r = check_uncertainty(&cm(1.25, 0.5, 1.25), &f).unwrap();
        assert!(r.valid);
        assert!(r.min_eigenvalue > 0.0);
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.2, 0.1, 1.0]);
        assert!(matches!(CovMat::new(m), Err(Error::Domain(_))));
        assert!(matches!(
            CovMat::new(DMatrix::<f64>::identity(3, 3)),
            Err(Error::Dimension { .. })
        ));
    }

    fn assert_williamson(g: &CovMat<f64>, gamma_s: f64) {
        let w = williamson_one_mode(g).unwrap();
        let res = w.s.transpose() * g.as_matrix2().unwrap() * w.s - Matrix2::identity() * w.gamma_s;
        assert!(res.amax() <= 1e-12, "residual {}", res.amax());
        assert_abs_diff_eq!(w.s.determinant(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w.gamma_s, gamma_s, epsilon = 1e-12);
    }

    #[test]
    fn williamson_examples() {
        assert_williamson(&cm(2.5, 0.0, 2.5), 2.5);
        assert_williamson(&cm(4.0, 0.0, 1.0), 2.0);
        assert_williamson(
            &rotated(&Matrix2::new(4.0, 0.0, 0.0, 1.0), std::f64::consts::PI / 6.0),
            2.0,
        );
        let w = williamson_one_mode(&cm(3.0, 0.0, 3.0)).unwrap();
        assert_abs_diff_eq!(w.mean_photons(), 1.0, epsilon = 1e-15);
        assert!(williamson_one_mode(&cm(0.5, 0.0, 0.5)).is_err());
    }

    #[test]
    fn purification_examples() {
        let psi = purification_cm(&CovMat::<f64>::vacuum(1)).unwrap();
        assert_abs_diff_eq!(psi.matrix(), &DMatrix::identity(4, 4), epsilon = 1e-15);

        let beta = purification_block(&cm(3.0, 0.0, 3.0)).unwrap();
        let r8 = 8f64.sqrt();
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, -r8, r8, 0.0]);
        assert_abs_diff_eq!(beta, expected, epsilon = 1e-13);

        let g = cm(4.0, 0.0, 1.0);
        let psi = purification_cm(&g).unwrap();
        assert_eq!(psi.matrix().view((0, 0), (2, 2)), g.matrix().view((0, 0), (2, 2)));
        assert_eq!(psi.matrix().view((2, 2), (2, 2)), g.matrix().view((0, 0), (2, 2)));
        for nu in symplectic_eigenvalues(&psi, &SymplecticForm::mixed(1)).unwrap() {
            assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-9);
        }
        // β is antisymmetric and has a vanishing diagonal.
        let b = purification_block(&rotated(&Matrix2::new(4.0, 0.0, 0.0, 1.5), 0.7)).unwrap();
        assert_abs_diff_eq!(b.clone() + b.transpose(), DMatrix::zeros(2, 2), epsilon = 1e-12);
    }

    #[test]
    fn purification_two_mode_is_pure() {
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                3.0, 0.2, 0.5, 0.0, //
                0.2, 2.0, 0.0, -0.3, //
                0.5, 0.0, 2.5, 0.1, //
                0.0, -0.3, 0.1, 1.8,
            ],
        );
        let g = CovMat::new(m).unwrap();
        assert!(check_uncertainty(&g, &SymplecticForm::standard(2)).unwrap().valid);
        let psi = purification_cm(&g).unwrap();
        for nu in symplectic_eigenvalues(&psi, &SymplecticForm::mixed(2)).unwrap() {
            assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn purification_rejects_unphysical() {
        assert!(purification_cm(&cm(0.5, 0.0, 0.5)).is_err());
    }

    #[test]
    fn mixed_form_matters() {
        // Under the plain J ⊕ J form the purification does not look pure.
        let psi = purification_cm(&cm(3.0, 0.0, 3.0)).unwrap();
        let wrong = check_uncertainty(&psi, &SymplecticForm::standard(2)).unwrap();
        assert!(!wrong.valid);
        assert!(check_uncertainty(&psi, &SymplecticForm::mixed(1)).unwrap().valid);
    }

    #[test]
    fn gaussian_entropy_examples() {
        let b = EntropyBase::Bits;
        assert_abs_diff_eq!(
            gaussian_entropy(&CovMat::<f64>::vacuum(1), &SymplecticForm::standard(1), b).unwrap(),
            0.0
        );
        assert_abs_diff_eq!(
            gaussian_entropy(&cm(3.0, 0.0, 3.0), &SymplecticForm::standard(1), b).unwrap(),
            2.0,
            epsilon = 1e-13
        );
        let psi = purification_cm(&cm(3.0, 0.0, 3.0)).unwrap();
        assert_abs_diff_eq!(
            gaussian_entropy(&psi, &SymplecticForm::mixed(1), b).unwrap(),
            0.0,
            epsilon = 1e-7
        );
        assert!(gaussian_entropy(&cm(0.5, 0.0, 0.5), &SymplecticForm::standard(1), b).is_err());
    }

    #[test]
    fn quadratic_expectation_examples() {
        let q = DMatrix::identity(2, 2) * 2.0;
        assert_abs_diff_eq!(quadratic_expectation(&q, &CovMat::<f64>::vacuum(1)).unwrap(), 1.0);
        assert_abs_diff_eq!(quadratic_expectation(&q, &cm(3.0, 0.0, 3.0)).unwrap(), 3.0);
        let psi = purification_cm(&cm(3.0, 0.0, 3.0)).unwrap();
        let mut xx = DMatrix::zeros(4, 4);
        xx[(0, 2)] = 1.0;
        xx[(2, 0)] = 1.0;
        assert_abs_diff_eq!(quadratic_expectation(&xx, &psi).unwrap(), 0.0, epsilon = 1e-15);
        assert!(quadratic_expectation(&xx, &CovMat::<f64>::vacuum(1)).is_err());
    }

    #[test]
    fn f32_smoke() {
        let g = CovMat::<f32>::one_mode(3.0, 0.0, 3.0).unwrap();
        let s = gaussian_entropy(&g, &SymplecticForm::standard(1), EntropyBase::Bits).unwrap();
        assert!((s - 2.0).abs() < 1e-4);
    }
}
