#![allow(dead_code)]

use gauss_rd::{CovMat64, GaussianChannel64};
use nalgebra::{Matrix2, Vector2};
use proptest::prelude::*;

pub fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// `R(θ₁)·diag(z, 1/z)·R(θ₂)`, a generic element of SL(2, ℝ).
pub fn sl2(theta1: f64, log_z: f64, theta2: f64) -> Matrix2<f64> {
    let z = log_z.exp();
    rotation(theta1) * Matrix2::from_diagonal(&Vector2::new(z, 1.0 / z)) * rotation(theta2)
}

/// `γ_s·Rᵀ·diag(e^{2r}, e^{−2r})·R`.
pub fn squeezed_thermal(gamma_s: f64, r: f64, theta: f64) -> CovMat64 {
    let rot = rotation(theta);
    let d = Matrix2::from_diagonal(&Vector2::new((2.0 * r).exp(), (-2.0 * r).exp()));
    let m = rot.transpose() * d * rot * gamma_s;
    CovMat64::from_matrix2(&(0.5 * (m + m.transpose()))).unwrap()
}

pub fn psd(a: f64, b: f64, c: f64, d: f64) -> Matrix2<f64> {
    let l = Matrix2::new(a, b, c, d);
    let n = l * l.transpose();
    0.5 * (n + n.transpose())
}

pub fn arb_state() -> impl Strategy<Value = CovMat64> {
    (1.0..8.0f64, -1.2..1.2f64, 0.0..std::f64::consts::PI).prop_map(|(g, r, t)| squeezed_thermal(g, r, t))
}

pub fn arb_sl2() -> impl Strategy<Value = Matrix2<f64>> {
    (0.0..std::f64::consts::TAU, -1.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(a, w, b)| sl2(a, w, b))
}

pub fn arb_psd() -> impl Strategy<Value = Matrix2<f64>> {
    [-1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64].prop_map(|[a, b, c, d]| psd(a, b, c, d))
}

pub fn arb_unit_gain_channel() -> impl Strategy<Value = GaussianChannel64> {
    (arb_sl2(), arb_psd()).prop_map(|(m, n)| GaussianChannel64::new(m, n).unwrap())
}
