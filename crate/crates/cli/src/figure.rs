//! The six-curve sweep over source purity at fixed `Tr γ = 3`.

use gauss_rd::{rd_curve_with, summarize_source, EntropyBase, RatePoint64};

use crate::state::StateSpec;

pub const FIGURE_TRACE: f64 = 3.0;
pub const FIGURE_NS: [f64; 6] = [0.0, 0.05, 0.10, 0.15, 0.20, 0.25];
pub const FIGURE_POINTS: usize = 201;
pub const FIGURE_NN_MAX: f64 = 2.0;

#[derive(Debug, Clone)]
pub struct Curve {
    pub n_s: f64,
    pub file_name: String,
    pub points: Vec<RatePoint64>,
}

/// `steps` equally spaced values on `[0, max]`, endpoints included.
pub fn linspace(max: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| if i + 1 == steps { max } else { max * i as f64 / last })
        .collect()
}

pub fn curve_for(spec: StateSpec, n_n_values: &[f64], base: EntropyBase) -> Result<Vec<RatePoint64>, String> {
    let gamma = spec.resolve()?;
    let src = summarize_source(&gamma).map_err(|e| e.to_string())?;
    rd_curve_with(&src, n_n_values, base).map_err(|e| e.to_string())
}

pub fn figure1_curves(base: EntropyBase) -> Result<Vec<Curve>, String> {
    let grid = linspace(FIGURE_NN_MAX, FIGURE_POINTS);
    FIGURE_NS
        .iter()
        .map(|&n_s| {
            let spec = StateSpec::Family {
                trace: FIGURE_TRACE,
                n_s,
            };
            Ok(Curve {
                n_s,
                file_name: format!("figure1_ns_{n_s:.2}.csv"),
                points: curve_for(spec, &grid, base)?,
            })
        })
        .collect()
}
