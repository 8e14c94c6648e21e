//! Derivative-free Nelder–Mead simplex minimizer for small dimensions.

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexSettings<T> {
    /// Stop once `max f − min f ≤ tol·max(1, |min f|)` over the simplex.
    pub tol: T,
    pub max_evals: usize,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: T,
}

impl<T: Real> Default for SimplexSettings<T> {
    fn default() -> Self {
        Self {
            tol: lit(1e-12),
            max_evals: 2000,
            initial_step: lit(0.5),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult<T> {
    pub x: Vec<T>,
    pub f: T,
    pub evals: usize,
    pub converged: bool,
    /// Final `max f − min f` over the simplex.
    pub spread: T,
}

/// Minimizes `f` from `x0` with the standard reflection/expansion/contraction/
/// shrink coefficients (1, 2, ½, ½).
pub fn nelder_mead<T: Real, F: FnMut(&[T]) -> T>(
    mut f: F,
    x0: &[T],
    settings: &SimplexSettings<T>,
) -> SimplexResult<T> {
    let dim = x0.len();
    let half = lit::<T>(0.5);
    let two = lit::<T>(2.0);
    let mut evals = 0usize;
    let mut eval = |x: &[T], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            T::max_value().unwrap()
        }
    };

    let mut pts: Vec<Vec<T>> = Vec::with_capacity(dim + 1);
    pts.push(x0.to_vec());
    for i in 0..dim {
        let mut p = x0.to_vec();
        p[i] += settings.initial_step;
        pts.push(p);
    }
    let mut vals: Vec<T> = pts.iter().map(|p| eval(p, &mut evals)).collect();

    let combine =
        |a: &[T], b: &[T], t: T| -> Vec<T> { a.iter().zip(b).map(|(ai, bi)| *ai + t * (*bi - *ai)).collect() };

    loop {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap_or(std::cmp::Ordering::Equal));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[dim] - vals[0];
        let converged = spread <= settings.tol * T::one().max(vals[0].abs());
        if converged || evals >= settings.max_evals {
            return SimplexResult {
                x: pts[0].clone(),
                f: vals[0],
                evals,
                converged,
                spread,
            };
        }

        let scale = T::one() / lit::<T>(dim as f64);
        let centroid: Vec<T> = (0..dim)
            .map(|k| pts[..dim].iter().fold(T::zero(), |acc, p| acc + p[k]) * scale)
            .collect();
        let worst = pts[dim].clone();

        // x_r = c + (c − w)
        let reflected = combine(&centroid, &worst, -T::one());
        let fr = eval(&reflected, &mut evals);
        if fr < vals[0] {
            let expanded = combine(&centroid, &worst, -two);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                pts[dim] = expanded;
                vals[dim] = fe;
            } else {
                pts[dim] = reflected;
                vals[dim] = fr;
            }
            continue;
        }
        if fr < vals[dim - 1] {
            pts[dim] = reflected;
            vals[dim] = fr;
            continue;
        }
        let (candidate, fc) = if fr < vals[dim] {
            let outside = combine(&centroid, &reflected, half);
            let fo = eval(&outside, &mut evals);
            (outside, fo)
        } else {
            let inside = combine(&centroid, &worst, half);
            let fi = eval(&inside, &mut evals);
            (inside, fi)
        };
        if fc < fr.min(vals[dim]) {
            pts[dim] = candidate;
            vals[dim] = fc;
            continue;
        }
        let best = pts[0].clone();
        for i in 1..=dim {
            pts[i] = combine(&best, &pts[i], half);
            vals[i] = eval(&pts[i], &mut evals);
        }
    }
}
