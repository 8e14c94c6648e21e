//! Resolution of the state flags into a one-mode covariance matrix.

use clap::Args;
use gauss_rd::{check_uncertainty, CovMat64, SymplecticForm};

use crate::format::parse_list;

/// How the source state was specified on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    /// `[[a, c], [c, b]]`.
    Explicit { a: f64, c: f64, b: f64 },
    /// `(2N_s + 1)·I`.
    Thermal { n_s: f64 },
    /// `diag(a, b)` with `a + b = trace` and `√(ab) = 2N_s + 1`.
    Family { trace: f64, n_s: f64 },
}

#[derive(Debug, Clone, Default, Args)]
pub struct StateArgs {
    /// Explicit covariance matrix [[a, c], [c, b]]
    #[arg(long, value_name = "A,C,B", allow_hyphen_values = true)]
    pub cm: Option<String>,
    /// Thermal state with mean photon number X
    #[arg(long, value_name = "X")]
    pub thermal_ns: Option<f64>,
    /// Diagonal state with trace T (use with --ns)
    #[arg(long, value_name = "T")]
    pub family_trace: Option<f64>,
    /// Mean photon number of the --family-trace state
    #[arg(long, value_name = "X")]
    pub ns: Option<f64>,
}

impl StateArgs {
    pub fn spec(&self) -> Result<StateSpec, String> {
        let chosen = [
            self.cm.is_some(),
            self.thermal_ns.is_some(),
            self.family_trace.is_some(),
        ]
        .iter()
        .filter(|b| **b)
        .count();
        if chosen != 1 {
            return Err("give exactly one of --cm, --thermal-ns, --family-trace".into());
        }
        if self.ns.is_some() && self.family_trace.is_none() {
            return Err("--ns is only meaningful with --family-trace".into());
        }
        if let Some(cm) = &self.cm {
            let v = parse_list(cm, 3).map_err(|e| format!("--cm: {e}"))?;
            return Ok(StateSpec::Explicit {
                a: v[0],
                c: v[1],
                b: v[2],
            });
        }
        if let Some(n_s) = self.thermal_ns {
            return Ok(StateSpec::Thermal { n_s });
        }
        let trace = self.family_trace.expect("one flag chosen");
        let n_s = self.ns.ok_or("--family-trace needs --ns")?;
        Ok(StateSpec::Family { trace, n_s })
    }
}

impl StateSpec {
    pub fn resolve(&self) -> Result<CovMat64, String> {
        let (a, c, b) = match *self {
            StateSpec::Explicit { a, c, b } => (a, c, b),
            StateSpec::Thermal { n_s } => {
                if !(n_s >= 0.0 && n_s.is_finite()) {
                    return Err(format!("thermal N_s must be a nonnegative number, got {n_s}"));
                }
                (2.0 * n_s + 1.0, 0.0, 2.0 * n_s + 1.0)
            }
            StateSpec::Family { trace, n_s } => family_diagonal(trace, n_s).map(|(a, b)| (a, 0.0, b))?,
        };
        let cm = CovMat64::one_mode(a, c, b).map_err(|e| e.to_string())?;
        let report = check_uncertainty(&cm, &SymplecticForm::standard(1)).map_err(|e| e.to_string())?;
        if !report.valid {
            return Err(format!(
                "[[{a}, {c}], [{c}, {b}]] violates the uncertainty relation (min eigenvalue {})",
                report.min_eigenvalue
            ));
        }
        Ok(cm)
    }
}

/// `(a, b)` with `a ≥ b`, `a + b = trace` and `ab = (2N_s + 1)²`.
pub fn family_diagonal(trace: f64, n_s: f64) -> Result<(f64, f64), String> {
    if !(n_s >= 0.0 && n_s.is_finite() && trace.is_finite()) {
        return Err(format!(
            "family needs finite T and N_s ≥ 0, got T = {trace}, N_s = {n_s}"
        ));
    }
    let q = 2.0 * n_s + 1.0;
    if trace < 2.0 * q {
        return Err(format!("family needs T ≥ 2(2N_s + 1) = {}, got T = {trace}", 2.0 * q));
    }
    let a = 0.5 * (trace + (trace * trace - 4.0 * q * q).max(0.0).sqrt());
    Ok((a, q * q / a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(cm: Option<&str>, thermal: Option<f64>, trace: Option<f64>, ns: Option<f64>) -> StateArgs {
        StateArgs {
            cm: cm.map(String::from),
            thermal_ns: thermal,
            family_trace: trace,
            ns,
        }
    }

    #[test]
    fn family_resolution() {
        for (t, ns) in [(3.0, 0.0), (3.0, 0.25), (3.0, 0.1), (10.0, 2.0), (2.0, 0.0)] {
            let (a, b) = family_diagonal(t, ns).unwrap();
            assert!((a + b - t).abs() <= 1e-12);
            assert!(((a * b).sqrt() - (2.0 * ns + 1.0)).abs() <= 1e-12);
        }
        assert!(family_diagonal(2.9, 0.25).is_err());
    }

    #[test]
    fn flag_combinations() {
        assert_eq!(
            args(Some("2,0.5,1"), None, None, None).spec().unwrap(),
            StateSpec::Explicit { a: 2.0, c: 0.5, b: 1.0 }
        );
        assert!(args(None, None, None, None).spec().is_err());
        assert!(args(Some("1,0,1"), Some(0.1), None, None).spec().is_err());
        assert!(args(None, None, Some(3.0), None).spec().is_err());
        assert!(args(None, Some(0.1), None, Some(0.1)).spec().is_err());
        assert!(args(Some("1,0"), None, None, None).spec().is_err());
    }

    #[test]
    fn unphysical_states_rejected() {
        assert!(StateSpec::Explicit { a: 0.5, c: 0.0, b: 1.0 }.resolve().is_err());
        assert!(StateSpec::Thermal { n_s: -0.1 }.resolve().is_err());
        assert!(StateSpec::Family { trace: 3.0, n_s: 0.25 }.resolve().is_ok());
    }
}
