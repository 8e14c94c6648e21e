//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gauss_rd::{
    apply, average_distortion, bosonic_entropy, canonical_distortion, clipping_distortion, coherent_info_from_cm,
    joint_cm, normalize_gain, rate_point, summarize_source, validate_channel, CovMat64, EntropyBase, GaussianChannel64,
    GridSpec,
};
use nalgebra::Matrix2;

use crate::figure::{curve_for, figure1_curves, linspace};
use crate::format::{num, parse_list, write_curve_csv};
use crate::state::StateArgs;
use crate::verify::{run_all, CheckReport, VerifyConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<gauss_rd::Error> for CliError {
    fn from(e: gauss_rd::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_err(path: impl AsRef<Path>) -> impl FnOnce(io::Error) -> CliError {
    let path = path.as_ref().display().to_string();
    move |source| CliError::Io { path, source }
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gauss-rd",
    version,
    about = "Rate-distortion of one-mode Gaussian quantum sources"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a source state
    #[command(subcommand)]
    State(StateCommand),
    /// Apply a Gaussian channel to a source state
    #[command(subcommand)]
    Channel(ChannelCommand),
    /// Rate-distortion points and curves
    #[command(subcommand)]
    Rd(RdCommand),
    /// Write the six Tr γ = 3 curves from pure to thermal input
    Figure1(Figure1Args),
    /// Run the seeded self-verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum StateCommand {
    /// Validity, Williamson form, entropy and distortion floor
    Check {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        base: BaseArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChannelCommand {
    /// Output CM, validity and distortion of γ ↦ MᵀγM + N
    Apply {
        #[command(flatten)]
        state: StateArgs,
        /// Phase-space map M, row-major
        #[arg(
            long,
            value_name = "M11,M12,M21,M22",
            allow_hyphen_values = true,
            default_value = "1,0,0,1"
        )]
        m: String,
        /// Noise matrix [[n11, n12], [n12, n22]]
        #[arg(
            long,
            value_name = "N11,N12,N22",
            allow_hyphen_values = true,
            default_value = "0,0,0"
        )]
        noise: String,
        #[command(flatten)]
        base: BaseArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum RdCommand {
    /// R^I at one canonical distortion
    Point {
        #[command(flatten)]
        state: StateArgs,
        /// Canonical distortion N_n
        #[arg(long, value_name = "X")]
        nn: f64,
        #[command(flatten)]
        base: BaseArg,
    },
    /// R^I on an even grid of N_n, as CSV
    Curve {
        #[command(flatten)]
        state: StateArgs,
        /// Largest N_n of the grid
        #[arg(long, value_name = "X")]
        nn_max: f64,
        /// Number of grid points, endpoints included
        #[arg(long, value_name = "N", default_value_t = 201)]
        steps: usize,
        /// Output file (stdout when absent)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        base: BaseArg,
    },
}

#[derive(Debug, Args)]
pub struct BaseArg {
    /// Logarithm base of entropies
    #[arg(long, value_name = "bits|nats", default_value = "bits")]
    pub base: EntropyBase,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    /// Output directory
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    #[command(flatten)]
    pub base: BaseArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Random cases per randomized check
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    /// Print the JSON report instead of the summary table
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON report to this file
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// δ points of the brute-force grid
    #[arg(long, default_value_t = 201)]
    pub delta_points: usize,
    /// t points of the brute-force grid
    #[arg(long, default_value_t = 81)]
    pub t_points: usize,
    #[command(flatten)]
    pub base: BaseArg,
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::State(StateCommand::Check { state, base }) => state_check(&state, base.base, out),
        Command::Channel(ChannelCommand::Apply { state, m, noise, base }) => {
            channel_apply(&state, &m, &noise, base.base, out)
        }
        Command::Rd(RdCommand::Point { state, nn, base }) => rd_point(&state, nn, base.base, out),
        Command::Rd(RdCommand::Curve {
            state,
            nn_max,
            steps,
            out: path,
            base,
        }) => rd_curve_cmd(&state, nn_max, steps, path.as_deref(), base.base, out),
        Command::Figure1(args) => figure1(&args.out, args.base.base, out),
        Command::Verify(args) => verify(&args, out),
    }
}

fn resolve(state: &StateArgs) -> Result<CovMat64, CliError> {
    state.spec().and_then(|s| s.resolve()).map_err(CliError::Usage)
}

fn line(out: &mut dyn Write, key: &str, value: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{key}: {value}").map_err(stdout_err)
}

fn cm_text(g: &Matrix2<f64>) -> String {
    format!("{},{},{}", num(g[(0, 0)]), num(g[(0, 1)]), num(g[(1, 1)]))
}

fn matrix_text(m: &Matrix2<f64>) -> String {
    format!(
        "{},{},{},{}",
        num(m[(0, 0)]),
        num(m[(0, 1)]),
        num(m[(1, 0)]),
        num(m[(1, 1)])
    )
}

fn check_distortion(nn: f64) -> Result<(), CliError> {
    if nn >= 0.0 && nn.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("N_n must be a nonnegative number, got {nn}")))
    }
}

fn state_check(state: &StateArgs, base: EntropyBase, out: &mut dyn Write) -> Result<(), CliError> {
    let gamma = resolve(state)?;
    let src = summarize_source(&gamma)?;
    line(out, "cm", cm_text(&gamma.as_matrix2()?))?;
    line(out, "valid", true)?;
    line(out, "gamma_s", num(src.gamma_s))?;
    line(out, "n_s", num(src.n_s))?;
    line(
        out,
        &format!("entropy_{}", base.name()),
        num(bosonic_entropy(src.n_s, base)?),
    )?;
    line(out, "d_min", num(src.d_min))?;
    line(out, "omega", num(src.omega))?;
    line(out, "m_star", matrix_text(&src.m_star))?;
    let clip = clipping_distortion(&src, base)?.map_or("none".to_string(), num);
    line(out, "clipping_n_n", clip)
}

fn channel_apply(
    state: &StateArgs,
    m: &str,
    noise: &str,
    base: EntropyBase,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let gamma = resolve(state)?;
    let m = parse_list(m, 4).map_err(|e| CliError::Usage(format!("--m: {e}")))?;
    let n = parse_list(noise, 3).map_err(|e| CliError::Usage(format!("--noise: {e}")))?;
    let ch = GaussianChannel64::new(
        Matrix2::new(m[0], m[1], m[2], m[3]),
        Matrix2::new(n[0], n[1], n[1], n[2]),
    )?;
    let report = validate_channel(&ch);
    let output = apply(&ch, &gamma)?;
    line(out, "output_cm", cm_text(&output.as_matrix2()?))?;
    line(out, "gain", num(ch.gain()))?;
    line(out, "channel_valid", report.valid)?;
    line(out, "slack", num(report.slack))?;
    if ch.gain() <= 0.0 {
        return Ok(());
    }
    let (unit, k) = normalize_gain(&ch)?;
    line(out, "k", num(k))?;
    line(out, "average_distortion", num(average_distortion(&unit, &gamma)?))?;
    line(
        out,
        "canonical_distortion",
        num(canonical_distortion(&unit, &gamma)?.n_n),
    )?;
    let joint = joint_cm(&unit, &gamma)?;
    if joint.is_physical()? {
        line(
            out,
            &format!("coherent_info_{}", base.name()),
            num(coherent_info_from_cm(&joint, base)?),
        )?;
    }
    Ok(())
}

fn rd_point(state: &StateArgs, nn: f64, base: EntropyBase, out: &mut dyn Write) -> Result<(), CliError> {
    check_distortion(nn)?;
    let gamma = resolve(state)?;
    let p = rate_point(&summarize_source(&gamma)?, nn, base)?;
    line(out, "n_n", num(p.n_n))?;
    line(out, &format!("r_i_{}", base.name()), num(p.r_i))?;
    line(out, &format!("i_c_{}", base.name()), num(p.i_c))?;
    line(out, "delta", num(p.delta))?;
    line(out, "tau", num(p.tau))?;
    line(out, "d0", num(p.d.d0))?;
    line(out, "d1", num(p.d.d1))?;
    line(out, "d2", num(p.d.d2))
}

fn rd_curve_cmd(
    state: &StateArgs,
    nn_max: f64,
    steps: usize,
    path: Option<&Path>,
    base: EntropyBase,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    check_distortion(nn_max)?;
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    let spec = state.spec().map_err(CliError::Usage)?;
    let points = curve_for(spec, &linspace(nn_max, steps), base).map_err(CliError::Usage)?;
    let mut buf = Vec::new();
    write_curve_csv(&mut buf, &points).expect("writing to memory");
    match path {
        Some(p) => fs::write(p, &buf).map_err(io_err(p)),
        None => out.write_all(&buf).map_err(stdout_err),
    }
}

fn figure1(dir: &Path, base: EntropyBase, out: &mut dyn Write) -> Result<(), CliError> {
    let curves = figure1_curves(base).map_err(CliError::Usage)?;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for c in curves {
        let path = dir.join(&c.file_name);
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &c.points).expect("writing to memory");
        fs::write(&path, &buf).map_err(io_err(&path))?;
        writeln!(out, "{}", path.display()).map_err(stdout_err)?;
    }
    Ok(())
}

pub fn report_json(reports: &[CheckReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let grid = GridSpec::new(args.delta_points, args.t_points)?;
    let cfg = VerifyConfig {
        seed: args.seed,
        cases: args.cases,
        base: args.base.base,
        grid,
    };
    let reports = run_all(&cfg);
    let json = report_json(&reports);
    if let Some(path) = &args.out {
        fs::write(path, &json).map_err(io_err(path))?;
    }
    if args.json {
        out.write_all(json.as_bytes()).map_err(stdout_err)?;
    } else {
        for r in &reports {
            writeln!(
                out,
                "{} {:<42} worst={:<20} tol={:<8} cases={}",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                num(r.worst_error),
                num(r.tolerance),
                r.cases
            )
            .map_err(stdout_err)?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}
