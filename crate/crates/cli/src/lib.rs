//! The `ccsk` command-line tool.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 numerical
//! tolerance failure, 64 usage error. Results go to stdout, diagnostics to
//! stderr.

pub mod format;

use std::io::Write;
use std::path::{Path, PathBuf};

use ccsk_core::{
    anti_hermiticity_defect, compare_with_oracle, compose, decompose, expm, random_params,
    random_unitary, unitarity_defect, DecomposeOptions, Error as CoreError, RngState,
};
use clap::{Parser, Subcommand, ValueEnum};

use crate::format::{read_matrix, read_params, write_matrix, write_params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "ccsk",
    version,
    about = "Compose and decompose unitary matrices in canonical coordinates of the second kind"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the unitary matrix for a parameter file.
    Compose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recover canonical parameters from a unitary matrix file.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Per-dimension unitarity gate on the input.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Pivot and row-norm threshold treated as zero.
        #[arg(long, default_value_t = 1e-12)]
        zero_tol: f64,
        /// Per-dimension bound on ‖compose(result) − input‖_F.
        #[arg(long, default_value_t = 1e-9)]
        roundtrip_tol: f64,
    },
    /// Report the unitarity defect of a matrix file.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        /// Per-dimension bound on ‖U†U − I‖_F.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Write seeded random parameters or a random unitary.
    Random {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = What::Params)]
        what: What,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Matrix exponential of a matrix file (reference oracle).
    Expm {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare the product map with the exponential of the full generator.
    Compare {
        #[arg(short, long)]
        input: PathBuf,
        /// Bound on each closed-form factor's distance from the oracle.
        #[arg(long, default_value_t = 1e-12)]
        factor_tol: f64,
    },
    /// Decompose and recompose a matrix file and report the error.
    Roundtrip {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1e-12)]
        zero_tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        roundtrip_tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Params,
    Unitary,
}

/// A failed command: exit code plus the message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn read_matrix_or_fail(path: &Path) -> Result<ccsk_core::ComplexMatrix, Failure> {
    read_matrix(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_params_or_fail(path: &Path) -> Result<ccsk_core::CcskParams, Failure> {
    read_params(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_or_fail(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn check_tol(name: &str, value: f64) -> Result<(), Failure> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "--{name} must lie in (0, 1), got {value}"
        )))
    }
}

fn decompose_options(
    tol: f64,
    zero_tol: f64,
    roundtrip_tol: f64,
) -> Result<DecomposeOptions, Failure> {
    check_tol("tol", tol)?;
    check_tol("zero-tol", zero_tol)?;
    check_tol("roundtrip-tol", roundtrip_tol)?;
    Ok(DecomposeOptions {
        unitarity_tol: tol,
        zero_tol,
    })
}

fn core_failure(e: CoreError) -> Failure {
    match e {
        CoreError::NotUnitary { defect, tol } => Failure::input(format!(
            "input is not unitary: unitarity defect {defect:e} exceeds {tol:e}"
        )),
        CoreError::PeelInconsistent { .. } => Failure::numerical(e.to_string()),
        other => Failure::input(other.to_string()),
    }
}

/// Decompose, recompose and measure. Returns params and the roundtrip error.
fn checked_decompose(
    u: &ccsk_core::ComplexMatrix,
    opts: &DecomposeOptions,
) -> Result<(ccsk_core::CcskParams, f64), Failure> {
    if !u.is_square() {
        return Err(Failure::input(format!(
            "matrix must be square, got {}x{}",
            u.n_rows(),
            u.n_cols()
        )));
    }
    let p = decompose(u, opts).map_err(core_failure)?;
    let err = compose(&p)
        .distance(u)
        .map_err(|e| Failure::numerical(e.to_string()))?;
    Ok((p, err))
}

fn run_command(cmd: &Command, out: &mut dyn Write) -> CmdResult {
    let print = |out: &mut dyn Write, line: String| {
        let _ = writeln!(out, "{line}");
    };
    match cmd {
        Command::Compose { input, output } => {
            let p = read_params_or_fail(input)?;
            let u = compose(&p);
            write_or_fail(output, &write_matrix(&u))?;
            let defect = unitarity_defect(&u).expect("square");
            print(out, format!("unitarity_defect: {defect:e}"));
            Ok(EXIT_OK)
        }
        Command::Decompose {
            input,
            output,
            tol,
            zero_tol,
            roundtrip_tol,
        } => {
            let opts = decompose_options(*tol, *zero_tol, *roundtrip_tol)?;
            let u = read_matrix_or_fail(input)?;
            let (p, err) = checked_decompose(&u, &opts)?;
            write_or_fail(output, &write_params(&p))?;
            print(out, format!("roundtrip_error: {err:e}"));
            let limit = roundtrip_tol * u.n_rows() as f64;
            if err > limit {
                return Err(Failure::numerical(format!(
                    "roundtrip error {err:e} exceeds {limit:e}"
                )));
            }
            Ok(EXIT_OK)
        }
        Command::Verify { input, tol } => {
            check_tol("tol", *tol)?;
            let u = read_matrix_or_fail(input)?;
            let defect = unitarity_defect(&u).map_err(|e| Failure::input(e.to_string()))?;
            print(out, format!("unitarity_defect: {defect:e}"));
            let limit = tol * u.n_rows() as f64;
            if defect > limit {
                return Err(Failure::numerical(format!(
                    "not unitary: defect {defect:e} exceeds {limit:e}"
                )));
            }
            Ok(EXIT_OK)
        }
        Command::Random {
            n,
            seed,
            what,
            output,
        } => {
            let n = *n as usize;
            let mut rng = RngState::new(*seed);
            let text = match what {
                What::Params => write_params(&random_params(n, &mut rng)),
                What::Unitary => write_matrix(&random_unitary(n, &mut rng)),
            };
            write_or_fail(output, &text)?;
            Ok(EXIT_OK)
        }
        Command::Expm { input, output } => {
            let x = read_matrix_or_fail(input)?;
            let e = expm(&x).map_err(|e| Failure::input(e.to_string()))?;
            write_or_fail(output, &write_matrix(&e))?;
            let ah = anti_hermiticity_defect(&x).expect("square");
            let ud = unitarity_defect(&e).expect("square");
            print(out, format!("input_anti_hermiticity_defect: {ah:e}"));
            print(out, format!("output_unitarity_defect: {ud:e}"));
            Ok(EXIT_OK)
        }
        Command::Compare { input, factor_tol } => {
            check_tol("factor-tol", *factor_tol)?;
            let p = read_params_or_fail(input)?;
            let cmp = compare_with_oracle(&p).map_err(|e| Failure::numerical(e.to_string()))?;
            print(
                out,
                format!("product_deviation: {:e}", cmp.product_deviation),
            );
            print(
                out,
                format!("diagonal_deviation: {:e}", cmp.diagonal_deviation),
            );
            for (k, d) in cmp.factor_deviations.iter().enumerate() {
                print(out, format!("factor_deviation[j={}]: {d:e}", k + 2));
            }
            let worst = cmp.max_factor_deviation();
            if worst > *factor_tol {
                return Err(Failure::numerical(format!(
                    "closed-form factor deviates from the oracle by {worst:e} (limit {factor_tol:e})"
                )));
            }
            Ok(EXIT_OK)
        }
        Command::Roundtrip {
            input,
            tol,
            zero_tol,
            roundtrip_tol,
        } => {
            let opts = decompose_options(*tol, *zero_tol, *roundtrip_tol)?;
            let u = read_matrix_or_fail(input)?;
            let (_, err) = checked_decompose(&u, &opts)?;
            print(out, format!("roundtrip_error: {err:e}"));
            let limit = roundtrip_tol * u.n_rows() as f64;
            if err > limit {
                return Err(Failure::numerical(format!(
                    "roundtrip error {err:e} exceeds {limit:e}"
                )));
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_command(&cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}
