//! `btoep`: periods, determinants and inverses of banded Toeplitz matrices
//! over F_p from the command line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use banded_toeplitz::det::PreparedBand;
use banded_toeplitz::oracle::oracle_inverse;
use banded_toeplitz::period::period_report;
use banded_toeplitz::pgm::encode_pgm;
use banded_toeplitz::sweep::{default_specs, run_sweep, verify_spec, SweepReport};
use banded_toeplitz::{
    det_fast, inverse_compact, inverse_dense, BandSpec, DenseMatrix, Error, Execution,
    PeriodicInverse, DENSE_CAP,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Largest order accepted by `--n`.
const MAX_ORDER: u64 = i64::MAX as u64;
/// Orders up to this size are also checked against the oracle by `verify --input`.
const ORACLE_ORDER_LIMIT: u64 = 256;

#[derive(Parser)]
#[command(
    name = "btoep",
    version,
    about = "Exact banded Toeplitz determinants and inverses over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Period of the feedback polynomial, its factorization and the determinant period.
    Period {
        #[command(flatten)]
        band: BandArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Determinant of the order-n matrix.
    Det {
        #[command(flatten)]
        band: BandArgs,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compact periodic inverse, or the full matrix with --full.
    Inverse {
        #[command(flatten)]
        band: BandArgs,
        #[arg(long)]
        n: u64,
        /// Print every entry instead of the three blocks.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write the inverse as a binary graymap.
    Render {
        #[command(flatten)]
        band: BandArgs,
        #[arg(long)]
        n: Option<u64>,
        /// Compact inverse JSON to render instead of a band.
        #[arg(long, conflicts_with_all = ["p", "lower", "band", "n"])]
        input: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Compare the fast paths with the oracle: over the default sweep, for one
    /// band, or for a stored compact inverse.
    Verify {
        #[command(flatten)]
        band: BandArgs,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long, default_value_t = 64)]
        n_max: u64,
        #[arg(long, conflicts_with_all = ["p", "lower", "band"])]
        input: Option<PathBuf>,
        /// Run the sweep on one thread.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Time det_fast at n = 10^3, 10^6, 10^9, 10^12.
    Bench {
        #[command(flatten)]
        band: BandArgs,
        #[arg(long, default_value_t = 200)]
        reps: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct BandArgs {
    /// Prime modulus.
    #[arg(long)]
    p: Option<u64>,
    /// Lower half-bandwidth L.
    #[arg(long)]
    lower: Option<usize>,
    /// Comma-separated coefficients c_{-L},...,c_R.
    #[arg(long)]
    band: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    /// Band arguments that do not describe a valid band.
    BadBand(Error),
    Engine(Error),
    Io(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn report(&self) -> (u8, String) {
        match self {
            Failure::Usage(msg) => (2, format!("error[USAGE]: {msg}")),
            Failure::BadBand(e) => (2, format!("error[{}]: {e}", e.code())),
            Failure::Engine(e) => (1, format!("error[{}]: {e}", e.code())),
            Failure::Io(msg) => (1, format!("error[IO]: {msg}")),
            Failure::Mismatch(msg) => (1, format!("error[VERIFY_MISMATCH]: {msg}")),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

impl BandArgs {
    fn given(&self) -> bool {
        self.p.is_some() || self.lower.is_some() || self.band.is_some()
    }

    fn spec(&self) -> CliResult<BandSpec> {
        match (self.p, self.lower, &self.band) {
            (Some(p), Some(lower), Some(band)) => {
                BandSpec::parse(p, lower, band).map_err(Failure::BadBand)
            }
            _ => Err(Failure::Usage(
                "--p, --lower and --band are all required".into(),
            )),
        }
    }

    fn spec_or(&self, p: u64, lower: usize, band: &str) -> CliResult<BandSpec> {
        if self.given() {
            self.spec()
        } else {
            BandSpec::parse(p, lower, band).map_err(Failure::BadBand)
        }
    }
}

fn check_order(n: u64) -> CliResult<u64> {
    if n == 0 || n > MAX_ORDER {
        return Err(Failure::Usage(format!(
            "--n must lie in 1..={MAX_ORDER}, got {n}"
        )));
    }
    Ok(n)
}

fn emit(out: &OutputArgs, text: String, value: Value) -> CliResult<()> {
    let body = match out.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
    };
    write_output(out.output.as_deref(), body.as_bytes())
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn read_inverse(path: &Path) -> CliResult<PeriodicInverse> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(PeriodicInverse::from_json(&text)?)
}

fn band_json(spec: &BandSpec) -> Value {
    json!({ "p": spec.p(), "lower": spec.lower(), "band": spec.coeffs() })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn matrix_text(m: &DenseMatrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(u64::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

fn period(band: &BandArgs, out: &OutputArgs) -> CliResult<()> {
    let spec = band.spec()?;
    let f = spec.feedback_poly();
    let report = period_report(&f)?;
    let det_period = PreparedBand::new(&spec)?.det_period()?;
    let mut text = String::new();
    writeln!(text, "f(x) = {f}").unwrap();
    writeln!(text, "factorization: {}", report.factorization).unwrap();
    for ((g, e), order) in report
        .factorization
        .factors
        .iter()
        .zip(&report.factor_orders)
    {
        writeln!(text, "  {g}  multiplicity {e}  order {order}").unwrap();
    }
    writeln!(text, "multiplicity power: {}", report.multiplicity_power).unwrap();
    writeln!(text, "period P(f) = {}", report.period).unwrap();
    writeln!(text, "det period lcm(p-1, P) = {det_period}").unwrap();

    let factors: Vec<Value> = report
        .factorization
        .factors
        .iter()
        .zip(&report.factor_orders)
        .map(|((g, e), order)| {
            json!({ "factor": g.to_string(), "coeffs": g.coeffs(), "multiplicity": e, "order": order })
        })
        .collect();
    let value = merge(
        band_json(&spec),
        json!({
            "polynomial": f.to_string(),
            "factorization": report.factorization.to_string(),
            "factors": factors,
            "multiplicity_power": report.multiplicity_power,
            "period": report.period,
            "det_period": det_period,
        }),
    );
    emit(out, text, value)
}

fn det(band: &BandArgs, n: u64, out: &OutputArgs) -> CliResult<()> {
    let spec = band.spec()?;
    let n = check_order(n)?;
    let r = det_fast(&spec, n)?;
    let text = format!("det = {}\n", r.value.value());
    let value = merge(
        band_json(&spec),
        json!({ "n": n, "det": r.value.value(), "period": r.period_used }),
    );
    emit(out, text, value)
}

fn inverse(band: &BandArgs, n: u64, full: bool, out: &OutputArgs) -> CliResult<()> {
    let spec = band.spec()?;
    let n = check_order(n)?;
    if full {
        if n > DENSE_CAP as u64 {
            return Err(Error::DenseTooLarge { n, cap: DENSE_CAP }.into());
        }
        let inv = inverse_dense(&spec, n as usize)?;
        let value = merge(
            band_json(&spec),
            json!({ "n": n, "det": inv.det.value(), "matrix": inv.matrix.to_rows() }),
        );
        return emit(out, matrix_text(&inv.matrix), value);
    }
    let inv = inverse_compact(&spec, n)?;
    let mut text = format!(
        "n = {n}\nperiod = {}\ndet = {}\n",
        inv.period(),
        inv.det().value()
    );
    for (name, block) in [
        ("diag", inv.block_diag()),
        ("upper", inv.block_upper()),
        ("lower", inv.block_lower()),
    ] {
        writeln!(text, "{name}:").unwrap();
        text.push_str(&matrix_text(block));
    }
    let value = serde_json::to_value(inv.to_document()).expect("document serializes");
    emit(out, text, value)
}

fn render(band: &BandArgs, n: Option<u64>, input: Option<&Path>, output: &Path) -> CliResult<()> {
    let matrix = match input {
        Some(path) => read_inverse(path)?.materialize()?,
        None => {
            let spec = band.spec()?;
            let n = check_order(
                n.ok_or_else(|| Failure::Usage("--n is required without --input".into()))?,
            )?;
            if n > DENSE_CAP as u64 {
                return Err(Error::DenseTooLarge { n, cap: DENSE_CAP }.into());
            }
            inverse_dense(&spec, n as usize)?.matrix
        }
    };
    write_output(Some(output), &encode_pgm(&matrix))
}

fn sweep_summary(report: &SweepReport) -> String {
    let mut text = format!(
        "{} bands, {} comparisons, {} mismatches\n",
        report.specs,
        report.comparisons,
        report.mismatches.len()
    );
    for m in report.mismatches.iter().take(20) {
        writeln!(text, "  {m}").unwrap();
    }
    text
}

fn verify_inverse(path: &Path) -> CliResult<(String, Value, bool)> {
    let stored = read_inverse(path)?;
    let spec = stored.spec().clone();
    let fresh = inverse_compact(&spec, stored.n())?;
    let mut problems = Vec::new();
    if fresh != stored {
        problems.push("stored blocks differ from a fresh computation".to_string());
    }
    let oracle_checked = stored.n() <= ORACLE_ORDER_LIMIT;
    if oracle_checked && stored.materialize()? != oracle_inverse(&spec, stored.n() as usize)? {
        problems.push("materialized inverse differs from the oracle".to_string());
    }
    let ok = problems.is_empty();
    let text = if ok {
        format!("inverse for {spec} at n = {} verified\n", stored.n())
    } else {
        problems.join("\n") + "\n"
    };
    let value = merge(
        band_json(&spec),
        json!({ "n": stored.n(), "oracle_checked": oracle_checked, "passed": ok, "problems": problems }),
    );
    Ok((text, value, ok))
}

fn verify(
    band: &BandArgs,
    n_min: u64,
    n_max: u64,
    input: Option<&Path>,
    sequential: bool,
    out: &OutputArgs,
) -> CliResult<()> {
    let (text, value, ok) = if let Some(path) = input {
        verify_inverse(path)?
    } else {
        if n_min == 0 || n_min > n_max || n_max > DENSE_CAP as u64 {
            return Err(Failure::Usage(format!(
                "order range must satisfy 1 <= n-min <= n-max <= {DENSE_CAP}"
            )));
        }
        let exec = if sequential {
            Execution::Sequential
        } else {
            Execution::default()
        };
        let report = if band.given() {
            verify_spec(&band.spec()?, n_min..=n_max)
        } else {
            run_sweep(&default_specs(), n_min..=n_max, exec)
        };
        let mismatches: Vec<String> = report.mismatches.iter().map(ToString::to_string).collect();
        let value = json!({
            "specs": report.specs,
            "comparisons": report.comparisons,
            "n_min": n_min,
            "n_max": n_max,
            "passed": report.passed(),
            "mismatches": mismatches,
        });
        (sweep_summary(&report), value, report.passed())
    };
    emit(out, text, value)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(
            "fast paths disagree with the oracle".into(),
        ))
    }
}

fn bench(band: &BandArgs, reps: u32, out: &OutputArgs) -> CliResult<()> {
    let spec = band.spec_or(2, 2, "1,1,1,1,1")?;
    if reps == 0 {
        return Err(Failure::Usage("--reps must be positive".into()));
    }
    let orders = [1_000u64, 1_000_000, 1_000_000_000, 1_000_000_000_000];
    let mut best = [Duration::MAX; 4];
    for _ in 0..reps {
        for (slot, &n) in best.iter_mut().zip(&orders) {
            let start = Instant::now();
            std::hint::black_box(det_fast(&spec, std::hint::black_box(n))?);
            *slot = (*slot).min(start.elapsed());
        }
    }
    let base = best[0].as_secs_f64();
    let mut text = format!("{spec}, best of {reps}\n");
    let mut rows = Vec::new();
    for (&n, d) in orders.iter().zip(&best) {
        let ratio = d.as_secs_f64() / base;
        writeln!(
            text,
            "n = {n:>15}  {:>10.3} us  ratio {ratio:.2}",
            d.as_secs_f64() * 1e6
        )
        .unwrap();
        rows.push(json!({ "n": n, "seconds": d.as_secs_f64(), "ratio": ratio }));
    }
    emit(
        out,
        text,
        merge(band_json(&spec), json!({ "reps": reps, "timings": rows })),
    )
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Period { band, out } => period(band, out),
        Command::Det { band, n, out } => det(band, *n, out),
        Command::Inverse { band, n, full, out } => inverse(band, *n, *full, out),
        Command::Render {
            band,
            n,
            input,
            output,
        } => render(band, *n, input.as_deref(), output),
        Command::Verify {
            band,
            n_min,
            n_max,
            input,
            sequential,
            out,
        } => verify(band, *n_min, *n_max, input.as_deref(), *sequential, out),
        Command::Bench { band, reps, out } => bench(band, *reps, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, msg) = failure.report();
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_line_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn order_limits() {
        assert!(check_order(1).is_ok());
        assert!(check_order(MAX_ORDER).is_ok());
        assert!(matches!(check_order(0), Err(Failure::Usage(_))));
        assert!(matches!(check_order(MAX_ORDER + 1), Err(Failure::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Usage("x".into()).report().0, 2);
        assert_eq!(Failure::BadBand(Error::NotPrime(4)).report().0, 2);
        let (code, msg) = Failure::Engine(Error::Singular).report();
        assert_eq!(code, 1);
        assert!(msg.starts_with("error[SINGULAR]"));
    }
}
