//! Command-line front end.
//!
//! Tables go to `--out` (or stdout) as CSV with a header row. When `--out` is
//! given, a human-readable report goes to stdout; otherwise it goes to the
//! diagnostic stream so stdout stays pure CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closedform::{constants, density_grid, DensityKind, DensityTable};
use crate::exactcount::{
    asymptotic_integer_spectrum, count_integer_spectrum, count_report, count_reports_all,
    count_repeated_integer, CountReport, Methods,
};
use crate::montecarlo::{compare_to_density, expected_bin_mass, run_experiment, SeedSpec, PUBLISHED_SEED};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "eigencount", version, about = "Integer eigenvalue counts and eigenvalue densities of random 2x2 matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count matrices in M_2(k) with a given integer eigenvalue.
    Count(CountArgs),
    /// Tabulate V, W or their area-2 normalizations.
    Density(DensityArgs),
    /// Sample uniform [-1, 1] matrices and histogram their real eigenvalues.
    Simulate(SimulateArgs),
    /// Run a self-verification suite.
    Verify(VerifyArgs),
    /// Print the named constants.
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LambdaSel {
    All,
    One(i64),
}

fn parse_lambda(s: &str) -> Result<LambdaSel, String> {
    if s == "all" {
        return Ok(LambdaSel::All);
    }
    s.parse().map(LambdaSel::One).map_err(|_| format!("expected an integer or `all`, got {s:?}"))
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    k: u32,
    /// Eigenvalue, or `all` for every lambda in [-2k, 2k].
    #[arg(long, value_parser = parse_lambda, default_value = "all")]
    lambda: LambdaSel,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "fast")]
    method: Vec<Method>,
    /// Also report |M_2^Z(k)| against 16 C k^3 log k.
    #[arg(long)]
    spectrum: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: DensityKind,
    #[arg(long, default_value_t = 801)]
    points: usize,
    #[arg(long, default_value_t = -2.005, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, default_value_t = 2.005, allow_hyphen_values = true)]
    to: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<DensityKind, String> {
    s.parse().map_err(|e: crate::error::Error| e.to_string())
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
    #[arg(long, default_value_t = 40)]
    bins: usize,
    #[arg(long, default_value_t = PUBLISHED_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = ["small-k", "analytic", "montecarlo", "all"], default_value = "all")]
    suite: String,
}

/// Decimal with at least 16 significant digits; scientific outside
/// `[1e-4, 1e15)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        let decimals = (15 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.15e}")
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_USAGE, message: format!("i/o error: {e}") }
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn dispatch<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            if f.code == EXIT_USAGE {
                let _ = writeln!(stderr, "run `eigencount --help` for usage");
            }
            f.code
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Count(args) => count(args, stdout, stderr),
        Command::Density(args) => density(args, stdout, stderr),
        Command::Simulate(args) => simulate(args, stdout, stderr),
        Command::Verify(args) => run_verify(&args.suite, stdout),
        Command::Constants => {
            print_constants(stdout)?;
            Ok(())
        }
    }
}

/// Runs `body` against the CSV sink and the report sink.
fn with_sinks(
    out: Option<&PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write, &mut dyn Write) -> Result<(), Failure>,
) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            body(&mut file, stdout)?;
            file.flush()?;
            Ok(())
        }
        None => body(stdout, stderr),
    }
}

fn count(args: CountArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    if args.k == 0 {
        return Err(crate::error::invalid("--k must be positive").into());
    }
    let methods = Methods { brute: args.method.contains(&Method::Brute) };
    let reports: Vec<CountReport> = match args.lambda {
        LambdaSel::All => count_reports_all(args.k, methods)?,
        LambdaSel::One(l) => vec![count_report(args.k, l, methods)?],
    };
    let spectrum = if args.spectrum {
        let total = count_integer_spectrum(args.k)?;
        Some((total, count_repeated_integer(args.k), asymptotic_integer_spectrum(args.k)))
    } else {
        None
    };
    let mut disagreements = 0;
    with_sinks(args.out.as_ref(), stdout, stderr, |csv, report| {
        writeln!(csv, "k,lambda,brute,fast,main_term,ratio")?;
        for r in &reports {
            let brute = r.brute.map(|b| b.to_string()).unwrap_or_default();
            let ratio = r.ratio.map(format_number).unwrap_or_default();
            writeln!(csv, "{},{},{},{},{},{}", r.k, r.lambda, brute, r.fast, format_number(r.main_term), ratio)?;
            if !r.agrees() {
                disagreements += 1;
                writeln!(report, "MISMATCH k={} lambda={}: brute={:?} fast={}", r.k, r.lambda, r.brute, r.fast)?;
            }
        }
        if let [r] = reports.as_slice() {
            let brute = r.brute.map_or_else(|| "skipped".to_string(), |b| b.to_string());
            writeln!(report, "k={} lambda={} brute={} fast={}", r.k, r.lambda, brute, r.fast)?;
        }
        if let Some((total, repeated, main)) = spectrum {
            writeln!(report, "integer-spectrum k={} count={} repeated={} main_term={} ratio={}", args.k, total, repeated, format_number(main), format_number(total as f64 / main))?;
        }
        Ok(())
    })?;
    if disagreements > 0 {
        return Err(Failure { code: EXIT_VERIFY, message: format!("{disagreements} brute/fast disagreements") });
    }
    Ok(())
}

fn density(args: DensityArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let grid = density_grid(args.from, args.to, args.points)?;
    let table = DensityTable::tabulate(args.kind, grid)?;
    with_sinks(args.out.as_ref(), stdout, stderr, |csv, report| {
        writeln!(csv, "delta,value")?;
        for (d, v) in table.grid.iter().zip(&table.values) {
            writeln!(csv, "{},{}", format_number(*d), format_number(*v))?;
        }
        writeln!(
            report,
            "{} on {} points, trapezoid area {}",
            table.kind.name(),
            table.grid.len(),
            format_number(table.trapezoid())
        )?;
        Ok(())
    })
}

fn simulate(args: SimulateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let seed = SeedSpec::new(args.seed, args.stream);
    let summary = run_experiment(args.n, args.bins, seed)?;
    let expected = expected_bin_mass(&summary.bin_edges, DensityKind::W)?;
    let cmp = compare_to_density(&summary, DensityKind::W)?;
    with_sinks(args.out.as_ref(), stdout, stderr, |csv, report| {
        writeln!(csv, "bin_lo,bin_hi,count,mass,w_mass")?;
        for i in 0..summary.bin_counts.len() {
            writeln!(
                csv,
                "{},{},{},{},{}",
                format_number(summary.bin_edges[i]),
                format_number(summary.bin_edges[i + 1]),
                summary.bin_counts[i],
                format_number(summary.bin_mass[i]),
                format_number(expected[i])
            )?;
        }
        writeln!(report, "samples {} seed {} stream {}", summary.samples, args.seed, args.stream)?;
        writeln!(report, "real-pair frequency {} (49/72 = {})", format_number(summary.real_pair_frequency), format_number(constants().real_pair_probability))?;
        writeln!(report, "histogram mass {}", format_number(summary.total_mass()))?;
        writeln!(report, "eigenvalue range [{}, {}]", format_number(summary.min_eigenvalue), format_number(summary.max_eigenvalue))?;
        writeln!(report, "sup deviation from W {}", format_number(cmp.sup_deviation))?;
        writeln!(report, "chi-square {} on {} bins", format_number(cmp.chi_square), cmp.degrees)?;
        Ok(())
    })
}

fn run_verify(suite: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let checks = verify::run(suite);
    let mut failed = 0;
    for c in &checks {
        writeln!(stdout, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        if !c.passed {
            failed += 1;
        }
    }
    writeln!(stdout, "{} checks, {} failed", checks.len(), failed)?;
    if failed > 0 {
        return Err(Failure { code: EXIT_VERIFY, message: format!("{failed} verification checks failed") });
    }
    Ok(())
}

fn print_constants(out: &mut dyn Write) -> io::Result<()> {
    let c = constants();
    let rows = [
        ("C", c.c_integer),
        ("6/pi^2", c.six_over_pi_sq),
        ("real_pair_probability (49/72)", c.real_pair_probability),
        ("integral_W (49/36)", c.w_mass),
        ("W(1) (15/32)", c.w_at_one),
        ("V(1) (1+log 2)", c.v_at_one),
        ("integral_V", c.v_mass),
    ];
    for (name, value) in rows {
        writeln!(out, "{name} = {}", format_number(value))?;
    }
    Ok(())
}
