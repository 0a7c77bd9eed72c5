use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use cyclotomic::{Precision, SeriesOptions};
use cyclotomic_cli::checks::{dedekind_trials, verify_all, Settings};
use cyclotomic_cli::report::{
    all_pass, write_header, write_records, Format, Tolerances, VerificationRecord,
};
use cyclotomic_cli::{
    character_rows, lvalue_rows, regulator_applicable, regulator_row, write_rows, LMethod,
};

/// Dirichlet characters, L(1, χ) and cyclotomic regulators, with verification reports.
#[derive(Debug, Parser)]
#[command(name = "cyclo", version)]
struct Cli {
    /// Emit one JSON object per line.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    csv: bool,
    /// Closed-form/series agreement tolerance.
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = positive_float)]
    tol_series: f64,
    /// Relative singularity tolerance for regulator determinants.
    #[arg(long, global = true, default_value_t = 1e-8, value_parser = positive_float)]
    tol_det: f64,
    /// Working precision for regulators, in decimal digits (above 15 selects extended precision).
    #[arg(long, global = true, default_value_t = 15)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the characters mod m with parity, conductor and χ(2).
    Characters {
        #[arg(value_parser = modulus)]
        m: u64,
    },
    /// L(1, χ) and L_E(1, χ) for the primitive characters of conductor dividing m.
    Lvalues {
        #[arg(value_parser = modulus)]
        m: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Both regulators, η and the index branch for prime powers.
    Regulators(Moduli),
    /// Run every verification check and report one record per check.
    Verify(Moduli),
    /// Group determinant identities on random functions on (Z/m)*/±1.
    DedekindSelftest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 20, value_parser = modulus)]
        max_modulus: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, clap::Args)]
struct Moduli {
    #[arg(value_parser = modulus)]
    moduli: Vec<u64>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = range)]
    range: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Series,
    Both,
}

fn modulus(s: &str) -> Result<u64, String> {
    let m: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if m < 3 {
        return Err("modulus must be at least 3".into());
    }
    Ok(m)
}

fn range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let (a, b) = (modulus(a.trim())?, modulus(b.trim())?);
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn positive_float(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(x > 0.0 && x.is_finite()) {
        return Err("must be a positive number".into());
    }
    Ok(x)
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(ErrorKind::ValueValidation, message)
        .exit()
}

impl Moduli {
    fn resolve(&self) -> Vec<u64> {
        let mut out = self.moduli.clone();
        if let Some((a, b)) = self.range {
            out.extend(a..=b);
        }
        if out.is_empty() {
            usage_error("give at least one modulus or --range a..b");
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn exit(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> io::Result<ExitCode> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let precision = Precision::from_digits(cli.precision).unwrap_or_else(|e| usage_error(e));
    let tolerances = Tolerances {
        series: cli.tol_series,
        det: cli.tol_det,
        precision_digits: precision.digits(),
        ..Tolerances::default()
    };
    let settings = Settings {
        tolerances,
        precision,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr().lock();

    let code = match cli.command {
        Command::Characters { m } => {
            let rows = character_rows(m).unwrap_or_else(|e| usage_error(e));
            write_rows(format, &rows, &mut out)?;
            ExitCode::SUCCESS
        }
        Command::Lvalues { m, method } => {
            let method = match method {
                MethodArg::Closed => LMethod::Closed,
                MethodArg::Series => LMethod::Series,
                MethodArg::Both => LMethod::Both,
            };
            let options = SeriesOptions::with_tolerance(cli.tol_series * 1e-2);
            let rows = lvalue_rows(m, method, &options).unwrap_or_else(|e| usage_error(e));
            write_rows(format, &rows, &mut out)?;
            let disagree = rows
                .iter()
                .any(|r| r.disagreement.is_some_and(|d| d >= cli.tol_series));
            exit(!disagree && !rows.iter().any(|r| r.is_error()))
        }
        Command::Regulators(moduli) => {
            let explicit = moduli.moduli.clone();
            let mut rows = Vec::new();
            let mut failed = false;
            for m in moduli.resolve() {
                if !regulator_applicable(m) {
                    if explicit.contains(&m) {
                        usage_error(format!("{m} is not a prime power"));
                    }
                    continue;
                }
                match regulator_row(m, &settings.regulator_options()) {
                    Ok(row) => rows.push(row),
                    Err(e) => {
                        writeln!(err, "m = {m}: {e}")?;
                        failed = true;
                    }
                }
            }
            write_rows(format, &rows, &mut out)?;
            exit(!failed)
        }
        Command::Verify(moduli) => {
            let moduli = moduli.resolve();
            write_header(format, &tolerances, &mut out, &mut err)?;
            let records = verify_all(&moduli, &settings);
            write_records(format, &records, &mut out)?;
            exit(all_pass(&records))
        }
        Command::DedekindSelftest {
            trials,
            max_modulus,
            seed,
        } => {
            let moduli: Vec<u64> = (3..=max_modulus).filter(|m| m % 4 != 2).collect();
            write_header(format, &tolerances, &mut out, &mut err)?;
            let mut records = Vec::new();
            for (i, &m) in moduli.iter().enumerate() {
                let share = trials / moduli.len() + usize::from(i < trials % moduli.len());
                if share == 0 {
                    continue;
                }
                let record =
                    match dedekind_trials(m, share, seed.wrapping_mul(1_000_003).wrapping_add(m)) {
                        Ok(checks) => VerificationRecord::judged(
                            m,
                            "dedekind",
                            checks.iter().map(|c| c.residual).fold(0.0, f64::max),
                            tolerances.dedekind,
                            format!("{share} random functions"),
                        ),
                        Err(e) => VerificationRecord::fail(m, "dedekind", e.to_string()),
                    };
                records.push(record);
            }
            write_records(format, &records, &mut out)?;
            exit(all_pass(&records))
        }
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
