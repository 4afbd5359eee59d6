use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use hecke_core::arith::{format_rational, parse_rational};
use hecke_core::certificate::{Certificate, RationalCertificate};
use hecke_core::giambelli::{pk_eval, PkVariant};
use hecke_core::hecke::{rational_certificate, thaddeus_number, IntersectionQuery, PairingSearch};
use hecke_core::modcert::{certify_mod, find_gk, find_gpk};
use hecke_core::store::Store;
use hecke_core::suites::{run_suite, Suite};
use hecke_core::verdict::{emit_table, Assumption, DecideOptions, TableFormat};
use hecke_core::Error;

#[derive(Parser)]
#[command(
    name = "hecke",
    version,
    about = "Brill-Noether classes on the Hecke correspondence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    Beta,
}

#[derive(Clone, Copy, ValueEnum)]
enum AssumptionArg {
    Any,
    Petri,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print P_k as canonical JSON terms.
    Pk {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "beta")]
        variant: VariantArg,
    },
    /// Evaluate P_k at a rational point.
    PkEval {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        h: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },
    /// Intersection number of α^m β^n γ^p on the moduli space.
    Thaddeus {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
    },
    /// Modular non-vanishing certificate (default prime: smallest odd prime with 3g-3 >= k(k+1)/2).
    ModCert {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Search for a nonzero rational pairing.
    RationalCert {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = hecke_core::hecke::DEFAULT_PAIRING_BUDGET)]
        budget: usize,
    },
    /// Smallest odd prime g with g - 1 >= k(k-1)/4.
    Gk {
        #[arg(long)]
        k: u32,
    },
    /// Smallest odd prime g with 3g - 3 >= k(k+1)/2.
    Gpk {
        #[arg(long)]
        k: u32,
    },
    /// Verdict table over a grid of (g, k).
    Verdict {
        #[arg(long, value_parser = parse_range)]
        g: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<u32>,
        #[arg(long, value_enum, default_value = "petri")]
        assumption: AssumptionArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named reproduction suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

/// Writes a line to stdout; a closed pipe ends the process quietly.
fn write_line(s: String) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{s}").and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

macro_rules! emit {
    ($($t:tt)*) => {
        write_line(format!($($t)*))?
    };
}

/// `A..B` (inclusive) or a single value `A`.
fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn rational(name: &str, s: &str) -> anyhow::Result<hecke_core::arith::Rational> {
    parse_rational(s).with_context(|| format!("--{name} {s:?}"))
}

fn store() -> anyhow::Result<Store> {
    Ok(Store::from_env()?)
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    match cmd {
        Command::Pk { k, variant } => {
            if k < 1 {
                bail!("k must be positive");
            }
            let variant = match variant {
                VariantArg::Full => PkVariant::Full,
                VariantArg::Beta => PkVariant::Beta,
            };
            let rec = store()?.pk(k, variant)?;
            let out = serde_json::json!({
                "k": k,
                "variant": variant.to_string(),
                "algorithm": rec.algorithm,
                "version": rec.version,
                "poly": rec.poly.to_canonical(),
            });
            emit!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::PkEval { k, h, beta, gamma } => {
            if k < 1 {
                bail!("k must be positive");
            }
            let v = pk_eval(
                k,
                &rational("h", &h)?,
                &rational("beta", &beta)?,
                &rational("gamma", &gamma)?,
            );
            emit!("{}", format_rational(&v));
        }
        Command::Thaddeus { g, m, n, p } => {
            let q = IntersectionQuery::new(g, m, n, p)?;
            emit!("{}", format_rational(&thaddeus_number(&q)));
        }
        Command::ModCert { k, prime } => match certify_mod(k, prime)? {
            Some(c) => {
                let cert = Certificate::Modular(c);
                let hash = store()?.put_certificate(&cert)?;
                emit!("{}", cert.to_json());
                eprintln!("stored {hash}");
            }
            None => {
                let g = prime.unwrap_or_else(|| find_gpk(k));
                emit!(
                    "{}",
                    serde_json::json!({"k": k.to_string(), "g0": g.to_string(), "status": "inconclusive"})
                );
            }
        },
        Command::RationalCert { g, k, budget } => match rational_certificate(g, k, budget)? {
            PairingSearch::Found(p) => {
                let cert = Certificate::Rational(RationalCertificate::from_pairing(&p));
                let hash = store()?.put_certificate(&cert)?;
                emit!("{}", cert.to_json());
                eprintln!("stored {hash} after {} pairings", p.evaluated);
            }
            PairingSearch::Exhausted { evaluated } => {
                emit!(
                    "{}",
                    serde_json::json!({"k": k.to_string(), "g0": g.to_string(),
                        "status": "exhausted", "evaluated": evaluated.to_string()})
                );
            }
        },
        Command::Gk { k } => emit!("{}", find_gk(k)),
        Command::Gpk { k } => emit!("{}", find_gpk(k)),
        Command::Verdict {
            g,
            k,
            assumption,
            format,
            out,
        } => {
            let mode = match assumption {
                AssumptionArg::Any => Assumption::AnyCurve,
                AssumptionArg::Petri => Assumption::Petri,
                AssumptionArg::General => Assumption::General,
            };
            let format = match format {
                FormatArg::Csv => TableFormat::Csv,
                FormatArg::Json => TableFormat::Json,
            };
            let store = store()?;
            let text = emit_table(
                g,
                k,
                format,
                &DecideOptions::with_mode(mode),
                Some(&store),
                out.as_deref(),
            )?;
            if out.is_none() {
                emit!("{}", text.trim_end_matches('\n'));
            }
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let store = store()?;
            let report = run_suite(suite, Some(&store))?;
            emit!("{}", report.to_json());
            if !report.passed {
                eprintln!("suite {suite} FAILED");
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Error>() {
                Some(Error::Inapplicable { .. } | Error::NegativeExpectedDimension { .. }) => {
                    ExitCode::from(3)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}
