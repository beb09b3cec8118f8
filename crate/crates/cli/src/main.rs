mod analysis;
mod audit;
mod report;
mod survey;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zdg_core::audit::{AuditConfig, AuditRequest};
use zdg_core::ecc::eccentricity_matrix;
use zdg_core::Error as CoreError;

use analysis::{Method, Variant};
use report::{envelope, to_csv, to_json, Sink};

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl Exit {
    pub fn usage(message: impl Into<String>) -> Exit {
        Exit {
            code: 2,
            message: message.into(),
        }
    }

    pub fn unwritable(path: &Path, e: std::io::Error) -> Exit {
        Exit {
            code: 4,
            message: format!("cannot write {}: {e}", path.display()),
        }
    }
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

impl From<CoreError> for Exit {
    fn from(e: CoreError) -> Exit {
        let code = match e {
            CoreError::EmptyGraph { .. } | CoreError::Domain(_) | CoreError::NotApplicable(_) => 2,
            CoreError::Oversize { .. } => 3,
            _ => 1,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "zdg", version)]
#[command(about = "Zero-divisor graphs of Z_n: eccentricity spectra, surveys and claim audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum and structure of one graph
    Spectrum {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Variant::Zdg)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Print the adjacency list instead of the report
        #[arg(long)]
        dump_graph: bool,
        /// Print the eccentricity matrix instead of the report
        #[arg(long)]
        dump_matrix: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check stated closed forms against computed ground truth
    Audit {
        /// Theorem id (e.g. 3.1) or `all`
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, default_value_t = 31)]
        primes_up_to: u64,
        /// Smallest prime tried; defaults to 3 for 3.1 and 2 elsewhere
        #[arg(long)]
        min_prime: Option<u64>,
        /// Range limit for n and p^t families
        #[arg(long, default_value_t = 128)]
        max_n: u64,
        /// Larger matrices are skipped
        #[arg(long, default_value_t = 400)]
        max_order: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Refutations that are expected, as a comma list or a file of keys;
        /// the observed set must match exactly
        #[arg(long)]
        expect_refutations: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Structural flags, spectra and energies for every composite n up to a bound
    Survey {
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Variant::Zdg)]
        variant: Variant,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
        /// Reuse per-n records from the cache directory
        #[arg(long)]
        cache: bool,
    },
}

fn pool(workers: Option<usize>) -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        b = b.num_threads(w.max(1));
    }
    Ok(b.build()?)
}

fn spectrum_cmd(
    n: u64,
    variant: Variant,
    method: Method,
    dump_graph: bool,
    dump_matrix: bool,
    csv: bool,
    output: Option<PathBuf>,
) -> anyhow::Result<u8> {
    let sink = Sink::open(output.as_deref())?;
    let g = variant.build(n).map_err(Exit::from)?;
    let m = eccentricity_matrix(&g);
    if dump_graph || dump_matrix {
        let mut text = String::new();
        if dump_graph {
            text.push_str(&g.to_adjacency_text());
        }
        if dump_matrix {
            if dump_graph {
                text.push('\n');
            }
            text.push_str(&m.to_text());
        }
        sink.emit(&text, output.as_deref())?;
        return Ok(0);
    }
    let rec = analysis::record(n, variant, &g, &m, &method.options()).map_err(Exit::from)?;
    let command = format!(
        "spectrum --n {n} --variant {} --method {}",
        variant.as_str(),
        method.as_str()
    );
    let text = if csv {
        to_csv(&[rec], &analysis::COLUMNS)?
    } else {
        to_json(&envelope(&command, vec![rec], Default::default()))
    };
    sink.emit(&text, output.as_deref())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn audit_cmd(
    theorem: &str,
    primes_up_to: u64,
    min_prime: Option<u64>,
    max_n: u64,
    max_order: usize,
    tol: f64,
    expect: Option<&str>,
    workers: Option<usize>,
    csv: bool,
    output: Option<PathBuf>,
) -> anyhow::Result<u8> {
    let claims = audit::parse_theorem(theorem)?;
    let expected = expect.map(|e| audit::parse_expected(e, &claims)).transpose()?;
    let sink = Sink::open(output.as_deref())?;
    let req = AuditRequest {
        claims,
        primes_up_to,
        min_prime,
        max_n,
        config: AuditConfig {
            tol,
            max_order,
            ..AuditConfig::default()
        },
    };
    let verdicts = pool(workers)?.install(|| audit::run(&req));
    let outcome = audit::summarise(&verdicts, expected.as_ref());
    let mut command = format!(
        "audit --theorem {theorem} --primes-up-to {primes_up_to} --max-n {max_n} --max-order {max_order} --tol {tol:e}"
    );
    if let Some(p) = min_prime {
        command.push_str(&format!(" --min-prime {p}"));
    }
    if let Some(e) = &expected {
        command.push_str(&format!(
            " --expect-refutations {}",
            e.iter().cloned().collect::<Vec<_>>().join(",")
        ));
    }
    let text = if csv {
        to_csv(&outcome.records, &audit::COLUMNS)?
    } else {
        to_json(&envelope(&command, outcome.records, outcome.report_extra))
    };
    sink.emit(&text, output.as_deref())?;
    if outcome.ok {
        return Ok(0);
    }
    report_keys("unexpected refutations", &outcome.unexpected);
    report_keys("expected refutations not observed", &outcome.missing);
    Ok(1)
}

fn report_keys(what: &str, keys: &[String]) {
    const SHOWN: usize = 10;
    if keys.is_empty() {
        return;
    }
    let mut line = keys.iter().take(SHOWN).cloned().collect::<Vec<_>>().join(", ");
    if keys.len() > SHOWN {
        line.push_str(&format!(", ... ({} more)", keys.len() - SHOWN));
    }
    eprintln!("zdg: {} {what}: {line}", keys.len());
}

fn survey_cmd(
    max_n: u64,
    variant: Variant,
    workers: Option<usize>,
    output: Option<PathBuf>,
    csv: bool,
    cache: bool,
) -> anyhow::Result<u8> {
    if max_n < 4 {
        return Err(Exit::usage("--max-n must be at least 4").into());
    }
    let sink = Sink::open(output.as_deref())?;
    let dir = survey::cache_dir(cache);
    let records = pool(workers)?.install(|| survey::run(max_n, variant, dir.as_deref()));
    let command = format!("survey --max-n {max_n} --variant {}", variant.as_str());
    let text = if csv {
        to_csv(&records, &analysis::COLUMNS)?
    } else {
        let extra = survey::summary(&records);
        to_json(&envelope(&command, records, extra))
    };
    sink.emit(&text, output.as_deref())?;
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Spectrum {
            n,
            variant,
            method,
            dump_graph,
            dump_matrix,
            csv,
            output,
        } => spectrum_cmd(n, variant, method, dump_graph, dump_matrix, csv, output),
        Command::Audit {
            theorem,
            primes_up_to,
            min_prime,
            max_n,
            max_order,
            tol,
            expect_refutations,
            workers,
            csv,
            output,
        } => audit_cmd(
            &theorem,
            primes_up_to,
            min_prime,
            max_n,
            max_order,
            tol,
            expect_refutations.as_deref(),
            workers,
            csv,
            output,
        ),
        Command::Survey {
            max_n,
            variant,
            workers,
            output,
            csv,
            cache,
        } => survey_cmd(max_n, variant, workers, output, csv, cache),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("zdg: {e:#}");
            ExitCode::from(e.downcast_ref::<Exit>().map_or(1, |x| x.code))
        }
    }
}
