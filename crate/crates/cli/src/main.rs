//! `charlab`: character tables, instance mining and theorem verification.

use std::path::PathBuf;
use std::process::ExitCode;

use charlab::clifford::GoodnessOracle;
use charlab::Ambient;
use charlab_harness::dsl;
use charlab_harness::instance;
use charlab_harness::mining::{mine_instances, Limits};
use charlab_harness::{
    run_suite, run_suite_file, Catalog, ErrorClass, HarnessError, Kind, Loader, SuiteFile,
    SuiteOptions, Verdict, VerificationReport,
};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_HYPOTHESIS: u8 = 4;
const EXIT_OTHER: u8 = 5;

#[derive(Parser)]
#[command(
    name = "charlab",
    version,
    about = "Exact character theory for small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact character table of a group expression.
    Chartab {
        expr: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = charlab::chartab::DEFAULT_SEED)]
        seed: u64,
    },
    /// Mine and check a suite; exit 0 iff every check passes.
    Verify {
        /// `default` or a suite JSON file.
        #[arg(long, default_value = "default")]
        suite: String,
        /// Comma-separated kinds (default: all).
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<String>,
        #[arg(long, default_value_t = Limits::default().max_order)]
        max_order: usize,
        #[arg(long, default_value_t = Limits::default().max_per_kind)]
        max_per_kind: usize,
        /// Worker threads (1 runs sequentially).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = charlab::chartab::DEFAULT_SEED)]
        seed: u64,
        /// Record real elapsed times and the current time.
        #[arg(long)]
        timings: bool,
        /// Report failed equalities without the engine-bug flag.
        #[arg(long)]
        plain_failures: bool,
    },
    /// Print the mined instances of one kind as JSON.
    Mine {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "default")]
        catalog: String,
        #[arg(long, default_value_t = Limits::default().max_order)]
        max_order: usize,
        #[arg(long, default_value_t = Limits::default().max_per_kind)]
        max_per_kind: usize,
        #[arg(long, default_value_t = charlab::chartab::DEFAULT_SEED)]
        seed: u64,
    },
    /// Per-element θ-goodness certificates for θ on a normal subgroup.
    Goodness {
        expr: String,
        /// Selector for N, e.g. `center` or `genlist([2])`.
        #[arg(long)]
        normal: String,
        /// Row of θ in N's canonical character order.
        #[arg(long = "char")]
        character: usize,
        #[arg(long, default_value_t = charlab::chartab::DEFAULT_SEED)]
        seed: u64,
    },
}

fn fail(e: &HarnessError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        HarnessError::Dsl(_) => EXIT_PARSE,
        HarnessError::Hypothesis(_) => EXIT_HYPOTHESIS,
        _ => EXIT_OTHER,
    })
}

fn report_status(report: &VerificationReport) -> ExitCode {
    eprintln!(
        "{} instances: {} pass, {} fail, {} error",
        report.instances.len(),
        report.count(Verdict::Pass),
        report.count(Verdict::Fail),
        report.count(Verdict::Error)
    );
    if report.has_error(ErrorClass::Parse) {
        ExitCode::from(EXIT_PARSE)
    } else if report.has_error(ErrorClass::Hypothesis) {
        ExitCode::from(EXIT_HYPOTHESIS)
    } else if report.count(Verdict::Fail) > 0 {
        ExitCode::from(EXIT_CHECK_FAILED)
    } else if report.count(Verdict::Error) > 0 {
        ExitCode::from(EXIT_OTHER)
    } else {
        ExitCode::SUCCESS
    }
}

fn parse_kinds(kinds: &[String]) -> Result<Vec<Kind>, HarnessError> {
    if kinds.is_empty() {
        return Ok(Kind::ALL.to_vec());
    }
    kinds.iter().map(|k| k.parse()).collect()
}

fn read(path: &str) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{path}: {e}")))
}

fn chartab(expr: &str, format: Format, seed: u64) -> Result<(), HarnessError> {
    let g = dsl::group_from_text(expr)?;
    let amb = Ambient::with_seed(g, seed);
    let t = amb.table(&amb.whole())?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&t.to_json()).expect("table serializes")
        ),
        Format::Markdown => print!("{}", t.to_markdown()),
    }
    Ok(())
}

fn goodness(expr: &str, normal: &str, row: usize, seed: u64) -> Result<(), HarnessError> {
    let g = dsl::group_from_text(expr)?;
    let n = dsl::select_text(&g, normal)?;
    let amb = Ambient::with_seed(g, seed);
    let a = amb.whole();
    let rows = amb.table(&n)?.len();
    if row >= rows {
        return Err(HarnessError::Hypothesis(format!(
            "character {row} out of range ({rows} rows)"
        )));
    }
    let oracle = GoodnessOracle::new(&amb, &a, &n, row)?;
    let mut certs = Vec::new();
    for &x in a.elements() {
        certs.push(oracle.certificate(x)?);
    }
    let good = certs.iter().filter(|c| c.verdict).count();
    let out = serde_json::json!({
        "group": expr,
        "normal": normal,
        "character": row,
        "good_elements": good,
        "certificates": certs,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("certificates serialize")
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Chartab { expr, format, seed } => match chartab(&expr, format, seed) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Goodness {
            expr,
            normal,
            character,
            seed,
        } => match goodness(&expr, &normal, character, seed) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Mine {
            kind,
            catalog,
            max_order,
            max_per_kind,
            seed,
        } => {
            let run = || -> Result<(), HarnessError> {
                let kind: Kind = kind.parse()?;
                let catalog = Catalog::load(&catalog)?;
                catalog.validate()?;
                let limits = Limits {
                    max_order,
                    max_per_kind,
                    ..Limits::default()
                };
                let specs = mine_instances(&catalog, kind, &limits, &Loader::new(seed))?;
                println!("{}", instance::to_json(&specs));
                Ok(())
            };
            match run() {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
        Command::Verify {
            suite,
            kinds,
            max_order,
            max_per_kind,
            jobs,
            report,
            seed,
            timings,
            plain_failures,
        } => {
            if let Some(j) = jobs {
                charlab::par::set_jobs(j);
            }
            let run = || -> Result<VerificationReport, HarnessError> {
                let opts = SuiteOptions {
                    name: suite.clone(),
                    kinds: parse_kinds(&kinds)?,
                    limits: Limits {
                        max_order,
                        max_per_kind,
                        ..Limits::default()
                    },
                    seed,
                    timings,
                    plain_failures,
                };
                if suite == "default" {
                    run_suite(&Catalog::default_catalog(), &opts)
                } else {
                    run_suite_file(&SuiteFile::parse(&read(&suite)?)?, &opts)
                }
            };
            let rep = match run() {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let json = rep.to_json();
            match &report {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &json) {
                        return fail(&HarnessError::Io(format!("{}: {e}", path.display())));
                    }
                }
                None => print!("{json}"),
            }
            report_status(&rep)
        }
    }
}
