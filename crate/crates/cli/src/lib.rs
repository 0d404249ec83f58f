//! Argument handling and exit-code policy for the `blowup` binary, kept out of
//! `main` so tests can drive it without spawning processes.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use blowup_core::corpus;
use blowup_core::report::Status;
use blowup_core::{Analyzer, Command, Engine, GeometryError, IdealError, Report, SceneError, SceneFile};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Pretty-printed JSON
    Structured,
    /// Human-readable text
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "blowup",
    version,
    about = "Decide whether blow-ups of hypersurfaces along coordinate centers are smooth"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Structured, global = true)]
    format: Format,
    /// Suppress the summary on standard error
    #[arg(long, global = true)]
    quiet: bool,
    /// Seed for the randomized selftest corpora
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Abort Groebner computations that produce polynomials above this degree
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Full pipeline: multiplicities, both smoothness routes, chart oracle, divisor and SOD ledgers
    Analyze { scene: PathBuf },
    /// Affine charts of each blow-up with the strict transform
    Charts { scene: PathBuf },
    /// Lefschetz and semiorthogonal decomposition bookkeeping only
    Sod { scene: PathBuf },
    /// Direct chart-by-chart smoothness check only
    Oracle { scene: PathBuf },
    /// Run the fixture corpus and the randomized property suites
    Selftest,
}

/// Everything one invocation writes, and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn kernel_code(e: &IdealError) -> i32 {
    match e {
        IdealError::DegreeBoundExceeded { .. } => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn error_code(e: &GeometryError) -> i32 {
    match e {
        GeometryError::Scene(SceneError::Kernel(k)) | GeometryError::Kernel(k) => kernel_code(k),
        GeometryError::Scene(_) => EXIT_INPUT,
        GeometryError::Precondition(_) | GeometryError::Internal(_) => EXIT_INTERNAL,
    }
}

fn label(s: Status) -> &'static str {
    match s {
        Status::Smooth => "smooth",
        Status::Singular => "singular",
        Status::Inconclusive => "inconclusive",
    }
}

fn summary(r: &Report) -> String {
    let mut parts = Vec::new();
    if let Some(v) = &r.verdicts {
        parts.push(format!("hypothesis route {}", label(v.hypothesis_route.status)));
        if let Some(l) = &v.linear_route {
            parts.push(format!("linear route {}", label(l.status)));
        }
        parts.push(format!("chart oracle {}", label(v.chart_oracle.status)));
        parts.push(if v.consistent {
            "consistent".into()
        } else {
            "INCONSISTENT".into()
        });
    } else if let Some(o) = &r.oracle {
        parts.push(format!("chart oracle {}", label(o.verdict.status)));
    }
    if let Some(c) = &r.charts {
        parts.push(format!("{} charts", c.len()));
    }
    if let Some(s) = &r.sod {
        parts.push(format!("{} lefschetz entries", s.lefschetz.len()));
    }
    if let Some(t) = &r.selftest {
        let failed = t.fixtures.iter().filter(|f| !f.passed).count();
        parts.push(format!(
            "{} fixtures ({failed} failed), {} + {} random scenes, {}",
            t.fixtures.len(),
            t.route_agreement.cases,
            t.linear_equivalence.cases,
            if t.passed { "passed" } else { "FAILED" }
        ));
    }
    let mut out = format!("{}: {}\n", r.command.name(), parts.join(", "));
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let analyzer = Analyzer::new(Engine::with_max_degree(cli.max_degree));

    let result = match &cli.command {
        Cmd::Selftest => corpus::selftest(&analyzer, cli.seed).map(Report::selftest),
        Cmd::Analyze { scene } | Cmd::Charts { scene } | Cmd::Sod { scene } | Cmd::Oracle { scene } => {
            let command = match cli.command {
                Cmd::Analyze { .. } => Command::Analyze,
                Cmd::Charts { .. } => Command::Charts,
                Cmd::Sod { .. } => Command::Sod,
                _ => Command::Oracle,
            };
            let text = match fs::read_to_string(scene) {
                Ok(t) => t,
                Err(e) => return Outcome::failure(EXIT_INPUT, format!("{}: {e}", scene.display())),
            };
            let file = match SceneFile::from_toml(&text) {
                Ok(f) => f,
                Err(e) => return Outcome::failure(EXIT_INPUT, format!("{}: {e}", scene.display())),
            };
            Report::run(command, &file, &analyzer)
        }
    };

    let report = match result {
        Ok(r) => r,
        Err(e) => return Outcome::failure(error_code(&e), e.to_string()),
    };
    let stdout = match cli.format {
        Format::Structured => report.to_json(),
        Format::Plain => report.to_plain(),
    };
    let mut stderr = if cli.quiet {
        String::new()
    } else {
        summary(&report)
    };
    let code = if report.is_consistent() {
        EXIT_OK
    } else {
        stderr.push_str(
            "error: a sufficient criterion disagrees with the chart oracle or a selftest check failed\n",
        );
        EXIT_INTERNAL
    };
    Outcome { code, stdout, stderr }
}
