use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use transvect::cli::report::{self, AnalysisReport, AnalyzeError, AnalyzeOptions, Format};
use transvect::cli::spec::{parse_spec, GroupSpecFile};
use transvect::cli::verify;
use transvect::group;

const EXIT_MISMATCH: u8 = 1;
const EXIT_SPEC: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "transvect", version, about = "Invariants, differents and split tests for transvection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a spec file.
    Analyze {
        spec: PathBuf,
        #[arg(long, default_value = "human")]
        format: Format,
        #[arg(long)]
        degree_cap: Option<u32>,
        #[arg(long)]
        order_cap: Option<usize>,
        /// Generator words for G', e.g. `tau1,tau2`.
        #[arg(long, value_delimiter = ',')]
        gprime: Option<Vec<String>>,
        /// Search orbit witnesses over the whole coefficient field.
        #[arg(long)]
        full_field: bool,
    },
    /// Check the bundled worked examples.
    VerifyExamples {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["2", "3"]))]
        p: Option<String>,
    },
    /// Print a composition series.
    Series { spec: PathBuf },
    /// Print the different certificates of one stage (1-based; default last).
    Different {
        spec: PathBuf,
        #[arg(long)]
        stage: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn spec(message: impl Into<String>) -> Self {
        Failure { code: EXIT_SPEC, message: message.into() }
    }
}

impl From<AnalyzeError> for Failure {
    fn from(e: AnalyzeError) -> Self {
        let code = if e.is_cap() { EXIT_CAP } else { EXIT_SPEC };
        Failure { code, message: e.to_string() }
    }
}

fn load(path: &PathBuf) -> Result<GroupSpecFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::spec(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Failure::spec(format!("{}: {e}", path.display())))
}

fn status(report: &AnalysisReport) -> u8 {
    if report.uncertified {
        EXIT_CAP
    } else {
        0
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.command {
        Command::Analyze { spec, format, degree_cap, order_cap, gprime, full_field } => {
            let spec = load(&spec)?;
            let opts = AnalyzeOptions { degree_cap, order_cap, gprime, full_field, ..AnalyzeOptions::default() };
            let r = report::analyze(&spec, &opts)?;
            Ok((report::emit(&r, format), status(&r)))
        }
        Command::VerifyExamples { p } => {
            let rep = verify::verify_examples(p.map(|s| s.parse().expect("validated by clap")));
            let code = if rep.all_passed() { 0 } else { EXIT_MISMATCH };
            Ok((rep.render(), code))
        }
        Command::Series { spec } => {
            let spec = load(&spec)?;
            let g = spec.group().map_err(|e| Failure::from(AnalyzeError::from(e)))?;
            let s =
                group::composition_series(&g).map_err(|e| Failure { code: EXIT_MISMATCH, message: e.to_string() })?;
            let mut out = String::new();
            for (i, h) in s.chain.iter().enumerate() {
                out.push_str(&format!("G_{i}  order {}", h.order()));
                if i > 0 {
                    let w = &s.witnesses[i - 1];
                    out.push_str(&format!("  beta {}  new {}", w.beta, w.element));
                }
                out.push('\n');
            }
            match group::validate_series(&g, &s) {
                Ok(()) => {
                    out.push_str("validated\n");
                    Ok((out, 0))
                }
                Err(e) => {
                    out.push_str(&format!("invalid series: {e}\n"));
                    Ok((out, EXIT_MISMATCH))
                }
            }
        }
        Command::Different { spec, stage } => {
            let spec = load(&spec)?;
            let opts = AnalyzeOptions { orbit_witness: false, ..AnalyzeOptions::default() };
            let r = report::analyze(&spec, &opts)?;
            if r.stages.is_empty() {
                return Ok(("no stages: the group is trivial\n".into(), status(&r)));
            }
            let i = stage.unwrap_or(r.stages.len());
            let s = r
                .stages
                .get(i.wrapping_sub(1))
                .ok_or_else(|| Failure::spec(format!("stage {i} out of range 1..={}", r.stages.len())))?;
            let mut out = format!("stage {}: {}\n", i, s.label);
            match &s.differents {
                Some(d) => {
                    out.push_str(&format!("Delta(S/R) = {}\n", d.s_over_r.display));
                    out.push_str(&format!("Delta(S/A) = {}\n", d.s_over_a.display));
                    out.push_str(&format!("Delta(A/R) = {}\n", d.a_over_r.display));
                    out.push_str(&format!("  expanded {}\n", d.a_over_r.expanded));
                }
                None => out.push_str("differents unavailable\n"),
            }
            for n in &s.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            Ok((out, status(&r)))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
