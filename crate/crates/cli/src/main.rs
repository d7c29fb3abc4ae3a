//! Command-line surface for the private pliable index coding toolkit.
//!
//! Exit codes are fixed for scripting: 0 valid/found, 1 invalid/not found,
//! 2 infeasible instance, 3 parameter error, 4 cap exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use picod_core::{
    classify, construct, max_search_ell, optimal_linear_length, privacy_entropy_report,
    validate_exhaustive, validate_linear, CaseTag, EncoderTable, Error as CoreError, Instance,
    OracleStatus, Scheme,
};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_PARAM: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(
    name = "picod",
    about = "Construct, validate, and search linear codes for private pliable index coding \
             with circular-shift side information",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Params {
    /// Number of messages (2..=64)
    m: usize,
    /// Side information size per user (0..=m-1)
    s: usize,
    /// Circular shift step between consecutive users
    h: usize,
}

impl Params {
    fn instance(&self) -> Result<Instance, CliError> {
        Ok(Instance::new(self.m, self.s, self.h)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct the proved scheme for an instance and print it with its verdict
    Construct {
        #[command(flatten)]
        params: Params,
        /// Also write the scheme JSON to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a scheme file against its instance
    Validate {
        /// Path to a scheme JSON file
        scheme: PathBuf,
        /// Also validate through the exhaustive truth-table route (m <= 20)
        #[arg(long)]
        exhaustive: bool,
        /// With --exhaustive: only flag full-bit leaks, not partial ones
        #[arg(long)]
        lenient: bool,
        /// Write the exact per-user conditional entropies as CSV (m <= 20)
        #[arg(long, value_name = "FILE")]
        entropy_report: Option<PathBuf>,
    },
    /// Exhaustively search for the optimal linear code length
    Optimal {
        #[command(flatten)]
        params: Params,
        /// Largest dimension to search (default: the documented cap for m)
        #[arg(long)]
        ell_max: Option<usize>,
    },
    /// Sweep a parameter grid and tabulate the classification landscape
    Sweep {
        /// Inclusive message-count range, e.g. 4..12
        #[arg(long, value_parser = parse_range)]
        m_range: (usize, usize),
        /// Inclusive side-information range (default: 0..m-1 per m)
        #[arg(long, value_parser = parse_range)]
        s_range: Option<(usize, usize)>,
        /// Inclusive shift range (default: 1..1)
        #[arg(long, value_parser = parse_range)]
        h_range: Option<(usize, usize)>,
        /// Run the oracle up to this dimension on rows within its caps
        #[arg(long)]
        oracle_cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write the table to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report whether the network topology hypergraph has a 1-factor
    Factor {
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_range(raw: &str) -> Result<(usize, usize), String> {
    let (a, b) = raw
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {raw}"))?;
    let lo: usize = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: usize = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {raw}"));
    }
    Ok((lo, hi))
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError { code, message: message.into() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        let code = match &e {
            CoreError::Infeasible { .. } => EXIT_INFEASIBLE,
            CoreError::CapExceeded { .. } => EXIT_CAP,
            CoreError::NoSchemeFound => EXIT_INVALID,
            _ => EXIT_PARAM,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::new(EXIT_PARAM, format!("io error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::new(EXIT_PARAM, format!("bad scheme file: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version displays are not errors.
            let code = if e.use_stderr() { EXIT_PARAM } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Construct { params, out } => run_construct(&params, out.as_deref()),
        Command::Validate { scheme, exhaustive, lenient, entropy_report } => {
            run_validate(&scheme, exhaustive, lenient, entropy_report.as_deref())
        }
        Command::Optimal { params, ell_max } => run_optimal(&params, ell_max),
        Command::Sweep { m_range, s_range, h_range, oracle_cap, format, out } => {
            run_sweep(m_range, s_range, h_range, oracle_cap, format, out.as_deref())
        }
        Command::Factor { params } => run_factor(&params),
    }
}

fn run_construct(params: &Params, out: Option<&std::path::Path>) -> Result<u8, CliError> {
    let inst = params.instance()?;
    let scheme = construct(&inst)?;
    let verdict = validate_linear(&scheme.generator, &inst)?;
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&scheme)?)?;
    }
    let combined = serde_json::json!({ "scheme": scheme, "verdict": verdict });
    println!("{}", serde_json::to_string_pretty(&combined)?);
    Ok(if verdict.is_valid() { EXIT_OK } else { EXIT_INVALID })
}

fn run_validate(
    path: &std::path::Path,
    exhaustive: bool,
    lenient: bool,
    entropy_out: Option<&std::path::Path>,
) -> Result<u8, CliError> {
    let scheme: Scheme = serde_json::from_str(&fs::read_to_string(path)?)?;
    let inst = scheme.instance;
    let verdict = if exhaustive {
        let table = EncoderTable::from_matrix(&scheme.generator)?;
        validate_exhaustive(&table, &inst, !lenient)?
    } else {
        validate_linear(&scheme.generator, &inst)?
    };
    if let Some(out) = entropy_out {
        let table = EncoderTable::from_matrix(&scheme.generator)?;
        let report = privacy_entropy_report(&table, &inst)?;
        let mut csv = String::from("user,message,entropy_bits\n");
        for ((user, message), bits) in report {
            csv.push_str(&format!("{user},{message},{bits}\n"));
        }
        fs::write(out, csv)?;
    }
    println!("{}", serde_json::to_string_pretty(&verdict)?);
    Ok(if verdict.is_valid() { EXIT_OK } else { EXIT_INVALID })
}

fn run_optimal(params: &Params, ell_max: Option<usize>) -> Result<u8, CliError> {
    let inst = params.instance()?;
    let cap = max_search_ell(inst.m());
    if cap == 0 {
        return Err(CliError::new(
            EXIT_CAP,
            format!("exhaustive search supports m <= 10, got m={}", inst.m()),
        ));
    }
    let ell_max = ell_max.unwrap_or(cap);
    let result = optimal_linear_length(&inst, ell_max)?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(match result.status {
        OracleStatus::Found { .. } => EXIT_OK,
        OracleStatus::Inconclusive { .. } => EXIT_INVALID,
        OracleStatus::InfeasibleLinear => EXIT_INFEASIBLE,
    })
}

fn run_factor(params: &Params) -> Result<u8, CliError> {
    let inst = params.instance()?;
    let witness = inst.nth().find_one_factor();
    let exists = witness.is_some();
    let report = serde_json::json!({
        "m": inst.m(), "s": inst.s(), "h": inst.h(),
        "exists": exists,
        "witness": witness,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if exists { EXIT_OK } else { EXIT_INVALID })
}

/// One line of the sweep table. Optional cells serialize as empty CSV fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: usize,
    pub s: usize,
    pub h: usize,
    pub g: usize,
    pub n: usize,
    pub one_factor: bool,
    #[serde(rename = "case")]
    pub case: CaseTag,
    pub lin_lower: Option<usize>,
    pub lin_upper: Option<usize>,
    pub constructed_ell: Option<usize>,
    pub oracle_ell: Option<usize>,
    pub verdict: String,
}

fn sweep_row(inst: &Instance, oracle_cap: Option<usize>) -> SweepRow {
    let nth = inst.nth();
    let one_factor = nth.has_one_factor();
    let report = classify(inst, one_factor);

    let (constructed_ell, verdict) = match report.case_tag {
        CaseTag::Infeasible => (None, "infeasible".to_string()),
        CaseTag::Unclassified => (None, "unclassified".to_string()),
        _ => match construct(inst) {
            Ok(scheme) => (Some(scheme.ell()), "valid".to_string()),
            Err(e) => (None, format!("error: {e}")),
        },
    };

    let oracle_ell = oracle_cap.and_then(|cap| {
        let allowed = max_search_ell(inst.m());
        let want = cap.min(inst.m());
        if want == 0 || want > allowed {
            return None;
        }
        match optimal_linear_length(inst, want) {
            Ok(result) => match result.status {
                OracleStatus::Found { ell_star, .. } => Some(ell_star),
                _ => None,
            },
            Err(_) => None,
        }
    });

    SweepRow {
        m: inst.m(),
        s: inst.s(),
        h: inst.h(),
        g: inst.g(),
        n: inst.n(),
        one_factor,
        case: report.case_tag,
        lin_lower: report.lin_lower,
        lin_upper: report.lin_upper,
        constructed_ell,
        oracle_ell,
        verdict,
    }
}

fn run_sweep(
    m_range: (usize, usize),
    s_range: Option<(usize, usize)>,
    h_range: Option<(usize, usize)>,
    oracle_cap: Option<usize>,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<u8, CliError> {
    let mut grid = Vec::new();
    for m in m_range.0..=m_range.1 {
        let (s_lo, s_hi) = s_range.unwrap_or((0, m.saturating_sub(1)));
        let (h_lo, h_hi) = h_range.unwrap_or((1, 1));
        for s in s_lo..=s_hi.min(m.saturating_sub(1)) {
            for h in h_lo..=h_hi.min(m) {
                grid.push(Instance::new(m, s, h)?);
            }
        }
    }
    if let Some(cap) = oracle_cap {
        let skipped: Vec<usize> = (m_range.0..=m_range.1)
            .filter(|&m| cap.min(m) > max_search_ell(m))
            .collect();
        if !skipped.is_empty() {
            eprintln!(
                "note: oracle skipped for m in {skipped:?} (dimension {cap} exceeds the supported caps)"
            );
        }
    }

    let mut rows: Vec<SweepRow> = grid.par_iter().map(|inst| sweep_row(inst, oracle_cap)).collect();
    rows.sort_by_key(|r| (r.m, r.s, r.h));

    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&rows)?,
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                writer
                    .serialize(row)
                    .map_err(|e| CliError::new(EXIT_PARAM, format!("csv error: {e}")))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| CliError::new(EXIT_PARAM, format!("csv error: {e}")))?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
    };
    match out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(EXIT_OK)
}
