//! Command-line front end for `pircode`.
//!
//! [`run`] executes a parsed [`Cli`] and returns the process exit status:
//! 0 success / yes, 1 no or failed, 2 inconclusive, 64 malformed input or
//! usage, 66 unreadable input.

pub mod formats;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use pircode::bounds::{compare_found, reference_table, Column};
use pircode::constructions::{
    concat_availability, direct_sum, even_extend, lengthen_extend, puncture, s5_lengthen, shorten,
    Certified,
};
use pircode::pir::{Verdict, DEFAULT_NODE_BUDGET};
use pircode::search::{
    run_algorithm1, run_campaign, CampaignConfig, DistanceGate, SearchConfig, SearchMode,
};
use pircode::steiner::st_recovering_sets;
use pircode::{
    build_systematic, check_certificate, check_property_st, verify_pir, Collection, GenMatrix,
    PirCertificate, StCertificate, StVerdict, VerifyOptions,
};

use formats::{Certificate, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NOINPUT: i32 = 66;

/// Environment variable holding the default verifier node budget.
pub const BUDGET_ENV: &str = "PIRCODE_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_NOINPUT,
            CliError::Failed(_) => EXIT_NO,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "pircode",
    version,
    about = "Verify, construct and search binary t-server PIR codes"
)]
pub struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the t-PIR property or property S_t of a code.
    Verify(VerifyArgs),
    /// Grow a code with the lexicographic lengthen-and-extend search.
    Search(SearchArgs),
    /// Apply a code construction.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Print the reference table of blocklength bounds.
    Table(TableArgs),
    /// Run the search over a pool of seeds and tabulate the best codes.
    Campaign(CampaignArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// t-PIR property.
    Pir,
    /// Property S_t of the code's redundancy sets.
    S5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GateArg {
    /// Code minimum distance >= t and row distances (default).
    Code,
    /// Row distances only.
    Rows,
}

#[derive(Debug, Args)]
pub struct BudgetArg {
    /// Node budget per symbol for the exact PIR search.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

impl BudgetArg {
    fn options(&self) -> VerifyOptions {
        VerifyOptions::default().with_budget(self.budget)
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Matrix file (or collection file with --collection).
    pub input: PathBuf,
    /// Availability to check.
    #[arg(long, short)]
    pub t: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Pir)]
    pub mode: ModeArg,
    /// The input is a collection file; its systematic code is checked.
    #[arg(long)]
    pub collection: bool,
    #[command(flatten)]
    pub budget: BudgetArg,
    /// Write the certificate here on success.
    #[arg(long)]
    pub emit_cert: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Systematic constant row-weight matrix file.
    pub input: PathBuf,
    /// Number of zero columns appended before the scan.
    #[arg(long, default_value_t = 1)]
    pub w: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Pir)]
    pub mode: ModeArg,
    #[arg(long, short, default_value_t = 5)]
    pub t: usize,
    /// Stop once this dimension is reached.
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Keep scanning when a candidate fails the exact check.
    #[arg(long)]
    pub continue_on_fail: bool,
    #[arg(long, value_enum, default_value_t = GateArg::Code)]
    pub gate: GateArg,
    #[command(flatten)]
    pub budget: BudgetArg,
    /// Best matrix output (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report output.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Re-verify the result before writing it.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub budget: BudgetArg,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// [G | H]: availabilities add.
    Concat {
        first: PathBuf,
        second: PathBuf,
        /// Availability of the first code (needed by --strict).
        #[arg(long, short)]
        t: Option<usize>,
        /// Availability of the second code (default: same as --t).
        #[arg(long)]
        t2: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Block-diagonal sum: dimensions add.
    DirectSum {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, short)]
        t: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Remove an information symbol of a systematic code.
    Shorten {
        input: PathBuf,
        /// Symbol to remove (1-based).
        #[arg(long)]
        symbol: usize,
        #[arg(long, short)]
        t: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Delete a coordinate: availability drops by one.
    Puncture {
        input: PathBuf,
        /// Coordinate to delete (1-based).
        #[arg(long)]
        coord: usize,
        /// Availability of the input.
        #[arg(long, short)]
        t: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Append the sum of all columns: odd t becomes t + 1.
    EvenExtend {
        input: PathBuf,
        #[arg(long, short)]
        t: usize,
        /// Certificate for the input (computed if absent).
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Write the output's certificate here.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Add one symbol and ceil(t/2) coordinates.
    LengthenExtend {
        input: PathBuf,
        #[arg(long, short)]
        t: usize,
        /// Symbol whose recovering sets seed the new row (1-based).
        #[arg(long, default_value_t = 1)]
        symbol: usize,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Add one symbol to a collection with property S5 (three coordinates).
    S5Lengthen {
        /// Collection file.
        input: PathBuf,
        /// Set that receives the new symbol (1-based, below the last set).
        #[arg(long, default_value_t = 1)]
        j1: usize,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, short, value_parser = ["4", "6", "8"])]
    pub t: String,
    /// Campaign CSV to merge into the table.
    #[arg(long)]
    pub campaign: Option<PathBuf>,
    /// Emit CSV instead of aligned text.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    /// Seed matrix files.
    #[arg(long = "seed")]
    pub seeds: Vec<PathBuf>,
    /// Also seed with every systematic row-weight-t t-PIR code of this
    /// shape, given as "k,n".
    #[arg(long = "seed-enum", value_parser = parse_shape)]
    pub seed_enum: Vec<(usize, usize)>,
    #[arg(long, short, default_value_t = 5)]
    pub t: usize,
    #[arg(long, default_value_t = 8)]
    pub max_k: usize,
    /// Expand codes at most this much longer than the best of their k.
    #[arg(long, default_value_t = 0)]
    pub slack: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_runs: usize,
    /// Do not derive codes by shortening.
    #[arg(long)]
    pub no_shorten: bool,
    #[command(flatten)]
    pub budget: BudgetArg,
    /// CSV output (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory receiving one matrix file per table entry.
    #[arg(long)]
    pub matrices: Option<PathBuf>,
}

fn parse_shape(s: &str) -> std::result::Result<(usize, usize), String> {
    let (k, n) = s.split_once(',').ok_or("expected \"k,n\"")?;
    let k = k.trim().parse().map_err(|_| format!("bad k in {s:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    Ok((k, n))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_with<T>(
    path: &Path,
    f: impl FnOnce(&str) -> std::result::Result<T, ParseError>,
) -> Result<T> {
    f(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_matrix(path: &Path) -> Result<GenMatrix> {
    parse_with(path, formats::parse_matrix)
}

pub fn load_collection(path: &Path) -> Result<Collection> {
    parse_with(path, formats::parse_collection)
}

fn load_pir_cert(path: &Path) -> Result<PirCertificate> {
    match parse_with(path, formats::parse_certificate)? {
        Certificate::Pir(c) => Ok(c),
        Certificate::St(_) => Err(CliError::Usage(format!(
            "{}: expected a pir certificate",
            path.display()
        ))),
    }
}

fn load_st_cert(path: &Path) -> Result<StCertificate> {
    match parse_with(path, formats::parse_certificate)? {
        Certificate::St(c) => Ok(c),
        Certificate::Pir(_) => Err(CliError::Usage(format!(
            "{}: expected an st certificate",
            path.display()
        ))),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn say(out: &mut dyn Write, line: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", line.as_ref()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn shape(g: &GenMatrix) -> String {
    format!("[{},{}]", g.n(), g.k())
}

/// Runs a command, writing its primary output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, out),
        Command::Construct(c) => cmd_construct(c, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Campaign(a) => cmd_campaign(a, out),
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let (g, collection) = if a.collection {
        let c = load_collection(&a.input)?;
        (build_systematic(&c), Some(c))
    } else {
        (load_matrix(&a.input)?, None)
    };
    match a.mode {
        ModeArg::Pir => match verify_pir(&g, a.t, &a.budget.options()) {
            Verdict::Yes(cert) => {
                say(out, format!("yes: {} code is {}-PIR", shape(&g), a.t))?;
                if let Some(p) = &a.emit_cert {
                    write_file(p, &formats::emit_certificate(&Certificate::Pir(cert)))?;
                }
                Ok(EXIT_OK)
            }
            Verdict::No(why) => {
                say(
                    out,
                    format!("no: {} code is not {}-PIR: {why}", shape(&g), a.t),
                )?;
                Ok(EXIT_NO)
            }
            Verdict::Inconclusive(why) => {
                say(out, format!("inconclusive: {why}"))?;
                Ok(EXIT_INCONCLUSIVE)
            }
        },
        ModeArg::S5 => {
            let c = match collection {
                Some(c) => c,
                None => match Collection::from_systematic(&g) {
                    Ok(c) => c,
                    Err(e) => {
                        say(out, format!("no: {e}"))?;
                        return Ok(EXIT_NO);
                    }
                },
            };
            match check_property_st(&c, a.t) {
                StVerdict::Yes(cert) => {
                    say(
                        out,
                        format!("yes: {} code has property S{}", shape(&g), a.t),
                    )?;
                    if let Some(p) = &a.emit_cert {
                        write_file(p, &formats::emit_certificate(&Certificate::St(cert)))?;
                    }
                    Ok(EXIT_OK)
                }
                StVerdict::No(why) => {
                    say(
                        out,
                        format!("no: {} code lacks property S{}: {why}", shape(&g), a.t),
                    )?;
                    Ok(EXIT_NO)
                }
            }
        }
    }
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let g = load_matrix(&a.input)?;
    let cfg = SearchConfig {
        w: a.w,
        t: a.t,
        mode: match a.mode {
            ModeArg::Pir => SearchMode::Pir,
            ModeArg::S5 => SearchMode::PropertyS,
        },
        verify: a.budget.options(),
        max_k: a.max_k,
        continue_on_fail: a.continue_on_fail,
        gate: match a.gate {
            GateArg::Code => DistanceGate::Code,
            GateArg::Rows => DistanceGate::Rows,
        },
    };
    let report =
        run_algorithm1(&g, &cfg).map_err(|e| CliError::Failed(format!("precondition: {e}")))?;
    log::info!(
        "{} -> {} ({}, {} candidates, {:.3?})",
        shape(&g),
        shape(&report.best),
        report.termination,
        report.candidates_scanned,
        report.elapsed
    );
    if let Some(p) = &a.report {
        write_file(p, &formats::emit_report(&report))?;
    }
    emit(out, a.out.as_deref(), &formats::emit_matrix(&report.best))?;
    Ok(EXIT_OK)
}

fn pir_cert_for(
    g: &GenMatrix,
    t: usize,
    cert: Option<&Path>,
    opts: &VerifyOptions,
) -> Result<PirCertificate> {
    if let Some(p) = cert {
        let c = load_pir_cert(p)?;
        if c.t != t || check_certificate(g, &c) != Ok(true) {
            return Err(CliError::Failed(format!(
                "{}: certificate is not valid for the input",
                p.display()
            )));
        }
        return Ok(c);
    }
    match verify_pir(g, t, opts) {
        Verdict::Yes(c) => Ok(c),
        Verdict::No(why) => Err(CliError::Failed(format!("input is not {t}-PIR: {why}"))),
        Verdict::Inconclusive(why) => Err(CliError::Failed(format!(
            "could not certify the input: {why}"
        ))),
    }
}

fn strict_pir(g: &GenMatrix, t: Option<usize>, output: &OutputArgs, what: &str) -> Result<()> {
    if !output.strict {
        return Ok(());
    }
    let t = t.ok_or_else(|| CliError::Usage(format!("--strict on {what} needs --t")))?;
    match verify_pir(g, t, &output.budget.options()) {
        Verdict::Yes(_) => Ok(()),
        v => Err(CliError::Failed(format!(
            "strict check: output {} is not verified {t}-PIR ({v:?})",
            shape(g)
        ))),
    }
}

fn finish_certified(
    res: Certified,
    emit_cert: Option<&Path>,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    if output.strict {
        res.check()
            .map_err(|e| CliError::Failed(format!("strict check: {e}")))?;
        strict_pir(&res.matrix, Some(res.certificate.t), output, "the result")?;
    }
    if let Some(p) = emit_cert {
        write_file(
            p,
            &formats::emit_certificate(&Certificate::Pir(res.certificate)),
        )?;
    }
    emit(
        out,
        output.out.as_deref(),
        &formats::emit_matrix(&res.matrix),
    )?;
    Ok(EXIT_OK)
}

fn index_arg(value: usize, limit: usize, what: &str) -> Result<usize> {
    if (1..=limit).contains(&value) {
        Ok(value - 1)
    } else {
        Err(CliError::Usage(format!(
            "{what} must be in 1..={limit}, got {value}"
        )))
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn cmd_construct(c: ConstructCommand, out: &mut dyn Write) -> Result<i32> {
    match c {
        ConstructCommand::Concat {
            first,
            second,
            t,
            t2,
            output,
        } => {
            let g = concat_availability(&load_matrix(&first)?, &load_matrix(&second)?)
                .map_err(failed)?;
            strict_pir(&g, t.map(|t| t + t2.unwrap_or(t)), &output, "concat")?;
            emit(out, output.out.as_deref(), &formats::emit_matrix(&g))?;
        }
        ConstructCommand::DirectSum {
            first,
            second,
            t,
            output,
        } => {
            let g = direct_sum(&load_matrix(&first)?, &load_matrix(&second)?);
            strict_pir(&g, t, &output, "direct-sum")?;
            emit(out, output.out.as_deref(), &formats::emit_matrix(&g))?;
        }
        ConstructCommand::Shorten {
            input,
            symbol,
            t,
            output,
        } => {
            let g = load_matrix(&input)?;
            let i = index_arg(symbol, g.k(), "--symbol")?;
            let s = shorten(&g, i).map_err(failed)?;
            strict_pir(&s, t, &output, "shorten")?;
            emit(out, output.out.as_deref(), &formats::emit_matrix(&s))?;
        }
        ConstructCommand::Puncture {
            input,
            coord,
            t,
            output,
        } => {
            let g = load_matrix(&input)?;
            let j = index_arg(coord, g.n(), "--coord")?;
            let p = puncture(&g, j).map_err(failed)?;
            strict_pir(&p, t.map(|t| t.saturating_sub(1)), &output, "puncture")?;
            emit(out, output.out.as_deref(), &formats::emit_matrix(&p))?;
        }
        ConstructCommand::EvenExtend {
            input,
            t,
            cert,
            emit_cert,
            output,
        } => {
            let g = load_matrix(&input)?;
            let c = pir_cert_for(&g, t, cert.as_deref(), &output.budget.options())?;
            let res = even_extend(&g, t, &c).map_err(failed)?;
            return finish_certified(res, emit_cert.as_deref(), &output, out);
        }
        ConstructCommand::LengthenExtend {
            input,
            t,
            symbol,
            cert,
            emit_cert,
            output,
        } => {
            let g = load_matrix(&input)?;
            let m = index_arg(symbol, g.k(), "--symbol")?;
            let c = pir_cert_for(&g, t, cert.as_deref(), &output.budget.options())?;
            let res = lengthen_extend(&g, t, &c, m).map_err(failed)?;
            return finish_certified(res, emit_cert.as_deref(), &output, out);
        }
        ConstructCommand::S5Lengthen {
            input,
            j1,
            cert,
            emit_cert,
            output,
        } => {
            let c = load_collection(&input)?;
            let j1 = index_arg(j1, c.r().saturating_sub(1).max(1), "--j1")?;
            let st = match cert {
                Some(p) => load_st_cert(&p)?,
                None => match check_property_st(&c, 5) {
                    StVerdict::Yes(cert) => cert,
                    StVerdict::No(why) => {
                        return Err(CliError::Failed(format!("input lacks property S5: {why}")))
                    }
                },
            };
            let (grown, gcert) = s5_lengthen(&c, &st, j1).map_err(failed)?;
            if output.strict {
                if !check_property_st(&grown, 5).is_yes() {
                    return Err(CliError::Failed(
                        "strict check: output lacks property S5".into(),
                    ));
                }
                let g = build_systematic(&grown);
                let pir = st_recovering_sets(&grown, &gcert).map_err(failed)?;
                if check_certificate(&g, &pir) != Ok(true) {
                    return Err(CliError::Failed(
                        "strict check: transported recovering sets invalid".into(),
                    ));
                }
                strict_pir(&g, Some(5), &output, "s5-lengthen")?;
            }
            if let Some(p) = emit_cert {
                write_file(&p, &formats::emit_certificate(&Certificate::St(gcert)))?;
            }
            emit(
                out,
                output.out.as_deref(),
                &formats::emit_collection(&grown),
            )?;
        }
    }
    Ok(EXIT_OK)
}

/// Blocklength a campaign row implies for availability `t`: a code for odd
/// `t - 1` gives a `t` code one coordinate longer.
fn implied_length(row: &formats::CampaignRow, t: usize) -> Option<usize> {
    if row.t == t {
        Some(row.n)
    } else if row.t + 1 == t && row.t % 2 == 1 {
        Some(row.n + 1)
    } else {
        None
    }
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32> {
    let t: usize = a.t.parse().expect("validated by clap");
    let campaign = match &a.campaign {
        Some(p) => parse_with(p, formats::parse_campaign)?,
        None => Vec::new(),
    };
    let entries = reference_table(t);
    let columns: Vec<Column> = entries[0].cells.iter().map(|(c, _)| *c).collect();
    let mut header: Vec<String> = vec!["k".into()];
    header.extend(columns.iter().map(|c| c.name().to_string()));
    if a.campaign.is_some() {
        header.push("found".into());
        header.push("status".into());
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    for e in &entries {
        let mut row = vec![e.k.to_string()];
        for col in &columns {
            row.push(e.cell(*col).map_or("-".into(), |c| c.to_string()));
        }
        if a.campaign.is_some() {
            let found = campaign
                .iter()
                .filter(|r| r.k == e.k)
                .filter_map(|r| implied_length(r, t))
                .min();
            match found {
                Some(n) => {
                    row.push(n.to_string());
                    row.push(compare_found(e.k, t, n).map_or("-".into(), |c| c.to_string()));
                }
                None => {
                    row.push("-".into());
                    row.push("-".into());
                }
            }
        }
        rows.push(row);
    }
    if a.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory");
        for row in &rows {
            w.write_record(row).expect("in-memory");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        emit(out, None, &String::from_utf8(bytes).expect("utf-8"))?;
    } else {
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                rows.iter()
                    .map(|r| r[i].len())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        say(
            out,
            format!("t = {t}   (* optimal, d found without property S5, ! impossible, b new)"),
        )?;
        say(out, line(&header))?;
        for row in &rows {
            say(out, line(row))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_campaign(a: CampaignArgs, out: &mut dyn Write) -> Result<i32> {
    let seeds = a
        .seeds
        .iter()
        .map(|p| load_matrix(p))
        .collect::<Result<Vec<_>>>()?;
    let cfg = CampaignConfig {
        t: a.t,
        max_k: a.max_k,
        slack: a.slack,
        max_runs: a.max_runs,
        shorten: !a.no_shorten,
        seed_shapes: a.seed_enum.clone(),
        verify: a.budget.options(),
        ..Default::default()
    };
    let started = std::time::Instant::now();
    let res = run_campaign(&seeds, &cfg);
    log::info!("{} runs in {:.3?}", res.runs, started.elapsed());
    if let Some(dir) = &a.matrices {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for e in res.entries.values() {
            write_file(
                &dir.join(format!("k{}_n{}.txt", e.k, e.n)),
                &formats::emit_matrix(&e.matrix),
            )?;
        }
    }
    let text = formats::emit_campaign(&formats::campaign_rows(&res));
    emit(out, a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}
