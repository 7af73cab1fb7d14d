//! `codeg`: codegree sets, the character-table oracle, and proof certificates.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use codegree_core::arith::Env;
use codegree_core::catalog::{Catalog, CatalogError};
use codegree_core::codegree::{cod_from_table, cod_simple, CodSource, CodegreeSet};
use codegree_core::dixon::{dixon_table, DixonOptions, CLASS_CAP};
use codegree_core::verifier::{recheck_report, verify_all, ProofReport, VerifyError, VerifyOptions};

/// Stable exit codes.
mod exit {
    pub const OPEN: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const ORACLE: u8 = 3;
}

#[derive(Parser)]
#[command(name = "codeg", version, about = "Exact codegree sets, character tables and proof certificates")]
struct Cli {
    /// Data directory (records/, families/, groups/).
    #[arg(long, global = true, env = "CODEG_DATA", default_value = "data")]
    data: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Codegree set of a record, a family point (`Suzuki q2=8`) or a permutation group.
    Cod {
        name: String,
        /// Parameters for a family, as `var=value`.
        params: Vec<String>,
        /// Restrict a family to one transcription variant.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Character table of a permutation group by the Dixon-Schneider method.
    Oracle {
        group: String,
        /// Compare degrees and codegrees with the record of the same name.
        #[arg(long)]
        diff: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = CLASS_CAP)]
        class_cap: usize,
        /// Print a record file for the group instead of the table.
        #[arg(long)]
        emit_record: bool,
    },
    /// Close every case for the chosen targets and write the report.
    Verify {
        #[arg(long, value_enum, default_value_t = Target::Both)]
        target: Target,
        /// Report path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads; defaults to the number of logical cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the oracle comparison on the K3 records.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Re-derive every certificate in a report from the file alone.
    Recheck { report: PathBuf },
    /// Summarize a report.
    Report { report: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Both,
    #[value(name = "U3_3")]
    U33,
    #[value(name = "U4_2")]
    U42,
}

impl Target {
    fn names(self) -> Vec<String> {
        match self {
            Target::Both => vec!["U3_3".into(), "U4_2".into()],
            Target::U33 => vec!["U3_3".into()],
            Target::U42 => vec!["U4_2".into()],
        }
    }
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: exit::USAGE, message: message.into() }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("codeg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Cod { name, params, variant } => cmd_cod(cli, name, params, variant.as_deref()),
        Command::Oracle { group, diff, seed, class_cap, emit_record } => {
            let opts = DixonOptions { seed: *seed, class_cap: *class_cap };
            cmd_oracle(cli, group, *diff, opts, *emit_record)
        }
        Command::Verify { target, output, jobs, seed, no_oracle } => {
            let opts = VerifyOptions {
                targets: target.names(),
                oracle: !no_oracle,
                dixon: DixonOptions { seed: *seed, class_cap: CLASS_CAP },
                generated_at: timestamp(),
            };
            cmd_verify(cli, opts, output.as_deref(), *jobs)
        }
        Command::Recheck { report } => cmd_recheck(cli, report),
        Command::Report { report } => {
            let r = read_report(report)?;
            emit(cli, &r, || render::report(&r))
        }
    }
}

fn catalog(cli: &Cli) -> Result<Catalog, Failure> {
    if !cli.data.is_dir() {
        return Err(Failure::usage(format!(
            "data directory {} not found (use --data or CODEG_DATA)",
            cli.data.display()
        )));
    }
    Ok(Catalog::load(&cli.data)?)
}

fn timestamp() -> String {
    time::OffsetDateTime::now_utc().format(&time::format_description::well_known::Rfc3339).unwrap_or_default()
}

/// Prints JSON or the text rendering.
fn emit<T: serde::Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> Outcome {
    let out = match cli.format {
        Format::Json => serde_json::to_string_pretty(value).map_err(|e| Failure::usage(e.to_string()))?,
        Format::Text => text(),
    };
    write_out(&format!("{}\n", out.trim_end()))?;
    Ok(0)
}

/// Writes to stdout; a closed pipe (`codeg report x | head`) is not an error.
fn write_out(s: &str) -> Result<(), Failure> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::usage(e.to_string())),
        _ => Ok(()),
    }
}

fn parse_params(params: &[String]) -> Result<Env, Failure> {
    params
        .iter()
        .map(|p| {
            let (k, v) =
                p.split_once('=').ok_or_else(|| Failure::usage(format!("parameter `{p}` is not var=value")))?;
            let v: i128 = v.trim().parse().map_err(|_| Failure::usage(format!("parameter `{p}`: not an integer")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn cmd_cod(cli: &Cli, name: &str, params: &[String], variant: Option<&str>) -> Outcome {
    let cat = catalog(cli)?;
    let set = if let Ok(f) = cat.family(name) {
        let point = parse_params(params)?;
        let fp = f.eval(&point)?;
        if let Some(v) = variant {
            if !f.variants().contains(v) {
                return Err(Failure::usage(format!("{name} has no variant `{v}`")));
            }
        }
        if !f.complete {
            eprintln!("note: {name} lists only some codegrees; the set below is partial");
        }
        let mut set = CodegreeSet::new(CodSource::Data);
        set.insert(codegree_core::arith::FactoredInt::one());
        for c in fp.cods_for(variant) {
            set.insert(c.value.clone());
        }
        set
    } else if !params.is_empty() {
        return Err(Failure::usage(format!("unknown family `{name}`")));
    } else if let Ok(r) = cat.record(name) {
        if r.data.simple && !r.data.partial {
            cod_simple(&r.data).map_err(|e| Failure::usage(e.to_string()))?
        } else {
            r.cod()?
        }
    } else if let Ok(g) = cat.group(name) {
        let t = dixon_table(g, DixonOptions { class_cap: usize::MAX, ..DixonOptions::default() })
            .map_err(|e| Failure { code: exit::ORACLE, message: format!("{e}; retry with another --seed") })?;
        cod_from_table(&t).map_err(|e| Failure::usage(e.to_string()))?
    } else {
        return Err(Failure::usage(format!("no record, family or group named `{name}`")));
    };
    let desc: Vec<_> = set.elements.iter().rev().collect();
    emit(cli, &desc, || render::codegrees(&desc))
}

fn cmd_oracle(cli: &Cli, name: &str, diff: bool, opts: DixonOptions, emit_record: bool) -> Outcome {
    let cat = catalog(cli)?;
    let g = cat.group(name)?;
    let t = dixon_table(g, opts).map_err(|e| Failure {
        code: exit::ORACLE,
        message: format!("oracle failed on {name}: {e} (retry with another --seed or a larger --class-cap)"),
    })?;
    let cod = cod_from_table(&t).map_err(|e| Failure { code: exit::ORACLE, message: e.to_string() })?;
    if emit_record {
        write_out(&render::record_toml(&t, g))?;
        return Ok(0);
    }
    if !diff {
        return emit(cli, &t, || render::table(&t, &cod));
    }
    let rec = cat.record(name)?;
    let mut degrees = rec.data.degrees.clone();
    degrees.sort_unstable();
    let rec_cod = rec.cod()?;
    let same = t.degrees() == degrees && cod.same_elements(&rec_cod);
    let summary = serde_json::json!({
        "group": name,
        "classes": t.class_count(),
        "degrees_match": t.degrees() == degrees,
        "codegrees_match": cod.same_elements(&rec_cod),
        "codegrees": cod.elements.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    emit(cli, &summary, || render::diff(name, &t, &cod, &degrees, &rec_cod))?;
    if same {
        Ok(0)
    } else {
        Err(Failure { code: exit::ORACLE, message: format!("oracle and record disagree for {name}") })
    }
}

fn cmd_verify(cli: &Cli, opts: VerifyOptions, output: Option<&Path>, jobs: Option<usize>) -> Outcome {
    let cat = catalog(cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Failure::usage(e.to_string()))?;
    let report = pool.install(|| verify_all(&cat, &opts))?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::usage(e.to_string()))?;
    match output {
        Some(path) => {
            fs::write(path, json + "\n").map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            write_out(&render::report(&report))?;
        }
        None => write_out(&(json + "\n"))?,
    }
    if !report.oracle_passed() {
        eprintln!("codeg: the oracle disagrees with the data");
        return Ok(exit::ORACLE);
    }
    Ok(if report.closed { 0 } else { exit::OPEN })
}

fn read_report(path: &Path) -> Result<ProofReport, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let version = serde_json::from_str::<serde_json::Value>(&src)
        .map_err(|e| Failure::usage(format!("{}: not JSON: {e}", path.display())))?
        .get("format_version")
        .and_then(|v| v.as_u64());
    if version != Some(u64::from(codegree_core::verifier::FORMAT_VERSION)) {
        return Err(Failure::usage(format!("{}: unsupported format version {:?}", path.display(), version)));
    }
    serde_json::from_str(&src).map_err(|e| Failure::usage(format!("{}: malformed report: {e}", path.display())))
}

fn cmd_recheck(cli: &Cli, path: &Path) -> Outcome {
    let report = read_report(path)?;
    let result = recheck_report(&report);
    let open = report.open().count();
    let summary = serde_json::json!({
        "consistent": result.is_ok(),
        "error": result.as_ref().err().map(|e| e.to_string()),
        "certificates": report.certificates.len(),
        "open": open,
        "closed": report.closed,
    });
    emit(cli, &summary, || match &result {
        Ok(()) => format!(
            "consistent: {} certificates rechecked, {} open, report {}",
            report.certificates.len(),
            open,
            if report.closed { "closed" } else { "open" }
        ),
        Err(e) => format!("inconsistent: {e}"),
    })?;
    Ok(if result.is_ok() { 0 } else { exit::OPEN })
}
