mod input;
mod output;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use seqspan_core::correlation::family_spectrum_with_id;
use seqspan_core::gf2::PRIMITIVE_POLYNOMIALS;
use seqspan_core::span::{berlekamp_massey, span_report, SpanReport};
use seqspan_core::tables::{table_one, table_two_row, tn_comparison, TableOneRow, TABLE_TWO};
use seqspan_core::{FamilyParams, SeqFile};

use input::{IndexSpec, MAX_SPECTRUM_N};
use output::{emit, to_json, CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "seqspan",
    version,
    about = "Sequence families of period 2^n-1: generation, correlation and linear span"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "SEQSPAN_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a field tower, or dump the primitive polynomial table.
    Field(FieldArgs),
    /// Write family members as SEQ1 files.
    Generate(GenerateArgs),
    /// Correlation spectrum over a set of family members.
    Correlate(CorrelateArgs),
    /// Measured and predicted linear spans.
    Span(SpanArgs),
    /// Run one of the built-in verification targets.
    Verify(VerifyArgs),
    /// Regenerate the bound tables.
    Report(ReportArgs),
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u32,
    /// Exponent u, or `auto` for 1 + 2^m + ... + 2^((k-2)m).
    #[arg(long, default_value = "auto")]
    u: String,
    /// mseq | legendre:<gamma>,<zeta> | cosets:<leaders> | json:<path>
    #[arg(long = "index-set", default_value = "mseq")]
    index_set: String,
}

impl FamilyArgs {
    fn build(&self) -> CliResult<FamilyParams> {
        input::family(self.m, self.k, &self.u, &IndexSpec::parse(&self.index_set)?)
    }
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, required_unless_present = "dump_table")]
    m: Option<u32>,
    #[arg(long, required_unless_present = "dump_table")]
    k: Option<u32>,
    /// Print the primitive polynomial table as CSV `degree,poly_hex`.
    #[arg(long)]
    dump_table: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// all | list such as 0,3,5 | range such as 0-15
    #[arg(long, default_value = "0")]
    h: String,
    /// Output directory; one `h<h>.seq` file per member. Stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CorrelateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value = "all")]
    h: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow full spectra above n = 12.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SpanArgs {
    #[arg(long, required_unless_present = "file")]
    m: Option<u32>,
    #[arg(long, required_unless_present = "file")]
    k: Option<u32>,
    #[arg(long, default_value = "auto")]
    u: String,
    #[arg(long = "index-set", default_value = "mseq")]
    index_set: String,
    #[arg(long, default_value = "0")]
    h: String,
    /// Measure the span of a SEQ1 file instead of generating members.
    #[arg(long, conflicts_with_all = ["m", "k"])]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: verify::Target,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value = "auto")]
    u: String,
    #[arg(long = "index-set")]
    index_set: Option<String>,
    /// Primitive root of the Legendre prime (theorem13).
    #[arg(long)]
    gamma: Option<u64>,
    #[arg(long)]
    force: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportSubject {
    Tables,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(value_enum)]
    subject: ReportSubject,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Largest m for the Table II rows.
    #[arg(long, default_value_t = 8)]
    m_max: u32,
    /// Towers `m,k` for Table I rows; repeatable.
    #[arg(long = "tower", default_values = ["6,1", "3,2", "2,3"])]
    towers: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_field(args: &FieldArgs) -> CliResult<()> {
    if args.dump_table {
        let mut csv = String::from("degree,poly_hex\n");
        for (degree, poly) in PRIMITIVE_POLYNOMIALS {
            csv.push_str(&format!("{degree},{poly:#x}\n"));
        }
        return emit(None, &csv);
    }
    let t = input::tower(args.m.unwrap(), args.k.unwrap())?;
    let v = json!({
        "schema": 1,
        "n": t.n(),
        "m": t.m(),
        "k": t.k(),
        "polynomial": format!("{:#x}", t.polynomial()),
        "order": t.order(),
        "base_order": t.base_order(),
        "cofactor": t.cofactor(),
        "alpha": format!("{:x}", t.alpha()),
        "beta": format!("{:x}", t.beta()),
    });
    emit(None, &to_json(&v))
}

fn cmd_generate(args: &GenerateArgs) -> CliResult<()> {
    let params = args.family.build()?;
    input::check_period(params.period() as u64, args.force, "generation")?;
    let hs = input::parse_h(&args.h, params.size())?;
    let files: Vec<SeqFile> = hs
        .par_iter()
        .map(|&h| SeqFile::for_member(&params, h).map_err(CliError::from))
        .collect::<CliResult<_>>()?;
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            for f in &files {
                emit(Some(&dir.join(format!("h{}.seq", f.header.h))), &f.to_string())?;
            }
            Ok(())
        }
        None => emit(None, &files.iter().map(SeqFile::to_string).collect::<String>()),
    }
}

fn cmd_correlate(args: &CorrelateArgs) -> CliResult<()> {
    let params = args.family.build()?;
    let hs = input::parse_h(&args.h, params.size())?;
    let n = params.tower().n();
    if n > MAX_SPECTRUM_N && hs.len() as u64 == params.size() && !args.force {
        return Err(CliError::Validation(format!(
            "full spectrum at n = {n} exceeds the n <= {MAX_SPECTRUM_N} guardrail; select members with --h or pass --force"
        )));
    }
    input::check_period(params.period() as u64, args.force, "correlation")?;
    let files: Vec<SeqFile> = hs
        .par_iter()
        .map(|&h| SeqFile::for_member(&params, h).map_err(CliError::from))
        .collect::<CliResult<_>>()?;
    let mut hasher = Sha256::new();
    for f in &files {
        hasher.update(f.to_string().as_bytes());
    }
    let digest: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let seqs: Vec<_> = files.into_iter().map(|f| f.sequence).collect();
    let spectrum = family_spectrum_with_id(&seqs, &params.descriptor())?;
    let text = match args.format {
        Format::Csv => spectrum.to_csv(),
        Format::Json => {
            let counts: serde_json::Map<String, Value> = spectrum
                .value_counts
                .iter()
                .map(|(v, c)| (v.to_string(), json!(c)))
                .collect();
            to_json(&json!({
                "schema": 1,
                "family_id": spectrum.family_id,
                "digest": digest,
                "params": params.descriptor(),
                "members": hs,
                "period": params.period(),
                "r_max": spectrum.r_max,
                "value_counts": counts,
            }))
        }
    };
    emit(args.out.as_deref(), &text)
}

fn cmd_span(args: &SpanArgs) -> CliResult<()> {
    if let Some(path) = &args.file {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let file = SeqFile::parse(&text)?;
        input::check_period(file.sequence.period() as u64, false, "span measurement")?;
        let (span, _) = berlekamp_massey(&file.sequence);
        let text = match args.format {
            Format::Json => to_json(&json!({
                "schema": 1,
                "header": file.header.to_string(),
                "h": file.header.h,
                "period": file.sequence.period(),
                "measured": span,
            })),
            Format::Csv => format!(
                "h,period,measured\n{},{},{span}\n",
                file.header.h,
                file.sequence.period()
            ),
        };
        return emit(args.out.as_deref(), &text);
    }
    let family = FamilyArgs {
        m: args.m.unwrap(),
        k: args.k.unwrap(),
        u: args.u.clone(),
        index_set: args.index_set.clone(),
    };
    let params = family.build()?;
    input::check_period(params.period() as u64, false, "span measurement")?;
    let hs = input::parse_h(&args.h, params.size())?;
    let reports: Vec<SpanReport> = hs
        .par_iter()
        .map(|&h| span_report(&params, h).map_err(CliError::from))
        .collect::<CliResult<_>>()?;
    let text = match args.format {
        Format::Json => to_json(&json!({ "schema": 1, "reports": reports })),
        Format::Csv => {
            let mut csv = format!("{}\n", SpanReport::CSV_HEADER);
            for r in &reports {
                csv.push_str(&r.to_csv_row());
                csv.push('\n');
            }
            csv
        }
    };
    emit(args.out.as_deref(), &text)
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    let opts = verify::VerifyOptions {
        m: args.m,
        k: args.k,
        u: args.u.clone(),
        index_set: args.index_set.clone(),
        gamma: args.gamma,
        force: args.force,
    };
    let report = verify::run(args.target, &opts)?;
    emit(args.out.as_deref(), &to_json(&report.to_json()))?;
    if report.pass() {
        Ok(())
    } else {
        Err(CliError::Failed(
            format!("verification {:?} failed", args.target).to_lowercase(),
        ))
    }
}

/// Largest span over all members, for towers small enough to measure.
fn measured_max(row: &TableOneRow, m: u32, k: u32) -> CliResult<Option<u64>> {
    if row.n > MAX_SPECTRUM_N {
        return Ok(None);
    }
    let spec = match row.family {
        "Small set of Kasami sequences" => IndexSpec::Cosets(vec![1]),
        "Sequences we studied" => input::run_index_spec(m)?,
        _ => return Ok(None),
    };
    let params = input::family(m, k, "auto", &spec)?;
    let spans = (0..params.size())
        .into_par_iter()
        .map(|h| -> CliResult<u64> { Ok(berlekamp_massey(&params.generate_sequence(h)?).0 as u64) })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(spans.into_iter().max())
}

fn cmd_report(args: &ReportArgs) -> CliResult<()> {
    let ReportSubject::Tables = args.subject;
    let mut table_one_rows = Vec::new();
    for tower in &args.towers {
        let bad = || CliError::Validation(format!("--tower expects m,k, got {tower:?}"));
        let (m, k) = tower.split_once(',').ok_or_else(bad)?;
        let (m, k): (u32, u32) = (
            m.trim().parse().map_err(|_| bad())?,
            k.trim().parse().map_err(|_| bad())?,
        );
        for mut row in table_one(m, k)? {
            row.measured = measured_max(&row, m, k)?;
            table_one_rows.push((m, k, row));
        }
    }
    let mut table_two_rows = Vec::new();
    for col in TABLE_TWO {
        for m in 2..=args.m_max.max(2) {
            table_two_rows.push(table_two_row(col.k, m)?);
        }
    }
    let tn: Vec<_> = (2..=args.m_max.max(2)).map(tn_comparison).collect::<Result<_, _>>()?;
    let text = match args.format {
        Format::Json => to_json(&json!({
            "schema": 1,
            "table_one": table_one_rows.iter().map(|(m, k, r)| {
                let mut v = serde_json::to_value(r).expect("serializable");
                v["m"] = json!(m);
                v["k"] = json!(k);
                v
            }).collect::<Vec<_>>(),
            "table_two": table_two_rows,
            "tn_comparison": tn,
        })),
        Format::Csv => {
            let mut csv = String::from("# table one\nm,k,family,n,family_size,relation,value,measured\n");
            for (m, k, r) in &table_one_rows {
                let measured = r.measured.map(|x| x.to_string()).unwrap_or_default();
                csv.push_str(&format!(
                    "{m},{k},{},{},{},{},{},{measured}\n",
                    r.family, r.n, r.family_size, r.relation, r.value
                ));
            }
            csv.push_str("# table two\nk,m,n,L0,L1,matches\n");
            for r in &table_two_rows {
                csv.push_str(&format!("{},{},{},{},{},{}\n", r.k, r.m, r.n, r.l0, r.l1, r.matches));
            }
            csv.push_str("# tn comparison\nm,n,L1,ratio,exceeds\n");
            for c in &tn {
                csv.push_str(&format!("{},{},{},{:.6},{}\n", c.m, c.n, c.l1, c.ratio, c.exceeds));
            }
            csv
        }
    };
    emit(args.out.as_deref(), &text)
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Validation("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    match &cli.command {
        Command::Field(a) => cmd_field(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Correlate(a) => cmd_correlate(a),
        Command::Span(a) => cmd_span(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("seqspan: error kind={} code={}: {message}", e.kind(), e.exit_code());
            ExitCode::from(e.exit_code())
        }
    }
}
