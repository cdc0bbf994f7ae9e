//! The `posetcube` command line.
//!
//! Exit status: 0 on success, 1 on a domain failure (bad input file,
//! infeasible `embed`, invalid `verify`, broken invariant), 2 on a usage
//! error.

pub mod format;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compression::{compress_general, compress_two_layer};
use crate::embedding::{verify_induced, Embedding, EmbeddingDocument, ViolationKind};
use crate::poset::{named_poset, NamedPoset, Poset};
use crate::search::{self, find_embedding, h_star, SurveyEntry};

pub use format::{parse_poset_file, FormatError, PosetDocument};

#[derive(Debug, Parser)]
#[command(name = "posetcube", version, about = "Optimal embeddings of finite posets into hypercubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact hypercube-height, with a witness
    Hstar(PosetSource),
    /// Exact hypercube-width, with a witness
    Wstar(PosetSource),
    /// Search for an induced copy inside sets of size <= H over [W]
    Embed {
        file: PathBuf,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
    },
    /// Shrink an induced copy to width at most |P|
    Compress {
        poset: PathBuf,
        embedding: PathBuf,
        /// Use the two-layered rewrite
        #[arg(long)]
        two_layer: bool,
        /// Also print the decomposition used
        #[arg(long)]
        trace: bool,
    },
    /// Check that an embedding is an induced copy
    Verify { poset: PathBuf, embedding: PathBuf },
    /// Exact (h*, w*) for every poset up to the given size
    Survey {
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SurveyFormat::Table)]
        format: SurveyFormat,
    },
    /// List the named posets
    Catalog,
}

#[derive(Debug, Args)]
struct PosetSource {
    /// Poset file (text or JSON)
    #[arg(conflicts_with = "named", required_unless_present = "named")]
    file: Option<PathBuf>,
    /// Catalog poset instead of a file
    #[arg(long)]
    named: Option<String>,
    /// Size parameter for --named
    #[arg(long, requires = "named")]
    param: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SurveyFormat {
    Table,
    Jsonl,
}

/// A failure with its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn domain(message: impl ToString) -> Self {
        Failure {
            code: 1,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line with `argv[0]` as the program name. Normal output
/// goes to `out`, diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Hstar(src) => cmd_hstar(&src, out),
        Command::Wstar(src) => cmd_wstar(&src, out),
        Command::Embed {
            file,
            width,
            height,
        } => cmd_embed(&file, width, height, out),
        Command::Compress {
            poset,
            embedding,
            two_layer,
            trace,
        } => cmd_compress(&poset, &embedding, two_layer, trace, out),
        Command::Verify { poset, embedding } => cmd_verify(&poset, &embedding, out),
        Command::Survey {
            max_size,
            output,
            format,
        } => cmd_survey(max_size, output.as_deref(), format, out),
        Command::Catalog => cmd_catalog(out),
    }
}

fn io_fail(e: io::Error) -> Failure {
    Failure::domain(format!("write failed: {e}"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let doc = parse_poset_file(&read(path)?)
        .map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    doc.to_poset().map_err(Failure::domain)
}

fn load_embedding(poset: &Poset, path: &Path) -> Result<Embedding, Failure> {
    let doc: EmbeddingDocument = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    Embedding::from_document(poset, &doc).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn resolve(src: &PosetSource) -> Result<Poset, Failure> {
    match (&src.file, &src.named) {
        (Some(path), None) => load_poset(path),
        (None, Some(name)) => {
            let name: NamedPoset = name.parse().map_err(|e| Failure {
                code: 2,
                message: format!("{e}"),
            })?;
            named_poset(name, src.param).map_err(|e| Failure {
                code: 2,
                message: e.to_string(),
            })
        }
        _ => Err(Failure {
            code: 2,
            message: "give either a poset file or --named".into(),
        }),
    }
}

fn embedding_json(poset: &Poset, emb: &Embedding) -> String {
    serde_json::to_string(&emb.to_document(poset)).expect("embedding serializes")
}

fn cmd_hstar(src: &PosetSource, out: &mut dyn Write) -> CmdResult {
    let poset = resolve(src)?;
    let (h, witness) = h_star(&poset).map_err(Failure::domain)?;
    writeln!(out, "h* = {h}").map_err(io_fail)?;
    writeln!(out, "{}", embedding_json(&poset, &witness)).map_err(io_fail)?;
    Ok(0)
}

fn cmd_wstar(src: &PosetSource, out: &mut dyn Write) -> CmdResult {
    let poset = resolve(src)?;
    let (w, witness) = search::w_star(&poset).map_err(Failure::domain)?;
    writeln!(out, "w* = {w}").map_err(io_fail)?;
    writeln!(out, "{}", embedding_json(&poset, &witness)).map_err(io_fail)?;
    Ok(0)
}

fn cmd_embed(file: &Path, width: usize, height: usize, out: &mut dyn Write) -> CmdResult {
    let poset = load_poset(file)?;
    match find_embedding(&poset, width, height).map_err(Failure::domain)? {
        Some(emb) => {
            writeln!(out, "{}", embedding_json(&poset, &emb)).map_err(io_fail)?;
            Ok(0)
        }
        None => {
            writeln!(out, "none").map_err(io_fail)?;
            Ok(1)
        }
    }
}

fn cmd_compress(
    poset_path: &Path,
    emb_path: &Path,
    two_layer: bool,
    with_trace: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let poset = load_poset(poset_path)?;
    let emb = load_embedding(&poset, emb_path)?;
    let result = if two_layer {
        compress_two_layer(&poset, &emb)
    } else {
        compress_general(&poset, &emb)
    };
    let (compressed, trace) = result.map_err(Failure::domain)?;
    writeln!(out, "{}", embedding_json(&poset, &compressed)).map_err(io_fail)?;
    if with_trace {
        let doc = trace.to_document(&poset);
        writeln!(out, "{}", serde_json::to_string(&doc).expect("trace serializes")).map_err(io_fail)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct ViolationRecord<'a> {
    lower: &'a str,
    upper: &'a str,
    reason: ViolationKind,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    valid: bool,
    height: usize,
    width: usize,
    violations: Vec<ViolationRecord<'a>>,
}

fn cmd_verify(poset_path: &Path, emb_path: &Path, out: &mut dyn Write) -> CmdResult {
    let poset = load_poset(poset_path)?;
    let emb = load_embedding(&poset, emb_path)?;
    let report = verify_induced(&poset, &emb).map_err(Failure::domain)?;
    let record = ReportRecord {
        valid: report.valid,
        height: report.height,
        width: report.width,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationRecord {
                lower: poset.name(v.lower),
                upper: poset.name(v.upper),
                reason: v.kind,
            })
            .collect(),
    };
    writeln!(out, "{}", serde_json::to_string(&record).expect("report serializes")).map_err(io_fail)?;
    Ok(if report.valid { 0 } else { 1 })
}

fn flags(e: &SurveyEntry) -> String {
    let mut s = String::new();
    if e.attains_height_bound {
        s.push('H');
    }
    if e.attains_width_bound {
        s.push('W');
    }
    if s.is_empty() {
        s.push('-');
    }
    s
}

fn cmd_survey(max_size: usize, output: Option<&Path>, format: SurveyFormat, out: &mut dyn Write) -> CmdResult {
    if max_size == 0 || max_size > search::MAX_SURVEY_SIZE {
        return Err(Failure {
            code: 2,
            message: format!(
                "--max-size must be between 1 and {}",
                search::MAX_SURVEY_SIZE
            ),
        });
    }
    let mut file;
    let sink: &mut dyn Write = match output {
        Some(path) => {
            file = fs::File::create(path)
                .map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
            &mut file
        }
        None => out,
    };
    if format == SurveyFormat::Table {
        writeln!(sink, "{:<8} {:>4} {:>3} {:>3} {:<5} covers", "id", "size", "h*", "w*", "flags").map_err(io_fail)?;
    }
    let mut scatter: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut total = 0;
    for k in 1..=max_size {
        let entries = search::survey_size(k).map_err(Failure::domain)?;
        for e in &entries {
            *scatter.entry((e.h_star, e.w_star)).or_default() += 1;
            total += 1;
            match format {
                SurveyFormat::Jsonl => {
                    let line = serde_json::to_string(&e.to_record()).expect("record serializes");
                    writeln!(sink, "{line}").map_err(io_fail)?;
                }
                SurveyFormat::Table => {
                    let covers: Vec<String> = e
                        .poset
                        .cover_pairs()
                        .into_iter()
                        .map(|(a, b)| format!("{}<{}", e.poset.name(a), e.poset.name(b)))
                        .collect();
                    let row = format!(
                        "{:<8} {:>4} {:>3} {:>3} {:<5} {}",
                        e.id,
                        e.size,
                        e.h_star,
                        e.w_star,
                        flags(e),
                        covers.join(" ")
                    );
                    writeln!(sink, "{}", row.trim_end()).map_err(io_fail)?;
                }
            }
        }
        sink.flush().map_err(io_fail)?;
    }
    if format == SurveyFormat::Table {
        writeln!(sink, "\n{total} posets; (h*, w*) counts:").map_err(io_fail)?;
        for ((h, w), n) in &scatter {
            writeln!(sink, "  ({h}, {w}): {n}").map_err(io_fail)?;
        }
    }
    Ok(0)
}

fn cmd_catalog(out: &mut dyn Write) -> CmdResult {
    for p in NamedPoset::ALL {
        let param = if p.takes_parameter() { " --param K" } else { "" };
        writeln!(out, "{:<32} {}", format!("{}{param}", p.key()), p.description()).map_err(io_fail)?;
    }
    Ok(0)
}
