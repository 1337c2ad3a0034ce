//! Command-line front end: `compile`, `tag` and `eval`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use malaab_core::evaluation::score;
use malaab_core::resources::Source;
use malaab_core::{Pipeline, Resources, Sources, TaggedDocument};
use rayon::prelude::*;

use crate::bundle;
use crate::corpus::{self, CorpusError, InputDocument};
use crate::render::{self, Format};

/// Environment variable naming the default bundle.
pub const BUNDLE_ENV: &str = "MALAAB_BUNDLE";

#[derive(Debug, Parser)]
#[command(
    name = "malaab",
    version,
    about = "Recognize Arabic sport-venue names and translate them into French"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Resource text files; any one left out falls back to the shipped copy.
#[derive(Debug, Default, Args)]
pub struct ResourceArgs {
    /// Arabic dictionary
    #[arg(long, value_name = "FILE")]
    dict_ar: Option<PathBuf>,
    /// French dictionary
    #[arg(long, value_name = "FILE")]
    dict_fr: Option<PathBuf>,
    /// Inflection paradigms
    #[arg(long, value_name = "FILE")]
    paradigms: Option<PathBuf>,
    /// Grammar graphs
    #[arg(long, value_name = "FILE")]
    grammar: Option<PathBuf>,
    /// Romanization table
    #[arg(long, value_name = "FILE")]
    translit: Option<PathBuf>,
    /// Month table
    #[arg(long, value_name = "FILE")]
    months: Option<PathBuf>,
}

impl ResourceArgs {
    fn any(&self) -> bool {
        [
            &self.dict_ar,
            &self.dict_fr,
            &self.paradigms,
            &self.grammar,
            &self.translit,
            &self.months,
        ]
        .iter()
        .any(|p| p.is_some())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the resource files and write a compiled bundle
    Compile {
        #[command(flatten)]
        resources: ResourceArgs,
        /// Bundle to write when --out is not given [env: MALAAB_BUNDLE]
        #[arg(long, value_name = "FILE")]
        bundle: Option<PathBuf>,
        /// Bundle to write
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Recognize and translate venue names in documents
    Tag {
        #[command(flatten)]
        resources: ResourceArgs,
        /// Compiled bundle to use [env: MALAAB_BUNDLE]
        #[arg(long, value_name = "FILE")]
        bundle: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Xml)]
        format: Format,
        /// Context tokens on each side in concordance output
        #[arg(long, default_value_t = 5)]
        width: usize,
        /// Write here instead of standard output
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Text files, directories of .txt files, or - for standard input
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Score recognition and translation against a gold file
    Eval {
        #[command(flatten)]
        resources: ResourceArgs,
        /// Compiled bundle to use [env: MALAAB_BUNDLE]
        #[arg(long, value_name = "FILE")]
        bundle: Option<PathBuf>,
        /// Gold annotations (TSV: doc_id, start, end, arabic, french)
        #[arg(long, value_name = "FILE")]
        gold: PathBuf,
        /// Write the JSON report here; otherwise it follows the text report
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Documents named <doc_id>.txt, or directories of them
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

/// A failed command, classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Shipped sources with every given file swapped in.
fn sources(args: &ResourceArgs) -> Result<Sources, CliError> {
    let mut s = Sources::shipped();
    let slots: [(&Option<PathBuf>, &mut Source); 6] = [
        (&args.dict_ar, &mut s.dict_ar),
        (&args.dict_fr, &mut s.dict_fr),
        (&args.paradigms, &mut s.paradigms),
        (&args.grammar, &mut s.grammar),
        (&args.translit, &mut s.translit),
        (&args.months, &mut s.months),
    ];
    for (path, slot) in slots {
        if let Some(path) = path {
            *slot = Source::new(path.display().to_string(), read_text(path)?);
        }
    }
    Ok(s)
}

fn compile(sources: &Sources) -> Result<Resources, CliError> {
    Resources::compile(sources).map_err(|e| CliError::Resource(e.to_string()))
}

/// Resource files win over the environment bundle; an explicit --bundle
/// together with resource files is ambiguous.
fn load(
    args: &ResourceArgs,
    bundle_flag: Option<&Path>,
    env_bundle: Option<&Path>,
) -> Result<Resources, CliError> {
    if args.any() {
        if bundle_flag.is_some() {
            return Err(CliError::Usage(
                "--bundle cannot be combined with resource file flags".into(),
            ));
        }
        return compile(&sources(args)?);
    }
    match bundle_flag.or(env_bundle) {
        Some(path) => {
            let bytes = std::fs::read(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            bundle::decode(&bytes)
                .map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))
        }
        None => Ok(Resources::shipped()),
    }
}

/// Write through a sibling temporary file so a failed run leaves no partial
/// output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, bytes).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("standard output: {e}"))),
    }
}

/// Tag documents in parallel; results come back in input order.
pub fn tag_all(
    pipeline: &Pipeline,
    docs: &[InputDocument],
) -> Result<Vec<TaggedDocument>, CliError> {
    docs.par_iter()
        .map(|d| pipeline.tag(&d.id, &d.text))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Resource(e.to_string()))
}

fn execute(cli: Cli, env_bundle: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Compile {
            resources,
            bundle: bundle_flag,
            out,
        } => {
            let target = out
                .or(bundle_flag)
                .or_else(|| env_bundle.map(Path::to_path_buf))
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "no output: give --out, --bundle or set {BUNDLE_ENV}"
                    ))
                })?;
            let compiled = compile(&sources(&resources)?)?;
            write_atomic(&target, &bundle::encode(&compiled))
        }
        Command::Tag {
            resources,
            bundle: bundle_flag,
            format,
            width,
            out,
            inputs,
        } => {
            let pipeline = Pipeline::new(load(&resources, bundle_flag.as_deref(), env_bundle)?);
            let docs = corpus::read_documents(&inputs)?;
            let tagged = tag_all(&pipeline, &docs)?;
            emit(
                out.as_deref(),
                &render::render(format, &tagged, width),
                stdout,
            )
        }
        Command::Eval {
            resources,
            bundle: bundle_flag,
            gold,
            out,
            inputs,
        } => {
            let pipeline = Pipeline::new(load(&resources, bundle_flag.as_deref(), env_bundle)?);
            let docs = corpus::read_documents(&inputs)?;
            let ids = corpus::unique_ids(&docs)?;
            let gold = corpus::read_gold(&gold)?;
            corpus::check_gold(&gold, &docs).map_err(CliError::Resource)?;
            let predictions: Vec<_> = tag_all(&pipeline, &docs)?
                .iter()
                .flat_map(TaggedDocument::predictions)
                .collect();
            let report =
                score(&predictions, &gold, &ids).map_err(|e| CliError::Resource(e.to_string()))?;
            let json = format!("{}\n", render::report_json(&report));
            match out {
                Some(path) => {
                    write_atomic(&path, json.as_bytes())?;
                    emit(None, &render::report_text(&report), stdout)
                }
                None => emit(None, &(render::report_text(&report) + &json), stdout),
            }
        }
    }
}

/// Run the command line `args` (program name first) and return the exit code.
pub fn run<I, T>(
    args: I,
    env_bundle: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                1
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(cli, env_bundle, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "malaab: {e}");
            e.exit_code()
        }
    }
}
