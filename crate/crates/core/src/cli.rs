//! Command-line entry point. [`run`] takes the arguments and output streams
//! explicitly so it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::corpus_io::{label_counts, parse_corpus, serialize_corpus, Corpus, CorpusError, Mode};
use crate::examplebank::{load_bank, ExampleBank};
use crate::metrics::score;
use crate::schema::{migrate_v1, parse_supersense, wu_palmer, Hierarchy};
use crate::tagger::{leave_one_out, BaselineModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "snacs",
    about = "Adposition supersense annotation tools",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every annotation in a corpus file
    Validate {
        corpus: PathBuf,
        /// Stop at the first violation
        #[arg(long)]
        strict: bool,
    },
    /// Compare predicted annotations with gold ones
    Score {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Look up a supersense in the hierarchy
    #[command(group(ArgGroup::new("what").args(["ancestors", "children", "wu_palmer"])))]
    Query {
        label: String,
        #[arg(long)]
        ancestors: bool,
        #[arg(long)]
        children: bool,
        #[arg(long, value_name = "OTHER")]
        wu_palmer: Option<String>,
    },
    /// Label a corpus with the baseline tagger
    #[command(group(ArgGroup::new("source").args(["model", "train"]).required(true)))]
    Tag {
        #[arg(long)]
        model: Option<PathBuf>,
        /// Example bank file to train on
        #[arg(long)]
        train: Option<PathBuf>,
        /// Also write the trained model here
        #[arg(long, requires = "train")]
        save_model: Option<PathBuf>,
        input: PathBuf,
        output: PathBuf,
    },
    /// Map a first-version label name to the current inventory
    Migrate { name: String },
    /// Write the hierarchy as TSV
    ExportSchema {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Label frequencies in a corpus
    Stats { corpus: PathBuf },
    /// Leave-one-out accuracy of the baseline over an example bank
    Loo {
        /// Bank file; the built-in bank when omitted
        #[arg(long)]
        bank: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Machine)]
        format: Format,
    },
}

struct Failure {
    code: i32,
    text: String,
}

impl Failure {
    fn usage(text: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            text: text.into(),
        }
    }
}

// query takes a bare supersense name; the prefixed form is accepted too
fn bare(name: &str) -> &str {
    name.strip_prefix("p.").unwrap_or(name)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn diag_line(path: &Path, e: &CorpusError) -> String {
    format!(
        "{}:{} {} {}",
        path.display(),
        e.line(),
        e.code(),
        e.message()
    )
}

fn load_corpus(path: &Path) -> Result<Corpus, Failure> {
    let text = read(path)?;
    parse_corpus(&text, Mode::Lenient)
        .map(|(c, _)| c)
        .map_err(|e| Failure::usage(diag_line(path, &e)))
}

/// Runs the command line in `argv` (program name first) and returns the exit
/// status.
pub fn run<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.text);
            f.code
        }
    }
}

fn execute<O: Write>(cmd: Command, out: &mut O) -> Result<i32, Failure> {
    let mut buf = String::new();
    let code = match cmd {
        Command::Validate { corpus, strict } => {
            let text = read(&corpus)?;
            let mode = if strict { Mode::Strict } else { Mode::Lenient };
            match parse_corpus(&text, mode) {
                Ok((_, diags)) => {
                    for d in &diags {
                        buf.push_str(&format!(
                            "{}:{} {} {}\n",
                            corpus.display(),
                            d.line,
                            d.code,
                            d.message
                        ));
                    }
                    if diags.is_empty() {
                        EXIT_OK
                    } else {
                        EXIT_VIOLATIONS
                    }
                }
                Err(e @ CorpusError::Validation { .. }) => {
                    buf.push_str(&diag_line(&corpus, &e));
                    buf.push('\n');
                    EXIT_VIOLATIONS
                }
                Err(e) => {
                    buf.push_str(&diag_line(&corpus, &e));
                    buf.push('\n');
                    EXIT_USAGE
                }
            }
        }
        Command::Score { gold, pred, format } => {
            let g = load_corpus(&gold)?;
            let p = load_corpus(&pred)?;
            let report = score(&g, &p).map_err(|e| Failure::usage(e.to_string()))?;
            buf = match format {
                Format::Table => report.to_table(),
                Format::Machine => report.to_machine(),
            };
            EXIT_OK
        }
        Command::Query {
            label,
            ancestors,
            children,
            wu_palmer: other,
        } => {
            let s = parse_supersense(bare(&label))
                .map_err(|e| Failure::usage(format!("{} {e}", e.code())))?;
            let names =
                |v: &[crate::Supersense]| v.iter().map(|s| s.name()).collect::<Vec<_>>().join(" ");
            if ancestors {
                buf = names(&s.ancestors());
            } else if children {
                buf = names(s.children());
            } else if let Some(o) = other {
                let o = parse_supersense(bare(&o))
                    .map_err(|e| Failure::usage(format!("{} {e}", e.code())))?;
                buf = wu_palmer(s, o).to_string();
            } else {
                buf = format!(
                    "{}\tparent={}\tsubhierarchy={}\tdepth={}\tabstract={}",
                    s,
                    s.parent().map_or("-", |p| p.name()),
                    s.subhierarchy().name(),
                    s.depth(),
                    s.is_abstract()
                );
            }
            buf.push('\n');
            EXIT_OK
        }
        Command::Tag {
            model,
            train,
            save_model,
            input,
            output,
        } => {
            let m = match (model, train) {
                (Some(path), _) => BaselineModel::from_tsv(&read(&path)?)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
                (None, Some(path)) => {
                    let bank = load_bank(&read(&path)?)
                        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
                    BaselineModel::train(&bank).map_err(|e| Failure::usage(e.to_string()))?
                }
                (None, None) => unreachable!("clap requires a model source"),
            };
            if let Some(path) = save_model {
                write_file(&path, &m.to_tsv())?;
            }
            let c = load_corpus(&input)?;
            write_file(&output, &serialize_corpus(&m.tag_corpus(&c)))?;
            EXIT_OK
        }
        Command::Migrate { name } => {
            let r = migrate_v1(&name).map_err(|e| Failure::usage(format!("{} {e}", e.code())))?;
            buf = format!("{r}\n");
            EXIT_OK
        }
        Command::ExportSchema { out: path } => {
            let text = Hierarchy::get().export();
            match path {
                Some(p) => write_file(&p, &text)?,
                None => buf = text,
            }
            EXIT_OK
        }
        Command::Stats { corpus } => {
            let c = load_corpus(&corpus)?;
            for (label, n) in label_counts(&c) {
                buf.push_str(&format!("{n}\t{label}\n"));
            }
            EXIT_OK
        }
        Command::Loo { bank, format } => {
            let owned;
            let b = match bank {
                Some(p) => {
                    owned = load_bank(&read(&p)?)
                        .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
                    &owned
                }
                None => ExampleBank::builtin(),
            };
            let report = leave_one_out(b).map_err(|e| Failure::usage(e.to_string()))?;
            buf = match format {
                Format::Table => report.to_table(),
                Format::Machine => report.to_machine(),
            };
            EXIT_OK
        }
    };
    out.write_all(buf.as_bytes())
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(code)
}
