use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ross_core::api::{serve, ApiError, Session};
use ross_core::model::export_xml;
use ross_core::{load_ontology_dir, Ontology};

const EXIT_INPUT: u8 = 1;
const EXIT_ONTOLOGY: u8 = 2;

#[derive(Parser)]
#[command(name = "ross", version, about = "Ontology-driven pronoun resolution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OntologyArg {
    /// Directory of .star files; the bundled ontology when omitted.
    #[arg(long, value_name = "DIR")]
    ontology: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the text with each resolved pronoun annotated.
    Disambiguate {
        #[command(flatten)]
        ontology: OntologyArg,
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        text: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Write the instance model as XML.
        #[arg(long, value_name = "OUT")]
        emit_model: Option<PathBuf>,
        /// Print the engine trace to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Disambiguate a text, then answer a question about it.
    Ask {
        #[command(flatten)]
        ontology: OntologyArg,
        /// The question.
        #[arg(long)]
        text: String,
        /// Text whose instance model answers the question.
        #[arg(long)]
        after: String,
    },
    /// Read lines from stdin: questions are answered, other lines disambiguated.
    Interactive {
        #[command(flatten)]
        ontology: OntologyArg,
    },
    /// Serve the form-encoded task endpoints.
    Serve {
        #[command(flatten)]
        ontology: OntologyArg,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
    /// Load, link and report on an ontology directory.
    CheckOntology { dir: PathBuf },
}

fn load(arg: &OntologyArg) -> Result<Ontology, ExitCode> {
    match &arg.ontology {
        None => Ok(Ontology::bundled()),
        Some(dir) => load_ontology_dir(dir).map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ONTOLOGY)
        }),
    }
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn check_ontology(dir: &Path) -> Result<(), ExitCode> {
    match load_ontology_dir(dir) {
        Ok(o) => {
            for (source, d) in o.diagnostics() {
                println!("{source}:{d}");
            }
            println!("ok: {} classes, {} behavior classes", o.classes().len(), o.behaviors().len());
            Ok(())
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(ExitCode::from(EXIT_ONTOLOGY))
        }
    }
}

fn run(cli: Cli) -> Result<(), ExitCode> {
    match cli.command {
        Command::Disambiguate { ontology, text, file, emit_model, trace } => {
            let ontology = load(&ontology)?;
            let text = match (text, file) {
                (Some(t), _) => t,
                (None, Some(f)) => std::fs::read_to_string(&f).map_err(input_error)?,
                (None, None) => return Err(input_error("one of --text or --file is required")),
            };
            let (annotated, output) = ross_core::disambiguate(&text, &ontology).map_err(input_error)?;
            if trace {
                for line in &output.trace {
                    eprintln!("{line}");
                }
            }
            for u in &output.unresolved {
                eprintln!("warning: pronoun {:?} left unresolved", u.word);
            }
            if let Some(path) = emit_model {
                std::fs::write(&path, export_xml(&output.model)).map_err(input_error)?;
            }
            println!("{annotated}");
        }
        Command::Ask { ontology, text, after } => {
            let ontology = load(&ontology)?;
            let mut session = Session::new("cli");
            session.disambiguate(&after, &ontology).map_err(input_error)?;
            println!("{}", session.ask(&text, &ontology).map_err(input_error)?);
        }
        Command::Interactive { ontology } => {
            let ontology = load(&ontology)?;
            let mut session = Session::new("interactive");
            for line in std::io::stdin().lock().lines() {
                let line = line.map_err(input_error)?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let reply: Result<String, ApiError> = if line.ends_with('?') {
                    session.ask(line, &ontology)
                } else {
                    session.disambiguate(line, &ontology)
                };
                match reply {
                    Ok(r) => println!("{r}"),
                    Err(e) => println!("error: {e}"),
                }
            }
        }
        Command::Serve { ontology, port } => {
            let ontology = load(&ontology)?;
            let rt = tokio::runtime::Runtime::new().map_err(input_error)?;
            rt.block_on(serve(port, ontology)).map_err(input_error)?;
        }
        Command::CheckOntology { dir } => check_ontology(&dir)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
