//! Star ontology DSL: lexer, lenient parser, typed definitions, printer and
//! linker.

pub mod defs;
pub mod lexer;
mod link;
mod print;
pub mod tree;

use std::fmt;
use std::path::{Path, PathBuf};

pub use defs::*;
pub use link::{
    BehaviorQuery, LinkError, NounMatch, ObjectFrameClass, Ontology, RuleDirection, DEFAULT_STRUCTURAL_PARENT,
};
pub use print::pretty_print;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum StarError {
    #[error("unknown element {keyword:?} at {line}:{col}")]
    UnknownElement { keyword: String, line: usize, col: usize },
    #[error("syntax error at {line}:{col}: {message}")]
    UnboundSyntax { message: String, line: usize, col: usize },
}

/// A recoverable irregularity repaired while parsing.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarDocument {
    pub source: String,
    pub definitions: Vec<Definition>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn parse_star(text: &str, source: &str) -> Result<StarDocument, StarError> {
    let toks = lexer::lex(text)?;
    let mut p = tree::TreeParser::new(&toks);
    let elements = p.parse_document()?;
    let mut diagnostics = std::mem::take(&mut p.diagnostics);
    let mut conv = defs::Converter { diagnostics: &mut diagnostics };
    let definitions = elements.iter().map(|e| conv.definition(e)).collect::<Result<Vec<_>, _>>()?;
    Ok(StarDocument { source: source.to_string(), definitions, diagnostics })
}

#[derive(Debug, thiserror::Error)]
pub enum OntologyError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{file}: {error}")]
    Parse { file: String, error: StarError },
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error("manifest {0} lists no files")]
    EmptyManifest(PathBuf),
}

pub const MANIFEST: &str = "manifest.txt";

const BUNDLED: [(&str, &str); 4] = [
    ("upper.star", include_str!("../../ontology/upper.star")),
    ("trophy_suitcase.star", include_str!("../../ontology/trophy_suitcase.star")),
    ("person_lifts_person.star", include_str!("../../ontology/person_lifts_person.star")),
    ("receiving_paying.star", include_str!("../../ontology/receiving_paying.star")),
];

/// Loads every file named by `dir/manifest.txt`, in order, and links them.
/// Without a manifest all `*.star` files are loaded in name order.
pub fn load_ontology_dir(dir: &Path) -> Result<Ontology, OntologyError> {
    let manifest = dir.join(MANIFEST);
    let files: Vec<PathBuf> = if manifest.exists() {
        let text = std::fs::read_to_string(&manifest)
            .map_err(|source| OntologyError::Io { path: manifest.clone(), source })?;
        let files: Vec<PathBuf> =
            text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(|l| dir.join(l)).collect();
        if files.is_empty() {
            return Err(OntologyError::EmptyManifest(manifest));
        }
        files
    } else {
        let rd = std::fs::read_dir(dir).map_err(|source| OntologyError::Io { path: dir.to_path_buf(), source })?;
        let mut v: Vec<PathBuf> = rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "star"))
            .collect();
        v.sort();
        v
    };
    let mut docs = Vec::new();
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|source| OntologyError::Io { path: f.clone(), source })?;
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        docs.push(parse_star(&text, &name).map_err(|error| OntologyError::Parse { file: name.clone(), error })?);
    }
    Ok(Ontology::link(docs)?)
}

impl Ontology {
    /// The ontology shipped with the crate.
    pub fn bundled() -> Ontology {
        let docs =
            BUNDLED.iter().map(|(name, text)| parse_star(text, name).expect("bundled ontology parses")).collect();
        Ontology::link(docs).expect("bundled ontology links")
    }

    pub fn bundled_sources() -> &'static [(&'static str, &'static str)] {
        &BUNDLED
    }
}
