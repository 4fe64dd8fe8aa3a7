//! Text to Semantic Normal Form: tokenizer, restricted English grammar,
//! bracketed-tree reader and the syntax-tree adapter.

mod adapter;
mod bracketed;
mod grammar;
mod lexicon;
mod tokens;

use thiserror::Error;

use crate::snf::{CommUnitKind, CommunicationUnit};

pub use adapter::tree_to_snf;
pub use bracketed::{bracketed_tree_to_snf, read_bracketed};
pub use grammar::{
    parse_sentence, AdverbialClause, MeaningUnit, NounPhraseNode, PredicateKind, PredicatePhrase, PrepositionalPhrase,
    SyntaxTree,
};
pub use lexicon::{Lexicon, WordClass};
pub use tokens::{dump_tokens, is_email, is_url, segment_communication_units, tokenize, Marker, TokenNode};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrontendError {
    #[error("unsupported construction at token {index} ({token:?})")]
    UnsupportedConstruction { index: usize, token: String },
    #[error("unsupported constituent label {0:?}")]
    UnsupportedLabel(String),
    #[error("bracketed tree syntax error at byte {offset}: {message}")]
    BracketSyntax { message: String, offset: usize },
    #[error("communication unit of kind {0} is not a sentence")]
    NotASentence(CommUnitKind),
}

/// Tokens and classified units of a text, with one root PE per sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub tokens: Vec<TokenNode>,
    pub units: Vec<CommunicationUnit>,
}

impl Document {
    pub fn sentences(&self) -> impl Iterator<Item = &CommunicationUnit> {
        self.units.iter().filter(|u| u.sentence.is_some())
    }
}

/// Tokenizes, segments and parses a text. Fails on the first sentence
/// outside the supported grammar.
pub fn parse_document(text: &str, lex: &Lexicon) -> Result<Document, FrontendError> {
    let tokens = tokenize(text);
    let mut units = segment_communication_units(&tokens);
    for unit in &mut units {
        if unit.kind != CommUnitKind::Sentence {
            continue;
        }
        let tree = parse_sentence(unit, &tokens, lex)?;
        let pe = tree_to_snf(&tree);
        if let Some(s) = unit.sentence.as_mut() {
            s.predicate_expressions = vec![pe];
        }
    }
    Ok(Document { tokens, units })
}
