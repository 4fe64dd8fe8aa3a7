//! Annotated rendering, sessions and question answering over the last
//! disambiguation's instance model.

mod http;

use thiserror::Error;

use crate::engine::{run_text, EngineError, EngineOutput};
use crate::frontend::{parse_document, Lexicon, Marker, TokenNode};
use crate::snf::{GrammaticalMood, PredicateExpression, PredicateRole, Role};
use crate::star::Ontology;

pub use http::{router, serve, AppState};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApiError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("no instance model; disambiguate a text first")]
    NoModel,
    #[error("nothing in the instance model answers the question")]
    NoAnswer,
    #[error("not a supported question")]
    NotAQuestion,
}

/// Tokens joined by single spaces, one line per communication unit, with
/// every resolved pronoun rendered `pronoun(antecedent)`.
pub fn render_annotated(tokens: &[TokenNode]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(if t.has(Marker::CommUnitBegin) { '\n' } else { ' ' });
        }
        out.push_str(&t.token_value);
        if let Some(w) = &t.resolved_word {
            out.push('(');
            out.push_str(w);
            out.push(')');
        }
    }
    out
}

pub fn disambiguate(text: &str, ontology: &Ontology) -> Result<(String, EngineOutput), ApiError> {
    let output = run_text(text, ontology)?;
    Ok((render_annotated(&output.tokens), output))
}

/// Retains the last disambiguation for follow-up questions.
#[derive(Debug, Clone, Default)]
pub struct Session {
    pub id: String,
    pub last: Option<EngineOutput>,
}

impl Session {
    pub fn new(id: impl Into<String>) -> Self {
        Session { id: id.into(), last: None }
    }

    pub fn disambiguate(&mut self, text: &str, ontology: &Ontology) -> Result<String, ApiError> {
        let (annotated, output) = disambiguate(text, ontology)?;
        self.last = Some(output);
        Ok(annotated)
    }

    pub fn ask(&self, question: &str, ontology: &Ontology) -> Result<String, ApiError> {
        answer_question(question, self, ontology)
    }
}

/// Answers "What/Who is/was too ADJ?" from causal-feature values and
/// "Who VERB NP?" from the actor of the matching clause.
pub fn answer_question(question: &str, session: &Session, ontology: &Ontology) -> Result<String, ApiError> {
    let output = session.last.as_ref().ok_or(ApiError::NoModel)?;
    let doc = parse_document(question, &Lexicon::from_ontology(ontology)).map_err(EngineError::from)?;
    let pe = doc
        .sentences()
        .filter_map(|u| u.sentence.as_ref()?.predicate_expressions.first())
        .find(|pe| pe.grammatical_mood == GrammaticalMood::Interrogative)
        .ok_or(ApiError::NotAQuestion)?;
    let main = pe.main_predicate().ok_or(ApiError::NotAQuestion)?;
    match main.role {
        PredicateRole::PredicateToBeAttributive => {
            let adjective = pe
                .attributive_arguments
                .iter()
                .flat_map(|a| &a.attribute_designators)
                .map(|d| d.adjective_word.to_lowercase())
                .next()
                .ok_or(ApiError::NotAQuestion)?;
            let word = causal_holder(output, ontology, &adjective).ok_or(ApiError::NoAnswer)?;
            Ok(format!("{} {} too {adjective}.", noun_phrase(&word), main.main_verb_word.to_lowercase()))
        }
        PredicateRole::PredicateVerbTakingEntityArgument => answer_verb(output, pe, &main.main_verb_word),
        _ => Err(ApiError::NotAQuestion),
    }
}

fn noun_phrase(word: &str) -> String {
    if word.chars().next().is_some_and(char::is_uppercase) {
        word.to_string()
    } else {
        format!("The {word}")
    }
}

/// Content word of the most recent instance copy, at any timepoint, that
/// carries a causal-feature value whose dictionary lists the adjective.
fn causal_holder(output: &EngineOutput, ontology: &Ontology, adjective: &str) -> Option<String> {
    let mut copies =
        output.model.contexts.iter().rev().flat_map(|c| c.timepoints.values().rev()).flat_map(|sp| &sp.components);
    copies.find_map(|inst| {
        inst.attributes.iter().find_map(|a| {
            let (_, def) = ontology.attribute_type(&inst.reference_class, &a.attribute_type)?;
            let hit = def.optional_causal_feature && def.value_for_word(adjective).is_some_and(|v| v.name == a.value);
            hit.then(|| inst.content_string.clone())
        })
    })
}

fn answer_verb(output: &EngineOutput, pe: &PredicateExpression, verb: &str) -> Result<String, ApiError> {
    let tokens = &output.tokens;
    let at = tokens
        .iter()
        .position(|t| t.index > 0 && t.token_value.eq_ignore_ascii_case(verb))
        .ok_or(ApiError::NoAnswer)?;
    let subject = &tokens[at - 1];
    let word = match &subject.resolved_word {
        Some(w) => w.clone(),
        None if subject.token_value.chars().all(char::is_alphabetic) => subject.token_value.clone(),
        None => return Err(ApiError::NoAnswer),
    };
    let object: Vec<String> = pe
        .entity_arguments
        .iter()
        .filter(|a| a.semantic_role != Role::Actor)
        .filter_map(|a| a.noun_phrase().map(|np| np.text()))
        .collect();
    let mut answer = format!("{} {}", noun_phrase(&word), verb.to_lowercase());
    for o in object {
        answer.push(' ');
        answer.push_str(&o);
    }
    answer.push('.');
    Ok(answer)
}
