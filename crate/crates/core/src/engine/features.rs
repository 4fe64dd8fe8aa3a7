//! The pronoun feature set gathered from the clause holding a pronoun.

use crate::role::Role;
use crate::snf::{DiscourseContext, EntityArgumentSpecifier, PredicateExpression, PredicateRole, SyntacticRole};
use crate::star::Gender;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Singular,
    Plural,
    Nonspecific,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Voice {
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemporalOrder {
    /// The clause's event precedes the main clause's ("after").
    Preceding,
    /// The clause's event follows the main clause's ("before").
    Following,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypotheticalUsage {
    ExplanationOfCause,
    ExplanationOfEffect,
    ExplanationOfObjective,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PronounFeatureSet {
    pub pronoun_word: String,
    /// `Neuter` for "it"; `Nonspecific` when the pronoun does not say.
    pub gender: Gender,
    pub cardinality: Cardinality,
    pub active_or_passive: Voice,
    pub temporal_order_indicator: TemporalOrder,
    pub hypothetical_usage: HypotheticalUsage,
    pub discourse_context: DiscourseContext,
    pub syntactic_role: SyntacticRole,
    pub semantic_role: Role,
    /// Instance ids of the clause's already resolved non-pronoun arguments,
    /// with their roles.
    pub co_occurring_wrappers: Vec<(String, Role)>,
    pub negation_of_search_key: bool,
    pub predicate_specifier_role: PredicateRole,
    pub search_key_adjective: Option<String>,
    /// Verb of the clause holding the pronoun.
    pub search_key_verb: Option<String>,
    /// First token of the clause, where the token write-back starts.
    pub first_token_index: usize,
}

/// Gender and number carried by a personal pronoun.
pub fn pronoun_agreement(word: &str) -> (Gender, Cardinality) {
    match word.to_lowercase().as_str() {
        "he" | "him" => (Gender::Male, Cardinality::Singular),
        "she" | "her" => (Gender::Female, Cardinality::Singular),
        "it" => (Gender::Neuter, Cardinality::Singular),
        "they" | "them" => (Gender::Nonspecific, Cardinality::Plural),
        "i" | "me" => (Gender::Nonspecific, Cardinality::Singular),
        _ => (Gender::Nonspecific, Cardinality::Nonspecific),
    }
}

pub fn build_pronoun_feature_set(
    pe: &PredicateExpression,
    pronoun: &EntityArgumentSpecifier,
    introducer: Option<&str>,
    co_occurring: Vec<(String, Role)>,
) -> PronounFeatureSet {
    let word = pronoun.noun_phrase().and_then(|np| np.head()).map(|h| h.word.clone()).unwrap_or_default();
    let (gender, cardinality) = pronoun_agreement(&word);
    let main = pe.main_predicate();
    let role = main.map(|m| m.role).unwrap_or(PredicateRole::PredicateVerbTakingEntityArgument);
    let introducer = introducer.map(str::to_lowercase);
    let temporal_order_indicator = match introducer.as_deref() {
        Some("after") => TemporalOrder::Preceding,
        Some("before") => TemporalOrder::Following,
        _ => TemporalOrder::Undetermined,
    };
    let hypothetical_usage = match introducer.as_deref() {
        Some("because") => HypotheticalUsage::ExplanationOfCause,
        _ => HypotheticalUsage::None,
    };
    let adjective = pe
        .attributive_arguments
        .iter()
        .flat_map(|a| &a.attribute_designators)
        .map(|d| d.adjective_word.to_lowercase())
        .next();
    let (search_key_adjective, search_key_verb) = if role == PredicateRole::PredicateToBeAttributive {
        (adjective, None)
    } else {
        (None, main.map(|m| m.main_verb_word.to_lowercase()))
    };
    PronounFeatureSet {
        pronoun_word: word,
        gender,
        cardinality,
        active_or_passive: if pronoun.semantic_role == Role::Actee { Voice::Passive } else { Voice::Active },
        temporal_order_indicator,
        hypothetical_usage,
        discourse_context: main.map(|m| m.discourse_context).unwrap_or(DiscourseContext::DeclarativePresentSimple),
        syntactic_role: pronoun.syntactic_role,
        semantic_role: pronoun.semantic_role,
        co_occurring_wrappers: co_occurring,
        negation_of_search_key: pe.is_negated(),
        predicate_specifier_role: role,
        search_key_adjective,
        search_key_verb,
        first_token_index: pe.first_token_index,
    }
}
