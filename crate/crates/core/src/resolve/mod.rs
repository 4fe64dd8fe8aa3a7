//! Pronoun resolution: within-unit possessor, exploratory search of the
//! spanning stack keyed by adjective or verb, generate-and-test, then a
//! gender and number fallback.

use thiserror::Error;

use crate::engine::{
    Cardinality, ObjectInstanceSemanticWrapper, PronounFeatureSet, SpanningInfoStack, SpanningInformation,
    TemporalOrder,
};
use crate::frontend::{Marker, TokenNode};
use crate::model::{InstanceModel, ModelError, ObjectInstance};
use crate::reasoning::{generate_and_test, ReasoningError};
use crate::snf::SyntacticRole;
use crate::star::{BehaviorClassDef, BindingMode, Gender, Ontology, PopulatedObjectClassDef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mechanism {
    WithinUnit,
    AdjectiveCausal,
    VerbNestedBehavior,
    GenerateAndTest,
    GenderNumberFallback,
}

impl Mechanism {
    pub fn as_str(self) -> &'static str {
        match self {
            Mechanism::WithinUnit => "WithinUnit",
            Mechanism::AdjectiveCausal => "AdjectiveCausal",
            Mechanism::VerbNestedBehavior => "VerbNestedBehavior",
            Mechanism::GenerateAndTest => "GenerateAndTest",
            Mechanism::GenderNumberFallback => "GenderNumberFallback",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionResult {
    pub referent_instance: String,
    pub referent_class: String,
    pub antecedent_word: String,
    pub pronoun_token_index: usize,
    pub causal_feature: Option<(String, String)>,
    pub mechanism: Mechanism,
    pub matched_behavior: Option<String>,
    pub matched_nested_behavior: Option<String>,
    pub probability: f64,
    /// Resolved against the following clause rather than the stack.
    pub via_lookahead: bool,
    /// The fallback stage found several equally ranked candidates.
    pub ambiguous_fallback: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("no antecedent found")]
    NotFound,
    #[error("required item not found: {0}")]
    NotFoundRequiredItem(String),
    #[error(transparent)]
    Reasoning(#[from] ReasoningError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A candidate that passed one of the matchers.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchRecord {
    pub wrapper: ObjectInstanceSemanticWrapper,
    pub mechanism: Mechanism,
    pub causal_feature: Option<(String, String)>,
    pub behavior: Option<String>,
    pub nested_behavior: Option<String>,
    pub probability: f64,
}

/// Mutable state resolution writes into.
pub struct ResolveEnv<'a> {
    pub ontology: &'a Ontology,
    pub model: &'a mut InstanceModel,
    pub tokens: &'a mut [TokenNode],
    /// Possessor of the clause's subject, the only within-unit candidate.
    pub within_unit: Option<ObjectInstanceSemanticWrapper>,
}

/// Whether an instance's class gender and multiplicity admit the pronoun.
pub fn agrees(ontology: &Ontology, instance: &ObjectInstance, features: &PronounFeatureSet) -> bool {
    let number_ok = match features.cardinality {
        Cardinality::Plural => instance.multiple,
        Cardinality::Singular => !instance.multiple,
        Cardinality::Nonspecific => true,
    };
    let class_gender = ontology.gender(&instance.reference_class);
    let gender_ok = match features.gender {
        Gender::Nonspecific => true,
        Gender::Neuter => !matches!(class_gender, Gender::Male | Gender::Female),
        g => class_gender == g || class_gender == Gender::Nonspecific,
    };
    number_ok && gender_ok
}

fn section(b: &BehaviorClassDef, order: TemporalOrder) -> Vec<&PopulatedObjectClassDef> {
    match order {
        TemporalOrder::Following => b.post_populated().collect(),
        _ => b.prior_populated().collect(),
    }
}

/// Causal feature on the candidate's role in one of the main verb's
/// behavior classes whose value dictionary holds the adjective.
pub fn match_adjective_causal_feature(
    ontology: &Ontology,
    model: &InstanceModel,
    candidate: &ObjectInstanceSemanticWrapper,
    features: &PronounFeatureSet,
    info: &SpanningInformation,
) -> Option<MatchRecord> {
    let adjective = features.search_key_adjective.as_deref()?;
    let inst = model.find(&candidate.instance_id)?;
    for name in info.behavior_names() {
        let b = ontology.behavior(name)?;
        for p in section(b, features.temporal_order_indicator) {
            if p.role() != candidate.semantic_role || !ontology.is_a(&inst.reference_class, &p.object_class) {
                continue;
            }
            for binding in &p.bindings {
                let BindingMode::Val(v) = &binding.mode else { continue };
                let Some((_, def)) = ontology.attribute_type(&inst.reference_class, &binding.attribute_type) else {
                    continue;
                };
                let hit =
                    def.optional_causal_feature && def.value_for_word(adjective).is_some_and(|val| val.name == *v);
                if hit {
                    return Some(MatchRecord {
                        wrapper: candidate.clone(),
                        mechanism: Mechanism::AdjectiveCausal,
                        causal_feature: Some((binding.attribute_type.clone(), v.clone())),
                        behavior: Some(b.name.clone()),
                        nested_behavior: None,
                        probability: b.probability_or_default(),
                    });
                }
            }
        }
    }
    None
}

/// A main-verb behavior class whose nested reference names a behavior of
/// the pronoun clause's verb, with the reference's identity symbol tied to
/// the role the candidate filled.
pub fn match_verb_nested_behavior(
    ontology: &Ontology,
    model: &InstanceModel,
    candidate: &ObjectInstanceSemanticWrapper,
    features: &PronounFeatureSet,
    info: &SpanningInformation,
) -> Option<MatchRecord> {
    let verb = features.search_key_verb.as_deref()?;
    let current: Vec<&str> = ontology.verb_behaviors(verb).iter().map(|b| b.name.as_str()).collect();
    let inst = model.find(&candidate.instance_id)?;
    for name in info.behavior_names() {
        let main = ontology.behavior(name)?;
        let reference = match features.temporal_order_indicator {
            TemporalOrder::Following => main.consequent_reference(),
            _ => main.nested_reference(),
        };
        let Some(r) = reference else { continue };
        if !current.contains(&r.behavior.as_str()) {
            continue;
        }
        let Some(sym) = r.parameter(features.semantic_role).and_then(|p| p.symbol.as_deref()) else { continue };
        if main.identity_role(sym) != Some(candidate.semantic_role) {
            continue;
        }
        let class_ok = main
            .participant(candidate.semantic_role)
            .is_some_and(|p| ontology.is_a(&inst.reference_class, &p.object_class));
        if !class_ok {
            continue;
        }
        let probability =
            r.probability.unwrap_or_else(|| ontology.behavior(&r.behavior).map_or(1.0, |b| b.probability_or_default()));
        return Some(MatchRecord {
            wrapper: candidate.clone(),
            mechanism: Mechanism::VerbNestedBehavior,
            causal_feature: None,
            behavior: Some(main.name.clone()),
            nested_behavior: Some(r.behavior.clone()),
            probability,
        });
    }
    None
}

/// Highest probability wins; the first candidate wins ties.
pub fn select(matches: Vec<MatchRecord>) -> Option<MatchRecord> {
    let mut best: Option<MatchRecord> = None;
    for m in matches {
        if best.as_ref().is_none_or(|b| m.probability > b.probability) {
            best = Some(m);
        }
    }
    best
}

/// Tests every candidate of one spanning info: adjective and verb keys
/// first, generate-and-test only when neither matched anything.
pub fn exploratory_search_one_info(
    ontology: &Ontology,
    model: &InstanceModel,
    info: &SpanningInformation,
    features: &PronounFeatureSet,
) -> Result<MatchRecord, ResolveError> {
    let candidates = info.candidates();
    let mut matches = Vec::new();
    for c in &candidates {
        let m = match_adjective_causal_feature(ontology, model, c, features, info)
            .or_else(|| match_verb_nested_behavior(ontology, model, c, features, info));
        matches.extend(m);
    }
    if matches.is_empty() {
        for c in &candidates {
            match generate_and_test(ontology, model, features, c, info) {
                Ok(r) if r.matched => matches.push(MatchRecord {
                    wrapper: (*c).clone(),
                    mechanism: Mechanism::GenerateAndTest,
                    causal_feature: None,
                    behavior: r.forward_rule,
                    nested_behavior: r.nested_behavior,
                    probability: r.probability,
                }),
                Ok(_) | Err(ReasoningError::NotFound) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    select(matches).ok_or(ResolveError::NotFound)
}

/// Walks the stack newest to oldest; the first info with a match wins.
pub fn exploratory_search_stack(
    ontology: &Ontology,
    model: &InstanceModel,
    stack: &mut SpanningInfoStack,
    features: &PronounFeatureSet,
) -> Result<MatchRecord, ResolveError> {
    stack.reset_current_to_top();
    let mut result = Err(ResolveError::NotFound);
    while let Some(info) = stack.current() {
        match exploratory_search_one_info(ontology, model, info, features) {
            Err(ResolveError::NotFound) => continue,
            other => {
                result = other;
                break;
            }
        }
    }
    stack.reset_current_to_top();
    result
}

/// Agreeing wrappers ranked by Actor role, then recency, then document
/// order. Returns the winner and whether its rank was shared.
pub fn gender_number_fallback(
    ontology: &Ontology,
    model: &InstanceModel,
    stack: &SpanningInfoStack,
    features: &PronounFeatureSet,
) -> Option<(ObjectInstanceSemanticWrapper, bool)> {
    let mut ranked: Vec<((bool, usize), &ObjectInstanceSemanticWrapper)> = Vec::new();
    for (depth, info) in stack.iter().enumerate() {
        for w in &info.wrappers {
            let ok = model.find(&w.instance_id).is_some_and(|i| agrees(ontology, i, features));
            if ok && !ranked.iter().any(|(_, r)| r.instance_id == w.instance_id) {
                ranked.push(((w.semantic_role != crate::role::Role::Actor, depth), w));
            }
        }
    }
    ranked.sort_by_key(|(k, _)| *k);
    let (key, first) = ranked.first()?;
    let ambiguous = ranked.get(1).is_some_and(|(k, _)| k == key);
    Some(((*first).clone(), ambiguous))
}

/// Marks the first unresolved token equal to the pronoun at or after the
/// clause start, stopping at the unit end.
pub fn write_resolution_to_tokens(
    tokens: &mut [TokenNode],
    features: &PronounFeatureSet,
    antecedent_word: &str,
) -> Result<usize, ResolveError> {
    if antecedent_word.is_empty() {
        return Err(ResolveError::NotFoundRequiredItem("antecedent word".into()));
    }
    for t in tokens.iter_mut().skip(features.first_token_index) {
        if t.resolved_word.is_none() && t.token_value.eq_ignore_ascii_case(&features.pronoun_word) {
            t.resolved_word = Some(antecedent_word.to_string());
            return Ok(t.index);
        }
        if t.has(Marker::CommUnitEnd) {
            break;
        }
    }
    Err(ResolveError::NotFoundRequiredItem(format!("pronoun token {:?}", features.pronoun_word)))
}

fn is_post_verb_object(features: &PronounFeatureSet) -> bool {
    matches!(features.syntactic_role, SyntacticRole::DirectObject | SyntacticRole::IndirectObject)
}

/// Runs the stages in order and, on success, writes the causal feature
/// into the model and the antecedent into the token list.
pub fn resolve_pronoun(
    stack: &mut SpanningInfoStack,
    features: &PronounFeatureSet,
    env: &mut ResolveEnv<'_>,
) -> Result<ResolutionResult, ResolveError> {
    let ontology = env.ontology;
    let within = env
        .within_unit
        .as_ref()
        .filter(|_| is_post_verb_object(features))
        .filter(|w| env.model.find(&w.instance_id).is_some_and(|i| agrees(ontology, i, features)));
    let mut ambiguous = false;
    let record = if let Some(w) = within {
        MatchRecord {
            wrapper: w.clone(),
            mechanism: Mechanism::WithinUnit,
            causal_feature: None,
            behavior: None,
            nested_behavior: None,
            probability: 1.0,
        }
    } else {
        match exploratory_search_stack(ontology, env.model, stack, features) {
            Ok(m) => m,
            Err(ResolveError::NotFound) => {
                let (w, amb) =
                    gender_number_fallback(ontology, env.model, stack, features).ok_or(ResolveError::NotFound)?;
                ambiguous = amb;
                MatchRecord {
                    wrapper: w,
                    mechanism: Mechanism::GenderNumberFallback,
                    causal_feature: None,
                    behavior: None,
                    nested_behavior: None,
                    probability: 1.0,
                }
            }
            Err(e) => return Err(e),
        }
    };

    let id = record.wrapper.instance_id.clone();
    if let Some((ty, value)) = &record.causal_feature {
        env.model.set_attribute(ontology, &id, ty, value)?;
    }
    let inst = env.model.find(&id).ok_or_else(|| ResolveError::Model(ModelError::UnknownInstance(id.clone())))?;
    let (class, word) = (inst.reference_class.clone(), inst.content_string.clone());
    let index = write_resolution_to_tokens(env.tokens, features, &word)?;
    Ok(ResolutionResult {
        referent_instance: id,
        referent_class: class,
        antecedent_word: word,
        pronoun_token_index: index,
        causal_feature: record.causal_feature,
        mechanism: record.mechanism,
        matched_behavior: record.behavior,
        matched_nested_behavior: record.nested_behavior,
        probability: record.probability,
        via_lookahead: false,
        ambiguous_fallback: ambiguous,
    })
}
