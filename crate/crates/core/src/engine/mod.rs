//! The discourse engine: walks every communication unit, instantiates
//! entities, applies behavior classes to the master model and hands
//! pronouns to resolution.

mod features;
mod spanning;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::frontend::{parse_document, Document, FrontendError, Lexicon, TokenNode};
use crate::model::{apply_behavior_class, AppliedRule, InstanceModel, ModelError, RoleBindings};
use crate::resolve::{resolve_pronoun, ResolutionResult, ResolveEnv, ResolveError};
use crate::role::Role;
use crate::snf::{
    flatten_pe_order, CommUnitKind, EntityArgumentSpecifier, GrammaticalMood, HeadKind, PredicateExpression,
    PredicateRole, SyntacticRole,
};
use crate::star::{BehaviorQuery, Ontology, DEFAULT_STRUCTURAL_PARENT};

pub use features::{
    build_pronoun_feature_set, pronoun_agreement, Cardinality, HypotheticalUsage, PronounFeatureSet, TemporalOrder,
    Voice,
};
pub use spanning::{
    ObjectInstanceSemanticWrapper, SpanningInfoStack, SpanningInformation, STACK_HIGH_WATER, STACK_LOW_WATER,
};

/// Class given to proper nouns the ontology does not list.
pub const PROPER_NOUN_CLASS: &str = "PersonObjectFrameClass";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// A pronoun no stage could resolve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedPronoun {
    pub word: String,
    pub first_token_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineOutput {
    pub tokens: Vec<TokenNode>,
    pub model: InstanceModel,
    pub resolutions: Vec<ResolutionResult>,
    pub unresolved: Vec<UnresolvedPronoun>,
    /// Token span and kind of every non-sentence unit.
    pub skipped_units: Vec<((usize, usize), CommUnitKind)>,
    pub questions: Vec<PredicateExpression>,
    /// Spanning infos left on the stack after the last unit.
    pub stack: SpanningInfoStack,
    /// One line per sub-task.
    pub trace: Vec<String>,
}

/// Parses a text with a lexicon drawn from the ontology and runs the engine.
pub fn run_text(text: &str, ontology: &Ontology) -> Result<EngineOutput, EngineError> {
    let doc = parse_document(text, &Lexicon::from_ontology(ontology))?;
    engine_driver(&doc, ontology)
}

pub fn engine_driver(document: &Document, ontology: &Ontology) -> Result<EngineOutput, EngineError> {
    let mut run = Run {
        ontology,
        model: InstanceModel::new(),
        tokens: document.tokens.clone(),
        stack: SpanningInfoStack::new(),
        out: Output::default(),
    };
    for unit in &document.units {
        let Some(sentence) = &unit.sentence else {
            run.trace(format!("SkipUnit kind={} span={:?}", unit.kind, unit.token_span));
            run.out.skipped_units.push((unit.token_span, unit.kind));
            continue;
        };
        let Some(root) = sentence.predicate_expressions.first() else { continue };
        run.sentence(root)?;
    }
    Ok(EngineOutput {
        tokens: run.tokens,
        model: run.model,
        resolutions: run.out.resolutions,
        unresolved: run.out.unresolved,
        skipped_units: run.out.skipped_units,
        questions: run.out.questions,
        stack: run.stack,
        trace: run.out.trace,
    })
}

#[derive(Default)]
struct Output {
    resolutions: Vec<ResolutionResult>,
    unresolved: Vec<UnresolvedPronoun>,
    skipped_units: Vec<((usize, usize), CommUnitKind)>,
    questions: Vec<PredicateExpression>,
    trace: Vec<String>,
}

struct Run<'o> {
    ontology: &'o Ontology,
    model: InstanceModel,
    tokens: Vec<TokenNode>,
    stack: SpanningInfoStack,
    out: Output,
}

/// Instance ids already created for a PE's arguments, by argument index.
type Prepared = BTreeMap<usize, BTreeMap<usize, String>>;

impl<'o> Run<'o> {
    fn trace(&mut self, line: String) {
        self.out.trace.push(line);
    }

    fn sentence(&mut self, root: &PredicateExpression) -> Result<(), EngineError> {
        let order = flatten_pe_order(root);
        let mut ctx: Option<usize> = None;
        let mut prepared = Prepared::new();
        for (k, pe) in order.iter().enumerate() {
            match pe.grammatical_mood {
                GrammaticalMood::Interrogative => {
                    self.trace(format!("ProcessMeaningUnitInterrogative pe={k}"));
                    self.out.questions.push((*pe).clone());
                }
                GrammaticalMood::Imperative => self.trace(format!("ProcessMeaningUnitImperative pe={k}")),
                GrammaticalMood::Indicative => {
                    let ci = match ctx {
                        Some(ci) => ci,
                        None => {
                            let ci = self.open_context(root, &order);
                            ctx = Some(ci);
                            ci
                        }
                    };
                    self.indicative(&order, k, ci, &mut prepared)?;
                }
            }
        }
        Ok(())
    }

    /// One context per sentence, placed under the structural parent of the
    /// first entity the sentence names.
    fn open_context(&mut self, root: &PredicateExpression, order: &[&PredicateExpression]) -> usize {
        let first_class = order
            .iter()
            .flat_map(|pe| &pe.entity_arguments)
            .filter(|a| !a.is_pronoun())
            .find_map(|a| self.class_for(a).map(|(c, _, _)| c));
        let sp =
            first_class.map_or_else(|| DEFAULT_STRUCTURAL_PARENT.to_string(), |c| self.ontology.structural_parent(&c));
        let dc = root
            .main_predicate()
            .map_or(crate::snf::DiscourseContext::DeclarativePresentSimple, |m| m.discourse_context);
        let ci = self.model.new_context(dc, &sp, &self.ontology.timeline_name(&sp));
        self.trace(format!("NewLocalContext id={} parent={sp}", self.model.contexts[ci].unique_id));
        ci
    }

    /// Class, head word and multiplicity for a non-pronoun argument.
    fn class_for(&self, arg: &EntityArgumentSpecifier) -> Option<(String, String, bool)> {
        let np = arg.noun_phrase()?;
        let head = np.head()?;
        if head.kind == HeadKind::Pronoun {
            return None;
        }
        let prior = np.qualifiers.last().map(String::as_str).filter(|q| self.ontology.is_prior_word(q));
        match self.ontology.lookup_noun_phrase(prior, &head.word).first() {
            Some(m) => Some((m.class.name.clone(), head.word.clone(), m.plural)),
            None if head.kind == HeadKind::ProperNoun && self.ontology.class(PROPER_NOUN_CLASS).is_some() => {
                Some((PROPER_NOUN_CLASS.to_string(), head.word.clone(), false))
            }
            None => None,
        }
    }

    fn instantiate(&mut self, arg: &EntityArgumentSpecifier, ci: usize) -> Option<String> {
        let (class, word, multiple) = self.class_for(arg)?;
        let inst = self.model.instantiate_object(&class, &word, multiple);
        let id = inst.unique_id.clone();
        let at = self.model.contexts[ci].place(inst);
        self.trace(format!("Instantiate {id} ({word}) at {at}"));
        Some(id)
    }

    /// Ids for every non-pronoun argument of a PE, reusing prepared ones.
    fn instantiate_arguments(&mut self, pe: &PredicateExpression, ci: usize, prepared: &mut BTreeMap<usize, String>) {
        for (i, arg) in pe.entity_arguments.iter().enumerate() {
            if arg.is_pronoun() || prepared.contains_key(&i) {
                continue;
            }
            if let Some(id) = self.instantiate(arg, ci) {
                prepared.insert(i, id);
            }
        }
    }

    fn wrappers(pe: &PredicateExpression, ids: &BTreeMap<usize, String>) -> Vec<ObjectInstanceSemanticWrapper> {
        let mut out: Vec<ObjectInstanceSemanticWrapper> = ids
            .iter()
            .map(|(&i, id)| {
                let a = &pe.entity_arguments[i];
                ObjectInstanceSemanticWrapper {
                    instance_id: id.clone(),
                    semantic_role: a.semantic_role,
                    extra_sub_role: a.extra_sub_role,
                    syntactic_role: a.syntactic_role,
                    predicate_ordinal: a.predicate_ordinal,
                }
            })
            .collect();
        // A locative complement stands in for a missing actee.
        if !out.iter().any(|w| w.semantic_role == Role::Actee) {
            if let Some(w) = out
                .iter_mut()
                .find(|w| w.semantic_role == Role::Extra && w.extra_sub_role.is_some_and(|s| s.is_locative()))
            {
                w.semantic_role = Role::Actee;
            }
        }
        out
    }

    /// Behavior classes for the PE's main verb, narrowed by negation and
    /// the classes of its arguments; extras are dropped if nothing matches.
    fn search_behaviors(&self, pe: &PredicateExpression, wrappers: &[ObjectInstanceSemanticWrapper]) -> Vec<String> {
        let Some(main) = pe.main_predicate() else { return Vec::new() };
        if main.role != PredicateRole::PredicateVerbTakingEntityArgument {
            return Vec::new();
        }
        let verb = main.main_verb_word.to_lowercase();
        let classes: Vec<(Role, String)> = wrappers
            .iter()
            .filter_map(|w| self.model.find(&w.instance_id).map(|i| (w.semantic_role, i.reference_class.clone())))
            .collect();
        let search = |with_extra: bool| {
            let mut q = BehaviorQuery::verb(&verb);
            q.negation = Some(pe.is_negated());
            for (role, class) in &classes {
                if *role != Role::Extra || with_extra {
                    q.role_mut(*role).push(class);
                }
            }
            self.ontology.search_behavior_classes(&q).into_iter().map(|b| b.name.clone()).collect::<Vec<_>>()
        };
        let found = search(true);
        if found.is_empty() {
            search(false)
        } else {
            found
        }
    }

    fn apply_first(
        &mut self,
        ci: usize,
        names: &[String],
        wrappers: &[ObjectInstanceSemanticWrapper],
    ) -> Option<AppliedRule> {
        let mut bindings = RoleBindings::default();
        for w in wrappers {
            bindings.get_mut(w.semantic_role).push(w.instance_id.clone());
        }
        for name in names {
            let Some(b) = self.ontology.behavior(name) else { continue };
            let ctx = &mut self.model.contexts[ci];
            let at = ctx.current();
            match apply_behavior_class(ctx, self.ontology, b, &bindings, at) {
                Ok(applied) => {
                    self.trace(format!("ApplyBehaviorClass {name} at {at}"));
                    return Some(applied);
                }
                Err(e) => self.trace(format!("ApplyBehaviorClass {name} failed: {e}")),
            }
        }
        None
    }

    fn indicative(
        &mut self,
        order: &[&PredicateExpression],
        k: usize,
        ci: usize,
        prepared: &mut Prepared,
    ) -> Result<(), EngineError> {
        let pe = order[k];
        let verb = pe.main_predicate().map(|m| m.main_verb_word.to_lowercase()).unwrap_or_default();
        self.trace(format!("ProcessMeaningUnitIndicative pe={k} verb={verb}"));
        let mut ids = prepared.remove(&k).unwrap_or_default();
        self.instantiate_arguments(pe, ci, &mut ids);
        let mut wrappers = Self::wrappers(pe, &ids);

        let names = self.search_behaviors(pe, &wrappers);
        self.trace(format!("SearchBehaviorClasses verb={verb} found={}", names.join(",")));
        let applied = self.apply_first(ci, &names, &wrappers);

        let co_occurring: Vec<(String, Role)> =
            wrappers.iter().map(|w| (w.instance_id.clone(), w.semantic_role)).collect();
        for (i, arg) in pe.entity_arguments.iter().enumerate() {
            if !arg.is_pronoun() {
                continue;
            }
            let features = build_pronoun_feature_set(pe, arg, pe.introductory_word.as_deref(), co_occurring.clone());
            let within_unit = self.within_unit_candidate(pe, arg, ci);
            match self.resolve_with_lookahead(order, k, ci, prepared, &features, within_unit)? {
                Some(r) => {
                    self.trace(format!(
                        "ResolvePronoun {}({}) via {}{}",
                        features.pronoun_word,
                        r.antecedent_word,
                        r.mechanism.as_str(),
                        if r.via_lookahead { " lookahead" } else { "" }
                    ));
                    wrappers.push(ObjectInstanceSemanticWrapper {
                        instance_id: r.referent_instance.clone(),
                        semantic_role: arg.semantic_role,
                        extra_sub_role: arg.extra_sub_role,
                        syntactic_role: arg.syntactic_role,
                        predicate_ordinal: arg.predicate_ordinal,
                    });
                    ids.insert(i, r.referent_instance.clone());
                    self.out.resolutions.push(r);
                }
                None => {
                    self.trace(format!("ResolvePronoun {} unresolved", features.pronoun_word));
                    self.out.unresolved.push(UnresolvedPronoun {
                        word: features.pronoun_word.clone(),
                        first_token_index: features.first_token_index,
                    });
                }
            }
        }

        let ctx = &self.model.contexts[ci];
        let info = SpanningInformation {
            saved_discourse_context: ctx.discourse_context,
            most_recent_context: ci,
            structural_parent: ctx.structural_parent.clone(),
            timepoint: ctx.latest().unwrap_or(crate::model::TimePoint::FIRST),
            wrappers,
            behavior_classes_per_verb: if names.is_empty() { Vec::new() } else { vec![(verb, names)] },
            applied,
        };
        self.stack.push(info);
        Ok(())
    }

    /// For a post-verb object pronoun, the head of an "of" phrase inside the
    /// clause's subject ("the owners of the house sold it").
    fn within_unit_candidate(
        &mut self,
        pe: &PredicateExpression,
        pronoun: &EntityArgumentSpecifier,
        ci: usize,
    ) -> Option<ObjectInstanceSemanticWrapper> {
        if !matches!(pronoun.syntactic_role, SyntacticRole::DirectObject | SyntacticRole::IndirectObject) {
            return None;
        }
        let subject = pe.entity_arguments.iter().find(|a| a.syntactic_role == SyntacticRole::Subject)?;
        let modifier =
            subject.noun_phrase()?.postnominal_modifiers.iter().find(|m| m.preposition.eq_ignore_ascii_case("of"))?;
        let arg = EntityArgumentSpecifier {
            entity_designators: vec![crate::snf::EntityDesignator::noun(modifier.noun_phrase.clone())],
            nested_pe: None,
            semantic_role: Role::Extra,
            extra_sub_role: Some(crate::snf::ExtraSubRole::Of),
            syntactic_role: SyntacticRole::Other,
            predicate_ordinal: subject.predicate_ordinal,
        };
        let id = self.instantiate(&arg, ci)?;
        Some(ObjectInstanceSemanticWrapper {
            instance_id: id,
            semantic_role: Role::Extra,
            extra_sub_role: arg.extra_sub_role,
            syntactic_role: SyntacticRole::Other,
            predicate_ordinal: arg.predicate_ordinal,
        })
    }

    /// Resolves against the stack; on failure, retries once against a
    /// temporary spanning info built from the next PE's arguments.
    fn resolve_with_lookahead(
        &mut self,
        order: &[&PredicateExpression],
        k: usize,
        ci: usize,
        prepared: &mut Prepared,
        features: &PronounFeatureSet,
        within_unit: Option<ObjectInstanceSemanticWrapper>,
    ) -> Result<Option<ResolutionResult>, EngineError> {
        let mut env = ResolveEnv {
            ontology: self.ontology,
            model: &mut self.model,
            tokens: &mut self.tokens,
            within_unit: within_unit.clone(),
        };
        match resolve_pronoun(&mut self.stack, features, &mut env) {
            Ok(r) => return Ok(Some(r)),
            Err(ResolveError::NotFound) => {}
            Err(e) => return Err(e.into()),
        }
        let Some(next) = order.get(k + 1).filter(|pe| pe.grammatical_mood == GrammaticalMood::Indicative) else {
            return Ok(None);
        };
        self.trace(format!("Lookahead pe={}", k + 1));
        let mut ids = prepared.remove(&(k + 1)).unwrap_or_default();
        self.instantiate_arguments(next, ci, &mut ids);
        let wrappers = Self::wrappers(next, &ids);
        let names = self.search_behaviors(next, &wrappers);
        prepared.insert(k + 1, ids);
        let verb = next.main_predicate().map(|m| m.main_verb_word.to_lowercase()).unwrap_or_default();
        let ctx = &self.model.contexts[ci];
        let temp = SpanningInformation {
            saved_discourse_context: ctx.discourse_context,
            most_recent_context: ci,
            structural_parent: ctx.structural_parent.clone(),
            timepoint: ctx.latest().unwrap_or(crate::model::TimePoint::FIRST),
            wrappers,
            behavior_classes_per_verb: if names.is_empty() { Vec::new() } else { vec![(verb, names)] },
            applied: None,
        };
        let mut stack = SpanningInfoStack::new();
        stack.push(temp);
        let mut env =
            ResolveEnv { ontology: self.ontology, model: &mut self.model, tokens: &mut self.tokens, within_unit };
        match resolve_pronoun(&mut stack, features, &mut env) {
            Ok(mut r) => {
                r.via_lookahead = true;
                Ok(Some(r))
            }
            Err(ResolveError::NotFound) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}
