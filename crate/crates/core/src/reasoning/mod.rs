//! Generate-and-test reasoning over private sandbox models. A West sandbox
//! forward-applies a rule for the pronoun clause's verb with a candidate
//! antecedent; an East sandbox applies the nested behavior of the main
//! clause's rule; the candidate holds when the two meet up.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::engine::{HypotheticalUsage, ObjectInstanceSemanticWrapper, PronounFeatureSet, SpanningInformation};
use crate::model::{apply_behavior_class, InstanceModel, ModelError, ObjectInstance, RoleBindings, TimePoint};
use crate::role::Role;
use crate::snf::DiscourseContext;
use crate::star::{BehaviorClassDef, BehaviorClassReferenceDef, BehaviorQuery, Ontology, RuleDirection};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReasoningError {
    #[error("no applicable rule")]
    NotFound,
    #[error("nested behavior parameter {0} is unbound")]
    UnboundParameter(String),
    #[error("unknown behavior class {0}")]
    UnknownBehavior(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    West,
    East,
}

/// A one-context instance model private to one candidate test.
#[derive(Debug, Clone, PartialEq)]
pub struct SandboxContext {
    pub side: Side,
    pub model: InstanceModel,
    /// Identity sets of collection instances created in the sandbox.
    pub collections: BTreeMap<String, BTreeSet<String>>,
    /// Identity symbols bound during application.
    pub identities: BTreeMap<String, String>,
    /// Ids of instances copied in from the master model.
    pub master_ids: BTreeSet<String>,
}

impl SandboxContext {
    fn new(side: Side, ontology: &Ontology, master: &InstanceModel) -> Self {
        let mut model = InstanceModel { counters: master.counters.clone(), ..InstanceModel::default() };
        let sp = crate::star::DEFAULT_STRUCTURAL_PARENT;
        model.new_context(DiscourseContext::DeclarativePastSimple, sp, &ontology.timeline_name(sp));
        SandboxContext {
            side,
            model,
            collections: BTreeMap::new(),
            identities: BTreeMap::new(),
            master_ids: BTreeSet::new(),
        }
    }

    fn copy_in(&mut self, instance: &ObjectInstance) {
        let mut c = instance.clone();
        c.identity_symbol = None;
        self.master_ids.insert(c.unique_id.clone());
        self.model.contexts[0].place(c);
    }

    fn fresh(&mut self, class: &str, word: &str, multiple: bool) -> String {
        let inst = self.model.instantiate_object(class, word, multiple);
        let id = inst.unique_id.clone();
        self.model.contexts[0].place(inst);
        id
    }

    fn latest(&self) -> TimePoint {
        self.model.contexts[0].latest().unwrap_or(TimePoint::FIRST)
    }

    fn components(&self, at: TimePoint) -> &[ObjectInstance] {
        self.model.contexts[0].timepoints.get(&at).map(|sp| sp.components.as_slice()).unwrap_or(&[])
    }

    /// First instance at the latest timepoint of (a subclass of) `class`
    /// that is not already bound.
    fn find_unbound(&self, ontology: &Ontology, class: &str, bound: &RoleBindings) -> Option<String> {
        self.components(self.latest())
            .iter()
            .find(|c| ontology.is_a(&c.reference_class, class) && !bound.all().any(|b| *b == c.unique_id))
            .map(|c| c.unique_id.clone())
    }

    fn apply(
        &mut self,
        ontology: &Ontology,
        behavior: &BehaviorClassDef,
        bindings: &RoleBindings,
    ) -> Result<(), ReasoningError> {
        let at = self.latest();
        let applied = apply_behavior_class(&mut self.model.contexts[0], ontology, behavior, bindings, at)?;
        self.identities.extend(applied.identities);
        Ok(())
    }

    /// Latest structural parent in the debugging layout.
    pub fn dump(&self) -> String {
        let side = match self.side {
            Side::West => "WEST",
            Side::East => "EAST",
        };
        let mut out = format!("// {side}: StructuralParent contains:\n");
        for c in self.components(self.latest()) {
            let label = self
                .identities
                .iter()
                .find(|(_, id)| **id == c.unique_id)
                .map(|(s, _)| s.clone())
                .unwrap_or_else(|| c.content_string.clone());
            for a in &c.attributes {
                let _ = writeln!(
                    out,
                    "// Instance: {} ({label}) -> Attr:{} = \"{}\"",
                    c.reference_class, a.attribute_type, a.value
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub matched: bool,
    pub forward_rule: Option<String>,
    pub nested_behavior: Option<String>,
    /// Main-clause rule whose nested behavior met the West side.
    pub main_rule: Option<String>,
    pub west_instance: Option<String>,
    pub east_instance: Option<String>,
    pub probability: f64,
}

impl MatchReport {
    fn miss() -> Self {
        MatchReport {
            matched: false,
            forward_rule: None,
            nested_behavior: None,
            main_rule: None,
            west_instance: None,
            east_instance: None,
            probability: 0.0,
        }
    }
}

fn behavior<'o>(ontology: &'o Ontology, name: &str) -> Result<&'o BehaviorClassDef, ReasoningError> {
    ontology.behavior(name).ok_or_else(|| ReasoningError::UnknownBehavior(name.to_string()))
}

fn reference_probability(ontology: &Ontology, r: &BehaviorClassReferenceDef) -> f64 {
    r.probability.unwrap_or_else(|| ontology.behavior(&r.behavior).map_or(1.0, |b| b.probability_or_default()))
}

fn master_copy<'m>(master: &'m InstanceModel, id: &str) -> Result<&'m ObjectInstance, ReasoningError> {
    master.find(id).ok_or_else(|| ReasoningError::Model(ModelError::UnknownInstance(id.to_string())))
}

/// Tests one candidate antecedent. `NotFound` means no forward rule for the
/// clause's verb accepts the candidate's class in the pronoun's role.
pub fn generate_and_test(
    ontology: &Ontology,
    master: &InstanceModel,
    features: &PronounFeatureSet,
    candidate: &ObjectInstanceSemanticWrapper,
    info: &SpanningInformation,
) -> Result<MatchReport, ReasoningError> {
    let verb = match (&features.search_key_verb, features.hypothetical_usage) {
        (Some(v), HypotheticalUsage::ExplanationOfCause) => v.as_str(),
        _ => return Err(ReasoningError::NotFound),
    };
    let class = master_copy(master, &candidate.instance_id)?.reference_class.clone();
    let mut q = BehaviorQuery::verb(verb);
    q.direction = RuleDirection::Forward;
    q.role_mut(features.semantic_role).push(&class);
    let rules = ontology.search_behavior_classes(&q);
    if rules.is_empty() {
        return Err(ReasoningError::NotFound);
    }
    for rule in rules {
        let (mut west, nested) = process_one_forward_rule(ontology, master, candidate, info, rule, features)?;
        let Some(nested) = nested else { continue };
        forward_inference_with_nested(ontology, &mut west, nested)?;
        match east_build_and_match(ontology, master, info, &west, &nested.behavior) {
            Ok(mut report) if report.matched => {
                report.forward_rule = Some(rule.name.clone());
                report.probability = reference_probability(ontology, nested);
                return Ok(report);
            }
            Ok(_) | Err(ReasoningError::NotFound) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(MatchReport::miss())
}

/// Builds the West sandbox: the candidate fills the pronoun's role, the
/// clause's other arguments fill theirs, and a collection participant is
/// created fresh holding every compatible instance of the spanning info
/// except the candidate. The rule is applied once.
pub fn process_one_forward_rule<'o>(
    ontology: &'o Ontology,
    master: &InstanceModel,
    candidate: &ObjectInstanceSemanticWrapper,
    info: &SpanningInformation,
    rule: &'o BehaviorClassDef,
    features: &PronounFeatureSet,
) -> Result<(SandboxContext, Option<&'o BehaviorClassReferenceDef>), ReasoningError> {
    let mut west = SandboxContext::new(Side::West, ontology, master);
    let mut bindings = RoleBindings::default();
    west.copy_in(master_copy(master, &candidate.instance_id)?);
    bindings.get_mut(features.semantic_role).push(candidate.instance_id.clone());

    for role in Role::ALL {
        if role == features.semantic_role {
            continue;
        }
        let Some(p) = rule.participant(role) else { continue };
        let co = features.co_occurring_wrappers.iter().find(|(id, r)| {
            *r == role && master.find(id).is_some_and(|i| ontology.is_a(&i.reference_class, &p.object_class))
        });
        let id = if let Some((id, _)) = co {
            west.copy_in(master_copy(master, id)?);
            id.clone()
        } else if p.multiple {
            let members: BTreeSet<String> = info
                .wrappers
                .iter()
                .filter(|w| w.instance_id != candidate.instance_id)
                .filter(|w| {
                    master.find(&w.instance_id).is_some_and(|i| ontology.is_a(&i.reference_class, &p.object_class))
                })
                .map(|w| w.instance_id.clone())
                .collect();
            let id = west.fresh(&p.object_class, "listeners", true);
            west.collections.insert(id.clone(), members);
            id
        } else {
            west.fresh(&p.object_class, &p.label, false)
        };
        bindings.get_mut(role).push(id);
    }
    west.apply(ontology, rule, &bindings)?;
    Ok((west, rule.consequent_reference()))
}

/// Applies the nested behavior of a forward rule inside the West sandbox.
/// Symbol parameters take the instances bound during the rule; the rest
/// take a compatible unbound instance, or a fresh one.
pub fn forward_inference_with_nested(
    ontology: &Ontology,
    west: &mut SandboxContext,
    nested: &BehaviorClassReferenceDef,
) -> Result<(), ReasoningError> {
    let b = behavior(ontology, &nested.behavior)?;
    let mut bindings = RoleBindings::default();
    for p in nested.parameters.iter().filter(|p| p.symbol.is_some()) {
        let sym = p.symbol.as_deref().unwrap_or_default();
        let id = west.identities.get(sym).cloned().ok_or_else(|| ReasoningError::UnboundParameter(sym.to_string()))?;
        bindings.get_mut(p.slot).push(id);
    }
    for p in nested.parameters.iter().filter(|p| p.symbol.is_none()) {
        let id = match west.find_unbound(ontology, &p.class, &bindings) {
            Some(id) => id,
            None => west.fresh(&p.class, &p.class, false),
        };
        bindings.get_mut(p.slot).push(id);
    }
    west.apply(ontology, b, &bindings)
}

/// Tries each main-clause rule whose nested behavior equals the West one:
/// copies the spanning info's instances into a fresh East sandbox, applies
/// the nested behavior with identity symbols bound through the rule's
/// roles, then matches against the West.
pub fn east_build_and_match(
    ontology: &Ontology,
    master: &InstanceModel,
    info: &SpanningInformation,
    west: &SandboxContext,
    west_nested: &str,
) -> Result<MatchReport, ReasoningError> {
    for name in info.behavior_names() {
        let main = behavior(ontology, name)?;
        let Some(nested) = main.nested_reference() else { continue };
        if nested.behavior != west_nested {
            continue;
        }
        let mut east = SandboxContext::new(Side::East, ontology, master);
        for w in &info.wrappers {
            east.copy_in(master_copy(master, &w.instance_id)?);
        }
        let mut bindings = RoleBindings::default();
        for p in &nested.parameters {
            let id = match &p.symbol {
                Some(sym) => {
                    let role = main.identity_role(sym).ok_or_else(|| ReasoningError::UnboundParameter(sym.clone()))?;
                    let w =
                        info.wrapper_with_role(role).ok_or_else(|| ReasoningError::UnboundParameter(sym.clone()))?;
                    east.identities.insert(sym.clone(), w.instance_id.clone());
                    w.instance_id.clone()
                }
                None => match east.find_unbound(ontology, &p.class, &bindings) {
                    Some(id) => id,
                    None => east.fresh(&p.class, &p.class, false),
                },
            };
            bindings.get_mut(p.slot).push(id);
        }
        east.apply(ontology, behavior(ontology, &nested.behavior)?, &bindings)?;
        let mut report = match_states(ontology, west, &east);
        if report.matched {
            report.nested_behavior = Some(nested.behavior.clone());
            report.main_rule = Some(main.name.clone());
            return Ok(report);
        }
    }
    Err(ReasoningError::NotFound)
}

/// Attribute pairs on the East side's latest timepoint that differ from
/// the one before it.
fn new_states(east: &SandboxContext) -> Vec<(&ObjectInstance, Vec<(&str, &str)>)> {
    let ctx = &east.model.contexts[0];
    let latest = east.latest();
    let before = ctx.timepoints.range(..latest).next_back().map(|(t, _)| *t);
    east.components(latest)
        .iter()
        .map(|e| {
            let prior = before.and_then(|t| ctx.instance(t, &e.unique_id));
            let fresh: Vec<(&str, &str)> = e
                .attributes
                .iter()
                .filter(|a| prior.and_then(|p| p.attribute(&a.attribute_type)) != Some(a.value.as_str()))
                .map(|a| (a.attribute_type.as_str(), a.value.as_str()))
                .collect();
            (e, fresh)
        })
        .filter(|(_, f)| !f.is_empty())
        .collect()
}

/// Every East instance with new states needs a West partner of a related
/// class carrying all those states. When the East instance came from the
/// master model, the partner must admit its identity: a collection by
/// membership, a copied instance by equal id.
pub fn match_states(ontology: &Ontology, west: &SandboxContext, east: &SandboxContext) -> MatchReport {
    let mut report = MatchReport::miss();
    let news = new_states(east);
    if news.is_empty() {
        return report;
    }
    let west_now = west.components(west.latest());
    for (i, (e, states)) in news.iter().enumerate() {
        let partner = west_now.iter().find(|w| {
            ontology.related(&w.reference_class, &e.reference_class)
                && states.iter().all(|(t, v)| w.attribute(t) == Some(v))
                && identity_compatible(west, w, east, e)
        });
        match partner {
            Some(w) if i == 0 => {
                report.west_instance = Some(w.unique_id.clone());
                report.east_instance = Some(e.unique_id.clone());
            }
            Some(_) => {}
            None => return MatchReport::miss(),
        }
    }
    report.matched = true;
    report
}

fn identity_compatible(west: &SandboxContext, w: &ObjectInstance, east: &SandboxContext, e: &ObjectInstance) -> bool {
    if !east.master_ids.contains(&e.unique_id) {
        return true;
    }
    if let Some(members) = west.collections.get(&w.unique_id) {
        return members.contains(&e.unique_id);
    }
    !west.master_ids.contains(&w.unique_id) || w.unique_id == e.unique_id
}
