//! Brute-force referent oracle. Enumerates every (candidate, rule, role)
//! triple of each spanning info below the pronoun clause and tests the
//! causal-adjective and nested-behavior predicates straight from the rule
//! definitions. Generate-and-test runs over every forward rule of the
//! pronoun's verb. Candidates are visited in a caller-chosen order, so
//! agreement with the engine also shows the choice is order independent.

use ross_core::engine::{build_pronoun_feature_set, run_text, PronounFeatureSet, SpanningInformation};
use ross_core::frontend::{parse_document, Lexicon};
use ross_core::model::InstanceModel;
use ross_core::reasoning::{east_build_and_match, forward_inference_with_nested, process_one_forward_rule};
use ross_core::snf::flatten_pe_order;
use ross_core::star::{BehaviorClassDef, BindingMode, StateItem};
use ross_core::{Ontology, Role};

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub instance_id: String,
    pub mechanism: &'static str,
    pub probability: f64,
}

#[derive(Debug, Clone)]
struct Hit {
    verdict: Verdict,
    /// Role order, then position among the info's wrappers.
    rank: (usize, usize),
}

fn role_index(r: Role) -> usize {
    Role::ALL.iter().position(|x| *x == r).unwrap()
}

/// Permutation of `0..n` selected by `shuffle`.
fn order(n: usize, shuffle: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    if n > 0 {
        v.rotate_left(shuffle % n);
    }
    if shuffle % 2 == 1 {
        v.reverse();
    }
    v
}

fn populated(items: &[StateItem]) -> Vec<&ross_core::star::PopulatedObjectClassDef> {
    items
        .iter()
        .filter_map(|i| match i {
            StateItem::Populated(p) => Some(p),
            StateItem::Reference(_) => None,
        })
        .collect()
}

fn adjective_holds(o: &Ontology, class: &str, rule: &BehaviorClassDef, role: Role, adjective: &str) -> bool {
    populated(&rule.prior_states).into_iter().filter(|p| p.role() == role && o.is_a(class, &p.object_class)).any(|p| {
        p.bindings.iter().any(|b| {
            let BindingMode::Val(v) = &b.mode else { return false };
            o.attribute_type(class, &b.attribute_type).is_some_and(|(_, def)| {
                def.optional_causal_feature
                    && def
                        .values
                        .iter()
                        .any(|val| val.name == *v && val.dictionary.iter().any(|w| w.eq_ignore_ascii_case(adjective)))
            })
        })
    })
}

/// Probability of the nested reference when it names a behavior of
/// `verb` and ties the pronoun's slot to the participant in `role`.
fn nested_holds(o: &Ontology, class: &str, rule: &BehaviorClassDef, role: Role, verb: &str, slot: Role) -> Option<f64> {
    let reference = rule.prior_states.iter().find_map(|i| match i {
        StateItem::Reference(r) => Some(r),
        StateItem::Populated(_) => None,
    })?;
    let target = o.behavior(&reference.behavior)?;
    if !target.verb_forms.iter().any(|f| f.eq_ignore_ascii_case(verb)) {
        return None;
    }
    let symbol = reference.parameters.iter().find(|p| p.slot == slot)?.symbol.as_deref()?;
    let mut all = populated(&rule.prior_states).into_iter().chain(populated(&rule.post_states));
    let holder = all.find(|p| p.identity_symbol() == Some(symbol))?;
    if holder.role() != role {
        return None;
    }
    let participant =
        populated(&rule.prior_states).into_iter().chain(populated(&rule.post_states)).find(|p| p.role() == role)?;
    o.is_a(class, &participant.object_class).then(|| reference.probability.unwrap_or(target.probability.unwrap_or(1.0)))
}

fn generate_and_test_hits(
    o: &Ontology,
    master: &InstanceModel,
    info: &SpanningInformation,
    features: &PronounFeatureSet,
    shuffle: usize,
) -> Vec<Hit> {
    let Some(verb) = features.search_key_verb.as_deref() else { return Vec::new() };
    let mut hits = Vec::new();
    for i in order(info.wrappers.len(), shuffle) {
        let w = &info.wrappers[i];
        let class = &master.find(&w.instance_id).unwrap().reference_class;
        for rule in o.behaviors() {
            let fits = rule.causal_rule
                && rule.verb_forms.iter().any(|f| f.eq_ignore_ascii_case(verb))
                && rule.participant(features.semantic_role).is_some_and(|p| o.is_a(class, &p.object_class));
            if !fits {
                continue;
            }
            let Ok((mut west, Some(nested))) = process_one_forward_rule(o, master, w, info, rule, features) else {
                continue;
            };
            if forward_inference_with_nested(o, &mut west, nested).is_err() {
                continue;
            }
            if east_build_and_match(o, master, info, &west, &nested.behavior).is_ok_and(|r| r.matched) {
                let p = nested
                    .probability
                    .unwrap_or_else(|| o.behavior(&nested.behavior).map_or(1.0, |b| b.probability.unwrap_or(1.0)));
                hits.push(Hit {
                    verdict: Verdict {
                        instance_id: w.instance_id.clone(),
                        mechanism: "GenerateAndTest",
                        probability: p,
                    },
                    rank: (role_index(w.semantic_role), i),
                });
            }
        }
    }
    hits
}

fn best(hits: Vec<Hit>) -> Option<Verdict> {
    hits.into_iter()
        .max_by(|a, b| a.verdict.probability.partial_cmp(&b.verdict.probability).unwrap().then(b.rank.cmp(&a.rank)))
        .map(|h| h.verdict)
}

/// The oracle's referent for the last pronoun of `text`, or `None` when
/// no rule-based stage succeeds.
pub fn oracle(text: &str, o: &Ontology, shuffle: usize) -> Option<Verdict> {
    let out = run_text(text, o).unwrap();
    let doc = parse_document(text, &Lexicon::from_ontology(o)).unwrap();
    let root = doc.units.iter().rev().find_map(|u| u.sentence.as_ref()?.predicate_expressions.first())?;
    let pes = flatten_pe_order(root);
    let pe = pes.iter().find(|pe| pe.entity_arguments.iter().any(|a| a.is_pronoun()))?;
    let arg = pe.entity_arguments.iter().find(|a| a.is_pronoun())?;

    let mut infos = out.stack.iter();
    let own = infos.next()?;
    let slot = arg.semantic_role;
    let co: Vec<(String, Role)> = own
        .wrappers
        .iter()
        .filter(|w| w.semantic_role != slot)
        .map(|w| (w.instance_id.clone(), w.semantic_role))
        .collect();
    let features = build_pronoun_feature_set(pe, arg, pe.introductory_word.as_deref(), co);

    for info in infos {
        let mut hits = Vec::new();
        for i in order(info.wrappers.len(), shuffle) {
            let w = &info.wrappers[i];
            let class = &out.model.find(&w.instance_id).unwrap().reference_class;
            for name in info.behavior_names() {
                let rule = o.behavior(name).unwrap();
                for role in Role::ALL {
                    if role != w.semantic_role {
                        continue;
                    }
                    let rank = (role_index(role), i);
                    if let Some(adj) = features.search_key_adjective.as_deref() {
                        if adjective_holds(o, class, rule, role, adj) {
                            let p = rule.probability.unwrap_or(1.0);
                            let verdict = Verdict {
                                instance_id: w.instance_id.clone(),
                                mechanism: "AdjectiveCausal",
                                probability: p,
                            };
                            hits.push(Hit { verdict, rank });
                        }
                    }
                    if let Some(verb) = features.search_key_verb.as_deref() {
                        if let Some(p) = nested_holds(o, class, rule, role, verb, slot) {
                            let verdict = Verdict {
                                instance_id: w.instance_id.clone(),
                                mechanism: "VerbNestedBehavior",
                                probability: p,
                            };
                            hits.push(Hit { verdict, rank });
                        }
                    }
                }
            }
        }
        if hits.is_empty() {
            hits = generate_and_test_hits(o, &out.model, info, &features, shuffle);
        }
        if let Some(v) = best(hits) {
            return Some(v);
        }
    }
    None
}

/// Sentences beyond the fixed corpus: reordered arguments, swapped roles,
/// dropped or added modifiers, distractor arguments and preceding sentences.
pub const VARIANTS: &[&str] = &[
    "The trophy did not fit in the brown suitcase because it was too big.",
    "The trophy did not fit in the brown suitcase because it was too small.",
    "The trophy doesn't fit in the suitcase because it's too big.",
    "The trophy doesn't fit in the suitcase because it's too small.",
    "The brown trophy doesn't fit in the suitcase because it's too small.",
    "The trophy doesn't fit in the brown suitcase because it's so big.",
    "The man did not lift his son because he was too weak.",
    "The man didn't lift the son because he was too heavy.",
    "The man didn't lift his son for the dog because he was too weak.",
    "The man didn't lift his son for the dog because he was too heavy.",
    "Sam paid the detective after he received the final report on the case.",
    "Sam paid the detective after he delivered the final report.",
    "Joe paid the detective after he received the report.",
    "The man paid the detective after he received the final report on the case.",
    "The man paid the detective after he delivered the final report on the case.",
    "The councilmen refused the demonstrators a permit because they feared violence.",
    "The councilmen refused the demonstrators a permit because they advocated violence.",
    "The city councilmen refused the demonstrators because they feared violence.",
    "The city councilmen refused the demonstrators because they advocated violence.",
    "The demonstrators refused the city councilmen a permit because they feared violence.",
    "The demonstrators refused the city councilmen a permit because they advocated violence.",
    "The detective paid Joe after he received the final report.",
    "The dog bit the man. The trophy doesn't fit in the brown suitcase because it's too big.",
    "The dog bit the man. The trophy doesn't fit in the brown suitcase because it's too small.",
];
