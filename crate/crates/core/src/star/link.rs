use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::defs::*;
use super::{Diagnostic, StarDocument};
use crate::role::Role;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum LinkError {
    #[error("{from} refers to unknown {kind} {target:?}")]
    UnresolvedRef { from: String, kind: &'static str, target: String },
    #[error("inheritance cycle: {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("attribute type {attribute:?} declared twice on {class} with different contents")]
    DuplicateAttributeType { class: String, attribute: String },
    #[error("behavior class {0:?} defined twice")]
    DuplicateBehavior(String),
    #[error("{behavior}/{label}: {reason}")]
    InvalidBinding { behavior: String, label: String, reason: String },
    #[error("symbol {symbol} used in {behavior} before it is bound")]
    UnboundSymbol { behavior: String, symbol: String },
    #[error("attribute type {attribute:?} on {class} needs at least two values")]
    InvalidAttributeType { class: String, attribute: String },
}

/// A class after all partial definitions have been merged.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectFrameClass {
    pub name: String,
    pub structure_trait: Option<String>,
    pub gender: Option<Gender>,
    pub prior_words: Vec<PriorWordDef>,
    pub dictionary: Vec<Vec<String>>,
    pub higher_classes: Vec<String>,
    pub structural_parent_bases: Vec<String>,
    pub attribute_types: Vec<AttributeTypeDef>,
    pub dimension_system_names: Vec<String>,
    /// Number of partial definitions merged into this class.
    pub definition_count: usize,
}

impl ObjectFrameClass {
    pub fn own_attribute_type(&self, name: &str) -> Option<&AttributeTypeDef> {
        self.attribute_types.iter().find(|a| a.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleDirection {
    Unspecified,
    /// Only causal rules, applied antecedent to consequent.
    Forward,
}

#[derive(Debug, Clone)]
pub struct BehaviorQuery<'a> {
    pub verb: &'a str,
    pub negation: Option<bool>,
    pub actor: Vec<&'a str>,
    pub actee: Vec<&'a str>,
    pub extra: Vec<&'a str>,
    pub direction: RuleDirection,
}

impl<'a> BehaviorQuery<'a> {
    pub fn verb(verb: &'a str) -> Self {
        BehaviorQuery {
            verb,
            negation: None,
            actor: Vec::new(),
            actee: Vec::new(),
            extra: Vec::new(),
            direction: RuleDirection::Unspecified,
        }
    }

    pub fn role_mut(&mut self, role: Role) -> &mut Vec<&'a str> {
        match role {
            Role::Actor => &mut self.actor,
            Role::Actee => &mut self.actee,
            Role::Extra => &mut self.extra,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NounMatch<'a> {
    pub class: &'a ObjectFrameClass,
    pub plural: bool,
    pub two_word: bool,
}

#[derive(Debug, Clone, Copy)]
struct NounEntry {
    class: usize,
    plural: bool,
}

#[derive(Debug, Clone)]
pub struct Ontology {
    classes: Vec<ObjectFrameClass>,
    class_index: HashMap<String, usize>,
    behaviors: Vec<BehaviorClassDef>,
    behavior_index: HashMap<String, usize>,
    /// Breadth-first ancestors, nearest first, excluding the class itself.
    ancestors: Vec<Vec<usize>>,
    noun_index: BTreeMap<String, Vec<NounEntry>>,
    prior_index: BTreeMap<String, Vec<(usize, bool)>>,
    verb_index: BTreeMap<String, Vec<usize>>,
    diagnostics: Vec<(String, Diagnostic)>,
    sources: Vec<String>,
}

pub const DEFAULT_STRUCTURAL_PARENT: &str = "EverydayObjectStructuralParentClass";

fn merge_class(into: &mut ObjectFrameClass, d: &ObjectFrameClassDef) -> Result<(), LinkError> {
    into.definition_count += 1;
    if into.structure_trait.is_none() {
        into.structure_trait = d.structure_trait.clone();
    }
    if into.gender.is_none() {
        into.gender = d.gender;
    }
    if let Some(p) = &d.dictionary_prior_word {
        into.prior_words.push(p.clone());
    }
    into.dictionary.extend(d.dictionary.iter().cloned());
    for h in &d.higher_classes {
        if !into.higher_classes.contains(h) {
            into.higher_classes.push(h.clone());
        }
    }
    for b in &d.structural_parent_bases {
        if !into.structural_parent_bases.contains(b) {
            into.structural_parent_bases.push(b.clone());
        }
    }
    for a in &d.attribute_types {
        match into.own_attribute_type(&a.name) {
            Some(existing) if existing == a => {}
            Some(_) => {
                return Err(LinkError::DuplicateAttributeType { class: into.name.clone(), attribute: a.name.clone() })
            }
            None => into.attribute_types.push(a.clone()),
        }
    }
    for ds in &d.dimension_systems {
        for c in &ds.children {
            if let super::tree::Node::Element(e) = c {
                if let Some(n) = &e.name {
                    into.dimension_system_names.push(n.clone());
                }
            }
        }
    }
    Ok(())
}

impl Ontology {
    /// Merges partial class definitions, resolves references and builds the
    /// noun and verb indices.
    pub fn link(docs: Vec<StarDocument>) -> Result<Ontology, LinkError> {
        let mut classes: Vec<ObjectFrameClass> = Vec::new();
        let mut class_index = HashMap::new();
        let mut behaviors = Vec::new();
        let mut behavior_index = HashMap::new();
        let mut diagnostics = Vec::new();
        let mut sources = Vec::new();

        for doc in &docs {
            sources.push(doc.source.clone());
            diagnostics.extend(doc.diagnostics.iter().map(|d| (doc.source.clone(), d.clone())));
            for def in &doc.definitions {
                match def {
                    Definition::Class(c) => {
                        let idx = *class_index.entry(c.name.clone()).or_insert_with(|| {
                            classes.push(ObjectFrameClass {
                                name: c.name.clone(),
                                structure_trait: None,
                                gender: None,
                                prior_words: Vec::new(),
                                dictionary: Vec::new(),
                                higher_classes: Vec::new(),
                                structural_parent_bases: Vec::new(),
                                attribute_types: Vec::new(),
                                dimension_system_names: Vec::new(),
                                definition_count: 0,
                            });
                            classes.len() - 1
                        });
                        merge_class(&mut classes[idx], c)?;
                    }
                    Definition::Behavior(b) => {
                        if behavior_index.insert(b.name.clone(), behaviors.len()).is_some() {
                            return Err(LinkError::DuplicateBehavior(b.name.clone()));
                        }
                        behaviors.push(b.clone());
                    }
                }
            }
        }

        let unresolved = |from: &str, kind: &'static str, target: &str| LinkError::UnresolvedRef {
            from: from.to_string(),
            kind,
            target: target.to_string(),
        };

        for c in &classes {
            for h in c.higher_classes.iter().chain(&c.structural_parent_bases) {
                if !class_index.contains_key(h) {
                    return Err(unresolved(&c.name, "class", h));
                }
            }
            for a in &c.attribute_types {
                if !a.values.is_empty() && a.values.len() < 2 {
                    return Err(LinkError::InvalidAttributeType { class: c.name.clone(), attribute: a.name.clone() });
                }
            }
        }

        // Cycle check, then breadth-first ancestor lists.
        let parents: Vec<Vec<usize>> =
            classes.iter().map(|c| c.higher_classes.iter().map(|h| class_index[h]).collect()).collect();
        detect_cycle(&classes, &parents)?;
        let ancestors = (0..classes.len())
            .map(|i| {
                let mut seen = BTreeSet::new();
                let mut order = Vec::new();
                let mut q: VecDeque<usize> = parents[i].iter().copied().collect();
                while let Some(p) = q.pop_front() {
                    if p != i && seen.insert(p) {
                        order.push(p);
                        q.extend(parents[p].iter().copied());
                    }
                }
                order
            })
            .collect();

        let mut ont = Ontology {
            classes,
            class_index,
            behaviors,
            behavior_index,
            ancestors,
            noun_index: BTreeMap::new(),
            prior_index: BTreeMap::new(),
            verb_index: BTreeMap::new(),
            diagnostics,
            sources,
        };
        ont.check_behaviors()?;
        ont.build_indices();
        Ok(ont)
    }

    fn check_behaviors(&self) -> Result<(), LinkError> {
        for b in &self.behaviors {
            let unresolved = |kind: &'static str, target: &str| LinkError::UnresolvedRef {
                from: b.name.clone(),
                kind,
                target: target.to_string(),
            };
            if let Some(br) = &b.bridge_class {
                if self.class(br).is_none() {
                    return Err(unresolved("class", br));
                }
            }
            let mut bound: BTreeSet<&str> = BTreeSet::new();
            let all_vars: BTreeSet<&str> = b
                .prior_populated()
                .chain(b.post_populated())
                .flat_map(|p| p.bindings.iter())
                .filter_map(|x| match &x.mode {
                    BindingMode::Var(s) => Some(s.as_str()),
                    _ => None,
                })
                .collect();
            for item in b.prior_states.iter().chain(&b.post_states) {
                match item {
                    StateItem::Populated(p) => {
                        if self.class(&p.object_class).is_none() {
                            return Err(unresolved("class", &p.object_class));
                        }
                        for bnd in &p.bindings {
                            let invalid = |reason: String| LinkError::InvalidBinding {
                                behavior: b.name.clone(),
                                label: p.label.clone(),
                                reason,
                            };
                            let at = match self.attribute_type(&p.object_class, &bnd.attribute_type) {
                                Some((_, at)) => at,
                                None => {
                                    return Err(invalid(format!(
                                        "{} has no attribute type {}",
                                        p.object_class, bnd.attribute_type
                                    )))
                                }
                            };
                            match &bnd.mode {
                                BindingMode::Val(v) => {
                                    if !at.has_value(v) {
                                        return Err(invalid(format!("{v:?} is not a value of {}", at.name)));
                                    }
                                }
                                BindingMode::Var(s) => {
                                    bound.insert(s);
                                }
                                BindingMode::Expr(e) => {
                                    if let Some(s) = e.symbol() {
                                        if !bound.contains(s) {
                                            return Err(LinkError::UnboundSymbol {
                                                behavior: b.name.clone(),
                                                symbol: s.to_string(),
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                    StateItem::Reference(r) => {
                        if self.behavior(&r.behavior).is_none() {
                            return Err(unresolved("behavior class", &r.behavior));
                        }
                        for prm in &r.parameters {
                            if self.class(&prm.class).is_none() {
                                return Err(unresolved("class", &prm.class));
                            }
                            if let Some(s) = &prm.symbol {
                                if !all_vars.contains(s.as_str()) {
                                    return Err(LinkError::UnboundSymbol {
                                        behavior: b.name.clone(),
                                        symbol: s.clone(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn build_indices(&mut self) {
        for (i, c) in self.classes.iter().enumerate() {
            for group in &c.dictionary {
                for (k, w) in group.iter().enumerate() {
                    let e = self.noun_index.entry(w.to_lowercase()).or_default();
                    if !e.iter().any(|x| x.class == i) {
                        e.push(NounEntry { class: i, plural: k > 0 });
                    }
                }
            }
            for p in &c.prior_words {
                for (k, w) in p.words.iter().enumerate() {
                    let lw = w.to_lowercase();
                    self.prior_index.entry(lw.clone()).or_default().push((i, p.is_noun));
                    if p.is_noun {
                        let e = self.noun_index.entry(lw).or_default();
                        if !e.iter().any(|x| x.class == i) {
                            e.push(NounEntry { class: i, plural: k > 0 });
                        }
                    }
                }
            }
        }
        for (i, b) in self.behaviors.iter().enumerate() {
            for w in &b.verb_forms {
                let e = self.verb_index.entry(w.to_lowercase()).or_default();
                if !e.contains(&i) {
                    e.push(i);
                }
            }
        }
    }

    pub fn classes(&self) -> &[ObjectFrameClass] {
        &self.classes
    }

    pub fn behaviors(&self) -> &[BehaviorClassDef] {
        &self.behaviors
    }

    pub fn class(&self, name: &str) -> Option<&ObjectFrameClass> {
        self.class_index.get(name).map(|&i| &self.classes[i])
    }

    pub fn behavior(&self, name: &str) -> Option<&BehaviorClassDef> {
        self.behavior_index.get(name).map(|&i| &self.behaviors[i])
    }

    /// File-order position of a behavior, used for deterministic ties.
    pub fn behavior_order(&self, name: &str) -> Option<usize> {
        self.behavior_index.get(name).copied()
    }

    pub fn diagnostics(&self) -> &[(String, Diagnostic)] {
        &self.diagnostics
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    /// Ancestors nearest first, excluding `name`.
    pub fn ancestors(&self, name: &str) -> Vec<&str> {
        match self.class_index.get(name) {
            Some(&i) => self.ancestors[i].iter().map(|&a| self.classes[a].name.as_str()).collect(),
            None => Vec::new(),
        }
    }

    /// `sub` equals `sup` or inherits from it.
    pub fn is_a(&self, sub: &str, sup: &str) -> bool {
        if sub == sup {
            return self.class_index.contains_key(sub);
        }
        match (self.class_index.get(sub), self.class_index.get(sup)) {
            (Some(&a), Some(&b)) => self.ancestors[a].contains(&b),
            _ => false,
        }
    }

    /// Either class is an ancestor of (or equal to) the other.
    pub fn related(&self, a: &str, b: &str) -> bool {
        self.is_a(a, b) || self.is_a(b, a)
    }

    fn self_and_ancestors(&self, name: &str) -> Vec<usize> {
        match self.class_index.get(name) {
            Some(&i) => std::iter::once(i).chain(self.ancestors[i].iter().copied()).collect(),
            None => Vec::new(),
        }
    }

    /// Nearest declaration of an attribute type, with its declaring class.
    pub fn attribute_type(&self, class: &str, attribute: &str) -> Option<(&str, &AttributeTypeDef)> {
        self.self_and_ancestors(class)
            .into_iter()
            .find_map(|i| self.classes[i].own_attribute_type(attribute).map(|a| (self.classes[i].name.as_str(), a)))
    }

    /// Every attribute type visible on a class, nearest declaration first.
    pub fn effective_attribute_types(&self, class: &str) -> Vec<(&str, &AttributeTypeDef)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for i in self.self_and_ancestors(class) {
            for a in &self.classes[i].attribute_types {
                if seen.insert(a.name.as_str()) {
                    out.push((self.classes[i].name.as_str(), a));
                }
            }
        }
        out
    }

    pub fn gender(&self, class: &str) -> Gender {
        self.self_and_ancestors(class).into_iter().find_map(|i| self.classes[i].gender).unwrap_or(Gender::Nonspecific)
    }

    pub fn structural_parent(&self, class: &str) -> String {
        self.self_and_ancestors(class)
            .into_iter()
            .find_map(|i| self.classes[i].structural_parent_bases.first().cloned())
            .unwrap_or_else(|| DEFAULT_STRUCTURAL_PARENT.to_string())
    }

    pub fn timeline_name(&self, structural_parent: &str) -> String {
        let ds = self
            .class(structural_parent)
            .and_then(|c| c.dimension_system_names.first().cloned())
            .unwrap_or_else(|| "Timeline".to_string());
        format!("{structural_parent}.{ds}")
    }

    /// Classes whose dictionary (or noun-flagged prior word) holds `word`,
    /// in file order.
    pub fn lookup_noun(&self, word: &str) -> Vec<NounMatch<'_>> {
        self.noun_index
            .get(&word.to_lowercase())
            .map(|v| {
                v.iter()
                    .map(|e| NounMatch { class: &self.classes[e.class], plural: e.plural, two_word: false })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Two-word lookup: classes whose prior word equals `prior` and whose
    /// dictionary holds `head` come first; otherwise falls back to `head`.
    pub fn lookup_noun_phrase(&self, prior: Option<&str>, head: &str) -> Vec<NounMatch<'_>> {
        let single = self.lookup_noun(head);
        if let Some(p) = prior {
            if let Some(pc) = self.prior_index.get(&p.to_lowercase()) {
                let two: Vec<NounMatch> = single
                    .iter()
                    .filter(|m| pc.iter().any(|(ci, _)| self.classes[*ci].name == m.class.name))
                    .map(|m| NounMatch { two_word: true, ..*m })
                    .collect();
                if !two.is_empty() {
                    return two;
                }
            }
        }
        single
    }

    pub fn is_prior_word(&self, word: &str) -> bool {
        self.prior_index.contains_key(&word.to_lowercase())
    }

    pub fn noun_words(&self) -> impl Iterator<Item = &str> {
        self.noun_index.keys().map(String::as_str)
    }

    pub fn verb_words(&self) -> impl Iterator<Item = &str> {
        self.verb_index.keys().map(String::as_str)
    }

    /// Behavior classes listing `word` among their verb forms, file order.
    pub fn verb_behaviors(&self, word: &str) -> Vec<&BehaviorClassDef> {
        self.verb_index
            .get(&word.to_lowercase())
            .map(|v| v.iter().map(|&i| &self.behaviors[i]).collect())
            .unwrap_or_default()
    }

    pub fn is_verb(&self, word: &str) -> bool {
        self.verb_index.contains_key(&word.to_lowercase())
    }

    /// Behavior classes matching the verb, negation and role classes, in
    /// file order. Every supplied class must be the rule's participant
    /// class for that role or inherit from it.
    pub fn search_behavior_classes(&self, q: &BehaviorQuery<'_>) -> Vec<&BehaviorClassDef> {
        self.verb_behaviors(q.verb)
            .into_iter()
            .filter(|b| q.negation.is_none_or(|n| n == b.negation))
            .filter(|b| q.direction == RuleDirection::Unspecified || b.causal_rule)
            .filter(|b| {
                Role::ALL.iter().all(|&role| {
                    let supplied = match role {
                        Role::Actor => &q.actor,
                        Role::Actee => &q.actee,
                        Role::Extra => &q.extra,
                    };
                    supplied.is_empty()
                        || match b.participant(role) {
                            Some(p) => supplied.iter().all(|c| self.is_a(c, &p.object_class)),
                            None => false,
                        }
                })
            })
            .collect()
    }
}

fn detect_cycle(classes: &[ObjectFrameClass], parents: &[Vec<usize>]) -> Result<(), LinkError> {
    // 0 = unvisited, 1 = on stack, 2 = done
    fn visit(i: usize, parents: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[i] = 1;
        stack.push(i);
        for &p in &parents[i] {
            if state[p] == 1 {
                let start = stack.iter().position(|&x| x == p).unwrap_or(0);
                let mut cyc = stack[start..].to_vec();
                cyc.push(p);
                return Some(cyc);
            }
            if state[p] == 0 {
                if let Some(c) = visit(p, parents, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[i] = 2;
        None
    }
    let mut state = vec![0u8; classes.len()];
    for i in 0..classes.len() {
        if state[i] == 0 {
            let mut stack = Vec::new();
            if let Some(c) = visit(i, parents, &mut state, &mut stack) {
                return Err(LinkError::CycleDetected(c.into_iter().map(|x| classes[x].name.clone()).collect()));
            }
        }
    }
    Ok(())
}
