//! Typed Star definitions and conversion from the untyped element tree.

use super::tree::{Element, EmptyElement, Node, Scalar, ValueEntry};
use super::{Diagnostic, StarError};
use crate::role::Role;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gender {
    Male,
    Female,
    Neuter,
    Nonspecific,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Male => "Male",
            Gender::Female => "Female",
            Gender::Neuter => "Neuter",
            Gender::Nonspecific => "Nonspecific",
        }
    }

    fn parse(s: &str) -> Option<Gender> {
        match s {
            "Male" => Some(Gender::Male),
            "Female" => Some(Gender::Female),
            "Neuter" => Some(Gender::Neuter),
            "Nonspecific" => Some(Gender::Nonspecific),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriorWordDef {
    pub words: Vec<String>,
    pub is_noun: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValueDef {
    pub name: String,
    pub dictionary: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeTypeDef {
    pub name: String,
    pub super_type: Option<String>,
    pub is_state: bool,
    pub optional_causal_feature: bool,
    pub values: Vec<ValueDef>,
}

impl AttributeTypeDef {
    pub fn has_value(&self, v: &str) -> bool {
        self.values.iter().any(|x| x.name == v)
    }

    /// Value whose dictionary contains `word`.
    pub fn value_for_word(&self, word: &str) -> Option<&ValueDef> {
        self.values.iter().find(|v| v.dictionary.iter().any(|w| w.eq_ignore_ascii_case(word)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectFrameClassDef {
    pub name: String,
    pub structure_trait: Option<String>,
    pub gender: Option<Gender>,
    pub dictionary_prior_word: Option<PriorWordDef>,
    /// One group per `Dictionary` element: singular first, plurals after.
    pub dictionary: Vec<Vec<String>>,
    pub higher_classes: Vec<String>,
    pub structural_parent_bases: Vec<String>,
    pub attribute_types: Vec<AttributeTypeDef>,
    /// Retained verbatim; only the names of nested systems are consumed.
    pub dimension_systems: Vec<Element>,
    pub structure: Vec<Element>,
}

impl ObjectFrameClassDef {
    pub fn new(name: impl Into<String>) -> Self {
        ObjectFrameClassDef {
            name: name.into(),
            structure_trait: None,
            gender: None,
            dictionary_prior_word: None,
            dictionary: Vec::new(),
            higher_classes: Vec::new(),
            structural_parent_bases: Vec::new(),
            attribute_types: Vec::new(),
            dimension_systems: Vec::new(),
            structure: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Symbol(String),
    Offset { symbol: String, delta: i64 },
    Number(String),
}

impl Expr {
    pub fn symbol(&self) -> Option<&str> {
        match self {
            Expr::Symbol(s) | Expr::Offset { symbol: s, .. } => Some(s),
            Expr::Number(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BindingMode {
    Val(String),
    Var(String),
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeBinding {
    pub attribute_type: String,
    pub mode: BindingMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulatedObjectClassDef {
    pub label: String,
    pub object_class: String,
    pub binder_source: bool,
    pub passive_participant: bool,
    pub extra_participant: bool,
    pub multiple: bool,
    pub dimension_system: Option<String>,
    pub bindings: Vec<AttributeBinding>,
}

impl PopulatedObjectClassDef {
    /// Role taken from the label suffix, falling back to the participant
    /// flags.
    pub fn role(&self) -> Role {
        if self.label.ends_with("Actor") {
            Role::Actor
        } else if self.label.ends_with("Actee") {
            Role::Actee
        } else if self.label.ends_with("Extra") {
            Role::Extra
        } else if self.passive_participant {
            Role::Actee
        } else if self.extra_participant {
            Role::Extra
        } else {
            Role::Actor
        }
    }

    /// Symbol bound by a `var` on the identity attribute, if any.
    pub fn identity_symbol(&self) -> Option<&str> {
        self.bindings.iter().find_map(|b| match &b.mode {
            BindingMode::Var(s) if b.attribute_type == IDENTITY_ATTRIBUTE => Some(s.as_str()),
            _ => None,
        })
    }
}

pub const IDENTITY_ATTRIBUTE: &str = "UniqueIdentityAttributeType";

#[derive(Debug, Clone, PartialEq)]
pub struct Parameter {
    pub slot: Role,
    pub class: String,
    pub symbol: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorClassReferenceDef {
    pub behavior: String,
    pub probability: Option<f64>,
    pub parameters: Vec<Parameter>,
}

impl BehaviorClassReferenceDef {
    pub fn parameter(&self, slot: Role) -> Option<&Parameter> {
        self.parameters.iter().find(|p| p.slot == slot)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateItem {
    Populated(PopulatedObjectClassDef),
    Reference(BehaviorClassReferenceDef),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorClassDef {
    pub name: String,
    pub causal_rule: bool,
    pub bridge_class: Option<String>,
    pub negation: bool,
    pub probability: Option<f64>,
    /// base, simple past, past participle, 3rd person singular, present participle
    pub verb_forms: Vec<String>,
    pub prior_states: Vec<StateItem>,
    pub post_states: Vec<StateItem>,
}

impl BehaviorClassDef {
    pub fn populated(items: &[StateItem]) -> impl Iterator<Item = &PopulatedObjectClassDef> {
        items.iter().filter_map(|i| match i {
            StateItem::Populated(p) => Some(p),
            _ => None,
        })
    }

    pub fn prior_populated(&self) -> impl Iterator<Item = &PopulatedObjectClassDef> {
        Self::populated(&self.prior_states)
    }

    pub fn post_populated(&self) -> impl Iterator<Item = &PopulatedObjectClassDef> {
        Self::populated(&self.post_states)
    }

    /// First nested reference in the prior states.
    pub fn nested_reference(&self) -> Option<&BehaviorClassReferenceDef> {
        self.prior_states.iter().find_map(|i| match i {
            StateItem::Reference(r) => Some(r),
            _ => None,
        })
    }

    /// First nested reference in the post states, used by forward rules.
    pub fn consequent_reference(&self) -> Option<&BehaviorClassReferenceDef> {
        self.post_states.iter().find_map(|i| match i {
            StateItem::Reference(r) => Some(r),
            _ => None,
        })
    }

    /// Prior-state populated class for `role`, else the post-state one.
    pub fn participant(&self, role: Role) -> Option<&PopulatedObjectClassDef> {
        self.prior_populated().find(|p| p.role() == role).or_else(|| self.post_populated().find(|p| p.role() == role))
    }

    /// Role whose populated class binds `symbol` as its identity.
    pub fn identity_role(&self, symbol: &str) -> Option<Role> {
        self.prior_populated()
            .chain(self.post_populated())
            .find(|p| p.identity_symbol() == Some(symbol))
            .map(|p| p.role())
    }

    pub fn probability_or_default(&self) -> f64 {
        self.probability.unwrap_or(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Definition {
    Class(ObjectFrameClassDef),
    Behavior(BehaviorClassDef),
}

impl Definition {
    pub fn name(&self) -> &str {
        match self {
            Definition::Class(c) => &c.name,
            Definition::Behavior(b) => &b.name,
        }
    }
}

// ---------------------------------------------------------------------------

pub(crate) struct Converter<'d> {
    pub diagnostics: &'d mut Vec<Diagnostic>,
}

fn unknown<T>(keyword: &str, line: usize, col: usize) -> Result<T, StarError> {
    Err(StarError::UnknownElement { keyword: keyword.to_string(), line, col })
}

fn syntax<T>(message: impl Into<String>, line: usize, col: usize) -> Result<T, StarError> {
    Err(StarError::UnboundSyntax { message: message.into(), line, col })
}

fn flag(e: &EmptyElement) -> Result<bool, StarError> {
    match e.attr("val") {
        Some(Scalar::Str(s)) | Some(Scalar::Ident(s)) => match s.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            other => syntax(format!("expected true/false, got {other:?}"), e.line, e.col),
        },
        _ => syntax(format!("<{}> needs val", e.key), e.line, e.col),
    }
}

fn str_attr(e: &EmptyElement, name: &str) -> Result<String, StarError> {
    match e.attr(name) {
        Some(v @ (Scalar::Str(_) | Scalar::Ident(_) | Scalar::Num(_))) => Ok(v.text()),
        _ => syntax(format!("<{}> needs {name}", e.key), e.line, e.col),
    }
}

fn probability(e: &EmptyElement) -> Result<f64, StarError> {
    let v = e.attr("expr").or_else(|| e.attr("val"));
    let text = match v {
        Some(s) => s.text(),
        None => return syntax("<Probability> needs expr", e.line, e.col),
    };
    match text.parse::<f64>() {
        Ok(p) if (0.0..=1.0).contains(&p) => Ok(p),
        _ => syntax(format!("probability {text:?} outside [0,1]"), e.line, e.col),
    }
}

/// Word lists reachable as `English ( { ... } )` under an element.
fn english_words(el: &Element) -> Result<Vec<Vec<String>>, StarError> {
    let mut groups = Vec::new();
    for child in &el.children {
        match child {
            Node::Element(e) if e.keyword == "English" => {
                for c in &e.children {
                    match c {
                        Node::Values(v, _, _) => groups.push(v.iter().map(|x| x.text.clone()).collect()),
                        Node::Element(x) => return unknown(&x.keyword, x.line, x.col),
                        Node::Empty(x) => return unknown(&x.key, x.line, x.col),
                    }
                }
            }
            Node::Element(e) => return unknown(&e.keyword, e.line, e.col),
            Node::Empty(e) if e.key == "DictionaryWordIsNoun" => {}
            Node::Empty(e) => return unknown(&e.key, e.line, e.col),
            Node::Values(_, l, c) => return syntax("word list must sit inside English ( )", *l, *c),
        }
    }
    Ok(groups)
}

fn name_list(el: &Element) -> Result<Vec<String>, StarError> {
    let mut out = Vec::new();
    for child in &el.children {
        match child {
            Node::Values(v, _, _) => out.extend(v.iter().map(|x| x.text.clone())),
            Node::Element(e) => return unknown(&e.keyword, e.line, e.col),
            Node::Empty(e) => return unknown(&e.key, e.line, e.col),
        }
    }
    Ok(out)
}

fn value_defs(entries: &[ValueEntry]) -> Result<Vec<ValueDef>, StarError> {
    entries
        .iter()
        .map(|v| {
            let dictionary = match &v.annotation {
                None => Vec::new(),
                Some(a) if a.keyword == "Dictionary" => english_words(a)?.into_iter().flatten().collect(),
                Some(a) => return unknown(&a.keyword, a.line, a.col),
            };
            Ok(ValueDef { name: v.text.clone(), dictionary })
        })
        .collect()
}

impl Converter<'_> {
    pub fn definition(&mut self, el: &Element) -> Result<Definition, StarError> {
        match el.keyword.as_str() {
            "ObjectFrameClass" => self.class(el).map(Definition::Class),
            "BehaviorClass" => self.behavior(el).map(Definition::Behavior),
            other => unknown(other, el.line, el.col),
        }
    }

    fn class(&mut self, el: &Element) -> Result<ObjectFrameClassDef, StarError> {
        let mut def = ObjectFrameClassDef::new(el.name.clone().unwrap_or_default());
        for child in &el.children {
            match child {
                Node::Empty(e) => match e.key.as_str() {
                    "StructureTrait" => def.structure_trait = Some(str_attr(e, "val")?),
                    "Gender" => {
                        let g = str_attr(e, "val")?;
                        def.gender = match Gender::parse(&g) {
                            Some(g) => Some(g),
                            None => return syntax(format!("unknown gender {g:?}"), e.line, e.col),
                        };
                    }
                    other => return unknown(other, e.line, e.col),
                },
                Node::Element(e) => match e.keyword.as_str() {
                    "DictionaryPriorWord" => {
                        let is_noun = e.children.iter().any(|c| {
                            matches!(c, Node::Empty(x) if x.key == "DictionaryWordIsNoun" && flag(x).unwrap_or(false))
                        });
                        let words = english_words(e)?.into_iter().flatten().collect();
                        def.dictionary_prior_word = Some(PriorWordDef { words, is_noun });
                    }
                    "Dictionary" => def.dictionary.extend(english_words(e)?),
                    "HigherClasses" => def.higher_classes.extend(name_list(e)?),
                    "StructuralParentClassesBase" => def.structural_parent_bases.extend(name_list(e)?),
                    "AttributeTypes" => {
                        for c in &e.children {
                            match c {
                                Node::Element(a) if a.keyword == "AttributeType" => {
                                    def.attribute_types.push(self.attribute_type(a)?)
                                }
                                Node::Element(a) if a.keyword == "DimensionSystems" || a.keyword == "Structure" => {
                                    self.diagnostics.push(Diagnostic {
                                        message: format!(
                                            "{} found inside AttributeTypes hoisted to class body",
                                            a.keyword
                                        ),
                                        line: a.line,
                                        col: a.col,
                                    });
                                    if a.keyword == "Structure" {
                                        def.structure.push(a.clone());
                                    } else {
                                        def.dimension_systems.push(a.clone());
                                    }
                                }
                                Node::Element(a) => return unknown(&a.keyword, a.line, a.col),
                                Node::Empty(a) => return unknown(&a.key, a.line, a.col),
                                Node::Values(_, l, c) => return syntax("stray value list", *l, *c),
                            }
                        }
                    }
                    "AttributeType" => {
                        self.diagnostics.push(Diagnostic {
                            message: format!(
                                "AttributeType {:?} outside AttributeTypes attached to the class",
                                e.name.clone().unwrap_or_default()
                            ),
                            line: e.line,
                            col: e.col,
                        });
                        def.attribute_types.push(self.attribute_type(e)?);
                    }
                    "DimensionSystems" => def.dimension_systems.push(e.clone()),
                    "Structure" => def.structure.push(e.clone()),
                    other => return unknown(other, e.line, e.col),
                },
                Node::Values(_, l, c) => return syntax("stray value list in class body", *l, *c),
            }
        }
        Ok(def)
    }

    fn attribute_type(&mut self, el: &Element) -> Result<AttributeTypeDef, StarError> {
        let mut def = AttributeTypeDef {
            name: el.name.clone().unwrap_or_default(),
            super_type: None,
            is_state: false,
            optional_causal_feature: false,
            values: Vec::new(),
        };
        for child in &el.children {
            match child {
                Node::Empty(e) => match e.key.as_str() {
                    "SuperType" => def.super_type = Some(str_attr(e, "val")?),
                    "StateAttributeType" => def.is_state = flag(e)?,
                    "OptionalCausalFeature" => def.optional_causal_feature = flag(e)?,
                    other => return unknown(other, e.line, e.col),
                },
                Node::Element(e) if e.keyword == "Values" => {
                    for c in &e.children {
                        match c {
                            Node::Values(v, _, _) => def.values.extend(value_defs(v)?),
                            Node::Element(x) => return unknown(&x.keyword, x.line, x.col),
                            Node::Empty(x) => return unknown(&x.key, x.line, x.col),
                        }
                    }
                }
                Node::Element(e) => return unknown(&e.keyword, e.line, e.col),
                Node::Values(_, l, c) => return syntax("value list must sit inside \"Values\" ( )", *l, *c),
            }
        }
        Ok(def)
    }

    fn behavior(&mut self, el: &Element) -> Result<BehaviorClassDef, StarError> {
        let mut def = BehaviorClassDef {
            name: el.name.clone().unwrap_or_default(),
            causal_rule: false,
            bridge_class: None,
            negation: false,
            probability: None,
            verb_forms: Vec::new(),
            prior_states: Vec::new(),
            post_states: Vec::new(),
        };
        // Which section orphaned state items attach to.
        let mut last_section_post = false;
        for child in &el.children {
            match child {
                Node::Empty(e) => match e.key.as_str() {
                    "CausalRule" => def.causal_rule = flag(e)?,
                    "Negation" => def.negation = flag(e)?,
                    "BridgeObjectFrameClass" => def.bridge_class = Some(str_attr(e, "ref")?),
                    "Probability" => def.probability = Some(probability(e)?),
                    other => return unknown(other, e.line, e.col),
                },
                Node::Element(e) => match e.keyword.as_str() {
                    "Dictionary" => {
                        let forms: Vec<String> = english_words(e)?.into_iter().flatten().collect();
                        if forms.len() != 5 {
                            return syntax(
                                format!("verb dictionary needs 5 forms, found {}", forms.len()),
                                e.line,
                                e.col,
                            );
                        }
                        def.verb_forms = forms;
                    }
                    "PriorStates" => {
                        def.prior_states.extend(self.state_items(e)?);
                        last_section_post = false;
                    }
                    "PostStates" => {
                        def.post_states.extend(self.state_items(e)?);
                        last_section_post = true;
                    }
                    "PopulatedObjectClass" | "BehaviorClassReference" => {
                        self.diagnostics.push(Diagnostic {
                            message: format!(
                                "{} {:?} outside a states section attached to {}",
                                e.keyword,
                                e.name.clone().unwrap_or_default(),
                                if last_section_post { "PostStates" } else { "PriorStates" }
                            ),
                            line: e.line,
                            col: e.col,
                        });
                        let item = self.state_item(e)?;
                        if last_section_post {
                            def.post_states.push(item);
                        } else {
                            def.prior_states.push(item);
                        }
                    }
                    other => return unknown(other, e.line, e.col),
                },
                Node::Values(_, l, c) => return syntax("stray value list in behavior body", *l, *c),
            }
        }
        if def.verb_forms.is_empty() {
            return syntax(format!("behavior {:?} has no verb dictionary", def.name), el.line, el.col);
        }
        Ok(def)
    }

    fn state_items(&mut self, el: &Element) -> Result<Vec<StateItem>, StarError> {
        let mut out = Vec::new();
        for child in &el.children {
            match child {
                Node::Element(e) => out.push(self.state_item(e)?),
                Node::Empty(e) => return unknown(&e.key, e.line, e.col),
                Node::Values(_, l, c) => return syntax("stray value list in states", *l, *c),
            }
        }
        Ok(out)
    }

    fn state_item(&mut self, el: &Element) -> Result<StateItem, StarError> {
        match el.keyword.as_str() {
            "PopulatedObjectClass" => self.populated(el).map(StateItem::Populated),
            "BehaviorClassReference" => self.reference(el).map(StateItem::Reference),
            other => unknown(other, el.line, el.col),
        }
    }

    fn populated(&mut self, el: &Element) -> Result<PopulatedObjectClassDef, StarError> {
        let mut def = PopulatedObjectClassDef {
            label: el.name.clone().unwrap_or_default(),
            object_class: String::new(),
            binder_source: false,
            passive_participant: false,
            extra_participant: false,
            multiple: false,
            dimension_system: None,
            bindings: Vec::new(),
        };
        for child in &el.children {
            let e = match child {
                Node::Empty(e) => e,
                Node::Element(e) => return unknown(&e.keyword, e.line, e.col),
                Node::Values(_, l, c) => return syntax("stray value list in populated class", *l, *c),
            };
            match e.key.as_str() {
                "ObjectFrameClass" => def.object_class = str_attr(e, "ref")?,
                "BinderSourceFlag" => def.binder_source = flag(e)?,
                "PassiveParticipant" => def.passive_participant = flag(e)?,
                "ExtraParticipant" => def.extra_participant = flag(e)?,
                "Multiple" => def.multiple = flag(e)?,
                "DimensionSystem" => def.dimension_system = Some(str_attr(e, "ref")?),
                "Attribute" => {
                    let attribute_type = str_attr(e, "ref")?;
                    let mode = if let Some(v) = e.attr("val") {
                        BindingMode::Val(v.text())
                    } else if let Some(v) = e.attr("var") {
                        match v {
                            Scalar::Ident(s) if s.ends_with('$') => BindingMode::Var(s.clone()),
                            _ => return syntax("var must name a symbol like a$", e.line, e.col),
                        }
                    } else if let Some(v) = e.attr("expr") {
                        BindingMode::Expr(match v {
                            Scalar::Ident(s) if s.ends_with('$') => Expr::Symbol(s.clone()),
                            Scalar::Offset { symbol, delta } => Expr::Offset { symbol: symbol.clone(), delta: *delta },
                            Scalar::Num(n) => Expr::Number(n.clone()),
                            _ => return syntax("malformed expr", e.line, e.col),
                        })
                    } else {
                        return syntax("<Attribute> needs val, var or expr", e.line, e.col);
                    };
                    def.bindings.push(AttributeBinding { attribute_type, mode });
                }
                other => return unknown(other, e.line, e.col),
            }
        }
        if def.object_class.is_empty() {
            return syntax(format!("populated class {:?} lacks ObjectFrameClass ref", def.label), el.line, el.col);
        }
        Ok(def)
    }

    fn reference(&mut self, el: &Element) -> Result<BehaviorClassReferenceDef, StarError> {
        let mut def = BehaviorClassReferenceDef { behavior: String::new(), probability: None, parameters: Vec::new() };
        for child in &el.children {
            let e = match child {
                Node::Empty(e) => e,
                Node::Element(e) => return unknown(&e.keyword, e.line, e.col),
                Node::Values(_, l, c) => return syntax("stray value list in reference", *l, *c),
            };
            let slot = match e.key.as_str() {
                "BehaviorClass" => {
                    def.behavior = str_attr(e, "ref")?;
                    continue;
                }
                "Probability" => {
                    def.probability = Some(probability(e)?);
                    continue;
                }
                "ParameterActor" => Role::Actor,
                "ParameterActee" => Role::Actee,
                "ParameterExtra" => Role::Extra,
                other => return unknown(other, e.line, e.col),
            };
            let symbol = match e.attr("expr") {
                None => None,
                Some(Scalar::Ident(s)) if s.ends_with('$') => Some(s.clone()),
                Some(_) => return syntax("parameter expr must be a symbol", e.line, e.col),
            };
            def.parameters.push(Parameter { slot, class: str_attr(e, "ref")?, symbol });
        }
        if def.behavior.is_empty() {
            return syntax("BehaviorClassReference lacks BehaviorClass ref", el.line, el.col);
        }
        Ok(def)
    }
}
