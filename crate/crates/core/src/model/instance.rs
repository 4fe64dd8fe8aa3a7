//! Instance-model data: object instances, structural parents, contexts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::ModelError;
use crate::snf::DiscourseContext;
use crate::star::Ontology;

/// Enumerated timeline value, rendered `T01`..`T99`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimePoint(pub u32);

impl TimePoint {
    pub const FIRST: TimePoint = TimePoint(1);
    pub const LAST: TimePoint = TimePoint(99);

    pub fn next(self) -> Option<TimePoint> {
        (self < Self::LAST).then_some(TimePoint(self.0 + 1))
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:02}", self.0)
    }
}

impl FromStr for TimePoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = s
            .strip_prefix('T')
            .filter(|d| d.len() == 2)
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|n| (1..=99).contains(n));
        n.map(TimePoint).ok_or_else(|| format!("bad timepoint {s:?}"))
    }
}

/// One value-carrying attribute, tagged with the class that declares its type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttributeValue {
    pub owner_class: String,
    pub attribute_type: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectInstance {
    pub reference_class: String,
    pub content_string: String,
    pub unique_id: String,
    pub multiple: bool,
    /// Exported attribute pairs in write order.
    pub attributes: Vec<AttributeValue>,
    /// Symbol bound to this instance by the last rule application.
    pub identity_symbol: Option<String>,
    /// Resolved positional and temporal bindings, not exported.
    pub positions: BTreeMap<String, i64>,
    /// Behavior classes applied with this instance as a participant.
    pub behavior_list: Vec<String>,
}

impl ObjectInstance {
    pub fn attribute(&self, attribute_type: &str) -> Option<&str> {
        self.attributes.iter().find(|a| a.attribute_type == attribute_type).map(|a| a.value.as_str())
    }

    pub fn has_value(&self, value: &str) -> bool {
        self.attributes.iter().any(|a| a.value == value)
    }

    /// Upserts after checking the value against the effective value set.
    pub fn write(&mut self, ontology: &Ontology, attribute_type: &str, value: &str) -> Result<(), ModelError> {
        let (owner, def) = ontology.attribute_type(&self.reference_class, attribute_type).ok_or_else(|| {
            ModelError::UnknownAttribute { class: self.reference_class.clone(), attribute: attribute_type.to_string() }
        })?;
        if !def.has_value(value) {
            return Err(ModelError::IllegalValue { attribute: attribute_type.to_string(), value: value.to_string() });
        }
        match self.attributes.iter_mut().find(|a| a.attribute_type == attribute_type) {
            Some(a) => a.value = value.to_string(),
            None => self.attributes.push(AttributeValue {
                owner_class: owner.to_string(),
                attribute_type: attribute_type.to_string(),
                value: value.to_string(),
            }),
        }
        Ok(())
    }
}

/// Holder of the components present at one timepoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructuralParentInstance {
    pub parent_class: String,
    pub components: Vec<ObjectInstance>,
}

/// Record of one behavior-class application inside a context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Application {
    pub behavior: String,
    pub at: TimePoint,
    pub instance_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    pub unique_id: String,
    pub discourse_context: DiscourseContext,
    pub leading_class_name: Option<String>,
    pub structural_parent: String,
    pub timeline: String,
    pub timepoints: BTreeMap<TimePoint, StructuralParentInstance>,
    pub applications: Vec<Application>,
}

impl Context {
    pub fn latest(&self) -> Option<TimePoint> {
        self.timepoints.keys().next_back().copied()
    }

    /// Latest timepoint, creating `T01` for an empty context.
    pub fn current(&mut self) -> TimePoint {
        match self.latest() {
            Some(t) => t,
            None => {
                self.timepoints.insert(
                    TimePoint::FIRST,
                    StructuralParentInstance { parent_class: self.structural_parent.clone(), components: Vec::new() },
                );
                TimePoint::FIRST
            }
        }
    }

    /// Adds an instance to the latest timepoint.
    pub fn place(&mut self, instance: ObjectInstance) -> TimePoint {
        let at = self.current();
        if let Some(sp) = self.timepoints.get_mut(&at) {
            sp.components.push(instance);
        }
        at
    }

    pub fn instance(&self, at: TimePoint, id: &str) -> Option<&ObjectInstance> {
        self.timepoints.get(&at)?.components.iter().find(|c| c.unique_id == id)
    }

    pub fn instance_mut(&mut self, at: TimePoint, id: &str) -> Option<&mut ObjectInstance> {
        self.timepoints.get_mut(&at)?.components.iter_mut().find(|c| c.unique_id == id)
    }

    /// Most recent copy of an instance.
    pub fn find(&self, id: &str) -> Option<&ObjectInstance> {
        self.timepoints.values().rev().find_map(|sp| sp.components.iter().find(|c| c.unique_id == id))
    }

    /// Latest copies of every instance, in first-appearance order.
    pub fn instances(&self) -> Vec<&ObjectInstance> {
        let mut out: Vec<&ObjectInstance> = Vec::new();
        for sp in self.timepoints.values() {
            for c in &sp.components {
                if !out.iter().any(|o| o.unique_id == c.unique_id) {
                    out.push(c);
                }
            }
        }
        out.into_iter().map(|o| self.find(&o.unique_id).unwrap_or(o)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InstanceModel {
    pub text_source: String,
    pub document_file: Option<String>,
    pub contexts: Vec<Context>,
    /// Last issued instance number per class.
    pub counters: BTreeMap<String, u32>,
}

impl Default for InstanceModel {
    fn default() -> Self {
        InstanceModel {
            text_source: "SubmittedFromWebClient".to_string(),
            document_file: None,
            contexts: Vec::new(),
            counters: BTreeMap::new(),
        }
    }
}

impl InstanceModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fresh instance with an id unique within the model.
    pub fn instantiate_object(&mut self, class: &str, word: &str, multiple: bool) -> ObjectInstance {
        let n = self.counters.entry(class.to_string()).or_insert(0);
        *n += 1;
        ObjectInstance {
            reference_class: class.to_string(),
            content_string: word.to_string(),
            unique_id: format!("{class}-{n}"),
            multiple,
            attributes: Vec::new(),
            identity_symbol: None,
            positions: BTreeMap::new(),
            behavior_list: Vec::new(),
        }
    }

    pub fn new_context(
        &mut self,
        discourse_context: DiscourseContext,
        structural_parent: &str,
        timeline: &str,
    ) -> usize {
        self.contexts.push(Context {
            unique_id: (self.contexts.len() + 1).to_string(),
            discourse_context,
            leading_class_name: None,
            structural_parent: structural_parent.to_string(),
            timeline: timeline.to_string(),
            timepoints: BTreeMap::new(),
            applications: Vec::new(),
        });
        self.contexts.len() - 1
    }

    /// Context index holding the instance.
    pub fn context_of(&self, id: &str) -> Option<usize> {
        self.contexts.iter().position(|c| c.find(id).is_some())
    }

    pub fn find(&self, id: &str) -> Option<&ObjectInstance> {
        self.contexts.iter().find_map(|c| c.find(id))
    }

    /// Writes an attribute at every timepoint up to the one at which the
    /// instance last took part in a behavior application, or at every
    /// timepoint if it never did.
    pub fn set_attribute(
        &mut self,
        ontology: &Ontology,
        id: &str,
        attribute_type: &str,
        value: &str,
    ) -> Result<ObjectInstance, ModelError> {
        let ci = self.context_of(id).ok_or_else(|| ModelError::UnknownInstance(id.to_string()))?;
        let ctx = &mut self.contexts[ci];
        let limit = ctx
            .applications
            .iter()
            .rev()
            .find(|a| a.instance_ids.iter().any(|i| i == id))
            .map(|a| a.at)
            .unwrap_or(TimePoint::LAST);
        let mut last = None;
        for (_, sp) in ctx.timepoints.range_mut(..=limit) {
            if let Some(inst) = sp.components.iter_mut().find(|c| c.unique_id == id) {
                inst.write(ontology, attribute_type, value)?;
                last = Some(inst.clone());
            }
        }
        last.ok_or_else(|| ModelError::UnknownInstance(id.to_string()))
    }
}
