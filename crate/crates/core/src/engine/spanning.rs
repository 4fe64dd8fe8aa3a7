//! Spanning information: what earlier meaning units left behind for
//! pronoun resolution.

use crate::model::{AppliedRule, TimePoint};
use crate::role::Role;
use crate::snf::{DiscourseContext, ExtraSubRole, SyntacticRole};

/// An instance as it took part in one predicate expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectInstanceSemanticWrapper {
    pub instance_id: String,
    pub semantic_role: Role,
    pub extra_sub_role: Option<ExtraSubRole>,
    pub syntactic_role: SyntacticRole,
    pub predicate_ordinal: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanningInformation {
    pub saved_discourse_context: DiscourseContext,
    /// Index of the master-model context the unit wrote into.
    pub most_recent_context: usize,
    pub structural_parent: String,
    pub timepoint: TimePoint,
    pub wrappers: Vec<ObjectInstanceSemanticWrapper>,
    /// Main verb word with the behavior classes found for it, best first.
    pub behavior_classes_per_verb: Vec<(String, Vec<String>)>,
    pub applied: Option<AppliedRule>,
}

impl SpanningInformation {
    /// Behavior classes recorded for the unit's verbs, in order.
    pub fn behavior_names(&self) -> impl Iterator<Item = &str> {
        self.behavior_classes_per_verb.iter().flat_map(|(_, v)| v.iter().map(String::as_str))
    }

    pub fn wrapper_with_role(&self, role: Role) -> Option<&ObjectInstanceSemanticWrapper> {
        self.wrappers.iter().find(|w| w.semantic_role == role)
    }

    /// Wrappers ordered Actor first, then Actee, then Extra, keeping
    /// document order within each role.
    pub fn candidates(&self) -> Vec<&ObjectInstanceSemanticWrapper> {
        let mut out: Vec<&ObjectInstanceSemanticWrapper> = Vec::new();
        for role in Role::ALL {
            out.extend(self.wrappers.iter().filter(|w| w.semantic_role == role));
        }
        out
    }
}

pub const STACK_HIGH_WATER: usize = 15;
pub const STACK_LOW_WATER: usize = 10;

/// LIFO stack of spanning information with a read cursor.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpanningInfoStack {
    items: Vec<SpanningInformation>,
    /// Offset from the top of the next item `current` returns.
    cursor: usize,
}

impl SpanningInfoStack {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn push(&mut self, info: SpanningInformation) {
        self.items.push(info);
        self.trim();
    }

    pub fn pop(&mut self) -> Option<SpanningInformation> {
        self.cursor = 0;
        self.items.pop()
    }

    /// Once the stack exceeds the high-water mark, the oldest entries are
    /// dropped down to the low-water mark.
    pub fn trim(&mut self) {
        if self.items.len() > STACK_HIGH_WATER {
            let excess = self.items.len() - STACK_LOW_WATER;
            self.items.drain(..excess);
            self.cursor = 0;
        }
    }

    pub fn reset_current_to_top(&mut self) {
        self.cursor = 0;
    }

    /// Returns the item under the cursor and moves toward the bottom.
    pub fn current(&mut self) -> Option<&SpanningInformation> {
        let idx = self.items.len().checked_sub(self.cursor + 1)?;
        self.cursor += 1;
        self.items.get(idx)
    }

    pub fn top(&self) -> Option<&SpanningInformation> {
        self.items.last()
    }

    /// Newest to oldest.
    pub fn iter(&self) -> impl Iterator<Item = &SpanningInformation> {
        self.items.iter().rev()
    }
}
