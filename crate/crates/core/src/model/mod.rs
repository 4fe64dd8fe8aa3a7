//! Timeline-indexed instance models, behavior-class application and the
//! XML export.

mod apply;
mod instance;
mod xml;

use thiserror::Error;

use crate::role::Role;

pub use apply::{apply_behavior_class, AppliedRule, AttributeWrite, RoleBindings};
pub use instance::{
    Application, AttributeValue, Context, InstanceModel, ObjectInstance, StructuralParentInstance, TimePoint,
};
pub use xml::{export_xml, read_xml, XML_HEADER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("instance of {class} cannot fill the {role} role")]
    RoleMismatch { role: Role, class: String },
    #[error("timepoint {0} does not exist")]
    MissingTimepoint(TimePoint),
    #[error("timepoint {0} already exists")]
    TimelineConflict(TimePoint),
    #[error("timeline has no room after T99")]
    TimelineFull,
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("{class} has no attribute type {attribute:?}")]
    UnknownAttribute { class: String, attribute: String },
    #[error("{value:?} is not a value of {attribute}")]
    IllegalValue { attribute: String, value: String },
    #[error("instance model XML, line {line}: {message}")]
    Xml { line: usize, message: String },
}
