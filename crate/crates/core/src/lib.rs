//! Pronoun resolution driven by a Star ontology.
//!
//! Text is tokenized, parsed by a restricted English grammar into Semantic
//! Normal Form, and fed to an engine that instantiates objects, applies
//! behavior classes to a timeline-based instance model and resolves each
//! pronoun against spanning information left behind by earlier clauses.

pub mod api;
pub mod engine;
pub mod frontend;
pub mod model;
pub mod reasoning;
pub mod resolve;
pub mod role;
pub mod snf;
pub mod star;

pub use api::{answer_question, disambiguate, Session};
pub use role::Role;
pub use star::{load_ontology_dir, parse_star, Ontology};
