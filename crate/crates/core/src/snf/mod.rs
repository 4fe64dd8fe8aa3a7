//! Semantic Normal Form: predicate expressions and their arguments, the
//! block text notation, validation and the flattened PE order.

mod text;
mod validate;

use std::fmt;
use std::str::FromStr;

pub use crate::role::Role;
pub use text::{parse_snf, serialize_snf, SnfError};
pub use validate::{compute_pe_order, flatten_pe_order, resolve_pe_path, validate_pe, SnfDiagnostic};

macro_rules! name_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => stringify!($variant)),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $(stringify!($variant) => Ok($name::$variant),)+
                    other => Err(format!(concat!("unknown ", stringify!($name), " {:?}"), other)),
                }
            }
        }
    };
}

name_enum!(GrammaticalMood { Indicative, Interrogative, Imperative });

name_enum!(PredicateRole {
    PredicateToBeAttributive,
    PredicateToBeIsA,
    PredicateCapability,
    PredicateHasAVerb,
    PredicateToBeTakingEntityArgument,
    PredicateVerbTakingEntityArgument,
});

name_enum!(
    /// Mood plus tense and aspect.
    DiscourseContext {
        DeclarativePastSimple,
        DeclarativePastPerfect,
        DeclarativePastProgressive,
        DeclarativePastPerfectProgressive,
        DeclarativePresentSimple,
        DeclarativePresentPerfect,
        DeclarativePresentProgressive,
        DeclarativePresentPerfectProgressive,
        DeclarativeFutureSimple,
        DeclarativeFuturePerfect,
        DeclarativeFutureProgressive,
        DeclarativeFuturePerfectProgressive,
        InterrogativePastSimple,
        InterrogativePastPerfect,
        InterrogativePastProgressive,
        InterrogativePastPerfectProgressive,
        Imperative,
        Hypothetical,
    }
);

impl DiscourseContext {
    /// Rendering used by the instance-model export, e.g. `Declarative-PastSimple`.
    pub fn mood_and_tense(self) -> String {
        let s = self.as_str();
        for prefix in ["Declarative", "Interrogative"] {
            if let Some(rest) = s.strip_prefix(prefix) {
                return format!("{prefix}-{rest}");
            }
        }
        s.to_string()
    }

    pub fn from_mood_and_tense(s: &str) -> Option<DiscourseContext> {
        s.replace('-', "").parse().ok()
    }
}

name_enum!(ExtraSubRole {
    IndirectObject,
    About,
    Above,
    Around,
    At,
    Before,
    By,
    For,
    From,
    Into,
    Of,
    Over,
    To,
    Under,
    In,
    On,
    After,
    With,
});

impl ExtraSubRole {
    pub fn from_preposition(word: &str) -> Option<ExtraSubRole> {
        let w = word.to_ascii_lowercase();
        ExtraSubRole::ALL
            .iter()
            .copied()
            .find(|r| *r != ExtraSubRole::IndirectObject && r.as_str().eq_ignore_ascii_case(&w))
    }

    /// Spatial containment or placement, the sub-roles a complement can
    /// carry when it stands in for a missing actee.
    pub fn is_locative(self) -> bool {
        matches!(
            self,
            ExtraSubRole::In
                | ExtraSubRole::Into
                | ExtraSubRole::On
                | ExtraSubRole::At
                | ExtraSubRole::Under
                | ExtraSubRole::Over
                | ExtraSubRole::Above
                | ExtraSubRole::Around
        )
    }
}

name_enum!(SyntacticRole { Subject, DirectObject, IndirectObject, Other });

name_enum!(HeadKind { Pronoun, CommonNoun, ProperNoun });

name_enum!(AttributiveRole { Attribute, HigherClass });

name_enum!(SyntacticPosition { Leading, PreVerb, InVerbSequence, PostVerb, Final });

name_enum!(CommUnitKind { Sentence, URL, EmailAddress, SingleWordOnLine, TwoWordPhraseOnLine, AuthorInfo });

#[derive(Debug, Clone, PartialEq)]
pub struct PredicateSpecifier {
    pub ordinal: usize,
    pub main_verb_word: String,
    pub role: PredicateRole,
    pub discourse_context: DiscourseContext,
    pub trailing_connective: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeadWord {
    pub word: String,
    pub kind: HeadKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PostnominalModifier {
    pub preposition: String,
    pub noun_phrase: NounPhrase,
    pub nested_pe: Option<Box<PredicateExpression>>,
}

impl PostnominalModifier {
    pub fn text(&self) -> String {
        format!("{} {}", self.preposition, self.noun_phrase.text())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NounPhrase {
    pub specifiers: Vec<String>,
    pub qualifiers: Vec<String>,
    pub head_words: Vec<HeadWord>,
    pub postnominal_modifiers: Vec<PostnominalModifier>,
}

impl NounPhrase {
    pub fn head(&self) -> Option<&HeadWord> {
        self.head_words.last()
    }

    pub fn is_pronoun(&self) -> bool {
        self.head().is_some_and(|h| h.kind == HeadKind::Pronoun)
    }

    pub fn text(&self) -> String {
        let mut words: Vec<String> = self.specifiers.clone();
        words.extend(self.qualifiers.iter().cloned());
        words.extend(self.head_words.iter().map(|h| h.word.clone()));
        for m in &self.postnominal_modifiers {
            words.push(m.text());
        }
        words.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrepositionalComplement {
    pub preposition: String,
    pub noun_phrase: NounPhrase,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EntityDesignator {
    pub noun_phrase: Option<NounPhrase>,
    pub prepositional_complement: Option<PrepositionalComplement>,
    pub trailing_connective: Option<String>,
}

impl EntityDesignator {
    pub fn noun(np: NounPhrase) -> Self {
        EntityDesignator { noun_phrase: Some(np), ..Default::default() }
    }

    pub fn complement(preposition: impl Into<String>, np: NounPhrase) -> Self {
        EntityDesignator {
            prepositional_complement: Some(PrepositionalComplement {
                preposition: preposition.into(),
                noun_phrase: np,
            }),
            ..Default::default()
        }
    }

    /// The noun phrase, looking through a prepositional complement.
    pub fn effective_noun_phrase(&self) -> Option<&NounPhrase> {
        self.noun_phrase.as_ref().or(self.prepositional_complement.as_ref().map(|p| &p.noun_phrase))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntityArgumentSpecifier {
    pub entity_designators: Vec<EntityDesignator>,
    pub nested_pe: Option<Box<PredicateExpression>>,
    pub semantic_role: Role,
    pub extra_sub_role: Option<ExtraSubRole>,
    pub syntactic_role: SyntacticRole,
    pub predicate_ordinal: usize,
}

impl EntityArgumentSpecifier {
    pub fn noun_phrase(&self) -> Option<&NounPhrase> {
        self.entity_designators.first().and_then(|d| d.effective_noun_phrase())
    }

    pub fn is_pronoun(&self) -> bool {
        self.noun_phrase().is_some_and(NounPhrase::is_pronoun)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeDesignator {
    /// Normalized degree word: "so" is stored as "too".
    pub degree_word: Option<String>,
    pub adjective_word: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributiveArgumentSpecifier {
    pub role: AttributiveRole,
    pub attribute_designators: Vec<AttributeDesignator>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdverbialExpression {
    pub introducer: String,
    pub predicate_expression: Box<PredicateExpression>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModificationSpecifier {
    pub adverbial_phrase: Option<String>,
    pub adverbial_expression: Option<AdverbialExpression>,
    pub nested_pe: Option<Box<PredicateExpression>>,
    pub syntactic_position: SyntacticPosition,
    pub predicate_ordinal: usize,
}

/// One step from a PE to a PE nested inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeStep {
    /// `entity_arguments[i].nested_pe`
    Argument(usize),
    /// `modification_specifiers[i].nested_pe`
    Modifier(usize),
    /// `modification_specifiers[i].adverbial_expression`
    Expression(usize),
    /// `entity_arguments[a].entity_designators[d]` noun phrase modifier `m`
    Postnominal(usize, usize, usize),
}

/// Path from a root PE; the empty path designates the root itself.
pub type PePath = Vec<PeStep>;

#[derive(Debug, Clone, PartialEq)]
pub struct PredicateExpression {
    pub grammatical_mood: GrammaticalMood,
    pub introductory_word: Option<String>,
    pub predicate_specifiers: Vec<PredicateSpecifier>,
    pub entity_arguments: Vec<EntityArgumentSpecifier>,
    pub attributive_arguments: Vec<AttributiveArgumentSpecifier>,
    pub modification_specifiers: Vec<ModificationSpecifier>,
    /// Root PEs list themselves and every nested PE in syntactic order;
    /// nested PEs leave this empty.
    pub pe_pointer_order: Vec<PePath>,
    pub first_token_index: usize,
}

impl PredicateExpression {
    pub fn new(mood: GrammaticalMood) -> Self {
        PredicateExpression {
            grammatical_mood: mood,
            introductory_word: None,
            predicate_specifiers: Vec::new(),
            entity_arguments: Vec::new(),
            attributive_arguments: Vec::new(),
            modification_specifiers: Vec::new(),
            pe_pointer_order: Vec::new(),
            first_token_index: 0,
        }
    }

    pub fn main_predicate(&self) -> Option<&PredicateSpecifier> {
        self.predicate_specifiers.first()
    }

    pub fn is_negated(&self) -> bool {
        self.modification_specifiers
            .iter()
            .any(|m| m.adverbial_phrase.as_deref().is_some_and(|a| a.eq_ignore_ascii_case("not")))
    }

    /// Direct children, each with its step.
    pub fn children(&self) -> Vec<(PeStep, &PredicateExpression)> {
        let mut out = Vec::new();
        for (i, a) in self.entity_arguments.iter().enumerate() {
            if let Some(pe) = &a.nested_pe {
                out.push((PeStep::Argument(i), pe.as_ref()));
            }
            for (d, des) in a.entity_designators.iter().enumerate() {
                if let Some(np) = des.effective_noun_phrase() {
                    for (m, pm) in np.postnominal_modifiers.iter().enumerate() {
                        if let Some(pe) = &pm.nested_pe {
                            out.push((PeStep::Postnominal(i, d, m), pe.as_ref()));
                        }
                    }
                }
            }
        }
        for (i, m) in self.modification_specifiers.iter().enumerate() {
            if let Some(ae) = &m.adverbial_expression {
                out.push((PeStep::Expression(i), ae.predicate_expression.as_ref()));
            }
            if let Some(pe) = &m.nested_pe {
                out.push((PeStep::Modifier(i), pe.as_ref()));
            }
        }
        out
    }

    pub fn child(&self, step: PeStep) -> Option<&PredicateExpression> {
        match step {
            PeStep::Argument(i) => self.entity_arguments.get(i)?.nested_pe.as_deref(),
            PeStep::Modifier(i) => self.modification_specifiers.get(i)?.nested_pe.as_deref(),
            PeStep::Expression(i) => self
                .modification_specifiers
                .get(i)?
                .adverbial_expression
                .as_ref()
                .map(|a| a.predicate_expression.as_ref()),
            PeStep::Postnominal(a, d, m) => self
                .entity_arguments
                .get(a)?
                .entity_designators
                .get(d)?
                .effective_noun_phrase()?
                .postnominal_modifiers
                .get(m)?
                .nested_pe
                .as_deref(),
        }
    }

    /// Every PE reachable from this one, including itself, depth first.
    pub fn reachable(&self) -> Vec<(PePath, &PredicateExpression)> {
        let mut out = vec![(Vec::new(), self)];
        let mut i = 0;
        while i < out.len() {
            let (path, pe) = (out[i].0.clone(), out[i].1);
            for (step, child) in pe.children() {
                let mut p = path.clone();
                p.push(step);
                out.push((p, child));
            }
            i += 1;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub content: String,
    pub starts_paragraph: bool,
    pub in_quotation: bool,
    pub predicate_expressions: Vec<PredicateExpression>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommunicationUnit {
    pub kind: CommUnitKind,
    /// First and last token index, inclusive.
    pub token_span: (usize, usize),
    pub sentence: Option<Sentence>,
}
