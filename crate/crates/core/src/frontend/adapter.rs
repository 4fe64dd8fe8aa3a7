//! Syntax tree to Semantic Normal Form.

use super::grammar::{MeaningUnit, NounPhraseNode, PredicateKind, SyntaxTree};
use crate::snf::*;

fn noun_phrase(np: &NounPhraseNode) -> NounPhrase {
    NounPhrase {
        specifiers: np.specifiers.clone(),
        qualifiers: np.qualifiers.clone(),
        head_words: np.head_words.clone(),
        postnominal_modifiers: np
            .postnominal
            .iter()
            .map(|m| PostnominalModifier {
                preposition: m.preposition.clone(),
                noun_phrase: noun_phrase(&m.noun_phrase),
                nested_pe: None,
            })
            .collect(),
    }
}

fn argument(
    designator: EntityDesignator,
    semantic_role: Role,
    extra_sub_role: Option<ExtraSubRole>,
    syntactic_role: SyntacticRole,
) -> EntityArgumentSpecifier {
    EntityArgumentSpecifier {
        entity_designators: vec![designator],
        nested_pe: None,
        semantic_role,
        extra_sub_role,
        syntactic_role,
        predicate_ordinal: 0,
    }
}

fn unit_to_pe(u: &MeaningUnit) -> PredicateExpression {
    let p = &u.predicate;
    let mut pe = PredicateExpression::new(u.mood);
    pe.introductory_word = u.introductory_word.clone();
    pe.first_token_index = u.first_token;

    let (role, main_verb) = match p.kind {
        PredicateKind::Verb | PredicateKind::Passive => {
            (PredicateRole::PredicateVerbTakingEntityArgument, p.main_verb.clone().unwrap_or_default())
        }
        PredicateKind::Attributive => (PredicateRole::PredicateToBeAttributive, p.aux_verb.clone().unwrap_or_default()),
        PredicateKind::IsA => (PredicateRole::PredicateToBeIsA, p.aux_verb.clone().unwrap_or_default()),
        PredicateKind::BeLocative => {
            (PredicateRole::PredicateToBeTakingEntityArgument, p.aux_verb.clone().unwrap_or_default())
        }
    };
    pe.predicate_specifiers.push(PredicateSpecifier {
        ordinal: 0,
        main_verb_word: main_verb,
        role,
        discourse_context: p.discourse_context,
        trailing_connective: None,
    });

    let subject = EntityDesignator::noun(noun_phrase(&u.subject));
    if p.kind == PredicateKind::Passive {
        pe.entity_arguments.push(argument(subject, Role::Actee, None, SyntacticRole::Subject));
        if let Some(agent) = &p.agent {
            pe.entity_arguments.push(argument(
                EntityDesignator::noun(noun_phrase(agent)),
                Role::Actor,
                None,
                SyntacticRole::Other,
            ));
        }
    } else {
        pe.entity_arguments.push(argument(subject, Role::Actor, None, SyntacticRole::Subject));
    }
    match (&p.indirect_object, &p.direct_object) {
        (Some(io), Some(d)) => {
            pe.entity_arguments.push(argument(
                EntityDesignator::noun(noun_phrase(io)),
                Role::Actee,
                None,
                SyntacticRole::IndirectObject,
            ));
            pe.entity_arguments.push(argument(
                EntityDesignator::noun(noun_phrase(d)),
                Role::Extra,
                Some(ExtraSubRole::IndirectObject),
                SyntacticRole::DirectObject,
            ));
        }
        (None, Some(d)) => {
            let syn = if p.kind == PredicateKind::IsA { SyntacticRole::Other } else { SyntacticRole::DirectObject };
            pe.entity_arguments.push(argument(EntityDesignator::noun(noun_phrase(d)), Role::Actee, None, syn));
        }
        _ => {}
    }
    for c in &p.complements {
        pe.entity_arguments.push(argument(
            EntityDesignator::complement(c.preposition.clone(), noun_phrase(&c.noun_phrase)),
            Role::Extra,
            ExtraSubRole::from_preposition(&c.preposition),
            SyntacticRole::Other,
        ));
    }

    if let Some(adj) = &p.adjective {
        let degree = p.post_verb_adverbs.first().map(|d| if d == "so" { "too".to_string() } else { d.clone() });
        pe.attributive_arguments.push(AttributiveArgumentSpecifier {
            role: AttributiveRole::Attribute,
            attribute_designators: vec![AttributeDesignator { degree_word: degree, adjective_word: adj.clone() }],
        });
    }

    let clause = |introducer: &str, unit: &MeaningUnit, position| ModificationSpecifier {
        adverbial_phrase: None,
        adverbial_expression: Some(AdverbialExpression {
            introducer: introducer.to_string(),
            predicate_expression: Box::new(unit_to_pe(unit)),
        }),
        nested_pe: None,
        syntactic_position: position,
        predicate_ordinal: 0,
    };
    for a in &u.leading_adverbials {
        pe.modification_specifiers.push(clause(&a.introducer, &a.unit, SyntacticPosition::Leading));
    }
    for a in &p.pre_verb_adverbs {
        pe.modification_specifiers.push(ModificationSpecifier {
            adverbial_phrase: Some(a.clone()),
            adverbial_expression: None,
            nested_pe: None,
            syntactic_position: SyntacticPosition::PreVerb,
            predicate_ordinal: 0,
        });
    }
    for a in &u.final_adverbials {
        pe.modification_specifiers.push(clause(&a.introducer, &a.unit, SyntacticPosition::Final));
    }
    pe
}

/// Maps a parsed sentence to its root PE, with the flattened order filled in.
pub fn tree_to_snf(tree: &SyntaxTree) -> PredicateExpression {
    let mut pe = unit_to_pe(&tree.root);
    pe.pe_pointer_order = compute_pe_order(&pe);
    pe
}
