use ross_core::frontend::{
    bracketed_tree_to_snf, parse_document, parse_sentence, segment_communication_units, tokenize, tree_to_snf,
    FrontendError, Lexicon,
};
use ross_core::snf::*;
use ross_core::Ontology;

const TROPHY_TREE: &str = "(ROOT
 (S
  (NP (DT The) (NN trophy))
  (VP (VBZ does) (RB n't)
   (VP (VB fit)
    (PP (IN in)
     (NP (DT the) (JJ brown) (NN suitcase)))
    (SBAR (IN because)
     (S
      (NP (PRP it))
      (VP (VBZ 's)
       (ADJP (RB too) (JJ small)))))))
  (. .)))";

fn lex() -> Lexicon {
    Lexicon::from_ontology(&Ontology::bundled())
}

fn root_pe(text: &str) -> Result<PredicateExpression, FrontendError> {
    let lex = lex();
    let tokens = tokenize(text);
    let units = segment_communication_units(&tokens);
    assert_eq!(units.len(), 1, "{text}");
    Ok(tree_to_snf(&parse_sentence(&units[0], &tokens, &lex)?))
}

fn heads(pe: &PredicateExpression, role: Role) -> Vec<String> {
    pe.entity_arguments
        .iter()
        .filter(|a| a.semantic_role == role)
        .filter_map(|a| a.noun_phrase().and_then(|np| np.head()).map(|h| h.word.clone()))
        .collect()
}

fn final_clause(pe: &PredicateExpression) -> (&str, &PredicateExpression) {
    let m = pe
        .modification_specifiers
        .iter()
        .find(|m| m.syntactic_position == SyntacticPosition::Final)
        .expect("final clause");
    let e = m.adverbial_expression.as_ref().unwrap();
    (e.introducer.as_str(), &e.predicate_expression)
}

#[test]
fn trophy_sentence_tree_and_snf() {
    let text = "The trophy doesn't fit in the brown suitcase because it's too big.";
    let lex = lex();
    let tokens = tokenize(text);
    let units = segment_communication_units(&tokens);
    let tree = parse_sentence(&units[0], &tokens, &lex).unwrap();
    let printed = tree.to_string();
    assert!(printed.contains("Specifier List:"), "{printed}");
    assert!(printed.contains("Head word: suitcase"));
    assert!(printed.contains("Introductory word: because"));

    let pe = tree_to_snf(&tree);
    assert!(validate_pe(&pe).is_empty(), "{:?}", validate_pe(&pe));
    assert_eq!(heads(&pe, Role::Actor), ["trophy"]);
    let extra = pe.entity_arguments.iter().find(|a| a.semantic_role == Role::Extra).unwrap();
    assert_eq!(extra.extra_sub_role, Some(ExtraSubRole::In));
    assert_eq!(extra.noun_phrase().unwrap().qualifiers, ["brown"]);
    assert!(pe.is_negated());
    let (intro, nested) = final_clause(&pe);
    assert_eq!(intro, "because");
    assert_eq!(nested.main_predicate().unwrap().role, PredicateRole::PredicateToBeAttributive);
    let attr = &nested.attributive_arguments[0].attribute_designators[0];
    assert_eq!((attr.degree_word.as_deref(), attr.adjective_word.as_str()), (Some("too"), "big"));
    assert!(nested.entity_arguments[0].is_pronoun());
}

#[test]
fn pay_sentence_has_after_clause_with_pronoun_subject() {
    let pe = root_pe("Joe paid the detective after he received the final report on the case.").unwrap();
    assert_eq!(heads(&pe, Role::Actor), ["Joe"]);
    assert_eq!(heads(&pe, Role::Actee), ["detective"]);
    let (intro, nested) = final_clause(&pe);
    assert_eq!(intro, "after");
    assert_eq!(heads(nested, Role::Actor), ["he"]);
    assert_eq!(heads(nested, Role::Actee), ["report"]);
    let report = nested.entity_arguments[1].noun_phrase().unwrap();
    assert_eq!(report.postnominal_modifiers[0].preposition, "on");
    assert_eq!(nested.main_predicate().unwrap().discourse_context, DiscourseContext::DeclarativePastSimple);
}

#[test]
fn councilmen_sentence_is_ditransitive() {
    let pe = root_pe("The city councilmen refused the demonstrators a permit because they feared violence.").unwrap();
    let actor = &pe.entity_arguments[0];
    assert_eq!(actor.semantic_role, Role::Actor);
    assert_eq!(actor.noun_phrase().unwrap().qualifiers, ["city"]);
    assert_eq!(heads(&pe, Role::Actee), ["demonstrators"]);
    let extra = pe.entity_arguments.iter().find(|a| a.semantic_role == Role::Extra).unwrap();
    assert_eq!(extra.extra_sub_role, Some(ExtraSubRole::IndirectObject));
    assert_eq!(extra.syntactic_role, SyntacticRole::DirectObject);
}

#[test]
fn lift_sentence_keeps_possessive_as_specifier() {
    let pe = root_pe("The man couldn't lift his son because he was so weak.").unwrap();
    let son = pe.entity_arguments[1].noun_phrase().unwrap();
    assert_eq!(son.specifiers, ["his"]);
    assert!(!son.is_pronoun());
    let (_, nested) = final_clause(&pe);
    let attr = &nested.attributive_arguments[0].attribute_designators[0];
    assert_eq!(attr.degree_word.as_deref(), Some("too"));
}

#[test]
fn passive_swaps_roles() {
    let pe = root_pe("The man was bitten by the dog.").unwrap();
    assert_eq!(heads(&pe, Role::Actor), ["dog"]);
    assert_eq!(heads(&pe, Role::Actee), ["man"]);
}

#[test]
fn leading_clause_flattens_first() {
    let pe = root_pe("Because it was too big, the trophy did not fit in the suitcase.").unwrap();
    assert!(validate_pe(&pe).is_empty());
    let order = flatten_pe_order(&pe);
    let first = order[0];
    assert_eq!(first.introductory_word.as_deref(), Some("because"));
}

#[test]
fn questions_are_interrogative() {
    let pe = root_pe("What is too big?").unwrap();
    assert_eq!(pe.grammatical_mood, GrammaticalMood::Interrogative);
    assert_eq!(pe.attributive_arguments[0].attribute_designators[0].adjective_word, "big");
}

#[test]
fn out_of_grammar_is_refused() {
    let err = root_pe("Colorless green ideas sleep furiously near.").unwrap_err();
    assert!(matches!(err, FrontendError::UnsupportedConstruction { .. }), "{err}");
}

#[test]
fn bracketed_tree_matches_parser_output() {
    let tree = TROPHY_TREE.replace("small", "big");
    let from_tree = bracketed_tree_to_snf(&tree).unwrap();
    let from_text = root_pe("The trophy doesn't fit in the brown suitcase because it's too big.").unwrap();
    assert_eq!(from_tree, from_text);
}

#[test]
fn bracketed_minimal_and_error_paths() {
    let pe = bracketed_tree_to_snf("(ROOT (S (NP (NN x)) (VP (VBZ runs))))").unwrap();
    assert_eq!(pe.entity_arguments.len(), 1);
    assert_eq!(heads(&pe, Role::Actor), ["x"]);
    let err = bracketed_tree_to_snf("(ROOT (S (WHNP (WP what)) (VP (VBZ runs))))").unwrap_err();
    assert_eq!(err, FrontendError::UnsupportedLabel("WHNP".into()));
    assert!(matches!(bracketed_tree_to_snf("(ROOT (S"), Err(FrontendError::BracketSyntax { .. })));
}

#[test]
fn document_skips_non_sentence_units() {
    let doc = parse_document("Chapter 1\n\nThe trophy is too big.", &lex()).unwrap();
    assert_eq!(doc.units.len(), 2);
    assert_eq!(doc.sentences().count(), 1);
    assert_eq!(doc.units[1].sentence.as_ref().unwrap().predicate_expressions.len(), 1);
}
