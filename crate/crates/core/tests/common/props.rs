//! Invariant checks shared by the property tests and the acceptance suite.
//! Generated inputs come from a fixed-seed proptest runner so every run
//! explores the same cases.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use ross_core::api::render_annotated;
use ross_core::engine::*;
use ross_core::frontend::{parse_document, tokenize, Lexicon};
use ross_core::model::{export_xml, TimePoint};
use ross_core::reasoning::generate_and_test;
use ross_core::snf::{flatten_pe_order, parse_snf, serialize_snf, DiscourseContext, SyntacticRole};
use ross_core::star::{parse_star, pretty_print, LinkError};
use ross_core::{Ontology, Role};

use super::{class_graph_text, corpus, greeting_ontology, GOLDEN, GREETING};

pub type Check = Result<(), String>;

fn bundled() -> &'static Ontology {
    static O: OnceLock<Ontology> = OnceLock::new();
    O.get_or_init(Ontology::bundled)
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    // Kahn's algorithm: a cycle leaves nodes with incoming edges.
    let mut indegree = vec![0; n];
    for &(_, b) in edges {
        indegree[b] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|i| indegree[*i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = ready.pop() {
        seen += 1;
        for &(a, b) in edges {
            if a == i {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(b);
                }
            }
        }
    }
    seen < n
}

fn reachable(edges: &[(usize, usize)], from: usize, to: usize) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut todo = vec![from];
    while let Some(i) = todo.pop() {
        if i == to {
            return true;
        }
        for &(a, b) in edges {
            if a == i && seen.insert(b) {
                todo.push(b);
            }
        }
    }
    false
}

fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..8).prop_flat_map(|n| {
        let edge = (0..n, 0..n).prop_filter("no self loops", |(a, b)| a != b);
        (Just(n), prop::collection::btree_set(edge, 0..12).prop_map(|s| s.into_iter().collect()))
    })
}

fn word() -> impl Strategy<Value = String> {
    "[a-z]{1,8}"
}

fn info(i: usize) -> SpanningInformation {
    SpanningInformation {
        saved_discourse_context: DiscourseContext::DeclarativePastSimple,
        most_recent_context: 0,
        structural_parent: "P".into(),
        timepoint: TimePoint::FIRST,
        wrappers: vec![ObjectInstanceSemanticWrapper {
            instance_id: format!("X-{i}"),
            semantic_role: Role::Actor,
            extra_sub_role: None,
            syntactic_role: SyntacticRole::Subject,
            predicate_ordinal: 0,
        }],
        behavior_classes_per_verb: Vec::new(),
        applied: None,
    }
}

/// Linking succeeds exactly on acyclic inheritance graphs, and then `is_a`
/// is reachability.
pub fn dag_acyclicity() -> Check {
    run(256, graph(), |(n, edges)| {
        let doc = parse_star(&class_graph_text(n, &edges), "graph.star").unwrap();
        match Ontology::link(vec![doc]) {
            Ok(o) => {
                prop_assert!(!has_cycle(n, &edges), "cyclic graph linked");
                for a in 0..n {
                    for b in 0..n {
                        let expected = a == b || reachable(&edges, a, b);
                        prop_assert_eq!(o.is_a(&format!("C{a}"), &format!("C{b}")), expected, "C{} is-a C{}", a, b);
                    }
                }
            }
            Err(LinkError::CycleDetected(path)) => {
                prop_assert!(has_cycle(n, &edges), "acyclic graph rejected");
                prop_assert!(path.len() >= 2);
            }
            Err(e) => prop_assert!(false, "unexpected link error {}", e),
        }
        Ok(())
    })
}

pub fn star_round_trip() -> Check {
    run(128, (graph(), prop::collection::vec(word(), 1..4)), |((n, edges), words)| {
        let mut text = class_graph_text(n, &edges);
        let dict: Vec<String> = words.iter().map(|w| format!("\"{w}\"")).collect();
        text.push_str(&format!(
            "ObjectFrameClass \"Extra\"\n(\n  Dictionary ( English ( {{ {} }} ) );\n  AttributeTypes\n  (\n    AttributeType \"S\"\n    (\n      <StateAttributeType val = \"true\" />\n      \"Values\" ( {{ \"A\", \"B\" }} );\n    );\n  );\n);\n",
            dict.join(", ")
        ));
        let doc = parse_star(&text, "g.star").unwrap();
        let printed = pretty_print(&doc);
        let again = parse_star(&printed, "g.star").unwrap();
        prop_assert_eq!(&again.definitions, &doc.definitions);
        prop_assert_eq!(pretty_print(&again), printed);
        Ok(())
    })
}

/// Every parsed sentence of the corpus survives SNF serialization.
pub fn snf_round_trip() -> Check {
    let lexicon = Lexicon::from_ontology(bundled());
    for text in corpus() {
        let doc = parse_document(text, &lexicon).map_err(|e| format!("{text}: {e}"))?;
        for pe in doc.units.iter().filter_map(|u| u.sentence.as_ref()).flat_map(|s| &s.predicate_expressions) {
            let snf = serialize_snf(pe);
            let back = parse_snf(&snf).map_err(|e| format!("{text}: {e}"))?;
            if &back != pe || serialize_snf(&back) != snf {
                return Err(format!("{text}: SNF round trip changed the expression"));
            }
        }
    }
    Ok(())
}

/// The stack never exceeds its high water mark, trims into
/// [low, high], keeps the newest entry on top and walks every entry.
pub fn stack_trim() -> Check {
    run(128, 0usize..60, |n| {
        let mut stack = SpanningInfoStack::new();
        for i in 0..n {
            stack.push(info(i));
            prop_assert!(stack.len() <= STACK_HIGH_WATER);
        }
        if n <= STACK_HIGH_WATER {
            prop_assert_eq!(stack.len(), n);
        } else {
            prop_assert!((STACK_LOW_WATER..=STACK_HIGH_WATER).contains(&stack.len()));
        }
        if n > 0 {
            prop_assert_eq!(&stack.top().unwrap().wrappers[0].instance_id, &format!("X-{}", n - 1));
        }
        stack.reset_current_to_top();
        let mut walked = 0;
        while stack.current().is_some() {
            walked += 1;
        }
        prop_assert_eq!(walked, stack.len());
        Ok(())
    })
}

/// Generate-and-test over every candidate of every spanning info leaves
/// the master model's export unchanged.
pub fn sandbox_isolation() -> Check {
    let o = bundled();
    let lexicon = Lexicon::from_ontology(o);
    for text in corpus() {
        let out = run_text(text, o).map_err(|e| e.to_string())?;
        let before = export_xml(&out.model);
        let snapshot = out.model.clone();
        let doc = parse_document(text, &lexicon).map_err(|e| e.to_string())?;
        let root = doc.units.iter().rev().find_map(|u| u.sentence.as_ref()?.predicate_expressions.first()).unwrap();
        let order = flatten_pe_order(root);
        let pe = order.iter().find(|pe| pe.entity_arguments.iter().any(|a| a.is_pronoun())).unwrap();
        let arg = pe.entity_arguments.iter().find(|a| a.is_pronoun()).unwrap();
        let features = build_pronoun_feature_set(pe, arg, pe.introductory_word.as_deref(), Vec::new());
        for info in out.stack.iter() {
            for w in &info.wrappers {
                let _ = generate_and_test(o, &out.model, &features, w, info);
            }
        }
        if export_xml(&out.model) != before || out.model != snapshot {
            return Err(format!("{text}: master model changed"));
        }
    }
    Ok(())
}

/// Scaling every rule probability by the same positive factor leaves the
/// selected referent unchanged.
pub fn argmax_scaling() -> Check {
    run(48, (1u32..=20, 1u32..=20, 1u32..=20), |(a, b, k)| {
        let (pa, pb) = (a as f64 / 20.0, b as f64 / 20.0);
        let scale = k as f64 / 20.0;
        let base = run_text(GREETING, &greeting_ontology(pa, pb)).unwrap();
        let scaled = run_text(GREETING, &greeting_ontology(pa * scale, pb * scale)).unwrap();
        let expected = if pb > pa { "guest" } else { "host" };
        prop_assert_eq!(&base.resolutions[0].antecedent_word, expected);
        prop_assert_eq!(&scaled.resolutions[0].antecedent_word, expected);
        Ok(())
    })
}

/// Two runs over the same text agree on tokens, model, resolutions and
/// trace.
pub fn determinism() -> Check {
    for text in corpus() {
        let a = run_text(text, bundled()).map_err(|e| e.to_string())?;
        let b = run_text(text, bundled()).map_err(|e| e.to_string())?;
        if a != b || export_xml(&a.model) != export_xml(&b.model) {
            return Err(format!("{text}: runs differ"));
        }
    }
    Ok(())
}

/// Distinct antecedent words render to distinct annotations.
pub fn annotation_injective() -> Check {
    run(128, (0usize..8, word(), word()), |(i, a, b)| {
        prop_assume!(a != b);
        let (text, ..) = GOLDEN[i];
        let out = run_text(text, bundled()).unwrap();
        let at = out.resolutions[0].pronoun_token_index;
        let render = |w: &str| {
            let mut tokens = out.tokens.clone();
            tokens[at].resolved_word = Some(w.to_string());
            render_annotated(&tokens)
        };
        prop_assert_ne!(render(&a), render(&b));
        prop_assert_ne!(render(&a), render_annotated(&tokenize(text)));
        Ok(())
    })
}
