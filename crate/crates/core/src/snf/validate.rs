use std::fmt;

use super::*;

/// One invariant violation, located by the path of the offending PE.
#[derive(Debug, Clone, PartialEq)]
pub struct SnfDiagnostic {
    pub path: PePath,
    pub message: String,
}

impl fmt::Display for SnfDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "root: {}", self.message)
        } else {
            write!(f, "{:?}: {}", self.path, self.message)
        }
    }
}

const TO_BE: &[&str] = &["be", "is", "am", "are", "was", "were", "been", "being"];

/// Checks the structural invariants of a root PE and everything nested in it.
pub fn validate_pe(pe: &PredicateExpression) -> Vec<SnfDiagnostic> {
    let mut out = Vec::new();
    let reachable = pe.reachable();
    for (path, node) in &reachable {
        check_node(path, node, &mut out);
        if !path.is_empty() && !node.pe_pointer_order.is_empty() {
            out.push(diag(path, "nested PE carries its own pe_pointer_order"));
        }
    }

    let order = &pe.pe_pointer_order;
    let selves = order.iter().filter(|p| p.is_empty()).count();
    if selves != 1 {
        out.push(diag(&[], format!("pe_pointer_order lists the root {selves} times")));
    }
    for path in order {
        if resolve_pe_path(pe, path).is_none() {
            out.push(diag(&[], format!("pe_pointer_order entry {path:?} does not resolve")));
        }
    }
    for (path, _) in &reachable {
        let n = order.iter().filter(|p| *p == path).count();
        if n != 1 {
            out.push(diag(path, format!("reachable PE appears {n} times in pe_pointer_order")));
        }
    }
    out
}

fn diag(path: &[PeStep], message: impl Into<String>) -> SnfDiagnostic {
    SnfDiagnostic { path: path.to_vec(), message: message.into() }
}

fn check_node(path: &[PeStep], pe: &PredicateExpression, out: &mut Vec<SnfDiagnostic>) {
    let ordinals: Vec<usize> = pe.predicate_specifiers.iter().map(|p| p.ordinal).collect();
    for (i, p) in pe.predicate_specifiers.iter().enumerate() {
        if ordinals[..i].contains(&p.ordinal) {
            out.push(diag(path, format!("duplicate predicate ordinal {}", p.ordinal)));
        }
        if p.role == PredicateRole::PredicateVerbTakingEntityArgument
            && TO_BE.contains(&p.main_verb_word.to_ascii_lowercase().as_str())
        {
            out.push(diag(path, format!("auxiliary {:?} stored as a main verb", p.main_verb_word)));
        }
    }
    let check_ordinal = |what: &str, ord: usize, out: &mut Vec<SnfDiagnostic>| {
        if !ordinals.contains(&ord) {
            out.push(diag(path, format!("{what} refers to missing predicate ordinal {ord}")));
        }
    };

    for (i, a) in pe.entity_arguments.iter().enumerate() {
        let what = format!("entity argument {i}");
        if a.entity_designators.is_empty() && a.nested_pe.is_none() {
            out.push(diag(path, format!("{what} has neither designators nor a nested PE")));
        }
        if a.extra_sub_role.is_some() && a.semantic_role != Role::Extra {
            out.push(diag(path, format!("{what} has an extra sub-role but role {}", a.semantic_role)));
        }
        for d in &a.entity_designators {
            match d.effective_noun_phrase() {
                None => out.push(diag(path, format!("{what} has an empty designator"))),
                Some(np) => check_np(path, &what, np, out),
            }
        }
        check_ordinal(&what, a.predicate_ordinal, out);
    }
    for (i, a) in pe.attributive_arguments.iter().enumerate() {
        if a.role == AttributiveRole::Attribute && a.attribute_designators.is_empty() {
            out.push(diag(path, format!("attributive argument {i} has no designator")));
        }
    }
    for (i, m) in pe.modification_specifiers.iter().enumerate() {
        let what = format!("modification specifier {i}");
        if m.adverbial_phrase.is_none() && m.adverbial_expression.is_none() && m.nested_pe.is_none() {
            out.push(diag(path, format!("{what} has no payload")));
        }
        check_ordinal(&what, m.predicate_ordinal, out);
    }
}

fn check_np(path: &[PeStep], what: &str, np: &NounPhrase, out: &mut Vec<SnfDiagnostic>) {
    if np.head_words.is_empty() {
        out.push(diag(path, format!("{what} has a noun phrase without head words")));
    }
    for m in &np.postnominal_modifiers {
        check_np(path, what, &m.noun_phrase, out);
    }
}

/// Follows a path from the root; the empty path yields the root.
pub fn resolve_pe_path<'a>(root: &'a PredicateExpression, path: &[PeStep]) -> Option<&'a PredicateExpression> {
    path.iter().try_fold(root, |pe, step| pe.child(*step))
}

/// Orders every reachable PE by its first token; ties keep outer before inner.
pub fn compute_pe_order(pe: &PredicateExpression) -> Vec<PePath> {
    let mut all: Vec<(usize, PePath)> = pe.reachable().into_iter().map(|(p, n)| (n.first_token_index, p)).collect();
    all.sort_by_key(|(idx, p)| (*idx, p.len()));
    all.into_iter().map(|(_, p)| p).collect()
}

/// The PEs of a root in processing order. Uses the stored order when present
/// and falls back to token order otherwise.
pub fn flatten_pe_order(pe: &PredicateExpression) -> Vec<&PredicateExpression> {
    let order = if pe.pe_pointer_order.is_empty() { compute_pe_order(pe) } else { pe.pe_pointer_order.clone() };
    order.iter().filter_map(|p| resolve_pe_path(pe, p)).collect()
}
