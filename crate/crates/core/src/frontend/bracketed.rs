//! Reader for bracketed constituency trees and their mapping onto the
//! meaning-unit syntax tree.

use super::adapter::tree_to_snf;
use super::grammar::{
    discourse_context, AdverbialClause, MeaningUnit, NounPhraseNode, PredicateKind, PredicatePhrase,
    PrepositionalPhrase, SyntaxTree,
};
use super::FrontendError;
use crate::snf::{DiscourseContext, GrammaticalMood, HeadKind, HeadWord, PredicateExpression};

#[derive(Debug, Clone, PartialEq)]
enum BNode {
    Leaf { label: String, word: String, index: usize },
    Phrase { label: String, children: Vec<BNode> },
}

impl BNode {
    fn label(&self) -> &str {
        match self {
            BNode::Leaf { label, .. } | BNode::Phrase { label, .. } => label,
        }
    }

    fn first_index(&self) -> Option<usize> {
        match self {
            BNode::Leaf { index, .. } => Some(*index),
            BNode::Phrase { children, .. } => children.iter().find_map(BNode::first_index),
        }
    }
}

const PHRASE_LABELS: &[&str] = &["ROOT", "S", "NP", "VP", "PP", "SBAR", "ADJP"];
const LEAF_LABELS: &[&str] = &[
    "DT", "NN", "NNS", "NNP", "NNPS", "JJ", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD", "RB", "PRP", "PRP$", "IN",
    ".", ",",
];

fn lex(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !cur.is_empty() {
                out.push((start, std::mem::take(&mut cur)));
            }
            if !c.is_whitespace() {
                out.push((i, c.to_string()));
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

struct Reader {
    toks: Vec<(usize, String)>,
    pos: usize,
    leaves: usize,
}

impl Reader {
    fn syntax(&self, message: &str) -> FrontendError {
        let offset = self.toks.get(self.pos).map(|t| t.0).unwrap_or(usize::MAX);
        FrontendError::BracketSyntax { message: message.to_string(), offset }
    }

    fn expect(&mut self, s: &str) -> Result<(), FrontendError> {
        if self.toks.get(self.pos).map(|t| t.1.as_str()) == Some(s) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected {s:?}")))
        }
    }

    fn node(&mut self) -> Result<BNode, FrontendError> {
        self.expect("(")?;
        let label = match self.toks.get(self.pos) {
            Some((_, l)) if l != "(" && l != ")" => l.clone(),
            _ => return Err(self.syntax("expected a label")),
        };
        self.pos += 1;
        let leaf_word = match (self.toks.get(self.pos), self.toks.get(self.pos + 1)) {
            (Some((_, w)), Some((_, close))) if w != "(" && w != ")" && close == ")" => Some(w.clone()),
            _ => None,
        };
        let node = if let Some(word) = leaf_word {
            if !LEAF_LABELS.contains(&label.as_str()) {
                return Err(FrontendError::UnsupportedLabel(label));
            }
            self.pos += 1;
            let index = self.leaves;
            self.leaves += 1;
            BNode::Leaf { label, word, index }
        } else {
            if !PHRASE_LABELS.contains(&label.as_str()) {
                return Err(FrontendError::UnsupportedLabel(label));
            }
            let mut children = Vec::new();
            while self.toks.get(self.pos).map(|t| t.1.as_str()) == Some("(") {
                children.push(self.node()?);
            }
            BNode::Phrase { label, children }
        };
        self.expect(")")?;
        Ok(node)
    }
}

fn normalize(label: &str, word: &str) -> String {
    match (label, word) {
        ("RB", "n't") => "not".to_string(),
        (l, "'s") if l.starts_with("VB") => "is".to_string(),
        _ => word.to_string(),
    }
}

fn children(n: &BNode) -> &[BNode] {
    match n {
        BNode::Phrase { children, .. } => children,
        BNode::Leaf { .. } => &[],
    }
}

fn unsupported(n: &BNode) -> FrontendError {
    FrontendError::UnsupportedConstruction { index: n.first_index().unwrap_or(0), token: n.label().to_string() }
}

fn noun_phrase(n: &BNode) -> Result<NounPhraseNode, FrontendError> {
    let mut np = NounPhraseNode { first_token: n.first_index().unwrap_or(0), ..Default::default() };
    let mut nouns: Vec<String> = Vec::new();
    let mut based = false;
    for c in children(n) {
        match c {
            BNode::Leaf { label, word, .. } => match label.as_str() {
                "DT" | "PRP$" => np.specifiers.push(word.clone()),
                "JJ" => np.qualifiers.push(word.clone()),
                "NN" | "NNS" => nouns.push(word.clone()),
                "NNP" | "NNPS" => np.head_words.push(HeadWord { word: word.clone(), kind: HeadKind::ProperNoun }),
                "PRP" => np.head_words.push(HeadWord { word: word.clone(), kind: HeadKind::Pronoun }),
                _ => return Err(unsupported(c)),
            },
            BNode::Phrase { label, .. } if label == "NP" && !based => {
                let inner = noun_phrase(c)?;
                np.specifiers = inner.specifiers;
                np.qualifiers = inner.qualifiers;
                np.head_words = inner.head_words;
                np.postnominal = inner.postnominal;
                based = true;
            }
            BNode::Phrase { label, .. } if label == "PP" => np.postnominal.push(prepositional(c)?),
            _ => return Err(unsupported(c)),
        }
    }
    if let Some(head) = nouns.pop() {
        np.qualifiers.extend(nouns);
        np.head_words.push(HeadWord { word: head, kind: HeadKind::CommonNoun });
    }
    if np.head_words.is_empty() {
        return Err(unsupported(n));
    }
    Ok(np)
}

fn prepositional(n: &BNode) -> Result<PrepositionalPhrase, FrontendError> {
    match children(n) {
        [BNode::Leaf { label, word, .. }, np @ BNode::Phrase { .. }] if label == "IN" => {
            Ok(PrepositionalPhrase { preposition: word.to_lowercase(), noun_phrase: noun_phrase(np)? })
        }
        _ => Err(unsupported(n)),
    }
}

const BE: &[&str] = &["is", "was", "are", "were", "am", "be", "been"];

struct VerbGroup {
    pred: PredicatePhrase,
    main_tag: Option<String>,
    finals: Vec<AdverbialClause>,
}

fn verb_phrase(n: &BNode, g: &mut VerbGroup) -> Result<(), FrontendError> {
    let kids = children(n);
    for (i, c) in kids.iter().enumerate() {
        match c {
            BNode::Leaf { label, word, .. } if label.starts_with("VB") || label == "MD" => {
                let w = normalize(label, word);
                let later_verb = kids[i + 1..].iter().any(|k| k.label() == "VP");
                let is_be = BE.contains(&w.to_lowercase().as_str());
                let later_be_complement = kids[i + 1..].iter().any(|k| matches!(k.label(), "ADJP" | "NP" | "PP"));
                if g.pred.aux_verb.is_none()
                    && g.pred.main_verb.is_none()
                    && (later_verb || (is_be && later_be_complement))
                {
                    g.pred.aux_verb = Some(w);
                } else {
                    let be_aux = g.pred.aux_verb.as_deref().is_some_and(|a| BE.contains(&a.to_lowercase().as_str()));
                    if be_aux && label == "VBN" {
                        g.pred.kind = PredicateKind::Passive;
                    }
                    g.pred.main_verb = Some(w);
                    g.main_tag = Some(label.clone());
                }
            }
            BNode::Leaf { label, word, .. } if label == "RB" => {
                g.pred.pre_verb_adverbs.push(normalize(label, word).to_lowercase());
            }
            BNode::Phrase { label, .. } if label == "VP" => verb_phrase(c, g)?,
            BNode::Phrase { label, .. } if label == "ADJP" => {
                g.pred.kind = PredicateKind::Attributive;
                for a in children(c) {
                    match a {
                        BNode::Leaf { label, word, .. } if label == "RB" => {
                            g.pred.post_verb_adverbs.push(word.to_lowercase())
                        }
                        BNode::Leaf { label, word, .. } if label == "JJ" => {
                            g.pred.adjective = Some(word.to_lowercase())
                        }
                        _ => return Err(unsupported(a)),
                    }
                }
            }
            BNode::Phrase { label, .. } if label == "NP" => {
                let np = noun_phrase(c)?;
                if g.pred.main_verb.is_none() {
                    g.pred.kind = PredicateKind::IsA;
                }
                match g.pred.direct_object.take() {
                    Some(first) => {
                        g.pred.indirect_object = Some(first);
                        g.pred.direct_object = Some(np);
                    }
                    None => g.pred.direct_object = Some(np),
                }
            }
            BNode::Phrase { label, .. } if label == "PP" => {
                let pp = prepositional(c)?;
                if g.pred.kind == PredicateKind::Passive && pp.preposition == "by" && g.pred.agent.is_none() {
                    g.pred.agent = Some(pp.noun_phrase);
                    continue;
                }
                if g.pred.main_verb.is_none() && g.pred.kind == PredicateKind::Verb {
                    g.pred.kind = PredicateKind::BeLocative;
                }
                let attach = g.pred.complements.is_empty()
                    && matches!(pp.preposition.as_str(), "of" | "on" | "about")
                    && g.pred.direct_object.is_some()
                    && g.pred.kind == PredicateKind::Verb;
                match g.pred.direct_object.as_mut() {
                    Some(d) if attach => d.postnominal.push(pp),
                    _ => g.pred.complements.push(pp),
                }
            }
            BNode::Phrase { label, .. } if label == "SBAR" => g.finals.push(subordinate(c)?),
            _ => return Err(unsupported(c)),
        }
    }
    Ok(())
}

fn subordinate(n: &BNode) -> Result<AdverbialClause, FrontendError> {
    match children(n) {
        [BNode::Leaf { label, word, index }, s @ BNode::Phrase { .. }] if label == "IN" && s.label() == "S" => {
            let introducer = word.to_lowercase();
            let mut unit = clause(s)?;
            unit.introductory_word = Some(introducer.clone());
            unit.first_token = *index;
            Ok(AdverbialClause { introducer, unit })
        }
        _ => Err(unsupported(n)),
    }
}

fn clause(s: &BNode) -> Result<MeaningUnit, FrontendError> {
    let mut leading = Vec::new();
    let mut subject = None;
    let mut group = VerbGroup {
        pred: PredicatePhrase {
            kind: PredicateKind::Verb,
            pre_verb_adverbs: Vec::new(),
            aux_verb: None,
            main_verb: None,
            post_verb_adverbs: Vec::new(),
            adjective: None,
            indirect_object: None,
            direct_object: None,
            complements: Vec::new(),
            agent: None,
            discourse_context: DiscourseContext::DeclarativePresentSimple,
        },
        main_tag: None,
        finals: Vec::new(),
    };
    let mut seen_vp = false;
    for c in children(s) {
        match c.label() {
            "SBAR" if subject.is_none() => leading.push(subordinate(c)?),
            "NP" if subject.is_none() => subject = Some(noun_phrase(c)?),
            "VP" if subject.is_some() && !seen_vp => {
                verb_phrase(c, &mut group)?;
                seen_vp = true;
            }
            "." | "," => {}
            _ => return Err(unsupported(c)),
        }
    }
    let subject = subject.ok_or_else(|| unsupported(s))?;
    if !seen_vp {
        return Err(unsupported(s));
    }
    let mut pred = group.pred;
    let tag = group.main_tag.as_deref();
    let progressive = tag == Some("VBG");
    let main_past = matches!(tag, Some("VBD" | "VBN"));
    pred.discourse_context = discourse_context(pred.aux_verb.as_deref(), main_past, progressive);
    if pred.kind == PredicateKind::Verb && pred.main_verb.is_none() {
        return Err(unsupported(s));
    }
    Ok(MeaningUnit {
        introductory_word: None,
        mood: GrammaticalMood::Indicative,
        first_token: subject.first_token,
        subject,
        predicate: pred,
        leading_adverbials: leading,
        final_adverbials: group.finals,
    })
}

fn leaf_words(n: &BNode, out: &mut Vec<String>) {
    match n {
        BNode::Leaf { label, word, .. } => out.push(normalize(label, word)),
        BNode::Phrase { children, .. } => children.iter().for_each(|c| leaf_words(c, out)),
    }
}

/// Reads a single-sentence bracketed tree into a syntax tree. Leaves are
/// numbered in order, punctuation included, so indices line up with the
/// tokenizer's.
pub fn read_bracketed(text: &str) -> Result<SyntaxTree, FrontendError> {
    let mut r = Reader { toks: lex(text), pos: 0, leaves: 0 };
    let root = r.node()?;
    if r.pos != r.toks.len() {
        return Err(r.syntax("trailing input after the tree"));
    }
    let s = match &root {
        BNode::Phrase { label, children } if label == "ROOT" => match children.as_slice() {
            [s] if s.label() == "S" => s,
            _ => return Err(unsupported(&root)),
        },
        BNode::Phrase { label, .. } if label == "S" => &root,
        _ => return Err(unsupported(&root)),
    };
    let mut words = Vec::new();
    leaf_words(&root, &mut words);
    Ok(SyntaxTree { content: words.join(" "), root: clause(s)? })
}

/// Bracketed constituency tree straight to its root PE.
pub fn bracketed_tree_to_snf(text: &str) -> Result<PredicateExpression, FrontendError> {
    Ok(tree_to_snf(&read_bracketed(text)?))
}
