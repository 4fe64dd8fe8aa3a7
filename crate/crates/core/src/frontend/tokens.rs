//! Lexical analysis and communication-unit segmentation.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::snf::{CommUnitKind, CommunicationUnit, Sentence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    CommUnitBegin,
    CommUnitEnd,
    ParagraphBegin,
    ParagraphEnd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TokenNode {
    pub token_value: String,
    /// Antecedent head word, filled by pronoun resolution.
    pub resolved_word: Option<String>,
    pub markers: BTreeSet<Marker>,
    pub index: usize,
    /// Zero-based source line.
    pub line: usize,
}

impl TokenNode {
    pub fn has(&self, m: Marker) -> bool {
        self.markers.contains(&m)
    }
}

const CONTRACTIONS: &[(&str, &[&str])] = &[
    ("doesn't", &["does", "not"]),
    ("didn't", &["did", "not"]),
    ("couldn't", &["could", "not"]),
    ("it's", &["it", "is"]),
    ("wasn't", &["was", "not"]),
    ("don't", &["do", "not"]),
    ("isn't", &["is", "not"]),
    ("weren't", &["were", "not"]),
    ("aren't", &["are", "not"]),
    ("wouldn't", &["would", "not"]),
    ("can't", &["can", "not"]),
    ("won't", &["will", "not"]),
    ("he's", &["he", "is"]),
    ("she's", &["she", "is"]),
    ("that's", &["that", "is"]),
];

/// Expands a contraction, keeping the capitalization of the first letter.
fn expand(word: &str) -> Option<Vec<String>> {
    let lower = word.to_lowercase();
    let (_, parts) = CONTRACTIONS.iter().find(|(c, _)| *c == lower)?;
    let capital = word.chars().next().is_some_and(char::is_uppercase);
    Some(parts.iter().enumerate().map(|(i, p)| if i == 0 && capital { capitalize(p) } else { p.to_string() }).collect())
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

pub fn is_url(s: &str) -> bool {
    let lower = s.to_ascii_lowercase();
    let rest = ["http://", "https://", "www."].iter().find_map(|p| lower.strip_prefix(p));
    match rest {
        Some(r) => r.len() > 2 && r.contains('.') && !r.chars().any(char::is_whitespace),
        None => false,
    }
}

/// `local@domain.tld` or `local(at)domain.tld`.
pub fn is_email(s: &str) -> bool {
    let (local, domain) = match s.split_once('@') {
        Some(p) => p,
        None => match s.split_once("(at)") {
            Some(p) => p,
            None => return false,
        },
    };
    let local_ok = !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || "._%+-".contains(c));
    let labels: Vec<&str> = domain.split('.').collect();
    let labels_ok = labels.len() >= 2
        && labels.iter().all(|l| !l.is_empty() && l.chars().all(|c| c.is_ascii_alphanumeric() || c == '-'));
    let tld_ok = labels.last().is_some_and(|t| t.len() >= 2 && t.chars().all(|c| c.is_ascii_alphabetic()));
    local_ok && labels_ok && tld_ok
}

fn is_terminal(s: &str) -> bool {
    matches!(s, "." | "!" | "?")
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Splits one whitespace-delimited chunk into word and punctuation tokens.
fn split_chunk(chunk: &str, out: &mut Vec<String>) {
    let chunk = chunk.replace('\u{2019}', "'");
    let trimmed_end = chunk.trim_end_matches(|c: char| ".,;:!?\")".contains(c));
    let core = trimmed_end.trim_start_matches(['"', '(']);
    if !core.is_empty() && (is_url(core) || is_email(core)) {
        let lead = &trimmed_end[..trimmed_end.len() - core.len()];
        out.extend(lead.chars().map(String::from));
        out.push(core.to_string());
        out.extend(chunk[trimmed_end.len()..].chars().map(String::from));
        return;
    }

    let chars: Vec<char> = chunk.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if is_word_char(c) {
            let mut j = i;
            while j < chars.len()
                && (is_word_char(chars[j])
                    || (matches!(chars[j], '\'' | '-') && j + 1 < chars.len() && is_word_char(chars[j + 1]) && j > i))
            {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            if let Some(parts) = expand(&word) {
                out.extend(parts);
            } else if let Some(stem) = word.strip_suffix("'s").filter(|s| !s.is_empty()) {
                out.push(stem.to_string());
                out.push("'s".to_string());
            } else {
                out.push(word);
            }
            i = j;
        } else {
            out.push(c.to_string());
            i += 1;
        }
    }
}

/// Tokenizes text, expanding contractions and marking unit and paragraph
/// boundaries.
pub fn tokenize(text: &str) -> Vec<TokenNode> {
    let mut tokens: Vec<TokenNode> = Vec::new();
    let mut unit_open = false;
    let mut para_open = false;

    let close_unit = |tokens: &mut Vec<TokenNode>, open: &mut bool| {
        if *open {
            if let Some(t) = tokens.last_mut() {
                t.markers.insert(Marker::CommUnitEnd);
            }
            *open = false;
        }
    };

    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            close_unit(&mut tokens, &mut unit_open);
            if para_open {
                if let Some(t) = tokens.last_mut() {
                    t.markers.insert(Marker::ParagraphEnd);
                }
                para_open = false;
            }
            continue;
        }
        let mut words = Vec::new();
        for chunk in line.split_whitespace() {
            split_chunk(chunk, &mut words);
        }
        let line_start = tokens.len();
        let starts_fresh = !unit_open;
        for k in 0..words.len() {
            let mut t = TokenNode {
                token_value: words[k].clone(),
                resolved_word: None,
                markers: BTreeSet::new(),
                index: tokens.len(),
                line: line_no,
            };
            if !para_open {
                t.markers.insert(Marker::ParagraphBegin);
                para_open = true;
            }
            if !unit_open {
                t.markers.insert(Marker::CommUnitBegin);
                unit_open = true;
            }
            tokens.push(t);
            // A closing quote right after the full stop stays in the unit.
            let ends = match words.get(k + 1).map(String::as_str) {
                Some("\"") => words[k] == "\"" && k > 0 && is_terminal(&words[k - 1]),
                _ => is_terminal(&words[k]) || (words[k] == "\"" && k > 0 && is_terminal(&words[k - 1])),
            };
            if ends {
                close_unit(&mut tokens, &mut unit_open);
            }
        }
        if unit_open && starts_fresh && standalone_line(&tokens[line_start..]) {
            close_unit(&mut tokens, &mut unit_open);
        }
    }
    close_unit(&mut tokens, &mut unit_open);
    if para_open {
        if let Some(t) = tokens.last_mut() {
            t.markers.insert(Marker::ParagraphEnd);
        }
    }
    tokens
}

fn standalone_line(line: &[TokenNode]) -> bool {
    let has_terminal = line.last().is_some_and(|t| is_terminal(&t.token_value));
    if has_terminal {
        return false;
    }
    line.len() <= 2 || line[0].token_value == "By"
}

/// Groups tokens into communication units along the boundary markers and
/// classifies each one.
pub fn segment_communication_units(tokens: &[TokenNode]) -> Vec<CommunicationUnit> {
    let mut units = Vec::new();
    let mut start = None;
    for t in tokens {
        if t.has(Marker::CommUnitBegin) || start.is_none() {
            start.get_or_insert(t.index);
        }
        if t.has(Marker::CommUnitEnd) {
            if let Some(s) = start.take() {
                units.push(classify(&tokens[s..=t.index]));
            }
        }
    }
    if let Some(s) = start {
        if let Some(last) = tokens.last() {
            units.push(classify(&tokens[s..=last.index]));
        }
    }
    units
}

fn classify(span: &[TokenNode]) -> CommunicationUnit {
    let token_span = (span[0].index, span[span.len() - 1].index);
    let words: Vec<&str> = span.iter().map(|t| t.token_value.as_str()).collect();
    let terminal = words.last().is_some_and(|w| is_terminal(w));
    let kind = match words.as_slice() {
        [w] if is_url(w) => Some(CommUnitKind::URL),
        [w] if is_email(w) => Some(CommUnitKind::EmailAddress),
        [_] if !terminal => Some(CommUnitKind::SingleWordOnLine),
        [_, _] if !terminal => Some(CommUnitKind::TwoWordPhraseOnLine),
        ["By", rest @ ..]
            if !terminal && rest.iter().all(|w| w.chars().next().is_some_and(|c| c.is_uppercase() || c == '.')) =>
        {
            Some(CommUnitKind::AuthorInfo)
        }
        _ => None,
    };
    match kind {
        Some(kind) => CommunicationUnit { kind, token_span, sentence: None },
        None => CommunicationUnit {
            kind: CommUnitKind::Sentence,
            token_span,
            sentence: Some(Sentence {
                content: words.join(" "),
                starts_paragraph: span[0].has(Marker::ParagraphBegin),
                in_quotation: words.contains(&"\""),
                predicate_expressions: Vec::new(),
            }),
        },
    }
}

/// Debug dump: `value[/resolved]` per token, space separated.
pub fn dump_tokens(tokens: &[TokenNode]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&t.token_value);
        if let Some(r) = &t.resolved_word {
            let _ = write!(out, "/{r}");
        }
    }
    out
}
