//! Restricted English grammar producing meaning-unit syntax trees.

use std::fmt;

use super::lexicon::{Lexicon, WordClass};
use super::tokens::TokenNode;
use super::FrontendError;
use crate::snf::{CommUnitKind, CommunicationUnit, DiscourseContext, GrammaticalMood, HeadKind, HeadWord};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NounPhraseNode {
    pub specifiers: Vec<String>,
    pub qualifiers: Vec<String>,
    pub head_words: Vec<HeadWord>,
    pub postnominal: Vec<PrepositionalPhrase>,
    pub first_token: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrepositionalPhrase {
    pub preposition: String,
    pub noun_phrase: NounPhraseNode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateKind {
    /// Main verb taking entity arguments.
    Verb,
    /// "to be" plus a past participle.
    Passive,
    /// "to be" plus an adjective.
    Attributive,
    /// "to be" plus a noun phrase.
    IsA,
    /// "to be" plus prepositional complements.
    BeLocative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredicatePhrase {
    pub kind: PredicateKind,
    pub pre_verb_adverbs: Vec<String>,
    pub aux_verb: Option<String>,
    pub main_verb: Option<String>,
    pub post_verb_adverbs: Vec<String>,
    pub adjective: Option<String>,
    pub indirect_object: Option<NounPhraseNode>,
    pub direct_object: Option<NounPhraseNode>,
    pub complements: Vec<PrepositionalPhrase>,
    pub agent: Option<NounPhraseNode>,
    pub discourse_context: DiscourseContext,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdverbialClause {
    pub introducer: String,
    pub unit: MeaningUnit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeaningUnit {
    pub introductory_word: Option<String>,
    pub mood: GrammaticalMood,
    pub subject: NounPhraseNode,
    pub predicate: PredicatePhrase,
    pub leading_adverbials: Vec<AdverbialClause>,
    pub final_adverbials: Vec<AdverbialClause>,
    /// Token index of the introducer, or of the subject for main clauses.
    pub first_token: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntaxTree {
    pub content: String,
    pub root: MeaningUnit,
}

#[derive(Debug, Clone)]
struct Tok {
    index: usize,
    word: String,
    lower: String,
}

/// Tense and aspect from the verb group.
pub(crate) fn discourse_context(aux: Option<&str>, main_past: bool, progressive: bool) -> DiscourseContext {
    use DiscourseContext::*;
    match aux.map(str::to_lowercase).as_deref() {
        Some("did" | "could" | "would" | "should" | "might") => DeclarativePastSimple,
        Some("do" | "does" | "can" | "may" | "must") => DeclarativePresentSimple,
        Some("will") => DeclarativeFutureSimple,
        Some("has" | "have") => DeclarativePresentPerfect,
        Some("had") => DeclarativePastPerfect,
        Some("was" | "were") if progressive => DeclarativePastProgressive,
        Some("is" | "am" | "are") if progressive => DeclarativePresentProgressive,
        Some("was" | "were") => DeclarativePastSimple,
        Some("is" | "am" | "are" | "be") => DeclarativePresentSimple,
        _ if main_past => DeclarativePastSimple,
        _ => DeclarativePresentSimple,
    }
}

struct Grammar<'a> {
    toks: Vec<Tok>,
    lex: &'a Lexicon,
}

type Parsed<T> = Result<(T, usize), FrontendError>;

impl Grammar<'_> {
    fn err(&self, p: usize) -> FrontendError {
        match self.toks.get(p) {
            Some(t) => FrontendError::UnsupportedConstruction { index: t.index, token: t.word.clone() },
            None => FrontendError::UnsupportedConstruction {
                index: self.toks.last().map(|t| t.index + 1).unwrap_or(0),
                token: String::new(),
            },
        }
    }

    fn is(&self, p: usize, class: WordClass) -> bool {
        self.toks.get(p).is_some_and(|t| self.lex.is(&t.lower, class))
    }

    fn word(&self, p: usize) -> Option<&str> {
        self.toks.get(p).map(|t| t.lower.as_str())
    }

    fn is_proper(&self, p: usize) -> bool {
        self.toks
            .get(p)
            .is_some_and(|t| t.word.chars().next().is_some_and(char::is_uppercase) && !self.lex.is_known(&t.lower))
    }

    fn nominal(&self, p: usize) -> bool {
        self.is(p, WordClass::Noun) || self.is(p, WordClass::Adjective)
    }

    fn np_start(&self, p: usize, hi: usize) -> bool {
        p < hi
            && (self.is(p, WordClass::Determiner)
                || self.is(p, WordClass::Possessive)
                || self.is(p, WordClass::Pronoun)
                || self.is(p, WordClass::Wh)
                || self.is_proper(p)
                || self.is(p, WordClass::Noun)
                || (self.is(p, WordClass::Adjective) && !self.is(p, WordClass::Degree)))
    }

    fn parse_np(&self, mut p: usize, hi: usize) -> Parsed<NounPhraseNode> {
        let first_token = self.toks.get(p).map(|t| t.index).unwrap_or(0);
        let mut np = NounPhraseNode { first_token, ..Default::default() };
        if p >= hi {
            return Err(self.err(p));
        }
        let t = &self.toks[p];
        let possessive_her = t.lower == "her" && p + 1 < hi && self.nominal(p + 1);
        if (self.is(p, WordClass::Pronoun) && !possessive_her) || self.is(p, WordClass::Wh) {
            np.head_words.push(HeadWord { word: t.word.clone(), kind: HeadKind::Pronoun });
            return Ok((np, p + 1));
        }
        if self.is_proper(p) {
            while p < hi && self.is_proper(p) {
                np.head_words.push(HeadWord { word: self.toks[p].word.clone(), kind: HeadKind::ProperNoun });
                p += 1;
            }
            return self.postnominal_of(np, p, hi);
        }
        while p < hi && (self.is(p, WordClass::Determiner) || self.is(p, WordClass::Possessive)) {
            np.specifiers.push(self.toks[p].word.clone());
            p += 1;
        }
        let start = p;
        let mut last_noun = None;
        while p < hi && self.nominal(p) {
            let is_noun = self.is(p, WordClass::Noun);
            // A noun that can also be a verb ends the phrase when nothing nominal follows.
            if is_noun && self.is(p, WordClass::Verb) && last_noun.is_some() && !(p + 1 < hi && self.nominal(p + 1)) {
                break;
            }
            if is_noun {
                last_noun = Some(p);
            }
            p += 1;
        }
        let head = last_noun.ok_or_else(|| self.err(p))?;
        for q in start..head {
            np.qualifiers.push(self.toks[q].word.clone());
        }
        np.head_words.push(HeadWord { word: self.toks[head].word.clone(), kind: HeadKind::CommonNoun });
        self.postnominal_of(np, head + 1, hi)
    }

    fn postnominal_of(&self, mut np: NounPhraseNode, mut p: usize, hi: usize) -> Parsed<NounPhraseNode> {
        while p < hi && self.word(p) == Some("of") {
            let (inner, q) = self.parse_np(p + 1, hi)?;
            np.postnominal.push(PrepositionalPhrase { preposition: "of".into(), noun_phrase: inner });
            p = q;
        }
        Ok((np, p))
    }

    fn parse_pp(&self, p: usize, hi: usize) -> Parsed<PrepositionalPhrase> {
        let preposition = self.toks[p].lower.clone();
        let (noun_phrase, q) = self.parse_np(p + 1, hi)?;
        Ok((PrepositionalPhrase { preposition, noun_phrase }, q))
    }

    /// Clause without subordinate clauses: subject, verb group, objects and
    /// prepositional complements.
    fn parse_core(&self, lo: usize, hi: usize, mood: GrammaticalMood) -> Result<MeaningUnit, FrontendError> {
        let (subject, mut p) = self.parse_np(lo, hi)?;
        let mut pred = PredicatePhrase {
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
        };
        let mut progressive = false;
        let mut main_past = false;

        if self.is(p, WordClass::Be) {
            pred.aux_verb = Some(self.toks[p].word.clone());
            p += 1;
            if self.is(p, WordClass::Not) {
                pred.pre_verb_adverbs.push(self.toks[p].lower.clone());
                p += 1;
            }
            if p < hi && self.is(p, WordClass::Verb) && self.lex.is_participle(&self.toks[p].lower) {
                pred.kind = PredicateKind::Passive;
                pred.main_verb = Some(self.toks[p].word.clone());
                p += 1;
                if self.word(p) == Some("by") {
                    let (agent, q) = self.parse_np(p + 1, hi)?;
                    pred.agent = Some(agent);
                    p = q;
                }
            } else if p < hi && self.is(p, WordClass::Verb) && self.lex.is_present_participle(&self.toks[p].lower) {
                progressive = true;
                pred.main_verb = Some(self.toks[p].word.clone());
                p += 1;
                p = self.objects(&mut pred, p, hi)?;
            } else if self.is(p, WordClass::Degree)
                || (self.is(p, WordClass::Adjective) && !self.is(p, WordClass::Noun))
            {
                pred.kind = PredicateKind::Attributive;
                if self.is(p, WordClass::Degree) {
                    pred.post_verb_adverbs.push(self.toks[p].lower.clone());
                    p += 1;
                }
                if !self.is(p, WordClass::Adjective) {
                    return Err(self.err(p));
                }
                pred.adjective = Some(self.toks[p].lower.clone());
                p += 1;
            } else if self.is(p, WordClass::Preposition) {
                pred.kind = PredicateKind::BeLocative;
            } else if self.np_start(p, hi) {
                pred.kind = PredicateKind::IsA;
                let (np, q) = self.parse_np(p, hi)?;
                pred.direct_object = Some(np);
                p = q;
            } else {
                return Err(self.err(p));
            }
        } else {
            if self.is(p, WordClass::Aux) {
                pred.aux_verb = Some(self.toks[p].word.clone());
                p += 1;
                if self.is(p, WordClass::Not) {
                    pred.pre_verb_adverbs.push(self.toks[p].lower.clone());
                    p += 1;
                }
            }
            if !self.is(p, WordClass::Verb) {
                return Err(self.err(p));
            }
            main_past = self.lex.is_past(&self.toks[p].lower);
            pred.main_verb = Some(self.toks[p].word.clone());
            p += 1;
            p = self.objects(&mut pred, p, hi)?;
        }

        while p < hi && self.is(p, WordClass::Preposition) {
            let (pp, q) = self.parse_pp(p, hi)?;
            let attach_to_object = pred.complements.is_empty()
                && matches!(pp.preposition.as_str(), "of" | "on" | "about")
                && pred.direct_object.is_some()
                && pred.kind == PredicateKind::Verb;
            if attach_to_object {
                if let Some(d) = pred.direct_object.as_mut() {
                    d.postnominal.push(pp);
                }
            } else {
                pred.complements.push(pp);
            }
            p = q;
        }
        if p != hi {
            return Err(self.err(p));
        }
        if pred.kind == PredicateKind::BeLocative && pred.complements.is_empty() {
            return Err(self.err(p));
        }

        pred.discourse_context = match mood {
            GrammaticalMood::Interrogative => DiscourseContext::InterrogativePastSimple,
            _ => discourse_context(pred.aux_verb.as_deref(), main_past, progressive),
        };
        Ok(MeaningUnit {
            introductory_word: None,
            mood,
            first_token: subject.first_token,
            subject,
            predicate: pred,
            leading_adverbials: Vec::new(),
            final_adverbials: Vec::new(),
        })
    }

    fn objects(&self, pred: &mut PredicatePhrase, mut p: usize, hi: usize) -> Result<usize, FrontendError> {
        if self.np_start(p, hi) {
            let (first, q) = self.parse_np(p, hi)?;
            p = q;
            if self.np_start(p, hi) {
                let (second, q) = self.parse_np(p, hi)?;
                p = q;
                pred.indirect_object = Some(first);
                pred.direct_object = Some(second);
            } else {
                pred.direct_object = Some(first);
            }
        }
        Ok(p)
    }

    /// Clause with optional trailing subordinate clauses.
    fn parse_clause(&self, lo: usize, hi: usize, mood: GrammaticalMood) -> Result<MeaningUnit, FrontendError> {
        for i in lo + 1..hi {
            if !self.is(i, WordClass::Subordinator) {
                continue;
            }
            let Ok(mut tail) = self.parse_clause(i + 1, hi, mood) else { continue };
            let Ok(mut head) = self.parse_core(lo, i, mood) else { continue };
            let introducer = self.toks[i].lower.clone();
            tail.introductory_word = Some(introducer.clone());
            tail.first_token = self.toks[i].index;
            head.final_adverbials.push(AdverbialClause { introducer, unit: tail });
            return Ok(head);
        }
        self.parse_core(lo, hi, mood)
    }
}

/// Parses one sentence unit of the restricted grammar.
pub fn parse_sentence(
    unit: &CommunicationUnit,
    tokens: &[TokenNode],
    lex: &Lexicon,
) -> Result<SyntaxTree, FrontendError> {
    if unit.kind != CommUnitKind::Sentence {
        return Err(FrontendError::NotASentence(unit.kind));
    }
    let span = &tokens[unit.token_span.0..=unit.token_span.1];
    let mut toks: Vec<Tok> = span
        .iter()
        .filter(|t| t.token_value != "\"")
        .map(|t| Tok { index: t.index, word: t.token_value.clone(), lower: t.token_value.to_lowercase() })
        .collect();
    let question = toks.last().is_some_and(|t| t.word == "?");
    if toks.last().is_some_and(|t| matches!(t.word.as_str(), "." | "!" | "?")) {
        toks.pop();
    }
    if toks.is_empty() {
        return Err(FrontendError::UnsupportedConstruction { index: unit.token_span.0, token: String::new() });
    }
    for (k, t) in toks.iter().enumerate() {
        let capital = t.word.chars().next().is_some_and(char::is_uppercase);
        let punct = t.word == ",";
        if !punct && !capital && !lex.is_known(&t.lower) {
            return Err(FrontendError::UnsupportedConstruction { index: t.index, token: t.word.clone() });
        }
        if punct && k == 0 {
            return Err(FrontendError::UnsupportedConstruction { index: t.index, token: t.word.clone() });
        }
    }
    let content = span.iter().map(|t| t.token_value.as_str()).collect::<Vec<_>>().join(" ");
    let g = Grammar { toks, lex };
    let n = g.toks.len();
    let mood =
        if question && g.is(0, WordClass::Wh) { GrammaticalMood::Interrogative } else { GrammaticalMood::Indicative };
    if question && mood != GrammaticalMood::Interrogative {
        return Err(g.err(0));
    }

    let root = if g.is(0, WordClass::Subordinator) {
        let comma = (1..n).find(|&i| g.toks[i].word == ",").ok_or_else(|| g.err(n))?;
        let mut lead = g.parse_clause(1, comma, mood)?;
        let introducer = g.toks[0].lower.clone();
        lead.introductory_word = Some(introducer.clone());
        lead.first_token = g.toks[0].index;
        let mut main = g.parse_clause(comma + 1, n, mood)?;
        main.leading_adverbials.push(AdverbialClause { introducer, unit: lead });
        main
    } else {
        if let Some(c) = (0..n).find(|&i| g.toks[i].word == ",") {
            return Err(g.err(c));
        }
        g.parse_clause(0, n, mood)?
    };
    Ok(SyntaxTree { content, root })
}

// Printout in the phrase-structure parser layout.

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Communication unit type: Sentence")?;
        writeln!(f, "Sentence contents: {}", self.content)?;
        writeln!(f, "Syntax tree:")?;
        write_unit(f, &self.root)
    }
}

fn write_unit(f: &mut fmt::Formatter<'_>, u: &MeaningUnit) -> fmt::Result {
    for a in &u.leading_adverbials {
        write_unit(f, &a.unit)?;
    }
    writeln!(f, "MeaningUnit")?;
    if let Some(i) = &u.introductory_word {
        writeln!(f, "Introductory word: {i}")?;
    }
    writeln!(f, "SubjectPhrase:")?;
    write_np(f, &u.subject, 0)?;
    writeln!(f, "PredicatePhrase:")?;
    let p = &u.predicate;
    for a in &p.pre_verb_adverbs {
        writeln!(f, "PreVerbAdverb: {a}")?;
    }
    if let Some(a) = &p.aux_verb {
        writeln!(f, "AuxVerbWord: {a}")?;
    }
    if let Some(m) = &p.main_verb {
        writeln!(f, "MainVerbWord: {m}")?;
    }
    for a in &p.post_verb_adverbs {
        writeln!(f, "PostVerbAdverb: {a}")?;
    }
    if let Some(a) = &p.adjective {
        writeln!(f, "PostVerbAdjectivePhrase:\nAdjectivePhrase:\nHead word: {a}")?;
    }
    if let Some(np) = &p.indirect_object {
        writeln!(f, "IndirectObject:")?;
        write_np(f, np, 0)?;
    }
    if let Some(np) = &p.direct_object {
        writeln!(f, "DirectObject:")?;
        write_np(f, np, 0)?;
    }
    for c in &p.complements {
        writeln!(f, "Prepositional phrase complement:\nPrepositionalPhrase:\n  Head word: {}", c.preposition)?;
        write_np(f, &c.noun_phrase, 1)?;
    }
    if let Some(np) = &p.agent {
        writeln!(f, "Agent:")?;
        write_np(f, np, 0)?;
    }
    if !u.final_adverbials.is_empty() {
        writeln!(f, "Final adverbial phrase list:\nAdverbPhrase:")?;
        writeln!(f)?;
        for a in &u.final_adverbials {
            write_unit(f, &a.unit)?;
        }
    }
    Ok(())
}

fn write_np(f: &mut fmt::Formatter<'_>, np: &NounPhraseNode, depth: usize) -> fmt::Result {
    let pad = "  ".repeat(depth);
    writeln!(f, "{pad}NounPhrase:")?;
    if !np.specifiers.is_empty() {
        writeln!(f, "{pad}  Specifier List: {}", np.specifiers.join(" "))?;
    }
    if !np.qualifiers.is_empty() {
        writeln!(f, "{pad}  Qualifier List:")?;
        for q in &np.qualifiers {
            writeln!(f, "{pad}    AdjectivePhrase:\n{pad}      Head word: {q}")?;
        }
    }
    for h in &np.head_words {
        writeln!(f, "{pad}  Head word: {}", h.word)?;
    }
    for m in &np.postnominal {
        writeln!(f, "{pad}  PostnominalModifier: {}", m.preposition)?;
        write_np(f, &m.noun_phrase, depth + 2)?;
    }
    Ok(())
}
