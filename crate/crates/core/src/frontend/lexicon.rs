//! Closed-class word lists plus open-class words drawn from the ontology.

use std::collections::{BTreeMap, BTreeSet};

use crate::star::Ontology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordClass {
    Determiner,
    Possessive,
    Pronoun,
    Wh,
    Preposition,
    Aux,
    Be,
    Not,
    Degree,
    Subordinator,
    Conjunction,
    Adjective,
    Noun,
    Verb,
}

const DETERMINERS: &[&str] =
    &["the", "a", "an", "this", "that", "these", "those", "some", "several", "many", "every", "each", "first", "all"];
const POSSESSIVES: &[&str] = &["his", "her", "its", "their", "my", "your", "our"];
const PRONOUNS: &[&str] = &["he", "she", "it", "they", "him", "her", "them", "i", "me", "we", "us", "you"];
const WH: &[&str] = &["what", "who", "whom"];
const PREPOSITIONS: &[&str] = &[
    "in", "into", "on", "at", "under", "over", "above", "around", "about", "before", "after", "by", "for", "from",
    "of", "to", "with", "inside",
];
const AUX: &[&str] =
    &["do", "does", "did", "could", "can", "will", "would", "should", "may", "might", "must", "has", "have", "had"];
const BE: &[&str] = &["is", "was", "are", "were", "am", "be", "been", "being"];
const DEGREE: &[&str] = &["too", "so", "very"];
const SUBORDINATORS: &[&str] = &["because", "after", "before", "when", "while", "since", "although", "if"];
const CONJUNCTIONS: &[&str] = &["and", "or", "but"];

/// Open-class words the schema corpus needs beyond the ontology dictionaries.
const EXTRA_ADJECTIVES: &[&str] = &["brown", "final", "other", "old", "dark"];
const EXTRA_NOUNS: &[&str] = &["case", "light", "miles", "mile", "building", "chapter"];
/// Extra verbs with their past-tense flag.
const EXTRA_VERBS: &[(&str, bool)] =
    &[("ran", true), ("run", false), ("runs", false), ("dawned", true), ("dawns", false)];

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    adjectives: BTreeSet<String>,
    nouns: BTreeSet<String>,
    /// Verb form slots seen for each word: 0 base, 1 past, 2 participle,
    /// 3 third person present, 4 present participle.
    verbs: BTreeMap<String, BTreeSet<usize>>,
}

impl Lexicon {
    pub fn from_ontology(ontology: &Ontology) -> Lexicon {
        let mut lex = Lexicon::default();
        for w in ontology.noun_words() {
            lex.nouns.insert(w.to_lowercase());
        }
        for c in ontology.classes() {
            for p in &c.prior_words {
                for w in &p.words {
                    lex.nouns.insert(w.to_lowercase());
                }
            }
            for a in &c.attribute_types {
                for v in &a.values {
                    for w in &v.dictionary {
                        lex.adjectives.insert(w.to_lowercase());
                    }
                }
            }
        }
        for b in ontology.behaviors() {
            for (slot, w) in b.verb_forms.iter().enumerate() {
                lex.verbs.entry(w.to_lowercase()).or_default().insert(slot);
            }
        }
        lex.adjectives.extend(EXTRA_ADJECTIVES.iter().map(|s| s.to_string()));
        lex.nouns.extend(EXTRA_NOUNS.iter().map(|s| s.to_string()));
        for (w, past) in EXTRA_VERBS {
            lex.verbs.entry(w.to_string()).or_default().insert(if *past { 1 } else { 0 });
        }
        lex
    }

    /// Every class the word can take, closed classes first.
    pub fn classes(&self, word: &str) -> Vec<WordClass> {
        let w = word.to_lowercase();
        let w = w.as_str();
        let mut out = Vec::new();
        let closed: [(&[&str], WordClass); 11] = [
            (DETERMINERS, WordClass::Determiner),
            (POSSESSIVES, WordClass::Possessive),
            (PRONOUNS, WordClass::Pronoun),
            (WH, WordClass::Wh),
            (PREPOSITIONS, WordClass::Preposition),
            (AUX, WordClass::Aux),
            (BE, WordClass::Be),
            (&["not"], WordClass::Not),
            (DEGREE, WordClass::Degree),
            (SUBORDINATORS, WordClass::Subordinator),
            (CONJUNCTIONS, WordClass::Conjunction),
        ];
        for (list, class) in closed {
            if list.contains(&w) {
                out.push(class);
            }
        }
        if self.adjectives.contains(w) {
            out.push(WordClass::Adjective);
        }
        if self.nouns.contains(w) {
            out.push(WordClass::Noun);
        }
        if self.verbs.contains_key(w) {
            out.push(WordClass::Verb);
        }
        out
    }

    pub fn is(&self, word: &str, class: WordClass) -> bool {
        self.classes(word).contains(&class)
    }

    pub fn is_known(&self, word: &str) -> bool {
        !self.classes(word).is_empty()
    }

    /// Past participle or simple past used after "was"/"is".
    pub fn is_participle(&self, word: &str) -> bool {
        self.verbs.get(&word.to_lowercase()).is_some_and(|s| s.contains(&2))
    }

    pub fn is_past(&self, word: &str) -> bool {
        self.verbs
            .get(&word.to_lowercase())
            .is_some_and(|s| (s.contains(&1) || s.contains(&2)) && !s.contains(&0) && !s.contains(&3))
    }

    pub fn is_present_participle(&self, word: &str) -> bool {
        self.verbs.get(&word.to_lowercase()).is_some_and(|s| s.contains(&4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ontology_words_are_classified() {
        let lex = Lexicon::from_ontology(&Ontology::bundled());
        assert!(lex.is("trophy", WordClass::Noun));
        assert!(lex.is("big", WordClass::Adjective));
        assert!(lex.is("refused", WordClass::Verb));
        assert!(lex.is_past("refused"));
        assert!(lex.is_participle("bitten"));
        assert!(lex.is("Because", WordClass::Subordinator));
        assert!(!lex.is_known("zzz"));
    }
}
