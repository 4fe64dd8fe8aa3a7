//! Block notation for predicate expressions: `Field (value ...)` leaves and
//! `Block { ... }` interiors, one construct per line, `//` comments.

use std::fmt::Write as _;

use super::*;
use crate::star::lexer::{lex, Tok, Token};
use crate::star::StarError;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SnfError {
    #[error("SNF syntax error at {line}:{col}: {message}")]
    Syntax { message: String, line: usize, col: usize },
}

fn err<T>(message: impl Into<String>, line: usize, col: usize) -> Result<T, SnfError> {
    Err(SnfError::Syntax { message: message.into(), line, col })
}

#[derive(Debug, Clone, PartialEq)]
enum Atom {
    Word(String),
    Text(String),
}

#[derive(Debug)]
enum Node {
    Leaf { name: String, values: Vec<String>, line: usize, col: usize },
    Block { name: String, children: Vec<Node>, line: usize, col: usize },
}

impl Node {
    fn name(&self) -> &str {
        match self {
            Node::Leaf { name, .. } | Node::Block { name, .. } => name,
        }
    }

    fn pos(&self) -> (usize, usize) {
        match self {
            Node::Leaf { line, col, .. } | Node::Block { line, col, .. } => (*line, *col),
        }
    }
}

// ---------------------------------------------------------------------------
// Writing

struct Writer {
    out: String,
    depth: usize,
}

impl Writer {
    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
    }

    fn leaf(&mut self, name: &str, values: &[Atom]) {
        self.indent();
        let vals: Vec<String> = values
            .iter()
            .map(|a| match a {
                Atom::Word(w) => w.clone(),
                Atom::Text(t) => format!("\"{t}\""),
            })
            .collect();
        let _ = writeln!(self.out, "{name} ({})", vals.join(" "));
    }

    fn text(&mut self, name: &str, value: &str) {
        self.leaf(name, &[Atom::Text(value.to_string())]);
    }

    fn word(&mut self, name: &str, value: impl ToString) {
        self.leaf(name, &[Atom::Word(value.to_string())]);
    }

    fn open(&mut self, name: &str) {
        self.indent();
        let _ = writeln!(self.out, "{name} {{");
        self.depth += 1;
    }

    fn close(&mut self) {
        self.depth -= 1;
        self.indent();
        self.out.push_str("}\n");
    }
}

/// Renders a PE in the block notation.
pub fn serialize_snf(pe: &PredicateExpression) -> String {
    let mut w = Writer { out: String::new(), depth: 0 };
    write_pe(&mut w, pe);
    w.out
}

fn write_pe(w: &mut Writer, pe: &PredicateExpression) {
    w.open("PredicateExpression");
    w.word("GrammaticalMood", pe.grammatical_mood);
    if let Some(i) = &pe.introductory_word {
        w.text("IntroductoryWord", i);
    }
    w.word("FirstTokenIndex", pe.first_token_index);
    if !pe.pe_pointer_order.is_empty() {
        w.open("PePointerOrder");
        for path in &pe.pe_pointer_order {
            let mut atoms = Vec::new();
            for step in path {
                match *step {
                    PeStep::Argument(i) => atoms.extend([Atom::Word("Argument".into()), Atom::Word(i.to_string())]),
                    PeStep::Modifier(i) => atoms.extend([Atom::Word("Modifier".into()), Atom::Word(i.to_string())]),
                    PeStep::Expression(i) => atoms.extend([Atom::Word("Expression".into()), Atom::Word(i.to_string())]),
                    PeStep::Postnominal(a, d, m) => atoms.extend([
                        Atom::Word("Postnominal".into()),
                        Atom::Word(a.to_string()),
                        Atom::Word(d.to_string()),
                        Atom::Word(m.to_string()),
                    ]),
                }
            }
            w.leaf("PePointer", &atoms);
        }
        w.close();
    }
    if !pe.predicate_specifiers.is_empty() {
        w.open("PredicateSpecifierList");
        for p in &pe.predicate_specifiers {
            w.open("PredicateSpecifier");
            w.word("Ordinal", p.ordinal);
            w.text("MainVerbWord", &p.main_verb_word);
            w.word("PredicateSpecifierRole", p.role);
            w.word("DiscourseContext", p.discourse_context);
            if let Some(t) = &p.trailing_connective {
                w.text("TrailingConnectiveWord", t);
            }
            w.close();
        }
        w.close();
    }
    if !pe.entity_arguments.is_empty() {
        w.open("EntityArgumentSpecifierList");
        for a in &pe.entity_arguments {
            w.open("EntityArgumentSpecifier");
            if !a.entity_designators.is_empty() {
                w.open("EntityDesignatorList");
                for d in &a.entity_designators {
                    w.open("EntityDesignator");
                    if let Some(np) = &d.noun_phrase {
                        write_np(w, np);
                    }
                    if let Some(pc) = &d.prepositional_complement {
                        w.open("PrepositionalComplement");
                        w.text("Preposition", &pc.preposition);
                        write_np(w, &pc.noun_phrase);
                        w.close();
                    }
                    if let Some(t) = &d.trailing_connective {
                        w.text("TrailingConnectiveWord", t);
                    }
                    w.close();
                }
                w.close();
            }
            if let Some(pe) = &a.nested_pe {
                write_pe(w, pe);
            }
            w.word("EntityArgumentSemanticRole", a.semantic_role);
            if let Some(s) = a.extra_sub_role {
                w.word("ExtraSubRole", s);
            }
            w.word("SyntacticRole", a.syntactic_role);
            w.word("PredicateOrdinal", a.predicate_ordinal);
            w.close();
        }
        w.close();
    }
    if !pe.attributive_arguments.is_empty() {
        w.open("AttributiveArgumentSpecifierList");
        for a in &pe.attributive_arguments {
            w.open("AttributiveArgumentSpecifier");
            w.word("AttributiveRole", a.role);
            for d in &a.attribute_designators {
                w.open("AttributeDesignator");
                if let Some(dw) = &d.degree_word {
                    w.text("DegreeWord", dw);
                }
                w.text("AdjectiveWord", &d.adjective_word);
                w.close();
            }
            w.close();
        }
        w.close();
    }
    if !pe.modification_specifiers.is_empty() {
        w.open("ModificationSpecifierList");
        for m in &pe.modification_specifiers {
            w.open("ModificationSpecifier");
            if let Some(a) = &m.adverbial_phrase {
                w.text("AdverbialPhrase", a);
            }
            if let Some(ae) = &m.adverbial_expression {
                w.open("AdverbialExpression");
                w.text("AdverbPhraseIntroductoryWord", &ae.introducer);
                write_pe(w, &ae.predicate_expression);
                w.close();
            }
            if let Some(pe) = &m.nested_pe {
                write_pe(w, pe);
            }
            w.word("SyntacticPosition", m.syntactic_position);
            w.word("PredicateOrdinal", m.predicate_ordinal);
            w.close();
        }
        w.close();
    }
    w.close();
}

fn write_np(w: &mut Writer, np: &NounPhrase) {
    w.open("NounPhrase");
    for s in &np.specifiers {
        w.text("Specifier", s);
    }
    for q in &np.qualifiers {
        w.text("Qualifier", q);
    }
    for h in &np.head_words {
        w.leaf("NounHeadWord", &[Atom::Text(h.word.clone()), Atom::Word(h.kind.to_string())]);
    }
    for m in &np.postnominal_modifiers {
        w.open("PostnominalModifier");
        w.text("Preposition", &m.preposition);
        write_np(w, &m.noun_phrase);
        if let Some(pe) = &m.nested_pe {
            write_pe(w, pe);
        }
        w.close();
    }
    w.close();
}

// ---------------------------------------------------------------------------
// Reading

/// Parses text in the block notation back into a PE.
pub fn parse_snf(text: &str) -> Result<PredicateExpression, SnfError> {
    let toks = lex(text).map_err(|e| match e {
        StarError::UnboundSyntax { message, line, col } | StarError::UnknownElement { keyword: message, line, col } => {
            SnfError::Syntax { message, line, col }
        }
    })?;
    let mut pos = 0;
    let node = parse_node(&toks, &mut pos)?;
    if let Some(t) = toks.get(pos) {
        return err("trailing input after the predicate expression", t.line, t.col);
    }
    if node.name() != "PredicateExpression" {
        let (l, c) = node.pos();
        return err(format!("expected PredicateExpression, found {}", node.name()), l, c);
    }
    pe_from(&node)
}

fn parse_node(toks: &[Token], pos: &mut usize) -> Result<Node, SnfError> {
    let (line, col) = toks.get(*pos).map(|t| (t.line, t.col)).unwrap_or((0, 0));
    let name = match toks.get(*pos).map(|t| &t.tok) {
        Some(Tok::Ident(n)) => n.clone(),
        Some(other) => return err(format!("expected a field name, found {other:?}"), line, col),
        None => return err("unexpected end of input", line, col),
    };
    *pos += 1;
    match toks.get(*pos).map(|t| &t.tok) {
        Some(Tok::LParen) => {
            *pos += 1;
            let mut values = Vec::new();
            loop {
                let t = match toks.get(*pos) {
                    Some(t) => t,
                    None => return err(format!("unclosed value list of {name}"), line, col),
                };
                *pos += 1;
                match &t.tok {
                    Tok::RParen => break,
                    Tok::Comma => {}
                    Tok::Ident(s) | Tok::Str(s) | Tok::Num(s) => values.push(s.clone()),
                    other => return err(format!("unexpected {other:?} in value list"), t.line, t.col),
                }
            }
            Ok(Node::Leaf { name, values, line, col })
        }
        Some(Tok::LBrace) => {
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match toks.get(*pos).map(|t| &t.tok) {
                    Some(Tok::RBrace) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_node(toks, pos)?),
                    None => return err(format!("unclosed block {name}"), line, col),
                }
            }
            Ok(Node::Block { name, children, line, col })
        }
        _ => {
            let (l, c) = toks.get(*pos).map(|t| (t.line, t.col)).unwrap_or((line, col));
            err(format!("expected '(' or '{{' after {name}"), l, c)
        }
    }
}

fn children(n: &Node) -> &[Node] {
    match n {
        Node::Block { children, .. } => children,
        Node::Leaf { .. } => &[],
    }
}

fn single(n: &Node) -> Result<&str, SnfError> {
    match n {
        Node::Leaf { values, name, line, col } => match values.as_slice() {
            [v] => Ok(v),
            _ => err(format!("{name} takes exactly one value"), *line, *col),
        },
        Node::Block { name, line, col, .. } => err(format!("{name} must be a leaf"), *line, *col),
    }
}

fn parsed<T: FromStr<Err = String>>(n: &Node) -> Result<T, SnfError> {
    let (l, c) = n.pos();
    single(n)?.parse().map_err(|m: String| SnfError::Syntax { message: m, line: l, col: c })
}

fn number(n: &Node) -> Result<usize, SnfError> {
    let (l, c) = n.pos();
    single(n)?.parse().map_err(|_| SnfError::Syntax {
        message: format!("{} expects a number", n.name()),
        line: l,
        col: c,
    })
}

fn unknown<T>(n: &Node, within: &str) -> Result<T, SnfError> {
    let (l, c) = n.pos();
    err(format!("unknown field {} in {within}", n.name()), l, c)
}

fn require<T>(v: Option<T>, what: &str, within: &Node) -> Result<T, SnfError> {
    let (l, c) = within.pos();
    v.ok_or_else(|| SnfError::Syntax { message: format!("{} lacks {what}", within.name()), line: l, col: c })
}

fn pe_from(n: &Node) -> Result<PredicateExpression, SnfError> {
    let mut pe = PredicateExpression::new(GrammaticalMood::Indicative);
    let mut mood = None;
    for c in children(n) {
        match c.name() {
            "GrammaticalMood" => mood = Some(parsed(c)?),
            "IntroductoryWord" => pe.introductory_word = Some(single(c)?.to_string()),
            "FirstTokenIndex" => pe.first_token_index = number(c)?,
            "PePointerOrder" => {
                for p in children(c) {
                    if p.name() != "PePointer" {
                        return unknown(p, "PePointerOrder");
                    }
                    pe.pe_pointer_order.push(path_from(p)?);
                }
            }
            "PredicateSpecifierList" => {
                for p in children(c) {
                    if p.name() != "PredicateSpecifier" {
                        return unknown(p, "PredicateSpecifierList");
                    }
                    pe.predicate_specifiers.push(predicate_from(p)?);
                }
            }
            "EntityArgumentSpecifierList" => {
                for a in children(c) {
                    if a.name() != "EntityArgumentSpecifier" {
                        return unknown(a, "EntityArgumentSpecifierList");
                    }
                    pe.entity_arguments.push(argument_from(a)?);
                }
            }
            "AttributiveArgumentSpecifierList" => {
                for a in children(c) {
                    if a.name() != "AttributiveArgumentSpecifier" {
                        return unknown(a, "AttributiveArgumentSpecifierList");
                    }
                    pe.attributive_arguments.push(attributive_from(a)?);
                }
            }
            "ModificationSpecifierList" => {
                for m in children(c) {
                    if m.name() != "ModificationSpecifier" {
                        return unknown(m, "ModificationSpecifierList");
                    }
                    pe.modification_specifiers.push(modifier_from(m)?);
                }
            }
            _ => return unknown(c, "PredicateExpression"),
        }
    }
    pe.grammatical_mood = require(mood, "GrammaticalMood", n)?;
    Ok(pe)
}

fn path_from(n: &Node) -> Result<PePath, SnfError> {
    let (l, c) = n.pos();
    let values = match n {
        Node::Leaf { values, .. } => values,
        Node::Block { .. } => return err("PePointer must be a leaf", l, c),
    };
    let num = |i: usize| -> Result<usize, SnfError> {
        values.get(i).and_then(|v| v.parse().ok()).ok_or_else(|| SnfError::Syntax {
            message: "malformed PePointer".into(),
            line: l,
            col: c,
        })
    };
    let mut path = Vec::new();
    let mut i = 0;
    while i < values.len() {
        match values[i].as_str() {
            "Argument" => {
                path.push(PeStep::Argument(num(i + 1)?));
                i += 2;
            }
            "Modifier" => {
                path.push(PeStep::Modifier(num(i + 1)?));
                i += 2;
            }
            "Expression" => {
                path.push(PeStep::Expression(num(i + 1)?));
                i += 2;
            }
            "Postnominal" => {
                path.push(PeStep::Postnominal(num(i + 1)?, num(i + 2)?, num(i + 3)?));
                i += 4;
            }
            other => return err(format!("unknown PePointer step {other:?}"), l, c),
        }
    }
    Ok(path)
}

fn predicate_from(n: &Node) -> Result<PredicateSpecifier, SnfError> {
    let (mut ordinal, mut verb, mut role, mut dc, mut trailing) = (None, None, None, None, None);
    for c in children(n) {
        match c.name() {
            "Ordinal" => ordinal = Some(number(c)?),
            "MainVerbWord" => verb = Some(single(c)?.to_string()),
            "PredicateSpecifierRole" | "MainVerbSemanticRole" => role = Some(parsed(c)?),
            "DiscourseContext" => dc = Some(parsed(c)?),
            "TrailingConnectiveWord" => trailing = Some(single(c)?.to_string()),
            _ => return unknown(c, "PredicateSpecifier"),
        }
    }
    Ok(PredicateSpecifier {
        ordinal: ordinal.unwrap_or(0),
        main_verb_word: require(verb, "MainVerbWord", n)?,
        role: require(role, "PredicateSpecifierRole", n)?,
        discourse_context: require(dc, "DiscourseContext", n)?,
        trailing_connective: trailing,
    })
}

fn np_from(n: &Node) -> Result<NounPhrase, SnfError> {
    let mut np = NounPhrase::default();
    for c in children(n) {
        match c.name() {
            "Specifier" => np.specifiers.push(single(c)?.to_string()),
            "Qualifier" => np.qualifiers.push(single(c)?.to_string()),
            "NounHeadWord" => {
                let (l, col) = c.pos();
                let values = match c {
                    Node::Leaf { values, .. } => values,
                    Node::Block { .. } => return err("NounHeadWord must be a leaf", l, col),
                };
                let word = values.first().cloned().ok_or_else(|| SnfError::Syntax {
                    message: "NounHeadWord needs a word".into(),
                    line: l,
                    col,
                })?;
                let kind = match values.get(1) {
                    Some(k) => k.parse().map_err(|m: String| SnfError::Syntax { message: m, line: l, col })?,
                    None => HeadKind::CommonNoun,
                };
                np.head_words.push(HeadWord { word, kind });
            }
            "PostnominalModifier" => {
                let (mut prep, mut inner, mut nested) = (None, None, None);
                for m in children(c) {
                    match m.name() {
                        "Preposition" => prep = Some(single(m)?.to_string()),
                        "NounPhrase" => inner = Some(np_from(m)?),
                        "PredicateExpression" => nested = Some(Box::new(pe_from(m)?)),
                        _ => return unknown(m, "PostnominalModifier"),
                    }
                }
                np.postnominal_modifiers.push(PostnominalModifier {
                    preposition: require(prep, "Preposition", c)?,
                    noun_phrase: require(inner, "NounPhrase", c)?,
                    nested_pe: nested,
                });
            }
            _ => return unknown(c, "NounPhrase"),
        }
    }
    Ok(np)
}

fn argument_from(n: &Node) -> Result<EntityArgumentSpecifier, SnfError> {
    let mut designators = Vec::new();
    let (mut nested, mut role, mut sub, mut syn, mut ord) = (None, None, None, None, None);
    for c in children(n) {
        match c.name() {
            "EntityDesignatorList" => {
                for d in children(c) {
                    if d.name() != "EntityDesignator" {
                        return unknown(d, "EntityDesignatorList");
                    }
                    let mut des = EntityDesignator::default();
                    for f in children(d) {
                        match f.name() {
                            "NounPhrase" => des.noun_phrase = Some(np_from(f)?),
                            "PrepositionalComplement" => {
                                let (mut prep, mut inner) = (None, None);
                                for g in children(f) {
                                    match g.name() {
                                        "Preposition" => prep = Some(single(g)?.to_string()),
                                        "NounPhrase" => inner = Some(np_from(g)?),
                                        _ => return unknown(g, "PrepositionalComplement"),
                                    }
                                }
                                des.prepositional_complement = Some(PrepositionalComplement {
                                    preposition: require(prep, "Preposition", f)?,
                                    noun_phrase: require(inner, "NounPhrase", f)?,
                                });
                            }
                            "TrailingConnectiveWord" => des.trailing_connective = Some(single(f)?.to_string()),
                            _ => return unknown(f, "EntityDesignator"),
                        }
                    }
                    designators.push(des);
                }
            }
            "PredicateExpression" => nested = Some(Box::new(pe_from(c)?)),
            "EntityArgumentSemanticRole" => role = Some(parsed(c)?),
            "ExtraSubRole" => sub = Some(parsed(c)?),
            "SyntacticRole" => syn = Some(parsed(c)?),
            "PredicateOrdinal" => ord = Some(number(c)?),
            _ => return unknown(c, "EntityArgumentSpecifier"),
        }
    }
    Ok(EntityArgumentSpecifier {
        entity_designators: designators,
        nested_pe: nested,
        semantic_role: require(role, "EntityArgumentSemanticRole", n)?,
        extra_sub_role: sub,
        syntactic_role: syn.unwrap_or(SyntacticRole::Other),
        predicate_ordinal: ord.unwrap_or(0),
    })
}

fn attributive_from(n: &Node) -> Result<AttributiveArgumentSpecifier, SnfError> {
    let mut role = None;
    let mut designators = Vec::new();
    for c in children(n) {
        match c.name() {
            "AttributiveRole" => role = Some(parsed(c)?),
            "AttributeDesignator" => {
                let (mut degree, mut adj) = (None, None);
                for f in children(c) {
                    match f.name() {
                        "DegreeWord" => degree = Some(single(f)?.to_string()),
                        "AdjectiveWord" => adj = Some(single(f)?.to_string()),
                        _ => return unknown(f, "AttributeDesignator"),
                    }
                }
                designators.push(AttributeDesignator {
                    degree_word: degree,
                    adjective_word: require(adj, "AdjectiveWord", c)?,
                });
            }
            _ => return unknown(c, "AttributiveArgumentSpecifier"),
        }
    }
    Ok(AttributiveArgumentSpecifier {
        role: role.unwrap_or(AttributiveRole::Attribute),
        attribute_designators: designators,
    })
}

fn modifier_from(n: &Node) -> Result<ModificationSpecifier, SnfError> {
    let (mut phrase, mut expr, mut nested, mut position, mut ord) = (None, None, None, None, None);
    for c in children(n) {
        match c.name() {
            "AdverbialPhrase" => phrase = Some(single(c)?.to_string()),
            "AdverbialExpression" => {
                let (mut intro, mut pe) = (None, None);
                for f in children(c) {
                    match f.name() {
                        "AdverbPhraseIntroductoryWord" | "WhWord" => intro = Some(single(f)?.to_string()),
                        "PredicateExpression" => pe = Some(Box::new(pe_from(f)?)),
                        _ => return unknown(f, "AdverbialExpression"),
                    }
                }
                expr = Some(AdverbialExpression {
                    introducer: require(intro, "AdverbPhraseIntroductoryWord", c)?,
                    predicate_expression: require(pe, "PredicateExpression", c)?,
                });
            }
            "PredicateExpression" => nested = Some(Box::new(pe_from(c)?)),
            "SyntacticPosition" => position = Some(parsed(c)?),
            "PredicateOrdinal" => ord = Some(number(c)?),
            _ => return unknown(c, "ModificationSpecifier"),
        }
    }
    Ok(ModificationSpecifier {
        adverbial_phrase: phrase,
        adverbial_expression: expr,
        nested_pe: nested,
        syntactic_position: require(position, "SyntacticPosition", n)?,
        predicate_ordinal: ord.unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unclosed_block_is_a_syntax_error() {
        let text = "PredicateExpression {\n  GrammaticalMood (Indicative)\n  PredicateSpecifierList {\n";
        match parse_snf(text) {
            Err(SnfError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_field_reports_position() {
        let text = "PredicateExpression {\n  GrammaticalMood (Indicative)\n  Bogus (1)\n}\n";
        match parse_snf(text) {
            Err(SnfError::Syntax { line, col, message }) => {
                assert_eq!((line, col), (3, 3));
                assert!(message.contains("Bogus"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minimal_pe_round_trips() {
        let mut pe = PredicateExpression::new(GrammaticalMood::Indicative);
        pe.predicate_specifiers.push(PredicateSpecifier {
            ordinal: 0,
            main_verb_word: "runs".into(),
            role: PredicateRole::PredicateVerbTakingEntityArgument,
            discourse_context: DiscourseContext::DeclarativePresentSimple,
            trailing_connective: None,
        });
        pe.entity_arguments.push(EntityArgumentSpecifier {
            entity_designators: vec![EntityDesignator::noun(NounPhrase {
                head_words: vec![HeadWord { word: "x".into(), kind: HeadKind::CommonNoun }],
                ..Default::default()
            })],
            nested_pe: None,
            semantic_role: Role::Actor,
            extra_sub_role: None,
            syntactic_role: SyntacticRole::Subject,
            predicate_ordinal: 0,
        });
        pe.pe_pointer_order = vec![vec![]];
        let text = serialize_snf(&pe);
        assert_eq!(parse_snf(&text).unwrap(), pe);
    }
}
