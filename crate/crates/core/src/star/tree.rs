//! Untyped element tree produced before keyword checking.

use super::lexer::{Tok, Token};
use super::{Diagnostic, StarError};

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Str(String),
    Ident(String),
    Num(String),
    /// `(sym+n)` or `(sym-n)`.
    Offset {
        symbol: String,
        delta: i64,
    },
}

impl Scalar {
    pub fn text(&self) -> String {
        match self {
            Scalar::Str(s) | Scalar::Ident(s) | Scalar::Num(s) => s.clone(),
            Scalar::Offset { symbol, delta } if *delta >= 0 => format!("({symbol}+{delta})"),
            Scalar::Offset { symbol, delta } => format!("({symbol}{delta})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EmptyElement {
    pub key: String,
    pub attrs: Vec<(String, Scalar)>,
    pub line: usize,
    pub col: usize,
}

impl EmptyElement {
    pub fn attr(&self, name: &str) -> Option<&Scalar> {
        self.attrs.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValueEntry {
    pub text: String,
    pub annotation: Option<Element>,
}

#[derive(Debug, Clone)]
pub struct Element {
    pub keyword: String,
    pub name: Option<String>,
    pub children: Vec<Node>,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub enum Node {
    Empty(EmptyElement),
    Element(Element),
    Values(Vec<ValueEntry>, usize, usize),
}

// Equality ignores source positions so reprinted documents compare equal.
impl PartialEq for EmptyElement {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key && self.attrs == o.attrs
    }
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        self.keyword == o.keyword && self.name == o.name && self.children == o.children
    }
}

impl PartialEq for Node {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Node::Empty(a), Node::Empty(b)) => a == b,
            (Node::Element(a), Node::Element(b)) => a == b,
            (Node::Values(a, _, _), Node::Values(b, _, _)) => a == b,
            _ => false,
        }
    }
}

pub struct TreeParser<'a> {
    toks: &'a [Token],
    pos: usize,
    pub diagnostics: Vec<Diagnostic>,
}

enum Close {
    Normal,
    /// A new top-level definition (or end of input) appeared before `)`.
    Implicit,
}

fn is_definition_keyword(s: &str) -> bool {
    s == "ObjectFrameClass" || s == "BehaviorClass"
}

impl<'a> TreeParser<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        TreeParser { toks, pos: 0, diagnostics: Vec::new() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, off: usize) -> Option<&Tok> {
        self.toks.get(self.pos + off).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, StarError> {
        let (line, col) = self.here();
        Err(StarError::UnboundSyntax { message: message.into(), line, col })
    }

    fn note(&mut self, message: impl Into<String>) {
        let (line, col) = self.here();
        self.diagnostics.push(Diagnostic { message: message.into(), line, col });
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), StarError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn at_definition_start(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1)),
            (Some(Tok::Ident(k)), Some(Tok::Str(_))) if is_definition_keyword(k)
        )
    }

    /// True when, after a run of `)` and `;`, the input ends or a new
    /// definition begins.
    fn terminator_run_ends_definition(&self) -> bool {
        let mut off = 0;
        while matches!(self.peek_at(off), Some(Tok::RParen) | Some(Tok::Semi)) {
            off += 1;
        }
        match (self.peek_at(off), self.peek_at(off + 1)) {
            (None, _) => true,
            (Some(Tok::Ident(k)), Some(Tok::Str(_))) => is_definition_keyword(k),
            _ => false,
        }
    }

    /// Parses every top-level definition as an [`Element`].
    pub fn parse_document(&mut self) -> Result<Vec<Element>, StarError> {
        let mut defs = Vec::new();
        loop {
            let mut run = 0usize;
            let mut parens = 0usize;
            while let Some(t) = self.peek() {
                match t {
                    Tok::Semi => run += 1,
                    Tok::RParen => {
                        run += 1;
                        parens += 1
                    }
                    _ => break,
                }
                self.pos += 1;
            }
            if parens > 0 || run > 1 {
                self.note(format!("collapsed terminator run of {run} tokens ({parens} stray ')')"));
            }
            if self.peek().is_none() {
                break;
            }
            if !self.at_definition_start() {
                return self.err("expected ObjectFrameClass or BehaviorClass definition");
            }
            defs.push(self.parse_definition()?);
        }
        Ok(defs)
    }

    fn parse_definition(&mut self) -> Result<Element, StarError> {
        let (line, col) = self.here();
        let keyword = match self.peek() {
            Some(Tok::Ident(k)) => k.clone(),
            _ => return self.err("expected definition keyword"),
        };
        self.pos += 1;
        let name = match self.peek() {
            Some(Tok::Str(s)) => s.clone(),
            _ => return self.err("expected definition name"),
        };
        self.pos += 1;
        self.expect(Tok::LParen, "'('")?;
        let (children, close) = self.parse_items(1)?;
        if let Close::Implicit = close {
            self.note(format!("definition {name:?} closed implicitly"));
        }
        if self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
        }
        Ok(Element { keyword, name: Some(name), children, line, col })
    }

    fn parse_items(&mut self, depth: usize) -> Result<(Vec<Node>, Close), StarError> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                None => return Ok((items, Close::Implicit)),
                Some(Tok::RParen) => {
                    if depth == 1 && !self.terminator_run_ends_definition() {
                        self.note("ignored stray ')' inside definition body");
                        self.pos += 1;
                        continue;
                    }
                    self.pos += 1;
                    return Ok((items, Close::Normal));
                }
                Some(Tok::Semi) | Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Lt) => items.push(Node::Empty(self.parse_empty()?)),
                Some(Tok::LBrace) => {
                    let (line, col) = self.here();
                    let v = self.parse_values()?;
                    items.push(Node::Values(v, line, col));
                }
                Some(Tok::Ident(_)) | Some(Tok::Str(_)) => {
                    if self.at_definition_start() {
                        return Ok((items, Close::Implicit));
                    }
                    let (el, close) = self.parse_element(depth)?;
                    items.push(Node::Element(el));
                    if let Close::Implicit = close {
                        return Ok((items, Close::Implicit));
                    }
                }
                Some(other) => return self.err(format!("unexpected token {other:?}")),
            }
        }
    }

    fn parse_element(&mut self, depth: usize) -> Result<(Element, Close), StarError> {
        let (line, col) = self.here();
        let keyword = match self.peek() {
            Some(Tok::Ident(k)) | Some(Tok::Str(k)) => k.clone(),
            _ => return self.err("expected element keyword"),
        };
        self.pos += 1;
        let name = match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        };
        if self.peek() != Some(&Tok::LParen) {
            return self.err(format!("expected '(' after {keyword}"));
        }
        self.pos += 1;
        let (children, close) = self.parse_items(depth + 1)?;
        Ok((Element { keyword, name, children, line, col }, close))
    }

    fn parse_empty(&mut self) -> Result<EmptyElement, StarError> {
        let (line, col) = self.here();
        self.expect(Tok::Lt, "'<'")?;
        let key = match self.peek() {
            Some(Tok::Ident(k)) => k.clone(),
            _ => return self.err("expected property name after '<'"),
        };
        self.pos += 1;
        let mut attrs = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Slash) => {
                    self.pos += 1;
                    self.expect(Tok::Gt, "'>'")?;
                    break;
                }
                Some(Tok::Ident(a)) => {
                    let a = a.clone();
                    self.pos += 1;
                    self.expect(Tok::Eq, "'='")?;
                    let v = self.parse_scalar()?;
                    attrs.push((a, v));
                }
                _ => return self.err(format!("malformed <{key} ... /> element")),
            }
        }
        Ok(EmptyElement { key, attrs, line, col })
    }

    fn parse_scalar(&mut self) -> Result<Scalar, StarError> {
        let v = match self.peek() {
            Some(Tok::Str(s)) => Scalar::Str(s.clone()),
            Some(Tok::Ident(s)) => Scalar::Ident(s.clone()),
            Some(Tok::Num(s)) => Scalar::Num(s.clone()),
            Some(Tok::LParen) => {
                self.pos += 1;
                let symbol = match self.peek() {
                    Some(Tok::Ident(s)) => s.clone(),
                    _ => return self.err("expected symbol in expression"),
                };
                self.pos += 1;
                let sign = match self.peek() {
                    Some(Tok::Plus) => 1,
                    Some(Tok::Minus) => -1,
                    _ => return self.err("expected '+' or '-' in expression"),
                };
                self.pos += 1;
                let n: i64 = match self.peek() {
                    Some(Tok::Num(n)) => match n.parse() {
                        Ok(n) => n,
                        Err(_) => return self.err("expected integer offset"),
                    },
                    _ => return self.err("expected integer offset"),
                };
                self.pos += 1;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')' closing expression");
                }
                Scalar::Offset { symbol, delta: sign * n }
            }
            _ => return self.err("expected value"),
        };
        self.pos += 1;
        Ok(v)
    }

    fn parse_values(&mut self) -> Result<Vec<ValueEntry>, StarError> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut entries = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    return Ok(entries);
                }
                Some(Tok::Comma) | Some(Tok::Semi) => self.pos += 1,
                Some(Tok::Str(s)) => {
                    let text = s.clone();
                    self.pos += 1;
                    let annotation = if self.peek() == Some(&Tok::Colon) {
                        self.pos += 1;
                        let (el, close) = self.parse_element(usize::MAX / 2)?;
                        if let Close::Implicit = close {
                            return self.err("unterminated value annotation");
                        }
                        Some(el)
                    } else {
                        None
                    };
                    entries.push(ValueEntry { text, annotation });
                }
                _ => return self.err("expected string or '}' in value list"),
            }
        }
    }
}
