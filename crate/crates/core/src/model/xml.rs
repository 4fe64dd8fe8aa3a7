//! XML export of the instance model and a reader for the same layout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::instance::{AttributeValue, Context, InstanceModel, ObjectInstance, StructuralParentInstance, TimePoint};
use super::ModelError;
use crate::snf::DiscourseContext;

pub const XML_HEADER: &str = r#"<?xml version="1.0" encoding="US-ASCII" standalone="yes"?>"#;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn unescape(s: &str) -> String {
    s.replace("&quot;", "\"").replace("&gt;", ">").replace("&lt;", "<").replace("&amp;", "&")
}

struct Out {
    text: String,
}

impl Out {
    fn line(&mut self, depth: usize, s: &str) {
        let _ = writeln!(self.text, "{:width$}{s}", "", width = depth * 2);
    }
}

pub fn export_xml(model: &InstanceModel) -> String {
    let mut o = Out { text: String::new() };
    o.line(0, XML_HEADER);
    o.line(0, "<InstanceModel>");
    o.line(1, "<TranscriptHeader>");
    o.line(2, &format!("<TextSource value=\"{}\">", escape(&model.text_source)));
    o.line(2, "</TextSource>");
    if let Some(f) = &model.document_file {
        o.line(2, &format!("<DocumentFile name=\"{}\">", escape(f)));
        o.line(2, "</DocumentFile>");
    }
    o.line(1, "</TranscriptHeader>");
    o.line(1, "<ConceptualModel>");
    for ctx in &model.contexts {
        o.line(2, &format!("<LocalContext contextId = \"{}\">", escape(&ctx.unique_id)));
        o.line(3, "<MoodAndTense>");
        o.line(4, &ctx.discourse_context.mood_and_tense());
        o.line(3, "</MoodAndTense>");
        o.line(3, &format!("<StructuralParent name=\"{}\" >", escape(&ctx.structural_parent)));
        o.line(4, &format!("<Timeline name = \"{}\"/>", escape(&ctx.timeline)));
        o.line(3, "</StructuralParent>");
        for (t, sp) in &ctx.timepoints {
            o.line(3, &format!("<TimelineTimePoint value = \"{t}\">"));
            o.line(4, "<InstanceStructure>");
            for c in &sp.components {
                o.line(5, "<Component>");
                o.line(
                    6,
                    &format!("{}.{} ({})", escape(&c.reference_class), escape(&c.unique_id), escape(&c.content_string)),
                );
                o.line(6, "<Attributes>");
                for a in &c.attributes {
                    o.line(7, "<Attribute>");
                    o.line(
                        8,
                        &format!("{}.{} = {}", escape(&a.owner_class), escape(&a.attribute_type), escape(&a.value)),
                    );
                    o.line(7, "</Attribute>");
                }
                o.line(6, "</Attributes>");
                o.line(5, "</Component>");
            }
            o.line(4, "</InstanceStructure>");
            o.line(3, "</TimelineTimePoint>");
        }
        o.line(2, "</LocalContext>");
    }
    o.line(1, "</ConceptualModel>");
    o.line(0, "</InstanceModel>");
    o.text
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, message: impl Into<String>) -> ModelError {
        let line = self.lines.get(self.pos).map(|l| l.0).unwrap_or_else(|| self.lines.last().map_or(1, |l| l.0));
        ModelError::Xml { line, message: message.into() }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1)
    }

    fn next(&mut self) -> Result<&'a str, ModelError> {
        let l = self.peek().ok_or_else(|| self.err("unexpected end of document"))?;
        self.pos += 1;
        Ok(l)
    }

    fn expect(&mut self, s: &str) -> Result<(), ModelError> {
        if self.peek() == Some(s) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {s}")))
        }
    }

    /// Reads `prefix"value"suffix` and returns the quoted value.
    fn quoted(&mut self, prefix: &str, suffix: &str) -> Result<String, ModelError> {
        let l = self.peek().ok_or_else(|| self.err("unexpected end of document"))?;
        let v = l
            .strip_prefix(prefix)
            .and_then(|r| r.strip_prefix('"'))
            .and_then(|r| r.strip_suffix(suffix))
            .and_then(|r| r.strip_suffix('"'))
            .ok_or_else(|| self.err(format!("expected {prefix}\"...\"{suffix}")))?;
        self.pos += 1;
        Ok(unescape(v))
    }
}

/// Parses the export layout back into a model. Unexported state
/// (positions, identity symbols, application records) is left empty.
pub fn read_xml(text: &str) -> Result<InstanceModel, ModelError> {
    let mut r = Lines {
        lines: text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|l| !l.1.is_empty()).collect(),
        pos: 0,
    };
    r.expect(XML_HEADER)?;
    r.expect("<InstanceModel>")?;
    r.expect("<TranscriptHeader>")?;
    let mut model = InstanceModel { text_source: r.quoted("<TextSource value=", ">")?, ..InstanceModel::default() };
    r.expect("</TextSource>")?;
    if r.peek().is_some_and(|l| l.starts_with("<DocumentFile")) {
        model.document_file = Some(r.quoted("<DocumentFile name=", ">")?);
        r.expect("</DocumentFile>")?;
    }
    r.expect("</TranscriptHeader>")?;
    r.expect("<ConceptualModel>")?;
    while r.peek().is_some_and(|l| l.starts_with("<LocalContext")) {
        let ctx = read_context(&mut r)?;
        model.contexts.push(ctx);
    }
    r.expect("</ConceptualModel>")?;
    r.expect("</InstanceModel>")?;
    if r.peek().is_some() {
        return Err(r.err("trailing content"));
    }
    model.counters = counters(&model);
    Ok(model)
}

fn read_context(r: &mut Lines<'_>) -> Result<Context, ModelError> {
    let unique_id = r.quoted("<LocalContext contextId = ", ">")?;
    r.expect("<MoodAndTense>")?;
    let mt = r.next()?;
    let discourse_context =
        DiscourseContext::from_mood_and_tense(mt).ok_or_else(|| r.err(format!("unknown mood and tense {mt:?}")))?;
    r.expect("</MoodAndTense>")?;
    let structural_parent = r.quoted("<StructuralParent name=", " >")?;
    let timeline = r.quoted("<Timeline name = ", "/>")?;
    r.expect("</StructuralParent>")?;
    let mut timepoints = BTreeMap::new();
    while r.peek().is_some_and(|l| l.starts_with("<TimelineTimePoint")) {
        let raw = r.quoted("<TimelineTimePoint value = ", ">")?;
        let t: TimePoint = raw.parse().map_err(|e: String| r.err(e))?;
        r.expect("<InstanceStructure>")?;
        let mut components = Vec::new();
        while r.peek() == Some("<Component>") {
            r.pos += 1;
            components.push(read_component(r)?);
        }
        r.expect("</InstanceStructure>")?;
        r.expect("</TimelineTimePoint>")?;
        timepoints.insert(t, StructuralParentInstance { parent_class: structural_parent.clone(), components });
    }
    r.expect("</LocalContext>")?;
    Ok(Context {
        unique_id,
        discourse_context,
        leading_class_name: None,
        structural_parent,
        timeline,
        timepoints,
        applications: Vec::new(),
    })
}

fn read_component(r: &mut Lines<'_>) -> Result<ObjectInstance, ModelError> {
    let head = r.next()?;
    let (path, word) =
        head.strip_suffix(')').and_then(|h| h.split_once(" (")).ok_or_else(|| r.err("expected Class.Id (word)"))?;
    let (class, id) = path.split_once('.').ok_or_else(|| r.err("expected Class.Id"))?;
    let mut inst = ObjectInstance {
        reference_class: unescape(class),
        content_string: unescape(word),
        unique_id: unescape(id),
        multiple: false,
        attributes: Vec::new(),
        identity_symbol: None,
        positions: BTreeMap::new(),
        behavior_list: Vec::new(),
    };
    r.expect("<Attributes>")?;
    while r.peek() == Some("<Attribute>") {
        r.pos += 1;
        let line = r.next()?;
        let (lhs, value) = line.split_once(" = ").ok_or_else(|| r.err("expected Class.Type = Value"))?;
        let (owner, ty) = lhs.split_once('.').ok_or_else(|| r.err("expected Class.Type"))?;
        inst.attributes.push(AttributeValue {
            owner_class: unescape(owner),
            attribute_type: unescape(ty),
            value: unescape(value),
        });
        r.expect("</Attribute>")?;
    }
    r.expect("</Attributes>")?;
    r.expect("</Component>")?;
    Ok(inst)
}

/// Rebuilds id counters so instantiation after a read cannot collide.
fn counters(model: &InstanceModel) -> BTreeMap<String, u32> {
    let mut out: BTreeMap<String, u32> = BTreeMap::new();
    for ctx in &model.contexts {
        for sp in ctx.timepoints.values() {
            for c in &sp.components {
                let n = c
                    .unique_id
                    .rsplit_once('-')
                    .filter(|(class, _)| *class == c.reference_class)
                    .and_then(|(_, n)| n.parse().ok())
                    .unwrap_or(0);
                let e = out.entry(c.reference_class.clone()).or_insert(0);
                *e = (*e).max(n);
            }
        }
    }
    out
}
