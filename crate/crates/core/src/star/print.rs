//! Canonical Star rendering. Parsing the output yields the same definitions.

use std::fmt::Write;

use super::defs::*;
use super::tree::{Element, Node};
use super::StarDocument;
use crate::role::Role;

pub fn pretty_print(doc: &StarDocument) -> String {
    let mut out = String::new();
    for (i, d) in doc.definitions.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match d {
            Definition::Class(c) => print_class(&mut out, c),
            Definition::Behavior(b) => print_behavior(&mut out, b),
        }
    }
    out
}

fn quoted_list(words: &[String]) -> String {
    if words.is_empty() {
        return "{ }".to_string();
    }
    let inner: Vec<String> = words.iter().map(|w| format!("\"{w}\"")).collect();
    format!("{{ {} }}", inner.join(", "))
}

fn pad(depth: usize) -> String {
    "  ".repeat(depth)
}

fn print_class(out: &mut String, c: &ObjectFrameClassDef) {
    let _ = writeln!(out, "ObjectFrameClass \"{}\"\n(", c.name);
    if let Some(t) = &c.structure_trait {
        let _ = writeln!(out, "  <StructureTrait val = \"{t}\"/>");
    }
    if let Some(g) = c.gender {
        let _ = writeln!(out, "  <Gender val = \"{}\"/>", g.as_str());
    }
    if let Some(p) = &c.dictionary_prior_word {
        out.push_str("  DictionaryPriorWord\n  (\n");
        if p.is_noun {
            out.push_str("    <DictionaryWordIsNoun val = \"true\" />\n");
        }
        let _ = writeln!(out, "    English ( {} );\n  );", quoted_list(&p.words));
    }
    for group in &c.dictionary {
        let _ = writeln!(out, "  Dictionary ( English ( {} ) );", quoted_list(group));
    }
    if !c.higher_classes.is_empty() {
        let _ = writeln!(out, "  HigherClasses ( {} );", quoted_list(&c.higher_classes));
    }
    if !c.structural_parent_bases.is_empty() {
        let _ = writeln!(out, "  StructuralParentClassesBase ( {} );", quoted_list(&c.structural_parent_bases));
    }
    if !c.attribute_types.is_empty() {
        out.push_str("  AttributeTypes\n  (\n");
        for a in &c.attribute_types {
            print_attribute_type(out, a);
        }
        out.push_str("  );\n");
    }
    for e in &c.dimension_systems {
        print_element(out, e, 1);
    }
    for e in &c.structure {
        print_element(out, e, 1);
    }
    out.push_str(");\n");
}

fn print_attribute_type(out: &mut String, a: &AttributeTypeDef) {
    let _ = writeln!(out, "    AttributeType \"{}\"\n    (", a.name);
    if let Some(s) = &a.super_type {
        let _ = writeln!(out, "      <SuperType val = \"{s}\"/>");
    }
    if a.is_state {
        out.push_str("      <StateAttributeType val = \"true\" />\n");
    }
    if a.optional_causal_feature {
        out.push_str("      <OptionalCausalFeature val = \"true\" />\n");
    }
    if !a.values.is_empty() {
        out.push_str("      \"Values\"\n      (\n        {\n");
        for (i, v) in a.values.iter().enumerate() {
            let sep = if i + 1 < a.values.len() { "," } else { "" };
            if v.dictionary.is_empty() {
                let _ = writeln!(out, "          \"{}\"{sep}", v.name);
            } else {
                let _ = writeln!(
                    out,
                    "          \"{}\" : Dictionary ( English ( {} ) );{sep}",
                    v.name,
                    quoted_list(&v.dictionary)
                );
            }
        }
        out.push_str("        }\n      );\n");
    }
    out.push_str("    );\n");
}

fn print_element(out: &mut String, e: &Element, depth: usize) {
    let p = pad(depth);
    let kw = if e.keyword.chars().all(|c| c.is_alphanumeric() || c == '_') {
        e.keyword.clone()
    } else {
        format!("\"{}\"", e.keyword)
    };
    match &e.name {
        Some(n) => {
            let _ = writeln!(out, "{p}{kw} \"{n}\"");
        }
        None => {
            let _ = writeln!(out, "{p}{kw}");
        }
    }
    let _ = writeln!(out, "{p}(");
    for c in &e.children {
        match c {
            Node::Element(x) => print_element(out, x, depth + 1),
            Node::Empty(x) => {
                let attrs: Vec<String> = x.attrs.iter().map(|(k, v)| format!("{k} = {}", scalar(v))).collect();
                let _ = writeln!(out, "{}<{} {} />", pad(depth + 1), x.key, attrs.join(" "));
            }
            Node::Values(v, _, _) => {
                let words: Vec<String> = v.iter().map(|x| x.text.clone()).collect();
                let _ = writeln!(out, "{}{}", pad(depth + 1), quoted_list(&words));
            }
        }
    }
    let _ = writeln!(out, "{p});");
}

fn scalar(s: &super::tree::Scalar) -> String {
    match s {
        super::tree::Scalar::Str(x) => format!("\"{x}\""),
        other => other.text(),
    }
}

fn expr_text(e: &Expr) -> String {
    match e {
        Expr::Symbol(s) => s.clone(),
        Expr::Offset { symbol, delta } if *delta >= 0 => format!("({symbol}+{delta})"),
        Expr::Offset { symbol, delta } => format!("({symbol}{delta})"),
        Expr::Number(n) => n.clone(),
    }
}

fn flag_line(out: &mut String, depth: usize, key: &str, on: bool) {
    if on {
        let _ = writeln!(out, "{}<{key} val = \"true\" />", pad(depth));
    }
}

fn print_behavior(out: &mut String, b: &BehaviorClassDef) {
    let _ = writeln!(out, "BehaviorClass \"{}\"\n(", b.name);
    flag_line(out, 1, "CausalRule", b.causal_rule);
    if let Some(br) = &b.bridge_class {
        let _ = writeln!(out, "  <BridgeObjectFrameClass ref = {br} />");
    }
    flag_line(out, 1, "Negation", b.negation);
    if let Some(p) = b.probability {
        let _ = writeln!(out, "  <Probability expr = {p} />");
    }
    let _ = writeln!(out, "  Dictionary ( English ( {} ) );", quoted_list(&b.verb_forms));
    for (title, items) in [("PriorStates", &b.prior_states), ("PostStates", &b.post_states)] {
        let _ = writeln!(out, "  {title}\n  (");
        for item in items.iter() {
            match item {
                StateItem::Populated(p) => print_populated(out, p),
                StateItem::Reference(r) => print_reference(out, r),
            }
        }
        out.push_str("  );\n");
    }
    out.push_str(");\n");
}

fn print_populated(out: &mut String, p: &PopulatedObjectClassDef) {
    let _ = writeln!(out, "    PopulatedObjectClass \"{}\"\n    (", p.label);
    let _ = writeln!(out, "      <ObjectFrameClass ref = {} />", p.object_class);
    flag_line(out, 3, "BinderSourceFlag", p.binder_source);
    flag_line(out, 3, "PassiveParticipant", p.passive_participant);
    flag_line(out, 3, "ExtraParticipant", p.extra_participant);
    flag_line(out, 3, "Multiple", p.multiple);
    if let Some(d) = &p.dimension_system {
        let _ = writeln!(out, "      <DimensionSystem ref = {d} />");
    }
    for bnd in &p.bindings {
        let mode = match &bnd.mode {
            BindingMode::Val(v) => format!("val = \"{v}\""),
            BindingMode::Var(v) => format!("var = {v}"),
            BindingMode::Expr(e) => format!("expr = {}", expr_text(e)),
        };
        let _ = writeln!(out, "      <Attribute ref = {} {mode} />", bnd.attribute_type);
    }
    out.push_str("    );\n");
}

fn print_reference(out: &mut String, r: &BehaviorClassReferenceDef) {
    out.push_str("    BehaviorClassReference\n    (\n");
    if let Some(p) = r.probability {
        let _ = writeln!(out, "      <Probability expr = {p} />");
    }
    let _ = writeln!(out, "      <BehaviorClass ref = {} />", r.behavior);
    for prm in &r.parameters {
        let key = match prm.slot {
            Role::Actor => "ParameterActor",
            Role::Actee => "ParameterActee",
            Role::Extra => "ParameterExtra",
        };
        match &prm.symbol {
            Some(s) => {
                let _ = writeln!(out, "      <{key} ref = {} expr = {s} />", prm.class);
            }
            None => {
                let _ = writeln!(out, "      <{key} ref = {} />", prm.class);
            }
        }
    }
    out.push_str("    );\n");
}
