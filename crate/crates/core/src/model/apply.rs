//! Behavior-class application onto a context timeline.

use std::collections::BTreeMap;

use super::instance::{Application, Context, TimePoint};
use super::ModelError;
use crate::role::Role;
use crate::star::{
    AttributeBinding, BehaviorClassDef, BindingMode, Expr, Ontology, PopulatedObjectClassDef, IDENTITY_ATTRIBUTE,
};

const RELATIVE_TIME: &str = "RelativeTime";
const RELATIVE_LOCATION: &str = "RelativeLocation";

/// Instance ids bound to each role.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RoleBindings {
    pub actor: Vec<String>,
    pub actee: Vec<String>,
    pub extra: Vec<String>,
}

impl RoleBindings {
    pub fn get(&self, role: Role) -> &[String] {
        match role {
            Role::Actor => &self.actor,
            Role::Actee => &self.actee,
            Role::Extra => &self.extra,
        }
    }

    pub fn get_mut(&mut self, role: Role) -> &mut Vec<String> {
        match role {
            Role::Actor => &mut self.actor,
            Role::Actee => &mut self.actee,
            Role::Extra => &mut self.extra,
        }
    }

    pub fn all(&self) -> impl Iterator<Item = &String> {
        self.actor.iter().chain(&self.actee).chain(&self.extra)
    }
}

/// One attribute written during application.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttributeWrite {
    pub at: TimePoint,
    pub instance_id: String,
    pub attribute_type: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedRule {
    pub behavior: String,
    pub at: TimePoint,
    pub next: TimePoint,
    pub bindings: RoleBindings,
    /// Positional and temporal symbols resolved to ordinals.
    pub symbols: BTreeMap<String, i64>,
    /// Identity symbols bound to instance ids.
    pub identities: BTreeMap<String, String>,
    pub writes: Vec<AttributeWrite>,
}

/// Value written under the Negation flag: the first `Not...` value of the set.
fn complement(ontology: &Ontology, class: &str, attribute_type: &str, listed: &str) -> String {
    ontology
        .attribute_type(class, attribute_type)
        .and_then(|(_, def)| def.values.iter().find(|v| v.name.starts_with("Not")))
        .map(|v| v.name.clone())
        .unwrap_or_else(|| listed.to_string())
}

fn eval(expr: &Expr, symbols: &BTreeMap<String, i64>) -> Option<i64> {
    match expr {
        Expr::Symbol(s) => symbols.get(s).copied(),
        Expr::Offset { symbol, delta } => symbols.get(symbol).map(|v| v + delta),
        Expr::Number(n) => n.parse().ok(),
    }
}

struct Pass<'a> {
    ontology: &'a Ontology,
    behavior: &'a BehaviorClassDef,
    bindings: &'a RoleBindings,
    symbols: BTreeMap<String, i64>,
    identities: BTreeMap<String, String>,
    writes: Vec<AttributeWrite>,
}

impl Pass<'_> {
    fn check_roles(&self, ctx: &Context, at: TimePoint, items: &[&PopulatedObjectClassDef]) -> Result<(), ModelError> {
        for p in items {
            for id in self.bindings.get(p.role()) {
                let inst = ctx.instance(at, id).ok_or_else(|| ModelError::UnknownInstance(id.clone()))?;
                if !self.ontology.is_a(&inst.reference_class, &p.object_class) {
                    return Err(ModelError::RoleMismatch { role: p.role(), class: inst.reference_class.clone() });
                }
            }
        }
        Ok(())
    }

    /// Applies one section's bindings at `at`. `post` selects the
    /// consequent treatment: negation complements and no causal skipping.
    fn section(
        &mut self,
        ctx: &mut Context,
        at: TimePoint,
        items: &[&PopulatedObjectClassDef],
        post: bool,
    ) -> Result<(), ModelError> {
        for p in items {
            for id in self.bindings.get(p.role()).to_vec() {
                let slot = ctx
                    .timepoints
                    .get(&at)
                    .and_then(|sp| sp.components.iter().position(|c| c.unique_id == id))
                    .map(|i| i as i64 + 1)
                    .unwrap_or(0);
                for b in &p.bindings {
                    self.binding(ctx, at, &id, p, b, slot, post)?;
                }
                if let Some(inst) = ctx.instance_mut(at, &id) {
                    if let Some(sym) = p.identity_symbol() {
                        inst.identity_symbol = Some(sym.to_string());
                    }
                    if post && !inst.behavior_list.contains(&self.behavior.name) {
                        inst.behavior_list.push(self.behavior.name.clone());
                    }
                }
            }
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn binding(
        &mut self,
        ctx: &mut Context,
        at: TimePoint,
        id: &str,
        p: &PopulatedObjectClassDef,
        b: &AttributeBinding,
        slot: i64,
        post: bool,
    ) -> Result<(), ModelError> {
        let inst = ctx.instance_mut(at, id).ok_or_else(|| ModelError::UnknownInstance(id.to_string()))?;
        match &b.mode {
            BindingMode::Val(v) => {
                let def = self.ontology.attribute_type(&inst.reference_class, &b.attribute_type).map(|(_, d)| d);
                if !post && def.is_some_and(|d| d.optional_causal_feature) {
                    return Ok(());
                }
                let value = if post && self.behavior.negation && p.passive_participant {
                    complement(self.ontology, &inst.reference_class, &b.attribute_type, v)
                } else {
                    v.clone()
                };
                inst.write(self.ontology, &b.attribute_type, &value)?;
                self.writes.push(AttributeWrite {
                    at,
                    instance_id: id.to_string(),
                    attribute_type: b.attribute_type.clone(),
                    value,
                });
            }
            BindingMode::Var(sym) if b.attribute_type == IDENTITY_ATTRIBUTE => {
                self.identities.insert(sym.clone(), id.to_string());
            }
            BindingMode::Var(sym) => {
                let value = match b.attribute_type.as_str() {
                    RELATIVE_TIME => at.0 as i64,
                    RELATIVE_LOCATION => slot,
                    _ => slot,
                };
                self.symbols.entry(sym.clone()).or_insert(value);
                inst.positions.insert(b.attribute_type.clone(), value);
            }
            BindingMode::Expr(e) if b.attribute_type == IDENTITY_ATTRIBUTE => {
                if let Some(sym) = e.symbol() {
                    self.identities.entry(sym.to_string()).or_insert_with(|| id.to_string());
                }
            }
            BindingMode::Expr(e) => {
                if let Some(v) = eval(e, &self.symbols) {
                    inst.positions.insert(b.attribute_type.clone(), v);
                }
            }
        }
        Ok(())
    }
}

/// Applies a behavior class at `at`: prior-state writes at `at`, a cloned
/// timepoint after it, then the consequent writes on the clones. Nested
/// behavior references are left to the caller.
pub fn apply_behavior_class(
    ctx: &mut Context,
    ontology: &Ontology,
    behavior: &BehaviorClassDef,
    bindings: &RoleBindings,
    at: TimePoint,
) -> Result<AppliedRule, ModelError> {
    if !ctx.timepoints.contains_key(&at) {
        return Err(ModelError::MissingTimepoint(at));
    }
    let next = at.next().ok_or(ModelError::TimelineFull)?;
    if ctx.timepoints.contains_key(&next) {
        return Err(ModelError::TimelineConflict(next));
    }
    let prior: Vec<&PopulatedObjectClassDef> = behavior.prior_populated().collect();
    let post: Vec<&PopulatedObjectClassDef> = behavior.post_populated().collect();

    let mut pass = Pass {
        ontology,
        behavior,
        bindings,
        symbols: BTreeMap::new(),
        identities: BTreeMap::new(),
        writes: Vec::new(),
    };
    pass.check_roles(ctx, at, &prior)?;
    pass.check_roles(ctx, at, &post)?;

    // Work on a copy so a failed write leaves the context untouched.
    let mut work = ctx.clone();
    pass.section(&mut work, at, &prior, false)?;
    if let Some(sp) = work.timepoints.get(&at).cloned() {
        work.timepoints.insert(next, sp);
    }
    pass.section(&mut work, next, &post, true)?;
    work.applications.push(Application {
        behavior: behavior.name.clone(),
        at,
        instance_ids: bindings.all().cloned().collect(),
    });
    *ctx = work;

    Ok(AppliedRule {
        behavior: behavior.name.clone(),
        at,
        next,
        bindings: bindings.clone(),
        symbols: pass.symbols,
        identities: pass.identities,
        writes: pass.writes,
    })
}
