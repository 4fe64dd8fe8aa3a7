use ross_core::model::*;
use ross_core::snf::DiscourseContext;
use ross_core::star::DEFAULT_STRUCTURAL_PARENT;
use ross_core::{Ontology, Role};

fn setup(model: &mut InstanceModel, ontology: &Ontology, a: (&str, &str), b: (&str, &str)) -> (usize, String, String) {
    let sp = DEFAULT_STRUCTURAL_PARENT;
    let ci = model.new_context(DiscourseContext::DeclarativePastSimple, sp, &ontology.timeline_name(sp));
    let x = model.instantiate_object(a.0, a.1, false);
    let y = model.instantiate_object(b.0, b.1, false);
    let (xi, yi) = (x.unique_id.clone(), y.unique_id.clone());
    model.contexts[ci].place(x);
    model.contexts[ci].place(y);
    (ci, xi, yi)
}

fn bind(actor: &str, actee: &str) -> RoleBindings {
    RoleBindings { actor: vec![actor.into()], actee: vec![actee.into()], extra: vec![] }
}

#[test]
fn instantiation_issues_unique_ids() {
    let mut m = InstanceModel::new();
    assert_eq!(m.instantiate_object("TrophyObjectFrameClass", "trophy", false).unique_id, "TrophyObjectFrameClass-1");
    assert_eq!(m.instantiate_object("TrophyObjectFrameClass", "trophy", false).unique_id, "TrophyObjectFrameClass-2");
    assert!(m.instantiate_object("PersonObjectFrameClass", "demonstrators", true).multiple);
}

#[test]
fn not_fit_big_application() {
    let o = Ontology::bundled();
    let mut m = InstanceModel::new();
    let (ci, t, s) = setup(&mut m, &o, ("TrophyObjectFrameClass", "trophy"), ("SuitcaseObjectFrameClass", "suitcase"));
    let b = o.behavior("NotFit_Big_BehaviorClass").unwrap();
    let applied = apply_behavior_class(&mut m.contexts[ci], &o, b, &bind(&t, &s), TimePoint(1)).unwrap();
    assert_eq!(applied.next, TimePoint(2));
    let ctx = &m.contexts[ci];
    let at = |tp, id: &str, ty: &str| ctx.instance(TimePoint(tp), id).unwrap().attribute(ty).map(str::to_string);
    assert_eq!(at(1, &t, "FittingState").as_deref(), Some("NotFitting"));
    // The optional causal feature is left for resolution to write.
    assert_eq!(at(1, &t, "FunctionalAttributeType1"), None);
    assert_eq!(at(1, &s, "PassiveIsFittedState").as_deref(), Some("NotFitted"));
    assert_eq!(at(2, &t, "FittingState").as_deref(), Some("Fitting"));
    assert_eq!(at(2, &s, "PassiveIsFittedState").as_deref(), Some("NotFitted"));
    assert_eq!(applied.symbols.get("t1$"), Some(&1));
    assert_eq!(applied.symbols.get("a$"), Some(&1));
}

#[test]
fn not_lift_weak_application_and_causal_feature() {
    let o = Ontology::bundled();
    let mut m = InstanceModel::new();
    let (ci, man, son) = setup(&mut m, &o, ("ManObjectFrameClass", "man"), ("SonObjectFrameClass", "son"));
    let b = o.behavior("NotLift_Weak_BehaviorClass").unwrap();
    apply_behavior_class(&mut m.contexts[ci], &o, b, &bind(&man, &son), TimePoint(1)).unwrap();
    let updated = m.set_attribute(&o, &man, "FunctionalAttributeType1", "TooWeak").unwrap();
    assert_eq!(updated.attribute("FunctionalAttributeType1"), Some("TooWeak"));
    let ctx = &m.contexts[ci];
    let t1 = ctx.instance(TimePoint(1), &man).unwrap();
    assert_eq!(t1.attribute("LiftingState"), Some("NotLifting"));
    assert_eq!(t1.attribute("FunctionalAttributeType1"), Some("TooWeak"));
    let t2 = ctx.instance(TimePoint(2), &man).unwrap();
    assert_eq!(t2.attribute("LiftingState"), Some("Lifting"));
    assert_eq!(t2.attribute("FunctionalAttributeType1"), None);
    assert_eq!(ctx.instance(TimePoint(2), &son).unwrap().attribute("PassiveIsLiftedState"), Some("NotLifted"));
}

#[test]
fn role_mismatch_leaves_context_untouched() {
    let o = Ontology::bundled();
    let mut m = InstanceModel::new();
    let (ci, permit, son) = setup(&mut m, &o, ("PermitObjectFrameClass", "permit"), ("SonObjectFrameClass", "son"));
    let before = m.clone();
    let b = o.behavior("NotLift_Weak_BehaviorClass").unwrap();
    let err = apply_behavior_class(&mut m.contexts[ci], &o, b, &bind(&permit, &son), TimePoint(1)).unwrap_err();
    assert_eq!(err, ModelError::RoleMismatch { role: Role::Actor, class: "PermitObjectFrameClass".into() });
    assert_eq!(m, before);
    let err = apply_behavior_class(&mut m.contexts[ci], &o, b, &bind(&permit, &son), TimePoint(5)).unwrap_err();
    assert_eq!(err, ModelError::MissingTimepoint(TimePoint(5)));
}

#[test]
fn set_attribute_rejects_bad_input() {
    let o = Ontology::bundled();
    let mut m = InstanceModel::new();
    let (_, t, _) = setup(&mut m, &o, ("TrophyObjectFrameClass", "trophy"), ("SuitcaseObjectFrameClass", "suitcase"));
    assert_eq!(
        m.set_attribute(&o, &t, "FunctionalAttributeType1", "Purple"),
        Err(ModelError::IllegalValue { attribute: "FunctionalAttributeType1".into(), value: "Purple".into() })
    );
    assert!(matches!(
        m.set_attribute(&o, "Nope-1", "FunctionalAttributeType1", "TooBig"),
        Err(ModelError::UnknownInstance(_))
    ));
    m.set_attribute(&o, &t, "FunctionalAttributeType1", "TooBig").unwrap();
    assert!(m.find(&t).unwrap().has_value("TooBig"));
}

#[test]
fn empty_model_exports_header_and_empty_conceptual_model() {
    let xml = export_xml(&InstanceModel::new());
    assert!(xml.starts_with(XML_HEADER));
    assert!(xml.contains("  <ConceptualModel>\n  </ConceptualModel>\n"));
    assert_eq!(export_xml(&read_xml(&xml).unwrap()), xml);
}

#[test]
fn export_round_trips_byte_identically() {
    let o = Ontology::bundled();
    let mut m = InstanceModel::new();
    m.document_file = Some("Samples\\Sentence-02.txt".into());
    let (ci, t, s) = setup(&mut m, &o, ("TrophyObjectFrameClass", "trophy"), ("SuitcaseObjectFrameClass", "suitcase"));
    let b = o.behavior("NotFit_Big_BehaviorClass").unwrap();
    apply_behavior_class(&mut m.contexts[ci], &o, b, &bind(&t, &s), TimePoint(1)).unwrap();
    m.set_attribute(&o, &t, "FunctionalAttributeType1", "TooBig").unwrap();
    let xml = export_xml(&m);
    assert!(xml.contains("TrophyObjectFrameClass.TrophyObjectFrameClass-1 (trophy)"));
    assert!(xml.contains("EnclosableObjectObjectFrameClass.FunctionalAttributeType1 = TooBig"));
    let back = read_xml(&xml).unwrap();
    assert_eq!(export_xml(&back), xml);
    assert_eq!(back.counters.get("TrophyObjectFrameClass"), Some(&1));
}

#[test]
fn reader_reports_line_of_malformed_input() {
    let xml = export_xml(&InstanceModel::new()).replace("<ConceptualModel>", "<Conceptual>");
    assert!(matches!(read_xml(&xml), Err(ModelError::Xml { line: 7, .. })));
}
