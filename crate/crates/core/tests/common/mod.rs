#![allow(dead_code)]

pub mod oracle;
pub mod props;

use ross_core::star::{parse_star, Ontology};

/// Input, expected annotated output, referent word, expected mechanism.
pub const GOLDEN: [(&str, &str, &str, &str); 8] = [
    (
        "The trophy doesn't fit in the brown suitcase because it's too big.",
        "The trophy does not fit in the brown suitcase because it(trophy) is too big .",
        "trophy",
        "AdjectiveCausal",
    ),
    (
        "The trophy doesn't fit in the brown suitcase because it's too small.",
        "The trophy does not fit in the brown suitcase because it(suitcase) is too small .",
        "suitcase",
        "AdjectiveCausal",
    ),
    (
        "The man didn't lift his son because he was too weak.",
        "The man did not lift his son because he(man) was too weak .",
        "man",
        "AdjectiveCausal",
    ),
    (
        "The man didn't lift his son because he was too heavy.",
        "The man did not lift his son because he(son) was too heavy .",
        "son",
        "AdjectiveCausal",
    ),
    (
        "Joe paid the detective after he received the final report on the case.",
        "Joe paid the detective after he(Joe) received the final report on the case .",
        "Joe",
        "VerbNestedBehavior",
    ),
    (
        "Joe paid the detective after he delivered the final report on the case.",
        "Joe paid the detective after he(detective) delivered the final report on the case .",
        "detective",
        "VerbNestedBehavior",
    ),
    (
        "The city councilmen refused the demonstrators a permit because they feared violence.",
        "The city councilmen refused the demonstrators a permit because they(councilmen) feared violence .",
        "councilmen",
        "VerbNestedBehavior",
    ),
    (
        "The city councilmen refused the demonstrators a permit because they advocated violence.",
        "The city councilmen refused the demonstrators a permit because they(demonstrators) advocated violence .",
        "demonstrators",
        "GenerateAndTest",
    ),
];

pub const CATAPHORA: &str = "Because it was too big, the trophy did not fit in the suitcase.";

pub const TROPHY_BIG_TEXT: &str = "The trophy did not fit in the suitcase because it was too big.";
pub const LIFT_WEAK_TEXT: &str = "The man could not lift his son because he was too weak.";

fn state(name: &str, values: [&str; 2]) -> String {
    format!(
        "    AttributeType \"{name}\"\n    (\n      <SuperType val = \"Qualitative\"/>\n      <StateAttributeType val = \"true\" />\n      \"Values\" ( {{ \"{}\", \"{}\" }} );\n    );\n",
        values[0], values[1]
    )
}

fn greet_rule(name: &str, identity_on_actor: bool, probability: f64) -> String {
    let (actor_id, actee_id) = if identity_on_actor {
        ("      <Attribute ref = UniqueIdentityAttributeType var = q$ />\n", "")
    } else {
        ("", "      <Attribute ref = UniqueIdentityAttributeType var = q$ />\n")
    };
    format!(
        r#"BehaviorClass "{name}"
(
  Dictionary ( English ( {{ "greet", "greeted", "greeted", "greets", "greeting" }} ) );
  PriorStates
  (
    PopulatedObjectClass "AntecedentActor"
    (
      <ObjectFrameClass ref = AgentObjectFrameClass />
      <Attribute ref = GreetingState val = "NotGreeting" />
{actor_id}    );
    BehaviorClassReference
    (
      <Probability expr = {probability} />
      <BehaviorClass ref = OpenBehaviorClass />
      <ParameterActor ref = AgentObjectFrameClass expr = q$ />
    );
    PopulatedObjectClass "AntecedentActee"
    (
      <ObjectFrameClass ref = AgentObjectFrameClass />
      <PassiveParticipant val = "true" />
      <Attribute ref = PassiveIsGreetedState val = "NotGreeted" />
{actee_id}    );
  );
  PostStates
  (
    PopulatedObjectClass "ConsequentActor"
    (
      <ObjectFrameClass ref = AgentObjectFrameClass />
      <Attribute ref = GreetingState val = "Greeting" />
    );
    PopulatedObjectClass "ConsequentActee"
    (
      <ObjectFrameClass ref = AgentObjectFrameClass />
      <PassiveParticipant val = "true" />
      <Attribute ref = PassiveIsGreetedState val = "Greeted" />
    );
  );
);
"#
    )
}

/// A small ontology where "greeted ... after he opened" nests the same
/// behavior under two rules: one ties the opener to the greeter with
/// probability `p_actor`, the other to the greeted with `p_actee`.
pub fn greeting_ontology_text(p_actor: f64, p_actee: f64) -> String {
    let mut s = String::new();
    s.push_str("ObjectFrameClass \"AgentObjectFrameClass\"\n(\n  AttributeTypes\n  (\n");
    s.push_str(&state("GreetingState", ["NotGreeting", "Greeting"]));
    s.push_str(&state("PassiveIsGreetedState", ["NotGreeted", "Greeted"]));
    s.push_str(&state("OpeningState", ["NotOpening", "Opening"]));
    s.push_str("    AttributeType \"UniqueIdentityAttributeType\" ( <SuperType val = \"Identity\"/> );\n");
    s.push_str("  );\n);\n\n");
    for (class, words) in [("Host", "\"host\", \"hosts\""), ("Guest", "\"guest\", \"guests\"")] {
        s.push_str(&format!(
            "ObjectFrameClass \"{class}ObjectFrameClass\"\n(\n  Dictionary ( English ( {{ {words} }} ) );\n  HigherClasses ( {{ \"AgentObjectFrameClass\" }} );\n);\n\n"
        ));
    }
    s.push_str("ObjectFrameClass \"DoorObjectFrameClass\"\n(\n  Dictionary ( English ( { \"door\", \"doors\" } ) );\n  AttributeTypes\n  (\n");
    s.push_str(&state("PassiveIsOpenedState", ["NotOpened", "Opened"]));
    s.push_str("  );\n);\n\n");
    s.push_str(
        r#"BehaviorClass "OpenBehaviorClass"
(
  Dictionary ( English ( { "open", "opened", "opened", "opens", "opening" } ) );
  PriorStates
  (
    PopulatedObjectClass "AntecedentActor"
    (
      <ObjectFrameClass ref = AgentObjectFrameClass />
      <Attribute ref = OpeningState val = "NotOpening" />
    );
    PopulatedObjectClass "AntecedentActee"
    (
      <ObjectFrameClass ref = DoorObjectFrameClass />
      <PassiveParticipant val = "true" />
      <Attribute ref = PassiveIsOpenedState val = "NotOpened" />
    );
  );
  PostStates
  (
    PopulatedObjectClass "ConsequentActor"
    (
      <ObjectFrameClass ref = AgentObjectFrameClass />
      <Attribute ref = OpeningState val = "Opening" />
    );
    PopulatedObjectClass "ConsequentActee"
    (
      <ObjectFrameClass ref = DoorObjectFrameClass />
      <PassiveParticipant val = "true" />
      <Attribute ref = PassiveIsOpenedState val = "Opened" />
    );
  );
);

"#,
    );
    s.push_str(&greet_rule("GreetAfterGreeterOpensBehaviorClass", true, p_actor));
    s.push('\n');
    s.push_str(&greet_rule("GreetAfterGreetedOpensBehaviorClass", false, p_actee));
    s
}

pub fn greeting_ontology(p_actor: f64, p_actee: f64) -> Ontology {
    let doc =
        parse_star(&greeting_ontology_text(p_actor, p_actee), "greeting.star").expect("synthetic ontology parses");
    Ontology::link(vec![doc]).expect("synthetic ontology links")
}

pub const GREETING: &str = "The host greeted the guest after he opened the door.";

/// The lenient reader's repair diagnostics; the bundled ontology may emit
/// only these.
pub const REPAIR_PATTERNS: &[&str] = &[
    r#"^definition "\w+" closed implicitly$"#,
    r"^ignored stray '\)' inside definition body$",
    r"^collapsed terminator run of \d+ tokens \(\d+ stray '\)'\)$",
    r"^\w+ found inside AttributeTypes hoisted to class body$",
    r#"^AttributeType "\w+" outside AttributeTypes attached to the class$"#,
    r#"^PopulatedObjectClass "\w+" outside a states section attached to (Prior|Post)States$"#,
];

/// Every sentence the tests resolve: the corpus, its variants and the
/// cataphoric sentence.
pub fn corpus() -> Vec<&'static str> {
    GOLDEN.iter().map(|g| g.0).chain(oracle::VARIANTS.iter().copied()).chain([CATAPHORA]).collect()
}

/// Classes `C0..Cn` where `Ci` lists `Cj` as a higher class for every
/// `(i, j)` edge.
pub fn class_graph_text(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = String::new();
    for i in 0..n {
        let parents: Vec<String> = edges.iter().filter(|(a, _)| *a == i).map(|(_, b)| format!("\"C{b}\"")).collect();
        s.push_str(&format!("ObjectFrameClass \"C{i}\"\n(\n  Dictionary ( English ( {{ \"c{i}\" }} ) );\n"));
        if !parents.is_empty() {
            s.push_str(&format!("  HigherClasses ( {{ {} }} );\n", parents.join(", ")));
        }
        s.push_str(");\n\n");
    }
    s
}

pub const TASK_PATHS: [&str; 2] = ["/ServerMethod.NLUTask", "/ServerSideTask.NLUTask"];

/// Serves the bundled ontology on an ephemeral port from a background
/// thread and returns the base URL.
pub fn spawn_server() -> String {
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Runtime::new().unwrap();
        rt.block_on(async move {
            let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            let app = ross_core::api::router(ross_core::api::AppState::new(Ontology::bundled()));
            axum::serve(listener, app).await.unwrap();
        });
    });
    format!("http://{}", rx.recv().unwrap())
}

/// Status and body of a form POST.
pub fn post_form(url: &str, fields: &[(&str, &str)]) -> (u16, String) {
    let agent: ureq::Agent = ureq::Agent::config_builder().http_status_as_error(false).build().into();
    let mut resp = agent.post(url).send_form(fields.iter().copied()).unwrap();
    (resp.status().as_u16(), resp.body_mut().read_to_string().unwrap())
}

/// Runs the `ross` binary; returns exit code, stdout and stderr.
pub fn ross(args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_ross")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

/// Reference attribute lines mapped to the names this ontology uses. Each
/// pair is matched whole; entries not listed must match verbatim after the
/// class renames in `CLASS_RENAMES`.
pub const NORMALIZATION: &[(&str, &str)] = &[
    (
        "EnclosableObjectFrameClass.FittingIntoState = FittingInto",
        "EnclosableObjectObjectFrameClass.FittingState = NotFitting",
    ),
    (
        "EnclosableObjectFrameClass.PassiveIsFittedInsideContainerState = NotFittedInsideContainer",
        "EnclosableObjectObjectFrameClass.FittingState = Fitting",
    ),
    (
        "ContainerObjectFrameClass.PassiveIsFittedIntoState = NotIsFittedInto",
        "ContainerObjectObjectFrameClass.PassiveIsFittedState = NotFitted",
    ),
];

pub const CLASS_RENAMES: &[(&str, &str)] = &[
    ("EnclosableObjectFrameClass.", "EnclosableObjectObjectFrameClass."),
    ("ContainerObjectFrameClass.", "ContainerObjectObjectFrameClass."),
];

/// Applies the normalization to one reference attribute line. "Passivels"
/// is a transcription slip for "PassiveIs" in the reference listings.
pub fn normalize_reference(line: &str) -> String {
    let line = line.replace("Passivels", "PassiveIs");
    if let Some((_, ours)) = NORMALIZATION.iter().find(|(theirs, _)| *theirs == line) {
        return ours.to_string();
    }
    CLASS_RENAMES.iter().fold(line, |l, (from, to)| l.replace(from, to))
}

/// (timepoint, component, attribute lines) as printed in a reference
/// listing.
pub type ReferenceComponent = (&'static str, &'static str, &'static [&'static str]);

pub const TROPHY_BIG_REFERENCE: &[ReferenceComponent] = &[
    (
        "T01",
        "TrophyObjectFrameClass.TrophyObjectFrameClass-1 (trophy)",
        &[
            "EnclosableObjectFrameClass.FittingIntoState = FittingInto",
            "EnclosableObjectFrameClass.FunctionalAttributeType1 = TooBig",
        ],
    ),
    (
        "T01",
        "SuitcaseObjectFrameClass.SuitcaseObjectFrameClass-1 (suitcase)",
        &["ContainerObjectFrameClass.PassiveIsFittedIntoState = NotIsFittedInto"],
    ),
    (
        "T02",
        "TrophyObjectFrameClass.TrophyObjectFrameClass-1 (trophy)",
        &["EnclosableObjectFrameClass.PassivelsFittedInsideContainerState = NotFittedInsideContainer"],
    ),
    (
        "T02",
        "SuitcaseObjectFrameClass.SuitcaseObjectFrameClass-1 (suitcase)",
        &["ContainerObjectFrameClass.PassivelsFittedIntoState = NotIsFittedInto"],
    ),
];

pub const LIFT_WEAK_REFERENCE: &[ReferenceComponent] = &[
    (
        "T01",
        "ManObjectFrameClass.ManObjectFrameClass-1 (man)",
        &[
            "PersonObjectFrameClass.LiftingState = NotLifting",
            "PersonObjectFrameClass.FunctionalAttributeType1 = TooWeak",
        ],
    ),
    (
        "T01",
        "SonObjectFrameClass.SonObjectFrameClass-1 (son)",
        &["PersonObjectFrameClass.PassivelsLiftedState = NotLifted"],
    ),
    ("T02", "ManObjectFrameClass.ManObjectFrameClass-1 (man)", &["PersonObjectFrameClass.LiftingState = Lifting"]),
    (
        "T02",
        "SonObjectFrameClass.SonObjectFrameClass-1 (son)",
        &["PersonObjectFrameClass.PassivelsLiftedState = NotLifted"],
    ),
];
