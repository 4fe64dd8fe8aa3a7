//! Form-encoded POST service on the two task paths.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::State;
use axum::http::StatusCode;
use axum::routing::post;
use axum::Router;

use super::{disambiguate, Session};
use crate::star::Ontology;

pub const PATHS: [&str; 2] = ["/ServerMethod.NLUTask", "/ServerSideTask.NLUTask"];

pub struct AppState {
    pub ontology: Ontology,
    pub sessions: Mutex<HashMap<String, Session>>,
}

impl AppState {
    pub fn new(ontology: Ontology) -> Arc<Self> {
        Arc::new(AppState { ontology, sessions: Mutex::new(HashMap::new()) })
    }
}

type Reply = (StatusCode, [(&'static str, &'static str); 1], String);

fn reply(status: StatusCode, body: String) -> Reply {
    (status, [("content-type", "text/plain; charset=utf-8")], body)
}

fn client_error(message: impl std::fmt::Display) -> Reply {
    reply(StatusCode::BAD_REQUEST, format!("{message}\n"))
}

async fn nlu_task(State(state): State<Arc<AppState>>, body: String) -> Reply {
    let fields: HashMap<String, String> = form_urlencoded::parse(body.as_bytes()).into_owned().collect();
    let (Some(task), Some(text)) = (fields.get("Task"), fields.get("InputText")) else {
        return client_error("missing Task or InputText");
    };
    let session_id = fields.get("SessionId");
    match task.as_str() {
        "DisambiguateSentences" => {
            let result = match session_id {
                Some(id) => {
                    let mut sessions = state.sessions.lock().unwrap_or_else(|e| e.into_inner());
                    let session = sessions.entry(id.clone()).or_insert_with(|| Session::new(id.clone()));
                    session.disambiguate(text, &state.ontology)
                }
                None => disambiguate(text, &state.ontology).map(|(a, _)| a),
            };
            match result {
                Ok(annotated) => reply(StatusCode::OK, format!("{annotated}\n")),
                Err(e) => client_error(e),
            }
        }
        "AnswerQuestion" => {
            let sessions = state.sessions.lock().unwrap_or_else(|e| e.into_inner());
            let empty = Session::default();
            let session = session_id.and_then(|id| sessions.get(id)).unwrap_or(&empty);
            match session.ask(text, &state.ontology) {
                Ok(answer) => reply(StatusCode::OK, format!("{answer}\n")),
                Err(e) => client_error(e),
            }
        }
        _ => client_error("unknown task"),
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let mut r = Router::new();
    for p in PATHS {
        r = r.route(p, post(nlu_task));
    }
    r.with_state(state)
}

/// Binds on all interfaces and serves until the process ends.
pub async fn serve(port: u16, ontology: Ontology) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    axum::serve(listener, router(AppState::new(ontology))).await
}
