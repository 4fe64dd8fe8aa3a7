mod common;

use common::{post_form, ross, spawn_server, GOLDEN, TASK_PATHS};

#[test]
fn both_paths_match_the_cli_byte_for_byte() {
    let base = spawn_server();
    for (input, expected, ..) in GOLDEN {
        let (code, cli, _) = ross(&["disambiguate", "--text", input]);
        assert_eq!(code, 0);
        assert_eq!(cli, format!("{expected}\n"));
        for path in TASK_PATHS {
            let (status, body) =
                post_form(&format!("{base}{path}"), &[("Task", "DisambiguateSentences"), ("InputText", input)]);
            assert_eq!(status, 200);
            assert_eq!(body, cli, "{path}");
        }
    }
}

#[test]
fn sessions_answer_questions() {
    let base = spawn_server();
    let url = format!("{base}{}", TASK_PATHS[0]);
    let (status, _) =
        post_form(&url, &[("Task", "DisambiguateSentences"), ("InputText", GOLDEN[1].0), ("SessionId", "s1")]);
    assert_eq!(status, 200);
    let (status, body) =
        post_form(&url, &[("Task", "AnswerQuestion"), ("InputText", "What is too small?"), ("SessionId", "s1")]);
    assert_eq!((status, body.as_str()), (200, "The suitcase is too small.\n"));

    let (status, body) =
        post_form(&url, &[("Task", "AnswerQuestion"), ("InputText", "What is too small?"), ("SessionId", "s2")]);
    assert_eq!(status, 400);
    assert!(body.contains("no instance model"));
}

#[test]
fn malformed_requests_are_client_errors() {
    let base = spawn_server();
    let url = format!("{base}{}", TASK_PATHS[1]);
    assert_eq!(post_form(&url, &[("Task", "Bogus"), ("InputText", "x")]), (400, "unknown task\n".to_string()));
    assert_eq!(post_form(&url, &[("Task", "DisambiguateSentences")]).0, 400);
    let (status, body) =
        post_form(&url, &[("Task", "DisambiguateSentences"), ("InputText", "Colorless green ideas sleep.")]);
    assert_eq!(status, 400);
    assert!(!body.is_empty());
}
