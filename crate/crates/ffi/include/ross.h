#ifndef ROSS_H
#define ROSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum RossStatus {
  ROSS_STATUS_OK = 0,
  ROSS_STATUS_NULL_ARGUMENT = 1,
  ROSS_STATUS_INVALID_UTF8 = 2,
  // Text outside the supported grammar or otherwise unusable.
  ROSS_STATUS_INPUT_ERROR = 3,
  ROSS_STATUS_ONTOLOGY_ERROR = 4,
  // A question was asked before any disambiguation.
  ROSS_STATUS_NO_MODEL = 5,
  ROSS_STATUS_NO_ANSWER = 6,
  // A panic was caught at the boundary.
  ROSS_STATUS_INTERNAL = 7,
} RossStatus;

// A linked ontology.
typedef struct RossOntology RossOntology;

// Retains the last disambiguation for questions and model export.
typedef struct RossSession RossSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread; empty when none. The
// pointer stays valid until the next failing call on the same thread.
const char *ross_last_error_message(void);

// The ontology shipped with the library. Never null.
struct RossOntology *ross_ontology_bundled(void);

// Loads and links the `.star` files of a directory.
//
// # Safety
// `dir` is a NUL-terminated path; `out` is valid for one pointer write.
enum RossStatus ross_ontology_load(const char *dir, struct RossOntology **out);

// # Safety
// `ontology` is null or came from this library and is not used afterwards.
void ross_ontology_free(struct RossOntology *ontology);

// A new, empty session. Never null.
struct RossSession *ross_session_new(void);

// # Safety
// `session` is null or came from this library and is not used afterwards.
void ross_session_free(struct RossSession *session);

// Resolves the pronouns of `input` and writes the annotated text to
// `out`, to be released with `ross_string_free`. The session keeps the
// resulting model.
//
// # Safety
// Handles come from this library; `input` is NUL-terminated; `out` is
// valid for one pointer write.
enum RossStatus ross_disambiguate(const struct RossOntology *ontology,
                                  struct RossSession *session,
                                  const char *input,
                                  char **out);

// Answers a question about the session's last disambiguation.
//
// # Safety
// As for `ross_disambiguate`.
enum RossStatus ross_ask(const struct RossOntology *ontology,
                         const struct RossSession *session,
                         const char *question,
                         char **out);

// Writes the XML export of the session's last instance model to `out`.
//
// # Safety
// `session` comes from this library; `out` is valid for one pointer write.
enum RossStatus ross_export_model(const struct RossSession *session, char **out);

// # Safety
// `s` is null or a string returned by this library, not freed before.
void ross_string_free(char *s);

// Returns null-terminated static text naming a status.
const char *ross_status_name(enum RossStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROSS_H */
