#ifndef SBC_H
#define SBC_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a toolkit call. Mirrors the CLI exit codes.
typedef enum SbcStatus {
  // Success.
  SBC_STATUS_OK = 0,
  // The model has validation errors.
  SBC_STATUS_VALIDATION = 1,
  // The input document or configuration is malformed.
  SBC_STATUS_PARSE = 2,
  // Internal or I/O failure.
  SBC_STATUS_RUNTIME = 3,
  // A required pointer argument was null.
  SBC_STATUS_NULL_ARGUMENT = 4,
} SbcStatus;

// Opaque technique-catalog handle.
typedef struct SbcCatalog SbcCatalog;

// Opaque mission-model handle.
typedef struct SbcModel SbcModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread, or null when no call failed yet.
// The caller owns the string and frees it with [`sbc_string_free`].
char *sbc_last_error_message(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must have been returned by a function of this library and not freed
// before.
void sbc_string_free(char *s);

// Parse a model document into a new handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must point to writable
// pointer storage.
enum SbcStatus sbc_model_parse(const char *text, struct SbcModel **out);

// Load one of the builtin models (`single-leo` or `leo-network`).
//
// # Safety
// `name` must be a NUL-terminated string; `out` must point to writable
// pointer storage.
enum SbcStatus sbc_model_builtin(const char *name, struct SbcModel **out);

// Release a model handle. Null is ignored.
//
// # Safety
// `model` must have been returned by this library and not freed before.
void sbc_model_free(struct SbcModel *model);

// Release a catalog handle. Null is ignored.
//
// # Safety
// `catalog` must have been returned by this library and not freed before.
void sbc_catalog_free(struct SbcCatalog *catalog);

// Load the builtin technique catalog.
//
// # Safety
// `out` must point to writable pointer storage.
enum SbcStatus sbc_catalog_builtin(struct SbcCatalog **out);

// Parse a catalog document into a new handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must point to writable
// pointer storage.
enum SbcStatus sbc_catalog_parse(const char *text, struct SbcCatalog **out);

// Validate a model; `out` receives the violations as a JSON array (empty
// when every invariant holds).
//
// # Safety
// `model` must be a live handle; `out` must point to writable pointer
// storage.
enum SbcStatus sbc_model_validate_json(const struct SbcModel *model, char **out);

// Canonical JSON serialization of a model.
//
// # Safety
// `model` must be a live handle; `out` must point to writable pointer
// storage.
enum SbcStatus sbc_model_serialize(const struct SbcModel *model, char **out);

// Graphviz digraph of the mission decomposition.
//
// # Safety
// `model` must be a live handle; `out` must point to writable pointer
// storage.
enum SbcStatus sbc_model_to_dot(const struct SbcModel *model, char **out);

// Attack-surface table under the builtin labels; Markdown when `markdown`
// is nonzero, a JSON array otherwise.
//
// # Safety
// `model` must be a live handle; `out` must point to writable pointer
// storage.
enum SbcStatus sbc_surface(const struct SbcModel *model, bool markdown, char **out);

// Threat findings for a model under a catalog, as JSON.
//
// # Safety
// `model` and `catalog` must be live handles; `out` must point to writable
// pointer storage.
enum SbcStatus sbc_threats_json(const struct SbcModel *model,
                                const struct SbcCatalog *catalog,
                                char **out);

// Secure-block plan for a model under a catalog, as JSON.
//
// # Safety
// `model` and `catalog` must be live handles; `out` must point to writable
// pointer storage.
enum SbcStatus sbc_plan_json(const struct SbcModel *model,
                             const struct SbcCatalog *catalog,
                             char **out);

// Shall statements for a model. `profile` selects `paper-eo` or is null
// for the full derivation. Markdown when `markdown` is nonzero, JSON
// otherwise.
//
// # Safety
// `model` and `catalog` must be live handles; `profile` must be null or a
// NUL-terminated string; `out` must point to writable pointer storage.
enum SbcStatus sbc_shall(const struct SbcModel *model,
                         const struct SbcCatalog *catalog,
                         const char *profile,
                         bool markdown,
                         char **out);

// Run a simulation scenario given as a JSON document. Model references by
// `builtin` name resolve directly; `path` references resolve against the
// current working directory. `out` receives the full result as JSON.
//
// # Safety
// `scenario_json` must be a NUL-terminated string; `out` must point to
// writable pointer storage.
enum SbcStatus sbc_simulate_json(const char *scenario_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SBC_H */
