/* C interface for the qf finite quantale library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call, matching the command-line exit codes.
typedef enum QfStatus {
  // The call finished and every check passed.
  QF_STATUS_OK = 0,
  // The call finished but a structure or check failed.
  QF_STATUS_CHECK_FAILED = 1,
  // Malformed input: unparseable documents, unknown names, bad
  // arguments, or a null pointer.
  QF_STATUS_USAGE = 2,
  // The computation would exceed the element budget.
  QF_STATUS_BUDGET = 3,
} QfStatus;

// An opaque collection of named structures. Loaded documents extend it;
// compute calls read from it and fall back to the built-in catalog.
typedef struct QfWorkspace QfWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates an empty workspace.
struct QfWorkspace *qf_workspace_new(void);

// Releases a workspace. A null handle is ignored.
void qf_workspace_free(struct QfWorkspace *workspace);

// Parses an interchange document and adds every structure in it to the
// workspace. Nothing is added if any structure fails to validate.
enum QfStatus qf_workspace_load(struct QfWorkspace *workspace, const char *document_json);

// Validates every structure in an interchange document. When
// `report_json` is non-null it receives the full report.
enum QfStatus qf_check(const char *document_json, char **report_json);

// Runs a named property suite under the given budget. When
// `report_json` is non-null it receives the full report.
enum QfStatus qf_suite(const char *name, size_t budget, char **report_json);

// Builds a derived structure and returns it as an interchange document
// in `document_json`. `kind` is one of `tensor`, `hom`, `matq`, `eae`,
// `free`, or `relq`; `left` and `right` name structures or give counts,
// with `right` ignored for `relq`. A null workspace uses only the
// built-in catalog.
enum QfStatus qf_compute(const struct QfWorkspace *workspace,
                         const char *kind,
                         const char *left,
                         const char *right,
                         size_t budget,
                         char **document_json);

// Returns a copy of the message for the most recent failure on this
// thread, or null when the last call succeeded.
char *qf_last_error(void);

// Releases a string returned by this library. A null pointer is ignored.
void qf_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
