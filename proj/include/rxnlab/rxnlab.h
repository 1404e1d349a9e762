#ifndef RXNLAB_RXNLAB_H
#define RXNLAB_RXNLAB_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(RXNLAB_BUILDING)
#    define RXL_API __declspec(dllexport)
#  else
#    define RXL_API __declspec(dllimport)
#  endif
#else
#  define RXL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rxl_status {
  RXL_OK = 0,
  RXL_ERR_SYNTAX = 1,
  RXL_ERR_CHEMISTRY = 2,
  RXL_ERR_INVALID_ARGUMENT = 3,
  RXL_ERR_SCHEMA = 4,
  RXL_ERR_IO = 5,
  RXL_ERR_STRICT = 6, /* --strict run stopped at a failing record */
  RXL_ERR_INTERNAL = 7
} rxl_status;

typedef struct rxl_molecule rxl_molecule;
typedef struct rxl_fingerprint rxl_fingerprint;

RXL_API const char* rxl_version(void);

/* Message of the last failed call on this thread; never NULL. */
RXL_API const char* rxl_last_error(void);

RXL_API const char* rxl_status_name(rxl_status status);

/* Strings returned through char** outputs belong to the caller. */
RXL_API void rxl_string_free(char* s);

RXL_API rxl_status rxl_molecule_parse(const char* smiles, rxl_molecule** out);
RXL_API void rxl_molecule_free(rxl_molecule* mol);
RXL_API size_t rxl_molecule_atom_count(const rxl_molecule* mol);
RXL_API rxl_status rxl_molecule_canonical_smiles(const rxl_molecule* mol, char** out);
RXL_API rxl_status rxl_molecule_formula(const rxl_molecule* mol, char** out);
RXL_API rxl_status rxl_molecule_graph_json(const rxl_molecule* mol, char** out);
RXL_API rxl_status rxl_molecule_scaffold(const rxl_molecule* mol, char** out);

/* Verdict: 0 valid, 1 syntax error, 2 chemistry error. detail may be NULL. */
RXL_API rxl_status rxl_validate(const char* smiles, int* verdict, char** detail);

/* spec_json: {"kind": "circular"|"path"|"key", "radius", "width",
   "min_path", "max_path"}; NULL or "" selects the circular defaults. */
RXL_API rxl_status rxl_fingerprint_compute(const rxl_molecule* mol, const char* spec_json,
                                           rxl_fingerprint** out);
RXL_API rxl_status rxl_fingerprint_parse(const char* text, rxl_fingerprint** out);
RXL_API void rxl_fingerprint_free(rxl_fingerprint* fp);
RXL_API rxl_status rxl_fingerprint_to_string(const rxl_fingerprint* fp, char** out);
RXL_API size_t rxl_fingerprint_width(const rxl_fingerprint* fp);
RXL_API size_t rxl_fingerprint_count(const rxl_fingerprint* fp);
RXL_API rxl_status rxl_tanimoto(const rxl_fingerprint* a, const rxl_fingerprint* b, double* out);

/* Runs a pipeline command (see rxl_command_names) with a JSON config and
   stores a JSON summary in *summary_json (also on failure, when possible). */
RXL_API rxl_status rxl_run(const char* command, const char* config_json, char** summary_json);

/* Newline-separated list of command names; static storage. */
RXL_API const char* rxl_command_names(void);

/* Renders one prompt. request_json: {"task", "bindings", "mode"?, "seed"?,
   "id"?, "templates"?}; *out receives the rendered JSON object. */
RXL_API rxl_status rxl_render(const char* request_json, char** out);

/* Built-in template registry as JSON. */
RXL_API rxl_status rxl_templates_json(char** out);

#ifdef __cplusplus
}
#endif

#endif
