// Copyright 2026 The cwi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CWI_CWI_H_
#define CWI_CWI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CWI_API __declspec(dllexport)
#else
#define CWI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cwi_status {
  CWI_OK = 0,
  CWI_E_PARSE = 1,
  CWI_E_SCHEMA = 2,
  CWI_E_NORMALIZATION = 3,
  CWI_E_INVALID_ARGUMENT = 4,
  CWI_E_LIMIT = 5,
  CWI_E_INTERNAL = 6
} cwi_status;

typedef enum cwi_format { CWI_FORMAT_JSON = 0, CWI_FORMAT_CSV = 1 } cwi_format;

typedef enum cwi_kind { CWI_CI = 0, CWI_CSI = 1, CWI_PCI = 2, CWI_CWI = 3, CWI_WI = 4 } cwi_kind;

typedef struct cwi_table cwi_table;
typedef struct cwi_nested cwi_nested;

/* A list of variable names, or of "VAR=VALUE" items for contexts. */
typedef struct cwi_names {
  const char* const* items;
  size_t count;
} cwi_names;

typedef struct cwi_statement {
  cwi_kind kind;
  cwi_names x;
  cwi_names z;
  cwi_names y;       /* CI, CSI, WI */
  cwi_names context; /* "VAR=VALUE": CSI's C = c, the fixed y for PCI and CWI */
} cwi_statement;

typedef struct cwi_probe_params {
  size_t vars;
  size_t domain_size;
  size_t trials;
  uint64_t seed;
  cwi_names rules; /* empty: every rule */
} cwi_probe_params;

/* Strings returned through `char** out` are owned by the caller and freed
 * with cwi_string_free. */
CWI_API const char* cwi_version(void);
/* Message of the last failing call on this thread; empty after success. */
CWI_API const char* cwi_last_error(void);
CWI_API void cwi_string_free(char* s);

/* lenient != 0 skips the normalization check. */
CWI_API cwi_status cwi_table_load(const char* text, size_t len, cwi_format format, int lenient,
                                  cwi_table** out);
CWI_API void cwi_table_free(cwi_table* t);
CWI_API cwi_status cwi_table_serialize(const cwi_table* t, int canonical, char** out);
CWI_API cwi_status cwi_table_digest(const cwi_table* t, char** out);

/* Reports are JSON envelopes. cwi_check and cwi_commute accept a null
 * report when the flag output is enough. */
CWI_API cwi_status cwi_validate(const cwi_table* t, char** report);
CWI_API cwi_status cwi_check(const cwi_table* t, const cwi_statement* s, int* holds, char** report);
CWI_API cwi_status cwi_enumerate(const cwi_table* t, const cwi_kind* kinds, size_t kind_count,
                                 size_t max_context, char** report);
CWI_API cwi_status cwi_derive(const char* premises_json, size_t len, cwi_names universe, char** report);
CWI_API cwi_status cwi_probe(const cwi_probe_params* params, char** report);
/* Nest-order commutation of X and Z against WI(X ⊥ Z | rest). Conditional
 * and raw tables are first extended with a uniform prior. */
CWI_API cwi_status cwi_commute(const cwi_table* t, cwi_names x, cwi_names z, int* commutes, char** report);

/* Nested tables. A flat table document loads as a nested table without
 * nested attributes. */
CWI_API cwi_status cwi_nested_load(const char* text, size_t len, cwi_format format, cwi_nested** out);
CWI_API void cwi_nested_free(cwi_nested* n);
CWI_API cwi_status cwi_nest(const cwi_nested* n, const char* name, cwi_names by, cwi_nested** out);
CWI_API cwi_status cwi_unnest(const cwi_nested* n, const char* name, cwi_nested** out);
/* A table without nested attributes serializes as a canonical joint table
 * document; otherwise as a nested document. */
CWI_API cwi_status cwi_nested_serialize(const cwi_nested* n, char** out);
CWI_API int cwi_nested_equal(const cwi_nested* a, const cwi_nested* b);

#ifdef __cplusplus
}
#endif

#endif  // CWI_CWI_H_
