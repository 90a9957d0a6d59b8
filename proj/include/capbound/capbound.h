/*
 * Copyright 2026 The capbound authors
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#ifndef CAPBOUND_CAPBOUND_H
#define CAPBOUND_CAPBOUND_H

/*
 * C interface to the capbound library: semidefinite-programming upper bounds
 * on the forward classical capacity of bipartite quantum channels and on the
 * classical-feedback-assisted capacity of point-to-point channels.
 *
 * Channels are held behind opaque handles created from JSON specs such as
 *   {"kind":"partial_swap","d":2,"p":0.35}
 *   {"kind":"from_choi","legs":[["A",2,"in"],["A'",2,"out"],["B",2,"in"],
 *    ["B'",2,"out"]],"matrix_re":[...],"matrix_im":[...]}
 * (matrices row-major). Results are returned as JSON strings allocated by the
 * library; release them with capbound_string_free.
 *
 * All functions return CAPBOUND_OK on success. On failure,
 * capbound_last_error() describes the problem for the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum capbound_status {
  CAPBOUND_OK = 0,
  CAPBOUND_ERR_INVALID_ARGUMENT = 1,
  CAPBOUND_ERR_PARSE = 2,
  CAPBOUND_ERR_SOLVER = 3,
  CAPBOUND_ERR_IO = 4,
  CAPBOUND_ERR_INTERNAL = 5
} capbound_status;

typedef struct capbound_channel capbound_channel;

const char* capbound_version(void);

/* Thread-local message for the most recent failure. */
const char* capbound_last_error(void);

void capbound_string_free(char* s);

capbound_status capbound_channel_parse(const char* spec_json,
                                       capbound_channel** out);
void capbound_channel_free(capbound_channel* ch);

/* JSON description: legs, dimensions, CP/TP/PPT/non-signaling flags. */
capbound_status capbound_channel_describe(const capbound_channel* ch,
                                          char** json_out);

/*
 * measure: "beta", "c_beta" or "upsilon_geo".  ell selects the Renyi order
 * alpha = 1 + 2^-ell for upsilon_geo; symmetric != 0 requests the
 * bicovariant-channel formulation. gap_tol <= 0 selects the default duality
 * gap tolerance (the CAPBOUND_SOLVER_TOL environment variable, if set,
 * overrides the default). The result JSON carries measure, value_bits, alpha,
 * ell, gap, status, certified and wall_ms fields; solver failure is reported
 * inside the JSON, not as a C-level error.
 */
capbound_status capbound_bound(const capbound_channel* ch, const char* measure,
                               int ell, int symmetric, double gap_tol,
                               char** result_json);

/*
 * config_json: either {"preset":"fig4"|"fig5"|"fig6"} or an explicit
 * configuration {"channel":{...},"grid":{"start":..,"stop":..,"count":..},
 * "measure":..,"ell":..,"symmetric":..,"seed":..}. Writes the CSV table to
 * csv_path and, if svg_path is non-NULL, a line chart to svg_path.
 */
capbound_status capbound_sweep_run(const char* config_json, const char* csv_path,
                                   const char* svg_path);

typedef void (*capbound_log_fn)(const char* line, void* user);

/*
 * suite: one of "linalg", "channels", "divergences", "sdp", "bounds",
 * "symmetry", "all". Emits one line per property through log (may be NULL)
 * and stores the number of failed properties in *failures.
 */
capbound_status capbound_verify_run(const char* suite, uint64_t seed,
                                    capbound_log_fn log, void* user,
                                    int* failures);

#ifdef __cplusplus
}
#endif

#endif /* CAPBOUND_CAPBOUND_H */
