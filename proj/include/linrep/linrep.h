/* linrep C API: exact and Monte Carlo machinery for representation collapse
 * experiments on random group presentations.
 *
 * All functions return a linrep_rc status code; on failure,
 * linrep_last_error() gives a message for the current thread.  Results are
 * returned as owned buffers (JSON, JSON-lines, or plain text) that the caller
 * releases with linrep_buf_free().
 */
#ifndef LINREP_H
#define LINREP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum linrep_rc {
  LINREP_OK = 0,
  LINREP_ERR_INVALID = 1,      /* bad arguments / malformed input */
  LINREP_ERR_CAP = 2,          /* a configured resource cap was exceeded */
  LINREP_ERR_IO = 3,           /* file read/write failure */
  LINREP_ERR_PRECONDITION = 4, /* operation hypotheses not met */
  LINREP_ERR_INTERNAL = 5
} linrep_rc;

const char* linrep_version(void);

/* Message for the most recent failing call on the calling thread. */
const char* linrep_last_error(void);

/* Owned byte buffer (NUL-terminated). */
typedef struct linrep_buf linrep_buf;
const char* linrep_buf_data(const linrep_buf* buf);
size_t linrep_buf_size(const linrep_buf* buf);
void linrep_buf_free(linrep_buf* buf);

/* ---- free group ------------------------------------------------------- */

/* |S_l| = 2m(2m-1)^(l-1) as a decimal string. */
int linrep_sphere_size(int m, int l, linrep_buf** out);

/* floor(|S_l|^density); density is a decimal or fraction string. */
int linrep_relator_count(int m, int l, const char* density, linrep_buf** out);

/* `count` uniform reduced words of length l, one per line ("1 -2 1 2").
 * With presentation_header != 0 the first line is "m=<m> l=<l> seed=<seed>",
 * which makes the output a presentation file. */
int linrep_sample_words(int m, int l, long count, unsigned long long seed,
                        int presentation_header, linrep_buf** out);

/* ---- multigraphs and nonbacktracking walks ---------------------------- */

typedef struct linrep_graph linrep_graph;

/* Parse "vertices <n>" plus one "u v" line per undirected edge. */
int linrep_graph_parse(const char* text, linrep_graph** out);
void linrep_graph_free(linrep_graph* g);

/* {"degree","vertices","connected"}; fails with LINREP_ERR_PRECONDITION on a
 * non-regular graph. */
int linrep_graph_info(const linrep_graph* g, linrep_buf** json_out);

/* Exact distribution of N(t) from `start`; probabilities as rational strings
 * plus floats. */
int linrep_walk_exact(const linrep_graph* g, int start, int t, linrep_buf** json_out);

/* Monte Carlo endpoint frequencies over `samples` trajectories. */
int linrep_walk_mc(const linrep_graph* g, int start, int t, long samples,
                   unsigned long long seed, linrep_buf** json_out);

/* Exact check of the return-probability bound (d-2)/(d-1) for t in
 * [2, t_max]. */
int linrep_walk_check_bound(const linrep_graph* g, int start, int t_max,
                            linrep_buf** json_out);

/* ---- JSON request interfaces ------------------------------------------ */

/* Brute-force representation search.
 * Request: {"m","k","q","l", "u"|"density", "seed", "trials"?,
 *           "emit_survivors"?, "caps"?}
 * Result: JSON-lines, one record per trial. */
int linrep_search(const char* request_json, linrep_buf** json_lines_out);

/* Exact survival curve.
 * Request: {"m","k","q","l","u_max", "union_bound"?, "caps"?}
 * Result: JSON-lines, one record per curve point. */
int linrep_oracle(const char* request_json, linrep_buf** json_lines_out);

/* Nullstellensatz certificate search.
 * Request: {"n","ps":[..],"r", "degree_cap"?, "nu_max"?}
 * Result: {"found",...} (found:false is a success with rc LINREP_OK). */
int linrep_certify(const char* request_json, linrep_buf** json_out);

/* Bound calculators.
 * Request: {"m","k","l", "u"?, "n"?, "d"?, "h"?}  */
int linrep_bounds(const char* request_json, linrep_buf** json_out);

/* Run (or resume) an experiment; writes JSON-lines records to the configured
 * path and returns a summary. */
int linrep_experiment(const char* config_json, linrep_buf** summary_json_out);

/* Decay analysis of a records file.
 * Request: {"records", "union_bound"?, "csv"?}
 * Result: report JSON; with "csv":true it carries a "csv" string field. */
int linrep_analyze(const char* request_json, linrep_buf** json_out);

#ifdef __cplusplus
}
#endif

#endif /* LINREP_H */
