/* Semi-Cayley fractional-revival toolkit: C API.
 *
 * The library builds semi-Cayley graphs over finite abelian groups, computes
 * their quantum-walk transition matrices in closed spectral form, and decides
 * fractional revival (perfect state transfer and periodicity included)
 * together with the gcd-based minimum-time invariants.
 *
 * Conventions:
 *  - graphs are created from scenario JSON (see scfr_graph_create);
 *  - structured results are returned as heap-allocated JSON / CSV strings
 *    that the caller releases with scfr_string_free;
 *  - on failure the out parameters are left untouched and, when `error` is
 *    non-NULL, *error receives a message (also scfr_string_free'd).
 */
#ifndef SCFR_H
#define SCFR_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct scfr_graph_t scfr_graph_t;

typedef enum scfr_status {
  SCFR_OK = 0,
  SCFR_ERROR_VALIDATION = 2, /* malformed scenario, literal or precondition */
  SCFR_NO_HITS = 3,          /* detect found nothing / verify refuted */
  SCFR_ERROR_TOLERANCE = 4,  /* internal cross-check exceeded its tolerance */
  SCFR_ERROR_UNSUPPORTED = 5, /* size cap or non-integral quantized request */
  SCFR_ERROR_INTERNAL = 6
} scfr_status;

const char* scfr_version(void);

void scfr_string_free(char* s);

/* Scenario JSON: {"group":[n1,...],"R":[[..],..],"L":[..],"S":[..]} or
 * {"cayley":{"kind":"dihedral"|"dicyclic","base":[..],"y":[..],
 *            "T1":[..],"T2":[..]}}.
 * epsilon_json (optional, may be NULL) overrides tolerance fields, e.g.
 * {"zero":1e-8}. */
scfr_status scfr_graph_create(const char* scenario_json,
                              const char* epsilon_json, scfr_graph_t** out,
                              char** error);
void scfr_graph_destroy(scfr_graph_t* graph);

long long scfr_graph_group_order(const scfr_graph_t* graph);
long long scfr_graph_vertex_count(const scfr_graph_t* graph);
int scfr_graph_r_equals_l(const scfr_graph_t* graph);

/* JSON spectrum report: eigenvalue pairs, branch weights, X membership and
 * integrality flags per group element. */
scfr_status scfr_spectrum(const scfr_graph_t* graph, char** json_out,
                          char** error);

/* time: "k/m" (t = 2*pi*k/m) or a radian literal.
 * vertex: "(g_1,...,g_r;orbit)". */
scfr_status scfr_transition_entry(const scfr_graph_t* graph, const char* u,
                                  const char* v, const char* time,
                                  double out_re_im[2], char** error);

/* Row-major CSV of H(t) with "re+imj" cells. */
scfr_status scfr_transition_csv(const scfr_graph_t* graph, const char* time,
                                char** csv_out, char** error);

/* CSV rows (t, |H(t)_{u,v}|^2).  pair: two vertex literals separated by
 * whitespace; grid: "start:stop:count" (radians) or comma-separated times. */
scfr_status scfr_fidelity_csv(const scfr_graph_t* graph, const char* pair,
                              const char* grid, char** csv_out, char** error);

/* Quantized revival search.  mode: "same", "cross" or "both"; with
 * all_times == 0 one minimal-time certificate per family is reported.
 * Returns SCFR_NO_HITS when no proper revival or perfect state transfer was
 * certified (the report is still written). */
scfr_status scfr_detect(const scfr_graph_t* graph, const char* mode,
                        int all_times, char** json_out, char** error);

/* Integrality verdict plus the minimum-time gcd tables.  With
 * assert_divisor != 0 a divisor violation turns into SCFR_ERROR_TOLERANCE. */
scfr_status scfr_mintime(const scfr_graph_t* graph, int assert_divisor,
                         char** json_out, char** error);

/* Row-level revival check for an explicit (u, v, t, alpha, beta) claim.
 * Returns SCFR_NO_HITS when the claim is refuted (report describes the
 * violating entry). */
scfr_status scfr_verify(const scfr_graph_t* graph, const char* pair,
                        const char* time, double alpha_re, double alpha_im,
                        double beta_re, double beta_im, char** json_out,
                        char** error);

/* Converts a Cayley scenario over a generalized dihedral/dicyclic group and
 * reports the semi-Cayley form, the vertex relabeling and the adjacency
 * equality verdict. */
scfr_status scfr_convert_cayley(const char* scenario_json, char** json_out,
                                char** error);

/* Streams one JSON record per enumerated (group, R, L, S).  The sink returns
 * nonzero to continue, zero to stop early.  spec_json example:
 * {"max_order":4,"require_rl":true,"workers":2}; NULL uses defaults. */
typedef int (*scfr_record_sink)(const char* record_json, void* user);
scfr_status scfr_scan(const char* spec_json, scfr_record_sink sink, void* user,
                      char** error);

#ifdef __cplusplus
}
#endif

#endif /* SCFR_H */
