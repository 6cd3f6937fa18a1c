/* C interface to the MLSS satisfiability solver.
 *
 * All entry points return an opaque result handle; inspect it with the
 * accessors and release it with mlss_result_free. String accessors return
 * pointers owned by the handle (valid until the handle is freed) or NULL
 * when the field does not apply.
 */
#ifndef MLSS_H
#define MLSS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; these double as the CLI exit codes. */
enum {
  MLSS_OK = 0,       /* check accepted / inference succeeded */
  MLSS_ERROR = 1,    /* parse or input error; see message */
  MLSS_REJECT = 2,   /* certificate rejected; see message */
  MLSS_SAT = 10,
  MLSS_UNSAT = 20,
  MLSS_ILL_TYPED = 30, /* typed mode only */
  MLSS_INTERNAL = 70   /* invariant failure; always a bug */
};

typedef struct mlss_result mlss_result;

const char *mlss_version(void);

/* Decide satisfiability of the formula in `text`.
 * typed: nonzero enables level inference and the typed calculus.
 * budget: per-path step budget; 0 uses the built-in termination bound.
 * debug: nonzero enables extra internal invariant checks. */
mlss_result *mlss_solve(const char *text, int typed,
                        unsigned long long budget, int debug);

/* Replay a certificate (JSON) against the formula in `text`. */
mlss_result *mlss_check(const char *text, const char *certificate_json);

/* Run level inference on the formula in `text`. */
mlss_result *mlss_infer(const char *text);

void mlss_result_free(mlss_result *r);

int mlss_result_status(const mlss_result *r);
/* Diagnostic for ERROR / REJECT / ILL_TYPED / INTERNAL statuses. */
const char *mlss_result_message(const mlss_result *r);
/* SAT only: one `name = value` line per variable of the input formula. */
const char *mlss_result_model_text(const mlss_result *r);
/* SAT only: JSON object mapping variable names to rendered values. */
const char *mlss_result_model_json(const mlss_result *r);
/* UNSAT only: the certificate as JSON. */
const char *mlss_result_certificate_json(const mlss_result *r);
/* solve only: {"branches_explored","rule_applications","max_branch_size",
 * "bound"}. */
const char *mlss_result_stats_json(const mlss_result *r);
/* infer only: {"variables":{name:level},"empty_levels":{tag:level},
 * "urelems":[terms]}. */
const char *mlss_result_levels_json(const mlss_result *r);

#ifdef __cplusplus
}
#endif

#endif
