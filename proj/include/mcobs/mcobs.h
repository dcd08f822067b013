#ifndef MCOBS_MCOBS_H
#define MCOBS_MCOBS_H

/* C interface to the multi-copy observable library.
 *
 * Every function returns an mco_status. On failure, mco_last_error() gives a
 * message for the calling thread. Handles are opaque and freed with the
 * matching *_free function; strings returned through char** are freed with
 * mco_string_free. Modes are 1-based. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MCO_API __declspec(dllexport)
#else
#define MCO_API __attribute__((visibility("default")))
#endif

typedef enum {
  MCO_OK = 0,
  MCO_INVALID_ARGUMENT = 1,
  MCO_PARSE_ERROR = 2,
  MCO_TAIL_GATE = 3,
  MCO_INVARIANT_FAILURE = 4,
  MCO_DIMENSION_ERROR = 5,
  MCO_INTERNAL_ERROR = 99
} mco_status;

typedef enum { MCO_ROUTE_CIRCUIT = 0, MCO_ROUTE_SPECTRAL = 1 } mco_route;

typedef struct mco_state mco_state;
typedef struct mco_distribution mco_distribution;

typedef struct {
  int modes;
  int cutoff;
  int pure;
  double trace;
  double tail_mass;
  double discarded_mass;
  int tail_warning;
} mco_state_info;

typedef struct {
  double gamma_xx, gamma_xp, gamma_pp;
  double mean_x, mean_p;
  double det_gamma;
  double nu;
  int sr_satisfied;
} mco_covariance;

MCO_API const char* mco_last_error(void);
MCO_API const char* mco_version(void);
MCO_API void mco_string_free(char* s);

/* States */

/* Builds a one-mode state from a JSON state spec. tail_max < 0 disables the
 * gate; strict != 0 turns a gate violation into MCO_TAIL_GATE. */
MCO_API mco_status mco_state_from_json(const char* spec_json, int cutoff, double tail_max,
                                       int strict, mco_state** out);
MCO_API void mco_state_free(mco_state* s);
MCO_API mco_status mco_state_info_get(const mco_state* s, mco_state_info* out);
/* D(alpha) on a one-mode state, evolved at new_cutoff (0 keeps the cutoff). */
MCO_API mco_status mco_state_displace(const mco_state* s, double re, double im, int new_cutoff,
                                      double tail_max, mco_state** out);
MCO_API mco_status mco_state_covariance(const mco_state* s, mco_covariance* out);
/* copies of a one-mode state as one multi-mode box state, each mode padded or
 * cut to box_cutoff (0 keeps the state's cutoff). */
MCO_API mco_status mco_state_tensor_power(const mco_state* s, int copies, int box_cutoff,
                                          mco_state** out);
/* Runs a circuit (preset name or JSON text) on a box state with matching mode count. */
MCO_API mco_status mco_circuit_run(const char* circuit, const mco_state* input, double tail_max,
                                   mco_state** out);
/* Mode count, passivity and default readout pair (1-based) of a circuit. */
MCO_API mco_status mco_circuit_info(const char* circuit, int* modes, int* passive, int* mode_a,
                                    int* mode_b);

/* Distributions, keyed by 2m */

MCO_API mco_status mco_distribution_lz(const mco_state* s, mco_route route, double tail_max,
                                       mco_distribution** out);
MCO_API mco_status mco_distribution_m(const mco_state* s, mco_route route, double tail_max,
                                      mco_distribution** out);
/* Exact readout of a passive circuit fed with copies of a one-mode state.
 * mode_a = mode_b = 0 uses the circuit's own readout pair. */
MCO_API mco_status mco_distribution_circuit(const char* circuit, const mco_state* s, int mode_a,
                                            int mode_b, double tail_max, mco_distribution** out);
/* (n_a - n_b)/2 on a box state. */
MCO_API mco_status mco_distribution_photon_difference(const mco_state* box, int mode_a,
                                                      int mode_b, mco_distribution** out);
MCO_API mco_status mco_distribution_from_arrays(const int* twice_m, const double* p, size_t n,
                                                mco_distribution** out);
MCO_API void mco_distribution_free(mco_distribution* d);
MCO_API size_t mco_distribution_size(const mco_distribution* d);
MCO_API mco_status mco_distribution_entry(const mco_distribution* d, size_t i, int* twice_m,
                                          double* p);
MCO_API double mco_distribution_entropy(const mco_distribution* d);
MCO_API double mco_distribution_variance(const mco_distribution* d);
MCO_API double mco_distribution_tail_mass(const mco_distribution* d);
MCO_API double mco_distribution_pruned_mass(const mco_distribution* d);
MCO_API double mco_distribution_total_variation(const mco_distribution* a,
                                                const mco_distribution* b);
/* Seeded sampling: fills counts[i] for entry i. */
MCO_API mco_status mco_distribution_sample(const mco_distribution* d, int64_t shots,
                                           uint64_t seed, int64_t* counts);

/* Closed forms */

MCO_API mco_status mco_gaussian_entropies(double nu, double* h_lz, double* h_xp);
MCO_API mco_status mco_e_function(double mean_n, double* out);

/* Verification suite: config JSON (may be NULL or "{}") in, report JSON out.
 * *failed / *inconclusive count checks by status. */
MCO_API mco_status mco_verify(const char* config_json, char** report_json, int* failed,
                              int* inconclusive);

#ifdef __cplusplus
}
#endif

#endif
