/* Copyright 2026 The eatonflow Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* C interface to the eatonflow library.
 *
 * Every call returns an eaton_status. On failure the message is available
 * from eaton_last_error() on the same thread until the next call. Strings
 * returned through char** out parameters are owned by the caller and must
 * be released with eaton_string_free. Rationals are passed as text: "p/q",
 * integers, decimals ("0.25") or scientific ("1e5"). */

#ifndef EATON_EATON_H_
#define EATON_EATON_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define EATON_API __attribute__((visibility("default")))
#else
#define EATON_API
#endif

typedef enum {
  EATON_OK = 0,
  EATON_ERR_INPUT = 1,
  EATON_ERR_INFEASIBLE = 2,
  EATON_ERR_SINGULAR = 3,
  EATON_ERR_UNDECIDED = 4,
  EATON_ERR_CONTRACT = 5,
  EATON_ERR_CONSTRUCTION = 6,
  EATON_ERR_NOT_FOUND = 7,
  EATON_ERR_INTERNAL = 8
} eaton_status;

typedef enum { EATON_LENS_FLAT = 0, EATON_LENS_CIRCULAR = 1 } eaton_lens_kind;

typedef struct eaton_lattice eaton_lattice;

EATON_API const char* eaton_version(void);
EATON_API const char* eaton_last_error(void);
EATON_API const char* eaton_status_name(eaton_status status);
EATON_API void eaton_string_free(char* s);

/* Ergodic direction for the slit endpoint (r/2q, s/2q):
 * {"a","d","cf":[...],"theta":[lo,hi]}. theta encloses the finite
 * expansion to `prec` bits. */
EATON_API eaton_status eaton_direction_json(int64_t r, int64_t s, int64_t q,
                                            const int64_t* n_seq, size_t n_len,
                                            size_t blocks, unsigned prec, char** out);

/* Checks the word g_z(8qm) for z = (r/2q, s/2q). *passed is 1 when it fixes
 * z and acts trivially on homology. */
EATON_API eaton_status eaton_verify_word_json(int64_t r, int64_t s, int64_t q, int64_t m,
                                              int* passed, char** out);

/* Smallest u <= u_max with s_u > target: {"u","s_u":[lo,hi],"target"}. */
EATON_API eaton_status eaton_hausdorff_json(const int64_t* a_block, size_t a_len,
                                            const int64_t* b_block, size_t b_len,
                                            int64_t d, int64_t c, const char* target,
                                            int64_t u_max, const char* tol, char** out);

/* Lattices with columns (a, c) and (b, d). */
EATON_API eaton_status eaton_lattice_from_rational(const char* a, const char* b,
                                                   const char* c, const char* d,
                                                   unsigned prec, eaton_lattice** out);
EATON_API eaton_status eaton_lattice_rotated_square(const char* angle, unsigned prec,
                                                    eaton_lattice** out);
/* Normalised lattice for radius R, slit height s/2q, the ergodic direction
 * built from (0, s, q, n_seq, blocks) and shear tau. `report` (optional)
 * receives the basis and t* as JSON. */
EATON_API eaton_status eaton_lattice_build(const char* R, int64_t s, int64_t q,
                                           const int64_t* n_seq, size_t n_len, size_t blocks,
                                           const char* tau, const char* eps, unsigned prec,
                                           eaton_lattice** out, char** report);
EATON_API void eaton_lattice_free(eaton_lattice* lattice);
/* {"basis":[[a,b],[c,d]] as enclosures,"det","covolume_one","circular","flat"}
 * with the admissibility answers for radius R ("yes", "no", "undecided"). */
EATON_API eaton_status eaton_lattice_json(const eaton_lattice* lattice, const char* R,
                                          char** out);

/* Vertical flow among lenses of radius R. csv_path may be NULL; otherwise
 * the event series is written there. The summary holds the obstacle count,
 * final state, bounding box and the minimal band width. */
EATON_API eaton_status eaton_plane_simulate(const eaton_lattice* lattice, const char* R,
                                            eaton_lens_kind kind, const char* x,
                                            const char* y, int orientation, const char* T,
                                            unsigned max_prec, const char* csv_path,
                                            char** summary);

/* Flow on the Z^2 cover of the slit torus with slit endpoint z = (zx, zy).
 * When vx and vy are both non-NULL the velocity is (vx, vy) exactly;
 * otherwise it is the unit vector along the ergodic direction built from
 * (r, s, q, n_seq, blocks). sample_dt = "0" disables the sampled series. */
typedef struct {
  const char* zx;
  const char* zy;
  int64_t r, s, q;
  const int64_t* n_seq;
  size_t n_len;
  size_t blocks;
  const char* vx;
  const char* vy;
  int square;
  const char* x;
  const char* y;
  const char* T;
  const char* sample_dt;
  unsigned prec;
  unsigned max_prec;
} eaton_cover_params;

EATON_API eaton_status eaton_cover_simulate(const eaton_cover_params* params,
                                            const char* csv_path, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* EATON_EATON_H_ */
