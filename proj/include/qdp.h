/* C interface to the twisted divided-power calculus library. All table and
 * report functions hand back a heap string through an out parameter; free
 * it with qdp_string_free. Return values are process exit codes: QDP_OK on
 * success, QDP_USAGE for invalid input or state, QDP_FALSIFIED when a
 * computation contradicts a proved identity (or a verification suite has
 * failing cases). After a nonzero return, qdp_last_error describes what
 * went wrong in the calling thread.
 */
#ifndef QDP_H
#define QDP_H

#ifdef __cplusplus
extern "C" {
#endif

#define QDP_OK 0
#define QDP_USAGE 2
#define QDP_FALSIFIED 3

/* opaque coefficient-ring handle */
typedef struct qdp_ring qdp_ring;

/* message for the most recent failure on this thread; never NULL */
const char* qdp_last_error(void);

/* release a string returned through an out parameter */
void qdp_string_free(char* s);

/* parse a ring descriptor (Zt, Zts, CycF:p, CycR:p, Fp:p) into a handle */
int qdp_ring_parse(const char* descriptor, qdp_ring** out);
void qdp_ring_free(qdp_ring* r);

/* canonical descriptor of the ring; owned by the handle */
const char* qdp_ring_descriptor(const qdp_ring* r);

/* Gaussian binomial table for 0 <= k <= n <= nmax, evaluated at the
 * distinguished element q of the ring. Formats: json, csv, text. */
int qdp_qbinom_table(const qdp_ring* r, long nmax, const char* format, char** out);

/* pullback coefficient tables A/B/C over Z[t] for 0 <= n <= nmax and
 * n <= i <= p*n. Every C entry carries a defined/falsified status; the
 * call returns QDP_FALSIFIED (with the table still written) when any C
 * entry is falsified. Formats: json, csv, text. */
int qdp_frob_coeffs_table(long p, long nmax, const char* format, char** out);

/* basis tables for the centralizer of the coordinate and the center of
 * the operator algebra up to the given total degree. Formats: json, csv,
 * text. */
int qdp_center_table(const qdp_ring* r, long degree, const char* format, char** out);

/* run a named identity suite and write its report. ring may be NULL or
 * empty for the suite default; nmax/degree/p may be -1 for defaults.
 * Returns QDP_OK when every case passes, QDP_FALSIFIED otherwise (report
 * still written), QDP_USAGE for unknown suites or invalid parameters.
 * Formats: json, text. */
int qdp_verify_suite(const char* suite, const char* ring, long nmax, long degree, long p,
                     unsigned long seed, const char* format, char** out);

/* run the correspondence roundtrip suite over the given ring (must have
 * positive q-characteristic) and write per-instance verdicts with the
 * recovered curvature matrices. Same return convention as
 * qdp_verify_suite. Formats: json, text. */
int qdp_simpson_suite(const char* ring, const char* suite, unsigned long seed,
                      const char* format, char** out);

/* names of the available verification suites; NULL-terminated, static */
const char* const* qdp_verify_suites(void);

#ifdef __cplusplus
}
#endif

#endif /* QDP_H */
