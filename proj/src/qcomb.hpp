// q-integers, q-factorials and Gaussian binomials, both as universal
// integer polynomials in t and evaluated at an arbitrary base element of a
// coefficient ring.
#pragma once

#include "ring.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qdp {

// ordinary binomial coefficient, zero outside 0 <= k <= n
Int binom_int(long n, long k);

// universal q-analogs in Z[t]
ZPoly zq_int(long m);       // 1 + t + ... + t^(m-1), m >= 0
ZPoly zq_factorial(long m); // product of zq_int(1..m)
ZPoly zq_binomial(long n, long k);

// Pascal-recurrence cache for Gaussian binomials at a fixed base element;
// one instance per base, not shared across threads
class QBinomCache {
public:
    explicit QBinomCache(RElem base);
    const RElem& base() const { return base_; }
    RElem binom(long n, long k);
    RElem qint(long m);  // m >= 0
    RElem qfact(long m); // m >= 0
private:
    RElem base_;
    std::map<std::pair<long, long>, RElem> memo_;
    std::vector<RElem> pows_, ints_, facts_;
    const RElem& base_pow(long k);
};

// one-off evaluations at an arbitrary base
RElem q_int_at(const RElem& base, long m); // negative m requires base a unit
RElem q_factorial_at(const RElem& base, long m);
RElem q_binomial_at(const RElem& base, long n, long k);

// smallest m >= 1 with (m)_q = 0, or 0 when none exists; the scan is
// cross-checked against the value the descriptor promises and any mismatch
// is an internal error
int q_char(const Ring& ring);

// base-p factorization rule for Gaussian binomials in q-characteristic p:
// with n = n1*p + n0 and k = k1*p + k0 (0 <= n0,k0 < p), the binomial
// {n over k}_q equals binom(n1,k1) * {n0 over k0}_q
RElem q_lucas(const Ring& ring, long n, long k);

} // namespace qdp
