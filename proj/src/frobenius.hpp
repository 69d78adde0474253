// The p-Frobenius on A = R[x] with sigma(x) = q x: the coefficient
// families A_{n,i}, B_{n,i}, C_{n,i} over Z[t], the pullback maps on A and
// A[xi], the divided Frobenius into the divided power ring, and the
// mixed-basis splitting available at q-characteristic p. h = 0 throughout.
#pragma once

#include "divpow.hpp"

#include <map>
#include <string>
#include <utility>

namespace qdp {

// A_{n,i} = sum_j (-1)^(n-j) t^(p(n-j)(n-j-1)/2) {n over j}_{t^p} {pj over i}_t;
// zero unless n <= i <= pn, with A_{n,pn} = 1
ZPoly frob_coeff_a(long n, long i, int p);
// B_{n,i} defined by (i)_t! A_{n,i} = (n)_{t^p}! (p)_t^n B_{n,i}; the
// division is exact by the factorization theorem, so a failure raises the
// falsifier error
ZPoly frob_coeff_b(long n, long i, int p);
// the division step behind frob_coeff_b, exposed so corrupted numerators
// can demonstrate the falsifier channel: num / ((n)_{t^p}! (p)_t^n)
ZPoly divided_coeff_from(const ZPoly& num, long n, int p);
// C_{n,i} = B_{n,i} / B_{n,pn} over Q[t] when the division is exact (it is
// not in general; the failure raises the falsifier error); the identity
// (i)_t! A_{n,i} = (pn)_t! C_{n,i} is asserted on every defined value
QPoly frob_coeff_c(long n, long i, int p);

// pullback context: target A = R[x], source copy A' = R[x'] with
// sigma(x') = q^p x', the canonical divided power structure (q, y) on the
// target, the omega structure (q^p, (1-q)x') on the source, and the primed
// twisted powers (q^p, (p)_q y) over sigma^p on the target
class FrobeniusContext {
public:
    FrobeniusContext(Ring ring, int p, bool laurent = false);

    const Ring& ring() const { return ring_; }
    int p() const { return p_; }
    int qchar() const { return qchar_; }
    const Algebra& target() const { return target_; }
    const Algebra& source() const { return source_; }
    const DPRing& target_ring() const { return tdp_; }
    const DPRing& source_ring() const { return sdp_; }
    const TwistParams& primed_powers() const { return primed_; }

    // coefficient-twisted pullback: the coefficient endomorphism together
    // with x' -> x^p; a ring homomorphism
    AElem on_A(const AElem& z) const;
    // its extension to A'[xi] with xi -> (x + xi)^p - x^p
    XiPoly on_xi(const XiPoly& f) const;
    // R-linear transport x' -> x^p with coefficients untouched; this is
    // the coefficient action of the divided Frobenius and the splitting
    AElem transport(const AElem& z) const;

private:
    Ring ring_;
    int p_;
    Algebra target_;
    Algebra source_;
    DPRing tdp_;
    DPRing sdp_;
    TwistParams primed_;
    int qchar_;
};

AElem frobenius_on_A(const FrobeniusContext& ctx, const AElem& z);
XiPoly frobenius_on_xi(const FrobeniusContext& ctx, const XiPoly& f);

// image of the n-th primed twisted power xi^{(n)_{q^p,(p)_q y}}: the
// standard-basis polynomial sum_i A_{n,i}(q) x^{pn-i} xi^{(i)} and its
// divided power class
struct TwistedPowerImage {
    XiPoly poly;
    DPElem divided;
};
TwistedPowerImage frobenius_twisted_power(const FrobeniusContext& ctx, long n, long trunc);

// the divided Frobenius: omega^[n] -> sum_{i=n}^{pn} B_{n,i}(q) x^{pn-i}
// xi^[i], extended over the coefficient transport; a ring homomorphism.
// The target truncation must hold the full image: p * w.trunc() <= trunc.
DPElem divided_frobenius(const FrobeniusContext& ctx, const DPElem& w, long trunc);

// element of (A[xi]/xi^{(p)}) <omega>: coefficients at xb^k w^[n] with
// 0 <= k < p, where xb is the reduced power and w the divided generator
class MixedElem {
public:
    MixedElem(Algebra alg, int p);

    const Algebra& algebra() const { return alg_; }
    int p() const { return p_; }
    const std::map<std::pair<long, long>, AElem>& coeffs() const { return c_; }
    AElem coeff(long k, long n) const;
    bool is_zero() const { return c_.empty(); }
    void add_term(long k, long n, const AElem& z);

    bool operator==(const MixedElem& o) const;
    bool operator!=(const MixedElem& o) const { return !(*this == o); }

    std::string str() const;

private:
    Algebra alg_;
    int p_;
    std::map<std::pair<long, long>, AElem> c_;
};

// the splitting map at q-characteristic p: xb^k w^[n] -> xi^[k] * (divided
// Frobenius image of w^[n]); filtration compatible and triangular for the
// degree pn + k
DPElem mixed_to_divided(const FrobeniusContext& ctx, const MixedElem& m, long trunc);
// inverse over q-divisible rings: peel the top index d = pn + k, whose
// leading coefficient B_{n,pn}(q) = ((p-1)_q!)^n is a unit
MixedElem divided_to_mixed(const FrobeniusContext& ctx, const DPElem& a);

} // namespace qdp
