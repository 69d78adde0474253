// The twisted divided power ring A<xi>_{Q,Y}: truncated elements on the
// divided basis xi^[n], the sigma-action, divided p-power maps between
// parameter families, the comultiplication into the primed tensor square,
// the dual polynomial ring A[theta] with its pairing, the level-0 Taylor
// map, and horizontal sections of the derivation.
#pragma once

#include "qcomb.hpp"
#include "twisted.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdp {

// shared context: the algebra, the twist parameters, a binomial cache at
// the twist base, and the Taylor step (how many applications of the
// derivation feed one basis index; 1 for the canonical ring, multiplied by
// p for the quotient ring reached by dropping non-multiples of p)
class DPRing {
public:
    DPRing(Algebra alg, TwistParams par, long taylor_step = 1);
    // the (q, y) parameters of the algebra itself
    static DPRing canonical(const Algebra& alg);

    const Algebra& algebra() const;
    const TwistParams& params() const;
    const RElem& twist_base() const;  // Q
    const AElem& shift() const;       // Y
    long sigma_power() const;
    long taylor_step() const;

    RElem qint(long m) const;
    RElem qfact(long m) const;
    RElem qbinom(long n, long k) const;
    AElem shift_pow(long i) const; // Y^i, cached

    bool operator==(const DPRing& o) const;
    bool operator!=(const DPRing& o) const { return !(*this == o); }

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// element of A<xi>_{Q,Y} / I^[N+1]: coefficients of xi^[k] for k <= N.
// Dropping indices above N is a ring quotient because the span of high
// divided powers is an ideal, so truncated arithmetic is well defined.
class DPElem {
public:
    DPElem(DPRing ring, long trunc);

    const DPRing& ring() const { return ring_; }
    long trunc() const { return trunc_; }
    const std::map<long, AElem>& coeffs() const { return c_; }
    AElem coeff(long k) const;
    bool is_zero() const { return c_.empty(); }
    long top_index() const; // largest k with a nonzero coefficient; -1 when zero

    bool operator==(const DPElem& o) const;
    bool operator!=(const DPElem& o) const { return !(*this == o); }

    DPElem operator+(const DPElem& o) const;
    DPElem operator-(const DPElem& o) const;
    DPElem operator-() const;
    DPElem scaled(const RElem& c) const;
    DPElem scaled_a(const AElem& z) const; // the A-module structure
    // pass to a lower truncation (a further quotient); raising is an error
    DPElem with_trunc(long n) const;

    std::string str() const;

private:
    void insert(long k, AElem z);
    DPRing ring_;
    long trunc_;
    std::map<long, AElem> c_;
    friend DPElem dp_from_coeffs(const DPRing&, long, std::map<long, AElem>);
};

DPElem dp_zero(const DPRing& ring, long trunc);
DPElem dp_one(const DPRing& ring, long trunc);
DPElem dp_basis(const DPRing& ring, long k, long trunc); // xi^[k]
DPElem dp_from_coeffs(const DPRing& ring, long trunc, std::map<long, AElem> coeffs);

// closed product form on basis elements:
//   xi^[m] xi^[n] = sum_i (-1)^i Q^(i(i-1)/2) {m+n-i over m}_Q {m over i}_Q
//                   Y^i xi^[m+n-i]
// returned as index -> A-coefficient, untruncated
std::map<long, AElem> dp_basis_product(const DPRing& ring, long m, long n);
DPElem dp_mul(const DPElem& a, const DPElem& b);

// the filtered-basis conversion xi^(n) -> (n)_Q! xi^[n], a ring map
DPElem dp_from_poly(const XiPoly& f, const DPRing& ring, long trunc);
// inverse below the truncation; the divided factorials must be units
XiPoly dp_to_poly(const DPElem& a);

// closed form of the s-th sigma-power on a basis element:
//   sigma^s(xi^[n]) = sum_i {s+i-1 over i}_Q Y^i xi^[n-i]
std::map<long, AElem> dp_sigma_terms(const DPRing& ring, long n, long s);
// the sigma-semilinear ring endomorphism applied s times; computed by the
// closed form and cross-checked against s-fold iteration
DPElem dp_sigma(const DPElem& a, long s);

// xi^[n] * sigma^n(xi^[m]), which collapses to {m+n over n}_Q xi^[n+m]
DPElem dp_twisted_mul(const DPRing& ring, long n, long m, long trunc = -1);

// the quotient context reached by dropping indices not divisible by p:
// parameters (1, Y^p), Taylor step multiplied by p
DPRing mod_xi_ring(const DPRing& ring);
// A-linear ring map sending the k-th divided power of the (1, Y^p) source
// onto xi^[kp]; the target parameters and the source element must match
DPElem divided_p_power(const DPElem& w, const DPRing& target);
// the same map for a source with parameters (Q^p, Y^p) over any ring:
// k-th basis element -> prod_{i=2..k} {ip-1 over p-1}_Q  * xi^[kp]
DPElem general_divided_power(const DPRing& target, long k, long p, long trunc = -1);
// section of divided_p_power: drop indices with p not dividing k and
// reindex kp -> k; requires a q-divisible ring of q-characteristic p
DPElem mod_xi_reduce(const DPElem& a);

// primed tensor square: table of A-coefficients at xi^[i] (x) xi^[j], every
// coefficient normalized onto the left factor; a coefficient appearing on
// the right factor migrates left through the Taylor expansion
class DPTensor {
public:
    DPTensor(DPRing ring, long ltrunc, long rtrunc);

    const DPRing& ring() const { return ring_; }
    long ltrunc() const { return lt_; }
    long rtrunc() const { return rt_; }
    const std::map<std::pair<long, long>, AElem>& coeffs() const { return c_; }
    AElem coeff(long i, long j) const;
    bool is_zero() const { return c_.empty(); }

    bool operator==(const DPTensor& o) const;
    bool operator!=(const DPTensor& o) const { return !(*this == o); }

    DPTensor operator+(const DPTensor& o) const;
    DPTensor operator-(const DPTensor& o) const;
    DPTensor scaled_a(const AElem& z) const; // A acts on the left factor
    void add_term(long i, long j, const AElem& z);

    std::string str() const;

private:
    DPRing ring_;
    long lt_, rt_;
    std::map<std::pair<long, long>, AElem> c_;
};

// xi^[n] -> sum_i xi^[n-i] (x) xi^[i], extended A-linearly on the left
DPTensor dp_comul(const DPElem& a);
DPTensor dp_tensor_one(const DPRing& ring, long lt, long rt);
DPTensor dp_tensor_mul(const DPTensor& a, const DPTensor& b);
// entrywise reduction of both factors to the (1, Y^p) quotient context
DPTensor mod_xi_reduce(const DPTensor& a);

// the dual polynomial ring A[theta], plain commutative
class ThetaPoly {
public:
    explicit ThetaPoly(Algebra alg) : alg_(std::move(alg)) {}
    ThetaPoly(Algebra alg, std::vector<AElem> coeffs);

    const Algebra& algebra() const { return alg_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    AElem coeff(int k) const;
    const std::vector<AElem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    bool operator==(const ThetaPoly& o) const;
    bool operator!=(const ThetaPoly& o) const { return !(*this == o); }

    ThetaPoly operator+(const ThetaPoly& o) const;
    ThetaPoly operator-(const ThetaPoly& o) const;
    ThetaPoly operator-() const;
    ThetaPoly operator*(const ThetaPoly& o) const;
    ThetaPoly scaled(const AElem& a) const;

    static ThetaPoly theta(const Algebra& alg, int k = 1); // theta^k
    static ThetaPoly constant(AElem a);

    std::string str() const;

private:
    void normalize();
    Algebra alg_;
    std::vector<AElem> c_;
};

// <theta^m, xi^[n]> = 1 when m = n and 0 otherwise, extended A-bilinearly;
// coefficients of f beyond the truncation of g pair to zero
AElem pairing(const ThetaPoly& f, const DPElem& g);

// table of A-coefficients at theta^i (x) theta^j
using ThetaTensor = std::map<std::pair<long, long>, AElem>;

// multiplicative extension of theta -> 1(x)theta + theta(x)1 - y theta(x)theta,
// defined when the algebra twist has q = 1 (then y is the scalar -h)
ThetaTensor theta_comul(const ThetaPoly& f);

// level-0 Taylor expansion: z -> sum_k d^(k*step)(z) xi^[k] up to the
// truncation, where step is the ring's Taylor step; a ring homomorphism
DPElem taylor0(const AElem& z, const DPRing& ring, long trunc);

// basis of the kernel of the derivation on A restricted to degrees <= D
// (and >= -D in the Laurent case), found by exact linear algebra
std::vector<AElem> horizontal_sections(const Algebra& alg, long deg_bound);

} // namespace qdp
