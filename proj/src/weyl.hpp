// Ore polynomials in the twisted derivation over A, with the commutation
// rule d * z = sigma(z) * d + derive(z). Provides the operator product, the
// action on A, the equivalent product obtained through divided-power
// duality, the curvature map theta -> d^p, and exact kernel computations
// for the centralizer of A and the center.
#pragma once

#include "divpow.hpp"
#include "linalg.hpp"
#include "twisted.hpp"

#include <string>
#include <vector>

namespace qdp {

// a twisted differential operator sum_k z_k d^k, dense in d
class WeylElem {
public:
    explicit WeylElem(Algebra alg, std::vector<AElem> cs = {});

    const Algebra& algebra() const { return alg_; }
    const std::vector<AElem>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 when zero
    AElem coeff(int k) const;
    bool is_zero() const { return c_.empty(); }

    bool operator==(const WeylElem& o) const;
    bool operator!=(const WeylElem& o) const { return !(*this == o); }

    WeylElem operator+(const WeylElem& o) const;
    WeylElem operator-(const WeylElem& o) const;
    WeylElem operator-() const;
    WeylElem scaled(const AElem& z) const; // left multiplication by z in A

    static WeylElem constant(AElem z);
    // the k-th power of the derivation
    static WeylElem d_power(const Algebra& alg, int k = 1);
    // x^a d^b
    static WeylElem monomial(const Algebra& alg, long a, int b);

    std::string str() const;

private:
    void normalize();
    Algebra alg_;
    std::vector<AElem> c_;
};

// the Ore product, computed by iterating the degree-one commutation rule
WeylElem weyl_mul(const WeylElem& a, const WeylElem& b);

// the natural action sum_k z_k derive^k(z)
AElem weyl_apply(const WeylElem& op, const AElem& z);

// the same product routed through the divided-power pairing: operators are
// read as linear functionals on the truncated divided-power ring, composed
// through comultiplication with the Taylor twist on the right factor.
// Requires deg a + deg b <= trunc.
WeylElem weyl_mul_via_duality(const WeylElem& a, const WeylElem& b, long trunc);

// commutative polynomials in the curvature variable theta over A
class CurvaturePoly {
public:
    explicit CurvaturePoly(Algebra alg, std::vector<AElem> cs = {});

    const Algebra& algebra() const { return alg_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    AElem coeff(int k) const;
    bool is_zero() const { return c_.empty(); }

    bool operator==(const CurvaturePoly& o) const;
    bool operator!=(const CurvaturePoly& o) const { return !(*this == o); }

    CurvaturePoly operator+(const CurvaturePoly& o) const;
    CurvaturePoly operator-(const CurvaturePoly& o) const;
    CurvaturePoly operator-() const;
    CurvaturePoly operator*(const CurvaturePoly& o) const;
    CurvaturePoly scaled(const AElem& z) const;

    static CurvaturePoly constant(AElem z);
    static CurvaturePoly theta(const Algebra& alg, int k = 1);

    std::string str() const;

private:
    void normalize();
    Algebra alg_;
    std::vector<AElem> c_;
};

// the A-linear multiplicative map theta^k -> d^(pk); needs a q-divisible
// ring with positive q-characteristic p
WeylElem p_curvature(const CurvaturePoly& f);

// exact kernel of op -> op*x - x*op on the span of the monomials x^a d^b
// with |a| + b <= D (negative a only over a Laurent algebra)
std::vector<WeylElem> centralizer_basis(const Algebra& alg, long D);

// exact simultaneous kernel of both commutators, with x and with d, on the
// same monomial span; needs a q-divisible ring with positive
// q-characteristic and h = 0
std::vector<WeylElem> center_basis(const Algebra& alg, long D);

// coefficient rows of the operators on the monomial grid x^u d^v with
// |u| <= xdeg (u >= 0 unless Laurent) and v <= ddeg, for span comparisons
std::vector<std::vector<RElem>> weyl_span_rows(const Algebra& alg,
                                               const std::vector<WeylElem>& ops, long xdeg,
                                               long ddeg);

// number of grid columns used by weyl_span_rows with the same bounds
size_t weyl_grid_cols(const Algebra& alg, long xdeg, long ddeg);

} // namespace qdp
