// The twisted polynomial algebra A = R[x] (optionally Laurent) with the
// R-algebra endomorphism sigma(x) = q*x + h and the sigma-derivation with
// derive(x) = 1, plus the auxiliary commutative ring A[xi] carrying the
// twisted power basis xi^(n) = prod_{i<n} (xi + (i)_Q Y) for parameters
// Q in R, Y in A with sigma(Y) = Q*Y.
#pragma once

#include "qcomb.hpp"
#include "ring.hpp"

#include <map>
#include <vector>

namespace qdp {

class AElem;

class Algebra {
public:
    // canonical algebra over a ring: sigma(x) = q*x + h with q the ring's
    // distinguished element
    Algebra(Ring ring, RElem h, bool laurent = false);
    // generic twist: sigma(x) = qtw*x + h (used for the subalgebra R[x^p],
    // whose own twist parameter is q^p)
    Algebra(Ring ring, RElem qtw, RElem h, bool laurent, std::string var);

    static Algebra polynomial(const Ring& r);       // h = 0
    static Algebra laurent_h0(const Ring& r);       // h = 0, negative powers
    static Algebra with_s(const Ring& r);           // over Zts, h = s
    // R[x'] with sigma(x') = q^p x', the image of x^p
    static Algebra prime_twist(const Ring& r, int p);

    const Ring& ring() const { return ring_; }
    const RElem& q() const { return qtw_; }
    const RElem& h() const { return h_; }
    bool laurent() const { return laurent_; }
    const std::string& var() const { return var_; }

    bool operator==(const Algebra& o) const;
    bool operator!=(const Algebra& o) const { return !(*this == o); }

    AElem zero_elem() const;
    AElem one_elem() const;
    AElem scalar(RElem c) const;
    AElem x(long n = 1) const;
    AElem x(long n, RElem c) const; // c * x^n
    AElem from_terms(std::map<long, RElem> terms) const;
    // y = (1 - q) x - h, the canonical twisted-power shift
    AElem y() const;

private:
    Ring ring_;
    RElem qtw_;
    RElem h_;
    bool laurent_;
    std::string var_;
};

class AElem {
public:
    explicit AElem(Algebra alg) : alg_(std::move(alg)) {}
    AElem(Algebra alg, std::map<long, RElem> terms);

    const Algebra& algebra() const { return alg_; }
    const std::map<long, RElem>& terms() const { return c_; }
    RElem coeff(long n) const;
    bool is_zero() const { return c_.empty(); }
    bool is_scalar() const;
    long min_exp() const; // 0 for the zero element
    long max_exp() const;

    bool operator==(const AElem& o) const;
    bool operator!=(const AElem& o) const { return !(*this == o); }

    AElem operator+(const AElem& o) const;
    AElem operator-(const AElem& o) const;
    AElem operator-() const;
    AElem operator*(const AElem& o) const;
    AElem scaled(const RElem& c) const;
    AElem pow(long n) const; // n >= 0

    // coefficient-wise ring endomorphism (exponents untouched)
    AElem coeff_fstar(int p) const;
    // x -> x^p, exponents scaled (the p-th power substitution)
    AElem substitute_power(int p) const;
    // reinterpret terms in another algebra with the same coefficient ring
    AElem transplant(const Algebra& target) const;

    std::string str() const;

private:
    void insert(long n, RElem c);
    Algebra alg_;
    std::map<long, RElem> c_; // exponent -> nonzero coefficient
    friend class Algebra;
};

// sigma^s; s may be negative when the twist parameter is a unit. Negative
// exponents of x require h = 0 (enforced by the Laurent constructor).
AElem sigma_apply(const AElem& z, long s = 1);
// the sigma-derivation with derive(x) = 1 and derive(scalar) = 0
AElem derive(const AElem& z);
AElem derive_iter(const AElem& z, long k);

// the n-fold sigma-twisted power a * sigma(a) * ... * sigma^(n-1)(a); for
// the canonical shift y it collapses to q^(n(n-1)/2) y^n
AElem sigma_power_product(const AElem& a, long n);

// commutative polynomials in xi over A, dense in xi
class XiPoly {
public:
    explicit XiPoly(Algebra alg) : alg_(std::move(alg)) {}
    XiPoly(Algebra alg, std::vector<AElem> coeffs);

    const Algebra& algebra() const { return alg_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    AElem coeff(int k) const;
    const std::vector<AElem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    bool operator==(const XiPoly& o) const;
    bool operator!=(const XiPoly& o) const { return !(*this == o); }

    XiPoly operator+(const XiPoly& o) const;
    XiPoly operator-(const XiPoly& o) const;
    XiPoly operator-() const;
    XiPoly operator*(const XiPoly& o) const;
    XiPoly scaled(const AElem& a) const;
    XiPoly shifted(int k) const; // * xi^k

    static XiPoly xi(const Algebra& alg, int k = 1); // xi^k
    static XiPoly constant(AElem a);

    std::string str() const;

private:
    void normalize();
    Algebra alg_;
    std::vector<AElem> c_;
};

// twisted power parameters; the pair must be compatible with some power of
// sigma, meaning sigma^sp(Y) = Q*Y (construction checks this). sp = 1 covers
// the canonical (q, y); the Frobenius powers (q^p, (p)_q y) live over
// sigma^p.
struct TwistParams {
    RElem Q;
    AElem Y;
    long sigma_power;
    TwistParams(RElem q_base, AElem shift, long sp = 1);
};

// xi^(n) = prod_{i<n} (xi + (i)_Q Y) in the standard basis
XiPoly twisted_power(const TwistParams& par, long n);
// change of basis between {xi^k} and {xi^(k)}
std::vector<AElem> to_twisted_basis(const XiPoly& f, const TwistParams& par);
XiPoly from_twisted_basis(const Algebra& alg, const std::vector<AElem>& tw,
                          const TwistParams& par);

// closed product form: xi^(m) xi^(n) as twisted-basis coefficients
//   sum_i (-1)^i (i)_Q! Q^(i(i-1)/2) {m,i}_Q {n,i}_Q Y^i xi^(m+n-i)
std::map<long, AElem> twisted_mul_closed(const TwistParams& par, long m, long n);
// closed form: sigma(xi^(n)) = sum_i (i)_Q! {n,i}_Q Y^i xi^(n-i)
std::map<long, AElem> twisted_sigma_closed(const TwistParams& par, long n);

// sigma on A[xi], acting as sigma^cp on coefficients and xi -> xi + Y
XiPoly sigma_xi(const XiPoly& f, const AElem& Y, long cp = 1);

// quotient by the span of twisted powers above index n: drop tail entries
std::vector<AElem> twisted_truncate(std::vector<AElem> tw, long n);

// arithmetic in A[xi]/(xi^(n+1)): elements are twisted-basis coefficient
// vectors with indices <= n, which is a ring quotient because the span of
// high twisted powers is an ideal
class PinfQuotient {
public:
    PinfQuotient(TwistParams par, long n);

    const TwistParams& params() const { return par_; }
    const Algebra& algebra() const { return par_.Y.algebra(); }
    long order() const { return n_; }

    // twisted-basis coefficients of f with indices above n dropped
    std::vector<AElem> reduce(const XiPoly& f) const;
    XiPoly lift(const std::vector<AElem>& tw) const;
    std::vector<AElem> mul(const std::vector<AElem>& a,
                           const std::vector<AElem>& b) const;
    // the infinite-level Taylor map z -> z(x + xi), reduced; defined for
    // polynomial z only
    std::vector<AElem> taylor_inf(const AElem& z) const;

private:
    TwistParams par_;
    long n_;
};

// classical limit of the comultiplication identity: for shifted powers with
// base 1 built from an arbitrary shift y, the two-variable expansion
// prod_{i<n}(u + v + i*y) = sum_i binom(n,i) u^(n-i) v^(i) holds with plain
// binomials; returns whether it does for the given n
bool q1_comul_check(const AElem& y, long n);

} // namespace qdp
