// Dense univariate polynomials with exact big-integer / big-rational
// coefficients, little-endian (index = exponent of t). The zero polynomial
// is the empty coefficient vector; trailing zeros are always stripped.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace qdp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(Int c);
    explicit ZPoly(long c);
    explicit ZPoly(std::vector<Int> coeffs);

    static ZPoly t(int exp = 1, Int coeff = 1); // coeff * t^exp

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(int i) const;
    Int leading() const;

    bool operator==(const ZPoly& o) const { return c_ == o.c_; }
    bool operator!=(const ZPoly& o) const { return c_ != o.c_; }

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator-() const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const Int& k) const;

    ZPoly shifted(int k) const;        // * t^k
    ZPoly substitute_power(int k) const; // t -> t^k, k >= 1
    Int eval(const Int& v) const;
    Int eval_one() const;              // sum of coefficients

    std::string str(const std::string& var = "t") const;

private:
    void normalize();
    std::vector<Int> c_;
};

struct QDivMod;

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(Rat c);
    explicit QPoly(std::vector<Rat> coeffs);
    static QPoly from_z(const ZPoly& p);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const;
    Rat leading() const;

    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return c_ != o.c_; }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& k) const;

    // Euclidean division by a nonzero divisor; exact over the rationals.
    QDivMod divmod(const QPoly& den) const;

    // integer coefficients check (used for unit detection in Z[t]/Phi_p)
    std::optional<ZPoly> to_z() const;

    std::string str(const std::string& var = "t") const;

private:
    void normalize();
    std::vector<Rat> c_;
};

struct QDivMod {
    QPoly quo;
    QPoly rem;
};

// Quotient with num = den * quot exactly over Z[t]; nullopt when den does not
// divide num. Callers that treat non-divisibility as a broken theorem wrap
// the nullopt into a falsifier error.
std::optional<ZPoly> exact_divide(const ZPoly& num, const ZPoly& den);

// p-th cyclotomic polynomial, computed by dividing t^p - 1 by the cyclotomic
// polynomials of all proper divisors of p.
ZPoly cyclotomic(int p);

// extended Euclid over Q[t]: g = gcd(a,b) monic, g = s*a + t*b
struct QXgcd { QPoly g, s, t; };
QXgcd xgcd(const QPoly& a, const QPoly& b);

} // namespace qdp
