// Coefficient rings: Z[t] (optionally Z[t,s]), Q[t]/Phi_p, Z[t]/Phi_p for
// prime p, and F_p. Every ring carries a distinguished element q and an
// endomorphism used by the Frobenius constructions. Elements are kept in a
// unique canonical form so equality is representation comparison.
#pragma once

#include "zpoly.hpp"

#include <memory>
#include <stdexcept>
#include <variant>

namespace qdp {

// Error taxonomy shared by the whole library. The `falsified` kind marks a
// computation whose failure would contradict a proven identity (for example
// an exact division that the coefficient theory guarantees); it is surfaced
// to the CLI as a distinct exit code.
enum class ErrorKind { usage, precondition, mismatch, falsified, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

enum class RingKind { GenericZt, CyclotomicField, CyclotomicRing, PrimeField };

// Z[t,s] as polynomials in s whose coefficients are ZPoly in t.
// Plain Z[t] elements have s-degree <= 0.
struct BiZ {
    std::vector<ZPoly> sc; // index = exponent of s

    BiZ() = default;
    explicit BiZ(ZPoly p);

    bool is_zero() const { return sc.empty(); }
    int s_degree() const { return static_cast<int>(sc.size()) - 1; }
    ZPoly coeff(int i) const;

    bool operator==(const BiZ& o) const { return sc == o.sc; }
    BiZ operator+(const BiZ& o) const;
    BiZ operator-(const BiZ& o) const;
    BiZ operator-() const;
    BiZ operator*(const BiZ& o) const;
    BiZ substitute_powers(int k) const; // t -> t^k and s -> s^k

    void normalize();
    std::string str() const;
};

class Ring;
class RElem;

class Ring {
public:
    static Ring generic_zt(bool with_s = false);
    static Ring cyclotomic_field(int p);
    static Ring cyclotomic_ring(int p);
    static Ring prime_field(int p);

    // compact text forms: Zt, Zts, CycF:p, CycR:p, Fp:p
    static Ring parse(const std::string& descriptor);
    std::string descriptor() const;

    RingKind kind() const { return impl_->kind; }
    int p() const { return impl_->p; }
    bool with_s() const { return impl_->with_s; }
    const ZPoly& modulus() const { return impl_->phi; }
    const QPoly& modulus_q() const { return impl_->phi_q; }

    // q-characteristic as declared by the descriptor; 0 for Z[t]
    int declared_qchar() const;
    bool q_divisible() const; // CycF, Fp
    bool q_flat() const;      // Zt, CycR (CycF and Fp are also q-flat)
    bool is_field() const;
    // domains all: every descriptor here is an integral domain

    bool operator==(const Ring& o) const;
    bool operator!=(const Ring& o) const { return !(*this == o); }

    RElem zero() const;
    RElem one() const;
    RElem from_int(const Int& n) const;
    RElem from_long(long n) const;
    RElem q() const;       // the distinguished element
    RElem s_gen() const;   // generator s of Z[t,s]; error elsewhere
    // canonical map Z[t] -> R sending t to q
    RElem specialize(const ZPoly& f) const;

private:
    struct Impl {
        RingKind kind;
        int p = 0;
        bool with_s = false;
        ZPoly phi;
        QPoly phi_q;
    };
    explicit Ring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

class RElem {
public:
    using Storage = std::variant<BiZ, QPoly, ZPoly, long>;

    RElem(Ring ring, Storage v) : ring_(std::move(ring)), v_(std::move(v)) {}

    const Ring& ring() const { return ring_; }
    const Storage& storage() const { return v_; }

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const RElem& o) const;
    bool operator!=(const RElem& o) const { return !(*this == o); }

    RElem operator+(const RElem& o) const;
    RElem operator-(const RElem& o) const;
    RElem operator-() const;
    RElem operator*(const RElem& o) const;

    // b with a*b = 1, or nullopt when a is not a unit
    std::optional<RElem> try_invert() const;
    // exact division within the ring; nullopt when not divisible
    std::optional<RElem> exact_div(const RElem& den) const;
    RElem pow(long n) const; // negative n requires a unit base

    // the ring endomorphism attached to exponent p: t -> t^p and s -> s^p on
    // Z[t,s]; the identity on the cyclotomic and prime field descriptors
    // (t -> t^p does not descend through Phi_p, and on F_p the p-th power
    // map is the identity)
    RElem fstar(int p) const;

    std::string str() const;

private:
    void check_same(const RElem& o) const;
    Ring ring_;
    Storage v_;
};

} // namespace qdp
