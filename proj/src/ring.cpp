#include "ring.hpp"

#include <sstream>

namespace qdp {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long mod_norm(long long v, long p) {
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<long>(r);
}

// reduce an integer polynomial modulo a monic integer polynomial; the
// quotient stays integral because the divisor is monic
ZPoly z_reduce(ZPoly a, const ZPoly& m) {
    int dm = m.degree();
    while (a.degree() >= dm) {
        Int lead = a.leading();
        int shift = a.degree() - dm;
        a = a - m.shifted(shift) * lead;
    }
    return a;
}

QPoly q_reduce(const QPoly& a, const QPoly& m) { return a.divmod(m).rem; }

long fp_inverse(long a, long p) {
    long t0 = 0, t1 = 1, r0 = p, r1 = a;
    while (r1 != 0) {
        long q = r0 / r1;
        long tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
    }
    if (r0 != 1) fail(ErrorKind::internal, "element has no inverse mod p");
    return mod_norm(t0, p);
}

} // namespace

BiZ::BiZ(ZPoly p) {
    if (!p.is_zero()) sc.push_back(std::move(p));
}

ZPoly BiZ::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(sc.size())) return ZPoly();
    return sc[static_cast<size_t>(i)];
}

void BiZ::normalize() {
    while (!sc.empty() && sc.back().is_zero()) sc.pop_back();
}

BiZ BiZ::operator+(const BiZ& o) const {
    BiZ r;
    size_t n = std::max(sc.size(), o.sc.size());
    r.sc.resize(n);
    for (size_t i = 0; i < n; ++i) r.sc[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    r.normalize();
    return r;
}

BiZ BiZ::operator-(const BiZ& o) const { return *this + (-o); }

BiZ BiZ::operator-() const {
    BiZ r = *this;
    for (auto& c : r.sc) c = -c;
    return r;
}

BiZ BiZ::operator*(const BiZ& o) const {
    if (is_zero() || o.is_zero()) return BiZ();
    BiZ r;
    r.sc.resize(sc.size() + o.sc.size() - 1);
    for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < o.sc.size(); ++j)
            r.sc[i + j] = r.sc[i + j] + sc[i] * o.sc[j];
    r.normalize();
    return r;
}

BiZ BiZ::substitute_powers(int k) const {
    BiZ r;
    if (is_zero()) return r;
    r.sc.resize((sc.size() - 1) * static_cast<size_t>(k) + 1);
    for (size_t i = 0; i < sc.size(); ++i)
        r.sc[i * static_cast<size_t>(k)] = sc[i].substitute_power(k);
    r.normalize();
    return r;
}

std::string BiZ::str() const {
    if (is_zero()) return "0";
    if (s_degree() <= 0) return sc[0].str("t");
    std::ostringstream out;
    bool first = true;
    for (int j = s_degree(); j >= 0; --j) {
        const ZPoly& c = coeff(j);
        if (c.is_zero()) continue;
        std::string piece;
        if (j == 0) {
            piece = c.str("t");
        } else {
            std::string sp = j > 1 ? "s^" + std::to_string(j) : "s";
            if (c == ZPoly(1)) piece = sp;
            else if (c == ZPoly(-1)) piece = "-" + sp;
            else piece = "(" + c.str("t") + ")*" + sp;
        }
        if (!first) {
            if (!piece.empty() && piece[0] == '-') {
                out << " - ";
                piece.erase(0, 1);
            } else {
                out << " + ";
            }
        }
        first = false;
        out << piece;
    }
    return out.str();
}

Ring Ring::generic_zt(bool with_s) {
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::GenericZt;
    impl->with_s = with_s;
    return Ring(std::move(impl));
}

Ring Ring::cyclotomic_field(int p) {
    if (p < 2) fail(ErrorKind::usage, "CycF requires p >= 2");
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::CyclotomicField;
    impl->p = p;
    impl->phi = cyclotomic(p);
    impl->phi_q = QPoly::from_z(impl->phi);
    return Ring(std::move(impl));
}

Ring Ring::cyclotomic_ring(int p) {
    if (!is_prime(p)) fail(ErrorKind::usage, "CycR requires a prime p");
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::CyclotomicRing;
    impl->p = p;
    impl->phi = cyclotomic(p);
    impl->phi_q = QPoly::from_z(impl->phi);
    return Ring(std::move(impl));
}

Ring Ring::prime_field(int p) {
    if (!is_prime(p)) fail(ErrorKind::usage, "Fp requires a prime p");
    auto impl = std::make_shared<Impl>();
    impl->kind = RingKind::PrimeField;
    impl->p = p;
    return Ring(std::move(impl));
}

Ring Ring::parse(const std::string& descriptor) {
    if (descriptor == "Zt") return generic_zt(false);
    if (descriptor == "Zts") return generic_zt(true);
    auto colon = descriptor.find(':');
    if (colon != std::string::npos) {
        std::string head = descriptor.substr(0, colon);
        std::string tail = descriptor.substr(colon + 1);
        int p = 0;
        try {
            size_t used = 0;
            p = std::stoi(tail, &used);
            if (used != tail.size()) p = 0;
        } catch (const std::exception&) {
            p = 0;
        }
        if (p > 0) {
            if (head == "CycF") return cyclotomic_field(p);
            if (head == "CycR") return cyclotomic_ring(p);
            if (head == "Fp") return prime_field(p);
        }
    }
    fail(ErrorKind::usage, "unknown ring descriptor: " + descriptor);
}

std::string Ring::descriptor() const {
    switch (impl_->kind) {
    case RingKind::GenericZt: return impl_->with_s ? "Zts" : "Zt";
    case RingKind::CyclotomicField: return "CycF:" + std::to_string(impl_->p);
    case RingKind::CyclotomicRing: return "CycR:" + std::to_string(impl_->p);
    case RingKind::PrimeField: return "Fp:" + std::to_string(impl_->p);
    }
    fail(ErrorKind::internal, "bad ring kind");
}

int Ring::declared_qchar() const {
    return impl_->kind == RingKind::GenericZt ? 0 : impl_->p;
}

bool Ring::q_divisible() const {
    return impl_->kind == RingKind::CyclotomicField || impl_->kind == RingKind::PrimeField;
}

bool Ring::q_flat() const {
    return impl_->kind == RingKind::GenericZt || impl_->kind == RingKind::CyclotomicRing;
}

bool Ring::is_field() const {
    return impl_->kind == RingKind::CyclotomicField || impl_->kind == RingKind::PrimeField;
}

bool Ring::operator==(const Ring& o) const {
    return impl_->kind == o.impl_->kind && impl_->p == o.impl_->p &&
           impl_->with_s == o.impl_->with_s;
}

RElem Ring::zero() const { return from_long(0); }
RElem Ring::one() const { return from_long(1); }

RElem Ring::from_int(const Int& n) const {
    switch (impl_->kind) {
    case RingKind::GenericZt: return RElem(*this, BiZ(ZPoly(n)));
    case RingKind::CyclotomicField: return RElem(*this, QPoly(Rat(n)));
    case RingKind::CyclotomicRing: return RElem(*this, ZPoly(n));
    case RingKind::PrimeField: {
        Int r = n % impl_->p;
        if (r < 0) r += impl_->p;
        return RElem(*this, static_cast<long>(r));
    }
    }
    fail(ErrorKind::internal, "bad ring kind");
}

RElem Ring::from_long(long n) const { return from_int(Int(n)); }

RElem Ring::q() const { return specialize(ZPoly::t(1)); }

RElem Ring::s_gen() const {
    if (impl_->kind != RingKind::GenericZt || !impl_->with_s)
        fail(ErrorKind::precondition, "s generator only exists in Zts");
    BiZ b;
    b.sc.resize(2);
    b.sc[1] = ZPoly(1);
    return RElem(*this, std::move(b));
}

RElem Ring::specialize(const ZPoly& f) const {
    switch (impl_->kind) {
    case RingKind::GenericZt: return RElem(*this, BiZ(f));
    case RingKind::CyclotomicField:
        return RElem(*this, q_reduce(QPoly::from_z(f), impl_->phi_q));
    case RingKind::CyclotomicRing: return RElem(*this, z_reduce(f, impl_->phi));
    case RingKind::PrimeField: {
        Int r = f.eval_one() % impl_->p;
        if (r < 0) r += impl_->p;
        return RElem(*this, static_cast<long>(r));
    }
    }
    fail(ErrorKind::internal, "bad ring kind");
}

void RElem::check_same(const RElem& o) const {
    if (ring_ != o.ring_)
        fail(ErrorKind::precondition, "mixed-ring arithmetic: " + ring_.descriptor() +
                                          " vs " + o.ring_.descriptor());
}

bool RElem::is_zero() const {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, long>) return v == 0;
            else return v.is_zero();
        },
        v_);
}

bool RElem::is_one() const { return *this == ring_.one(); }

bool RElem::operator==(const RElem& o) const {
    check_same(o);
    return v_ == o.v_;
}

RElem RElem::operator+(const RElem& o) const {
    check_same(o);
    switch (ring_.kind()) {
    case RingKind::GenericZt:
        return RElem(ring_, std::get<BiZ>(v_) + std::get<BiZ>(o.v_));
    case RingKind::CyclotomicField:
        return RElem(ring_, std::get<QPoly>(v_) + std::get<QPoly>(o.v_));
    case RingKind::CyclotomicRing:
        return RElem(ring_, std::get<ZPoly>(v_) + std::get<ZPoly>(o.v_));
    case RingKind::PrimeField:
        return RElem(ring_, mod_norm(std::get<long>(v_) + std::get<long>(o.v_), ring_.p()));
    }
    fail(ErrorKind::internal, "bad ring kind");
}

RElem RElem::operator-(const RElem& o) const { return *this + (-o); }

RElem RElem::operator-() const {
    switch (ring_.kind()) {
    case RingKind::GenericZt: return RElem(ring_, -std::get<BiZ>(v_));
    case RingKind::CyclotomicField: return RElem(ring_, -std::get<QPoly>(v_));
    case RingKind::CyclotomicRing: return RElem(ring_, -std::get<ZPoly>(v_));
    case RingKind::PrimeField:
        return RElem(ring_, mod_norm(-std::get<long>(v_), ring_.p()));
    }
    fail(ErrorKind::internal, "bad ring kind");
}

RElem RElem::operator*(const RElem& o) const {
    check_same(o);
    switch (ring_.kind()) {
    case RingKind::GenericZt:
        return RElem(ring_, std::get<BiZ>(v_) * std::get<BiZ>(o.v_));
    case RingKind::CyclotomicField:
        return RElem(ring_, q_reduce(std::get<QPoly>(v_) * std::get<QPoly>(o.v_),
                                     ring_.modulus_q()));
    case RingKind::CyclotomicRing:
        return RElem(ring_, z_reduce(std::get<ZPoly>(v_) * std::get<ZPoly>(o.v_),
                                     ring_.modulus()));
    case RingKind::PrimeField: {
        long long prod = static_cast<long long>(std::get<long>(v_)) * std::get<long>(o.v_);
        return RElem(ring_, mod_norm(prod, ring_.p()));
    }
    }
    fail(ErrorKind::internal, "bad ring kind");
}

std::optional<RElem> RElem::try_invert() const {
    if (is_zero()) return std::nullopt;
    switch (ring_.kind()) {
    case RingKind::GenericZt: {
        const BiZ& b = std::get<BiZ>(v_);
        if (b.s_degree() == 0 && b.sc[0].degree() == 0) {
            Int c = b.sc[0].coeff(0);
            if (c == 1 || c == -1) return RElem(ring_, BiZ(ZPoly(c)));
        }
        return std::nullopt;
    }
    case RingKind::CyclotomicField: {
        auto g = xgcd(std::get<QPoly>(v_), ring_.modulus_q());
        if (g.g.degree() != 0) return std::nullopt; // non-trivial common factor
        // g.s * a + g.t * Phi = 1, so g.s is the inverse mod Phi
        return RElem(ring_, q_reduce(g.s, ring_.modulus_q()));
    }
    case RingKind::CyclotomicRing: {
        auto g = xgcd(QPoly::from_z(std::get<ZPoly>(v_)), ring_.modulus_q());
        if (g.g.degree() != 0) return std::nullopt;
        auto z = q_reduce(g.s, ring_.modulus_q()).to_z();
        if (!z) return std::nullopt; // inverse exists in the field but not here
        return RElem(ring_, *z);
    }
    case RingKind::PrimeField:
        return RElem(ring_, fp_inverse(std::get<long>(v_), ring_.p()));
    }
    fail(ErrorKind::internal, "bad ring kind");
}

std::optional<RElem> RElem::exact_div(const RElem& den) const {
    check_same(den);
    if (den.is_zero()) fail(ErrorKind::precondition, "exact division by zero");
    if (is_zero()) return ring_.zero();
    switch (ring_.kind()) {
    case RingKind::GenericZt: {
        BiZ num = std::get<BiZ>(v_);
        const BiZ& d = std::get<BiZ>(den.v_);
        // divide as polynomials in s with exact Z[t] coefficient division
        BiZ quo;
        quo.sc.resize(num.sc.size());
        while (!num.is_zero()) {
            int sh = num.s_degree() - d.s_degree();
            if (sh < 0) return std::nullopt;
            auto c = exact_divide(num.sc.back(), d.sc.back());
            if (!c) return std::nullopt;
            BiZ term;
            term.sc.assign(static_cast<size_t>(sh) + 1, ZPoly());
            term.sc[static_cast<size_t>(sh)] = *c;
            quo.sc[static_cast<size_t>(sh)] = *c;
            num = num - term * d;
        }
        quo.normalize();
        return RElem(ring_, std::move(quo));
    }
    case RingKind::CyclotomicField: {
        auto inv = den.try_invert();
        if (!inv) return std::nullopt;
        return *this * *inv;
    }
    case RingKind::CyclotomicRing: {
        auto g = xgcd(QPoly::from_z(std::get<ZPoly>(den.v_)), ring_.modulus_q());
        if (g.g.degree() != 0) return std::nullopt;
        auto prod = QPoly::from_z(std::get<ZPoly>(v_)) * q_reduce(g.s, ring_.modulus_q());
        auto z = q_reduce(prod, ring_.modulus_q()).to_z();
        if (!z) return std::nullopt;
        return RElem(ring_, *z);
    }
    case RingKind::PrimeField: {
        auto inv = den.try_invert();
        if (!inv) return std::nullopt;
        return *this * *inv;
    }
    }
    fail(ErrorKind::internal, "bad ring kind");
}

RElem RElem::pow(long n) const {
    if (n < 0) {
        auto inv = try_invert();
        if (!inv)
            fail(ErrorKind::precondition,
                 "negative power of a non-unit: " + str() + " in " + ring_.descriptor());
        return inv->pow(-n);
    }
    RElem acc = ring_.one();
    RElem base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

RElem RElem::fstar(int p) const {
    if (p < 1) fail(ErrorKind::precondition, "endomorphism exponent must be positive");
    switch (ring_.kind()) {
    case RingKind::GenericZt:
        return RElem(ring_, std::get<BiZ>(v_).substitute_powers(p));
    case RingKind::CyclotomicField:
    case RingKind::CyclotomicRing:
    case RingKind::PrimeField:
        return *this;
    }
    fail(ErrorKind::internal, "bad ring kind");
}

std::string RElem::str() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, BiZ>) return v.str();
            else return v.str("t");
        },
        v_);
}

} // namespace qdp
