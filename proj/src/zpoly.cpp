#include "zpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qdp {

// ---------------------------------------------------------------- ZPoly

ZPoly::ZPoly(Int c) {
    if (c != 0) c_.push_back(std::move(c));
}

ZPoly::ZPoly(long c) : ZPoly(Int(c)) {}

ZPoly::ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

ZPoly ZPoly::t(int exp, Int coeff) {
    if (coeff == 0) return {};
    std::vector<Int> v(exp + 1);
    v[exp] = std::move(coeff);
    return ZPoly(std::move(v));
}

void ZPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int ZPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

Int ZPoly::leading() const { return c_.empty() ? Int(0) : c_.back(); }

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<Int> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return ZPoly(std::move(v));
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
    std::vector<Int> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
    return ZPoly(std::move(v));
}

ZPoly ZPoly::operator-() const {
    std::vector<Int> v(c_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = -c_[i];
    return ZPoly(std::move(v));
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Int> v(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return ZPoly(std::move(v));
}

ZPoly ZPoly::operator*(const Int& k) const {
    if (k == 0) return {};
    std::vector<Int> v(c_);
    for (auto& x : v) x *= k;
    return ZPoly(std::move(v));
}

ZPoly ZPoly::shifted(int k) const {
    if (is_zero()) return {};
    std::vector<Int> v(c_.size() + k);
    for (size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
    return ZPoly(std::move(v));
}

ZPoly ZPoly::substitute_power(int k) const {
    if (is_zero()) return {};
    std::vector<Int> v((c_.size() - 1) * k + 1);
    for (size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return ZPoly(std::move(v));
}

Int ZPoly::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Int ZPoly::eval_one() const {
    Int acc = 0;
    for (const auto& x : c_) acc += x;
    return acc;
}

namespace {
template <typename Coeff>
std::string poly_str(const std::vector<Coeff>& c, const std::string& var) {
    if (c.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        Coeff a = c[i];
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (i == 0 || a != 1) out << a.str();
        if (i > 0) {
            if (a != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}
} // namespace

std::string ZPoly::str(const std::string& var) const { return poly_str(c_, var); }

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(Rat c) {
    if (c != 0) c_.push_back(std::move(c));
}

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }

QPoly QPoly::from_z(const ZPoly& p) {
    std::vector<Rat> v;
    v.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) v.emplace_back(x);
    return QPoly(std::move(v));
}

void QPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat QPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

Rat QPoly::leading() const { return c_.empty() ? Rat(0) : c_.back(); }

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
    std::vector<Rat> v(c_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = -c_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rat> v(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rat& k) const {
    if (k == 0) return {};
    std::vector<Rat> v(c_);
    for (auto& x : v) x *= k;
    return QPoly(std::move(v));
}

QDivMod QPoly::divmod(const QPoly& den) const {
    if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
    std::vector<Rat> rem(c_);
    int dd = den.degree();
    if (degree() < dd) return {QPoly(), *this};
    std::vector<Rat> quot(degree() - dd + 1);
    for (int i = degree(); i >= dd; --i) {
        Rat f = rem[i] / den.leading();
        if (f == 0) continue;
        quot[i - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * den.coeff(j);
    }
    return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

std::optional<ZPoly> QPoly::to_z() const {
    std::vector<Int> v;
    v.reserve(c_.size());
    for (const auto& x : c_) {
        if (denominator(x) != 1) return std::nullopt;
        v.push_back(numerator(x));
    }
    return ZPoly(std::move(v));
}

std::string QPoly::str(const std::string& var) const { return poly_str(c_, var); }

// ------------------------------------------------------------ free funcs

std::optional<ZPoly> exact_divide(const ZPoly& num, const ZPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (num.is_zero()) return ZPoly();
    if (num.degree() < den.degree()) return std::nullopt;
    std::vector<Int> rem(num.coeffs());
    int dd = den.degree();
    std::vector<Int> quot(num.degree() - dd + 1);
    for (int i = num.degree(); i >= dd; --i) {
        if (rem[i] == 0) continue;
        Int f = rem[i] / den.leading();
        if (f * den.leading() != rem[i]) return std::nullopt;
        quot[i - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * den.coeff(j);
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return ZPoly(std::move(quot));
}

namespace {
ZPoly cyclotomic_impl(int p, std::map<int, ZPoly>& cache) {
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    std::vector<Int> pow(p + 1);
    pow[0] = -1;
    pow[p] = 1;
    ZPoly num{std::move(pow)}; // t^p - 1
    for (int d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        auto q = exact_divide(num, cyclotomic_impl(d, cache));
        if (!q) throw std::logic_error("cyclotomic division failed");
        num = *q;
    }
    cache.emplace(p, num);
    return num;
}
} // namespace

ZPoly cyclotomic(int p) {
    if (p < 1) throw std::invalid_argument("cyclotomic index must be positive");
    static std::map<int, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_impl(p, cache);
}

QXgcd xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly s0{Rat(1)}, s1;
    QPoly t0, t1{Rat(1)};
    while (!r1.is_zero()) {
        auto dm = r0.divmod(r1);
        QPoly r2 = dm.rem;
        QPoly s2 = s0 - dm.quo * s1;
        QPoly t2 = t0 - dm.quo * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (!r0.is_zero()) {
        Rat lc = r0.leading();
        Rat inv = Rat(1) / lc;
        r0 = r0 * inv;
        s0 = s0 * inv;
        t0 = t0 * inv;
    }
    return {r0, s0, t0};
}

} // namespace qdp
