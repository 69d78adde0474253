#include "twisted.hpp"

#include <sstream>

namespace qdp {

Algebra::Algebra(Ring ring, RElem h, bool laurent)
    : Algebra(ring, ring.q(), std::move(h), laurent, "x") {}

Algebra::Algebra(Ring ring, RElem qtw, RElem h, bool laurent, std::string var)
    : ring_(std::move(ring)), qtw_(std::move(qtw)), h_(std::move(h)),
      laurent_(laurent), var_(std::move(var)) {
    if (laurent_ && !h_.is_zero())
        fail(ErrorKind::precondition, "Laurent twist requires h = 0");
}

Algebra Algebra::polynomial(const Ring& r) { return Algebra(r, r.zero()); }

Algebra Algebra::laurent_h0(const Ring& r) { return Algebra(r, r.zero(), true); }

Algebra Algebra::with_s(const Ring& r) { return Algebra(r, r.s_gen()); }

Algebra Algebra::prime_twist(const Ring& r, int p) {
    if (p < 1) fail(ErrorKind::precondition, "twist exponent must be positive");
    return Algebra(r, r.q().pow(p), r.zero(), false, "x'");
}

bool Algebra::operator==(const Algebra& o) const {
    return ring_ == o.ring_ && qtw_ == o.qtw_ && h_ == o.h_ && laurent_ == o.laurent_ &&
           var_ == o.var_;
}

AElem Algebra::zero_elem() const { return AElem(*this); }

AElem Algebra::one_elem() const { return scalar(ring_.one()); }

AElem Algebra::scalar(RElem c) const {
    AElem z(*this);
    z.insert(0, std::move(c));
    return z;
}

AElem Algebra::x(long n) const { return x(n, ring_.one()); }

AElem Algebra::x(long n, RElem c) const {
    if (n < 0 && !laurent_)
        fail(ErrorKind::precondition, "negative exponent outside the Laurent algebra");
    AElem z(*this);
    z.insert(n, std::move(c));
    return z;
}

AElem Algebra::from_terms(std::map<long, RElem> terms) const {
    AElem z(*this);
    for (auto& [n, c] : terms) {
        if (n < 0 && !laurent_)
            fail(ErrorKind::precondition, "negative exponent outside the Laurent algebra");
        z.insert(n, c);
    }
    return z;
}

AElem Algebra::y() const {
    AElem z(*this);
    z.insert(1, ring_.one() - qtw_);
    z.insert(0, -h_);
    return z;
}

AElem::AElem(Algebra alg, std::map<long, RElem> terms) : alg_(std::move(alg)) {
    for (auto& [n, c] : terms) insert(n, c);
}

void AElem::insert(long n, RElem c) {
    if (c.is_zero()) return;
    auto it = c_.find(n);
    if (it == c_.end()) {
        c_.emplace(n, std::move(c));
        return;
    }
    RElem s = it->second + c;
    if (s.is_zero()) c_.erase(it);
    else it->second = std::move(s);
}

RElem AElem::coeff(long n) const {
    auto it = c_.find(n);
    return it == c_.end() ? alg_.ring().zero() : it->second;
}

bool AElem::is_scalar() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
}

long AElem::min_exp() const { return c_.empty() ? 0 : c_.begin()->first; }
long AElem::max_exp() const { return c_.empty() ? 0 : c_.rbegin()->first; }

bool AElem::operator==(const AElem& o) const {
    if (alg_ != o.alg_)
        fail(ErrorKind::precondition, "comparing elements of different algebras");
    return c_ == o.c_;
}

AElem AElem::operator+(const AElem& o) const {
    if (alg_ != o.alg_)
        fail(ErrorKind::precondition, "mixed-algebra arithmetic");
    AElem r = *this;
    for (const auto& [n, c] : o.c_) r.insert(n, c);
    return r;
}

AElem AElem::operator-(const AElem& o) const { return *this + (-o); }

AElem AElem::operator-() const {
    AElem r(alg_);
    for (const auto& [n, c] : c_) r.c_.emplace(n, -c);
    return r;
}

AElem AElem::operator*(const AElem& o) const {
    if (alg_ != o.alg_)
        fail(ErrorKind::precondition, "mixed-algebra arithmetic");
    AElem r(alg_);
    for (const auto& [n, c] : c_)
        for (const auto& [m, d] : o.c_) r.insert(n + m, c * d);
    return r;
}

AElem AElem::scaled(const RElem& c) const {
    AElem r(alg_);
    if (c.is_zero()) return r;
    for (const auto& [n, a] : c_) r.insert(n, a * c);
    return r;
}

AElem AElem::pow(long n) const {
    if (n < 0) {
        // only monomials with unit coefficient invert inside A
        if (c_.size() == 1 && alg_.laurent()) {
            auto [e, c] = *c_.begin();
            auto ci = c.try_invert();
            if (ci) return alg_.x(e * n, ci->pow(-n));
        }
        fail(ErrorKind::precondition, "negative power of a non-invertible element");
    }
    AElem acc = alg_.one_elem();
    AElem base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

AElem AElem::coeff_fstar(int p) const {
    AElem r(alg_);
    for (const auto& [n, c] : c_) r.insert(n, c.fstar(p));
    return r;
}

AElem AElem::substitute_power(int p) const {
    if (p < 1) fail(ErrorKind::precondition, "substitution exponent must be positive");
    AElem r(alg_);
    for (const auto& [n, c] : c_) r.insert(n * p, c);
    return r;
}

AElem AElem::transplant(const Algebra& target) const {
    if (target.ring() != alg_.ring())
        fail(ErrorKind::precondition, "transplant requires the same coefficient ring");
    AElem r(target);
    for (const auto& [n, c] : c_) {
        if (n < 0 && !target.laurent())
            fail(ErrorKind::precondition, "negative exponent outside the Laurent algebra");
        r.insert(n, c);
    }
    return r;
}

std::string AElem::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        long n = it->first;
        std::string cs = it->second.str();
        std::string xs;
        if (n != 0) {
            xs = alg_.var();
            if (n != 1) xs += "^" + std::to_string(n);
        }
        std::string body;
        if (n == 0) body = "(" + cs + ")";
        else if (cs == "1") body = xs;
        else if (cs == "-1") body = "-" + xs;
        else body = "(" + cs + ")*" + xs;
        if (!first) out << " + ";
        first = false;
        out << body;
    }
    return out.str();
}

AElem sigma_apply(const AElem& z, long s) {
    const Algebra& alg = z.algebra();
    if (s == 0) return z;
    // sigma^s(x) = q^s x + (s)_q h, valid for negative s when q is a unit
    RElem qs = alg.q().pow(s);
    RElem hs = q_int_at(alg.q(), s) * alg.h();
    AElem img = alg.x(1, qs) + alg.scalar(hs);
    AElem r = alg.zero_elem();
    // incremental nonnegative powers of the image of x
    std::vector<AElem> pows{alg.one_elem()};
    for (const auto& [n, c] : z.terms()) {
        if (n >= 0) {
            while (static_cast<long>(pows.size()) <= n) pows.push_back(pows.back() * img);
            r = r + pows[static_cast<size_t>(n)].scaled(c);
        } else {
            // h = 0 here (Laurent precondition), so sigma^s(x^n) = q^(sn) x^n
            r = r + alg.x(n, c * alg.q().pow(s * n));
        }
    }
    return r;
}

AElem derive(const AElem& z) {
    const Algebra& alg = z.algebra();
    AElem r = alg.zero_elem();
    // derive(x^n) = sum_{i<n} sigma(x)^i x^(n-1-i); reduces to (n)_q x^(n-1)
    // when h = 0, which is also the meaning for negative n
    bool h0 = alg.h().is_zero();
    std::vector<AElem> sig_pows{alg.one_elem()};
    AElem sx = alg.x(1, alg.q()) + alg.scalar(alg.h());
    for (const auto& [n, c] : z.terms()) {
        if (n == 0) continue;
        if (h0) {
            r = r + alg.x(n - 1, c * q_int_at(alg.q(), n));
            continue;
        }
        if (n < 0)
            fail(ErrorKind::precondition, "negative exponents need h = 0");
        while (static_cast<long>(sig_pows.size()) < n) sig_pows.push_back(sig_pows.back() * sx);
        AElem acc = alg.zero_elem();
        for (long i = 0; i < n; ++i)
            acc = acc + sig_pows[static_cast<size_t>(i)] * alg.x(n - 1 - i);
        r = r + acc.scaled(c);
    }
    return r;
}

AElem derive_iter(const AElem& z, long k) {
    if (k < 0) fail(ErrorKind::precondition, "derivation iterate needs k >= 0");
    AElem r = z;
    for (long i = 0; i < k; ++i) r = derive(r);
    return r;
}

AElem sigma_power_product(const AElem& a, long n) {
    if (n < 0) fail(ErrorKind::precondition, "twisted power needs n >= 0");
    AElem r = a.algebra().one_elem();
    AElem cur = a;
    for (long i = 0; i < n; ++i) {
        r = r * cur;
        if (i + 1 < n) cur = sigma_apply(cur);
    }
    return r;
}

XiPoly::XiPoly(Algebra alg, std::vector<AElem> coeffs)
    : alg_(std::move(alg)), c_(std::move(coeffs)) {
    for (const auto& a : c_)
        if (a.algebra() != alg_)
            fail(ErrorKind::precondition, "coefficient from a different algebra");
    normalize();
}

void XiPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AElem XiPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return alg_.zero_elem();
    return c_[static_cast<size_t>(k)];
}

bool XiPoly::operator==(const XiPoly& o) const {
    if (alg_ != o.alg_)
        fail(ErrorKind::precondition, "comparing polynomials over different algebras");
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

XiPoly XiPoly::operator+(const XiPoly& o) const {
    if (alg_ != o.alg_) fail(ErrorKind::precondition, "mixed-algebra arithmetic");
    std::vector<AElem> v;
    size_t n = std::max(c_.size(), o.c_.size());
    v.reserve(n);
    for (size_t i = 0; i < n; ++i)
        v.push_back(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
    return XiPoly(alg_, std::move(v));
}

XiPoly XiPoly::operator-(const XiPoly& o) const { return *this + (-o); }

XiPoly XiPoly::operator-() const {
    std::vector<AElem> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(-a);
    return XiPoly(alg_, std::move(v));
}

XiPoly XiPoly::operator*(const XiPoly& o) const {
    if (alg_ != o.alg_) fail(ErrorKind::precondition, "mixed-algebra arithmetic");
    if (is_zero() || o.is_zero()) return XiPoly(alg_);
    std::vector<AElem> v(c_.size() + o.c_.size() - 1, alg_.zero_elem());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
    return XiPoly(alg_, std::move(v));
}

XiPoly XiPoly::scaled(const AElem& a) const {
    std::vector<AElem> v;
    v.reserve(c_.size());
    for (const auto& ci : c_) v.push_back(ci * a);
    return XiPoly(alg_, std::move(v));
}

XiPoly XiPoly::shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<AElem> v(c_.size() + static_cast<size_t>(k), alg_.zero_elem());
    for (size_t i = 0; i < c_.size(); ++i) v[i + static_cast<size_t>(k)] = c_[i];
    return XiPoly(alg_, std::move(v));
}

XiPoly XiPoly::xi(const Algebra& alg, int k) {
    std::vector<AElem> v(static_cast<size_t>(k) + 1, alg.zero_elem());
    v.back() = alg.one_elem();
    return XiPoly(alg, std::move(v));
}

XiPoly XiPoly::constant(AElem a) {
    Algebra alg = a.algebra();
    return XiPoly(alg, {std::move(a)});
}

std::string XiPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const AElem& a = c_[static_cast<size_t>(k)];
        if (a.is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << a.str() << ")";
        if (k > 0) {
            out << "*xi";
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

TwistParams::TwistParams(RElem q_base, AElem shift, long sp)
    : Q(std::move(q_base)), Y(std::move(shift)), sigma_power(sp) {
    if (sp < 1) fail(ErrorKind::precondition, "sigma power must be positive");
    // the twisted power calculus needs sigma^sp(Y) = Q*Y
    if (!(sigma_apply(Y, sp) == Y.scaled(Q)))
        fail(ErrorKind::precondition,
             "invalid twisted power parameters: sigma^" + std::to_string(sp) +
                 "(Y) != Q*Y for Y = " + Y.str());
}

XiPoly twisted_power(const TwistParams& par, long n) {
    if (n < 0) fail(ErrorKind::precondition, "twisted power needs n >= 0");
    const Algebra& alg = par.Y.algebra();
    XiPoly r = XiPoly::constant(alg.one_elem());
    QBinomCache cache(par.Q);
    for (long i = 0; i < n; ++i) {
        XiPoly factor = XiPoly::xi(alg) + XiPoly::constant(par.Y.scaled(cache.qint(i)));
        r = r * factor;
    }
    return r;
}

std::vector<AElem> to_twisted_basis(const XiPoly& f, const TwistParams& par) {
    const Algebra& alg = f.algebra();
    QBinomCache cache(par.Q);
    std::vector<AElem> out;
    std::vector<AElem> rest = f.coeffs();
    long k = 0;
    while (!rest.empty()) {
        // divide by the monic linear factor (xi + (k)_Q Y); the remainder is
        // the twisted-basis coefficient of xi^(k)
        AElem shift = par.Y.scaled(cache.qint(k));
        std::vector<AElem> quo(rest.size() > 1 ? rest.size() - 1 : 0, alg.zero_elem());
        AElem carry = alg.zero_elem();
        for (size_t i = rest.size(); i-- > 1;) {
            carry = rest[i] + carry;
            quo[i - 1] = carry;
            carry = -(carry * shift);
        }
        AElem rem = rest.empty() ? alg.zero_elem() : rest[0] + carry;
        out.push_back(rem);
        while (!quo.empty() && quo.back().is_zero()) quo.pop_back();
        rest = std::move(quo);
        ++k;
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

XiPoly from_twisted_basis(const Algebra& alg, const std::vector<AElem>& tw,
                          const TwistParams& par) {
    XiPoly r(alg);
    QBinomCache cache(par.Q);
    // Horner form: c_0 + (xi + (0)Y)(c_1 + (xi + (1)Y)(...))
    for (size_t i = tw.size(); i-- > 0;) {
        XiPoly factor = XiPoly::xi(alg) + XiPoly::constant(par.Y.scaled(cache.qint(static_cast<long>(i))));
        r = factor * r + XiPoly::constant(tw[i]);
    }
    return r;
}

std::map<long, AElem> twisted_mul_closed(const TwistParams& par, long m, long n) {
    if (m < 0 || n < 0) fail(ErrorKind::precondition, "twisted powers need m, n >= 0");
    QBinomCache cache(par.Q);
    std::map<long, AElem> out;
    for (long i = 0; i <= std::min(m, n); ++i) {
        RElem c = cache.qfact(i) * par.Q.pow(i * (i - 1) / 2) * cache.binom(m, i) *
                  cache.binom(n, i);
        if (i % 2 == 1) c = -c;
        AElem coeff = par.Y.pow(i).scaled(c);
        if (!coeff.is_zero()) out.emplace(m + n - i, std::move(coeff));
    }
    return out;
}

std::map<long, AElem> twisted_sigma_closed(const TwistParams& par, long n) {
    if (n < 0) fail(ErrorKind::precondition, "twisted powers need n >= 0");
    QBinomCache cache(par.Q);
    std::map<long, AElem> out;
    for (long i = 0; i <= n; ++i) {
        RElem c = cache.qfact(i) * cache.binom(n, i);
        AElem coeff = par.Y.pow(i).scaled(c);
        if (!coeff.is_zero()) out.emplace(n - i, std::move(coeff));
    }
    return out;
}

XiPoly sigma_xi(const XiPoly& f, const AElem& Y, long cp) {
    const Algebra& alg = f.algebra();
    XiPoly shift = XiPoly::xi(alg) + XiPoly::constant(Y);
    XiPoly r(alg);
    XiPoly pw = XiPoly::constant(alg.one_elem());
    for (int k = 0; k <= f.degree(); ++k) {
        if (k > 0) pw = pw * shift;
        r = r + pw.scaled(sigma_apply(f.coeff(k), cp));
    }
    return r;
}

std::vector<AElem> twisted_truncate(std::vector<AElem> tw, long n) {
    if (n < 0) {
        tw.clear();
        return tw;
    }
    if (static_cast<long>(tw.size()) > n + 1)
        tw.erase(tw.begin() + static_cast<long>(n) + 1, tw.end());
    while (!tw.empty() && tw.back().is_zero()) tw.pop_back();
    return tw;
}

PinfQuotient::PinfQuotient(TwistParams par, long n) : par_(std::move(par)), n_(n) {
    if (n < 0) fail(ErrorKind::precondition, "quotient order must be nonnegative");
}

std::vector<AElem> PinfQuotient::reduce(const XiPoly& f) const {
    return twisted_truncate(to_twisted_basis(f, par_), n_);
}

XiPoly PinfQuotient::lift(const std::vector<AElem>& tw) const {
    return from_twisted_basis(algebra(), twisted_truncate(tw, n_), par_);
}

std::vector<AElem> PinfQuotient::mul(const std::vector<AElem>& a,
                                     const std::vector<AElem>& b) const {
    const Algebra& alg = algebra();
    std::vector<AElem> out(static_cast<size_t>(n_) + 1, alg.zero_elem());
    for (size_t m = 0; m < a.size(); ++m) {
        if (a[m].is_zero()) continue;
        for (size_t k = 0; k < b.size(); ++k) {
            if (b[k].is_zero()) continue;
            AElem c = a[m] * b[k];
            for (const auto& [idx, w] :
                 twisted_mul_closed(par_, static_cast<long>(m), static_cast<long>(k))) {
                if (idx > n_) continue;
                out[static_cast<size_t>(idx)] = out[static_cast<size_t>(idx)] + w * c;
            }
        }
    }
    return twisted_truncate(std::move(out), n_);
}

std::vector<AElem> PinfQuotient::taylor_inf(const AElem& z) const {
    const Algebra& alg = algebra();
    if (z.min_exp() < 0)
        fail(ErrorKind::precondition, "substitution x -> x + xi needs polynomial input");
    XiPoly xpx = XiPoly::xi(alg) + XiPoly::constant(alg.x());
    XiPoly acc(alg);
    XiPoly pw = XiPoly::constant(alg.one_elem());
    long at = 0;
    for (const auto& [e, c] : z.terms()) {
        for (; at < e; ++at) pw = pw * xpx;
        acc = acc + pw.scaled(alg.scalar(c));
    }
    return reduce(acc);
}

namespace {

// two-variable polynomials over A for the classical comultiplication check
using BiVar = std::map<std::pair<long, long>, AElem>;

void bv_add(BiVar& a, std::pair<long, long> key, const AElem& c) {
    auto it = a.find(key);
    if (it == a.end()) {
        if (!c.is_zero()) a.emplace(key, c);
        return;
    }
    AElem s = it->second + c;
    if (s.is_zero()) a.erase(it);
    else it->second = std::move(s);
}

BiVar bv_mul(const BiVar& a, const BiVar& b) {
    BiVar r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            bv_add(r, {ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

} // namespace

bool q1_comul_check(const AElem& y, long n) {
    if (n < 0) fail(ErrorKind::precondition, "expansion check needs n >= 0");
    const Algebra& alg = y.algebra();
    const Ring& ring = alg.ring();
    AElem one = alg.one_elem();
    // shifted powers with base 1: w^(k) = prod_{j<k}(w + j*y) for w = u, v
    auto shifted = [&](long k, bool left) {
        BiVar w{{{0, 0}, one}};
        for (long j = 0; j < k; ++j) {
            BiVar factor;
            bv_add(factor, left ? std::pair<long, long>{1, 0} : std::pair<long, long>{0, 1},
                   one);
            bv_add(factor, {0, 0}, y.scaled(ring.from_long(j)));
            w = bv_mul(w, factor);
        }
        return w;
    };
    BiVar lhs{{{0, 0}, one}};
    for (long i = 0; i < n; ++i) {
        BiVar factor;
        bv_add(factor, {1, 0}, one);
        bv_add(factor, {0, 1}, one);
        bv_add(factor, {0, 0}, y.scaled(ring.from_long(i)));
        lhs = bv_mul(lhs, factor);
    }
    BiVar rhs;
    for (long i = 0; i <= n; ++i) {
        BiVar term = bv_mul(shifted(n - i, true), shifted(i, false));
        RElem bc = ring.from_int(binom_int(n, i));
        for (const auto& [k, cc] : term) bv_add(rhs, k, cc.scaled(bc));
    }
    return lhs == rhs;
}

} // namespace qdp
