#include "divpow.hpp"

#include "linalg.hpp"

#include <mutex>
#include <sstream>

namespace qdp {

namespace {

void acc_add(std::map<long, AElem>& m, long k, const AElem& z) {
    if (z.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, z);
        return;
    }
    AElem s = it->second + z;
    if (s.is_zero()) m.erase(it);
    else it->second = std::move(s);
}

} // namespace

struct DPRing::Impl {
    Algebra alg;
    TwistParams par;
    long step;
    mutable std::mutex mu;
    mutable QBinomCache cache;
    mutable std::vector<AElem> shift_pows;

    Impl(Algebra a, TwistParams p, long st)
        : alg(std::move(a)), par(std::move(p)), step(st), cache(par.Q) {}
};

DPRing::DPRing(Algebra alg, TwistParams par, long taylor_step) {
    if (par.Y.algebra() != alg)
        fail(ErrorKind::precondition, "shift element must live in the given algebra");
    if (taylor_step < 1)
        fail(ErrorKind::precondition, "Taylor step must be positive");
    impl_ = std::make_shared<Impl>(std::move(alg), std::move(par), taylor_step);
}

DPRing DPRing::canonical(const Algebra& alg) {
    return DPRing(alg, TwistParams(alg.q(), alg.y()));
}

const Algebra& DPRing::algebra() const { return impl_->alg; }
const TwistParams& DPRing::params() const { return impl_->par; }
const RElem& DPRing::twist_base() const { return impl_->par.Q; }
const AElem& DPRing::shift() const { return impl_->par.Y; }
long DPRing::sigma_power() const { return impl_->par.sigma_power; }
long DPRing::taylor_step() const { return impl_->step; }

RElem DPRing::qint(long m) const {
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->cache.qint(m);
}

RElem DPRing::qfact(long m) const {
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->cache.qfact(m);
}

RElem DPRing::qbinom(long n, long k) const {
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->cache.binom(n, k);
}

AElem DPRing::shift_pow(long i) const {
    if (i < 0) fail(ErrorKind::precondition, "shift power needs i >= 0");
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto& pows = impl_->shift_pows;
    if (pows.empty()) pows.push_back(impl_->alg.one_elem());
    while (static_cast<long>(pows.size()) <= i) pows.push_back(pows.back() * impl_->par.Y);
    return pows[static_cast<size_t>(i)];
}

bool DPRing::operator==(const DPRing& o) const {
    if (impl_ == o.impl_) return true;
    return impl_->alg == o.impl_->alg && impl_->par.Q == o.impl_->par.Q &&
           impl_->par.Y == o.impl_->par.Y &&
           impl_->par.sigma_power == o.impl_->par.sigma_power && impl_->step == o.impl_->step;
}

DPElem::DPElem(DPRing ring, long trunc) : ring_(std::move(ring)), trunc_(trunc) {
    if (trunc < 0) fail(ErrorKind::precondition, "working precision must be nonnegative");
}

void DPElem::insert(long k, AElem z) {
    if (k < 0) fail(ErrorKind::internal, "negative divided power index");
    if (k > trunc_ || z.is_zero()) return;
    c_.emplace(k, std::move(z));
}

AElem DPElem::coeff(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? ring_.algebra().zero_elem() : it->second;
}

long DPElem::top_index() const { return c_.empty() ? -1 : c_.rbegin()->first; }

namespace {

void require_same_context(const DPElem& a, const DPElem& b) {
    if (a.ring() != b.ring())
        fail(ErrorKind::mismatch, "operands belong to different divided power contexts");
    if (a.trunc() != b.trunc())
        fail(ErrorKind::mismatch, "operands have different working precisions");
}

} // namespace

bool DPElem::operator==(const DPElem& o) const {
    require_same_context(*this, o);
    return c_ == o.c_;
}

DPElem DPElem::operator+(const DPElem& o) const {
    require_same_context(*this, o);
    std::map<long, AElem> out = c_;
    for (const auto& [k, z] : o.c_) acc_add(out, k, z);
    return dp_from_coeffs(ring_, trunc_, std::move(out));
}

DPElem DPElem::operator-(const DPElem& o) const { return *this + (-o); }

DPElem DPElem::operator-() const {
    DPElem r(ring_, trunc_);
    for (const auto& [k, z] : c_) r.c_.emplace(k, -z);
    return r;
}

DPElem DPElem::scaled(const RElem& c) const {
    DPElem r(ring_, trunc_);
    for (const auto& [k, z] : c_) r.insert(k, z.scaled(c));
    return r;
}

DPElem DPElem::scaled_a(const AElem& z) const {
    DPElem r(ring_, trunc_);
    for (const auto& [k, w] : c_) r.insert(k, w * z);
    return r;
}

DPElem DPElem::with_trunc(long n) const {
    if (n < 0) fail(ErrorKind::precondition, "working precision must be nonnegative");
    if (n > trunc_)
        fail(ErrorKind::precondition, "cannot raise the working precision of a truncated element");
    DPElem r(ring_, n);
    for (const auto& [k, z] : c_) r.insert(k, z);
    return r;
}

std::string DPElem::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, z] : c_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << z.str() << ")";
        if (k > 0) out << "*xi^[" << k << "]";
    }
    return out.str();
}

DPElem dp_zero(const DPRing& ring, long trunc) { return DPElem(ring, trunc); }

DPElem dp_one(const DPRing& ring, long trunc) { return dp_basis(ring, 0, trunc); }

DPElem dp_basis(const DPRing& ring, long k, long trunc) {
    if (k < 0) fail(ErrorKind::precondition, "divided power index must be nonnegative");
    DPElem r(ring, trunc);
    return r + dp_from_coeffs(ring, trunc, {{k, ring.algebra().one_elem()}});
}

DPElem dp_from_coeffs(const DPRing& ring, long trunc, std::map<long, AElem> coeffs) {
    DPElem r(ring, trunc);
    for (auto& [k, z] : coeffs) {
        if (z.algebra() != ring.algebra())
            fail(ErrorKind::precondition, "coefficient from a different algebra");
        r.insert(k, std::move(z));
    }
    return r;
}

std::map<long, AElem> dp_basis_product(const DPRing& ring, long m, long n) {
    if (m < 0 || n < 0) fail(ErrorKind::precondition, "divided power indices must be nonnegative");
    std::map<long, AElem> out;
    for (long i = 0; i <= std::min(m, n); ++i) {
        RElem c = ring.qbinom(m + n - i, m) * ring.qbinom(m, i) *
                  ring.twist_base().pow(i * (i - 1) / 2);
        if (i % 2 == 1) c = -c;
        AElem term = ring.shift_pow(i).scaled(c);
        if (!term.is_zero()) out.emplace(m + n - i, std::move(term));
    }
    return out;
}

DPElem dp_mul(const DPElem& a, const DPElem& b) {
    require_same_context(a, b);
    const DPRing& ring = a.ring();
    long N = a.trunc();
    std::map<long, AElem> out;
    for (const auto& [m, za] : a.coeffs())
        for (const auto& [n, zb] : b.coeffs()) {
            AElem c = za * zb;
            for (const auto& [idx, w] : dp_basis_product(ring, m, n)) {
                if (idx > N) continue;
                acc_add(out, idx, w * c);
            }
        }
    return dp_from_coeffs(ring, N, std::move(out));
}

DPElem dp_from_poly(const XiPoly& f, const DPRing& ring, long trunc) {
    if (f.algebra() != ring.algebra())
        fail(ErrorKind::precondition, "polynomial from a different algebra");
    std::vector<AElem> tw = to_twisted_basis(f, ring.params());
    std::map<long, AElem> out;
    for (long n = 0; n < static_cast<long>(tw.size()); ++n) {
        if (n > trunc) break;
        acc_add(out, n, tw[static_cast<size_t>(n)].scaled(ring.qfact(n)));
    }
    return dp_from_coeffs(ring, trunc, std::move(out));
}

XiPoly dp_to_poly(const DPElem& a) {
    const DPRing& ring = a.ring();
    const Algebra& alg = ring.algebra();
    long top = a.top_index();
    std::vector<AElem> tw(static_cast<size_t>(top + 1), alg.zero_elem());
    for (const auto& [k, z] : a.coeffs()) {
        auto inv = ring.qfact(k).try_invert();
        if (!inv)
            fail(ErrorKind::precondition,
                 "divided factorial at index " + std::to_string(k) + " is not a unit");
        tw[static_cast<size_t>(k)] = z.scaled(*inv);
    }
    return from_twisted_basis(alg, tw, ring.params());
}

std::map<long, AElem> dp_sigma_terms(const DPRing& ring, long n, long s) {
    if (n < 0 || s < 0)
        fail(ErrorKind::precondition, "sigma terms need nonnegative index and power");
    std::map<long, AElem> out;
    if (s == 0) {
        out.emplace(n, ring.algebra().one_elem());
        return out;
    }
    for (long i = 0; i <= n; ++i) {
        RElem c = ring.qbinom(s + i - 1, i);
        AElem term = ring.shift_pow(i).scaled(c);
        if (!term.is_zero()) out.emplace(n - i, std::move(term));
    }
    return out;
}

namespace {

DPElem dp_sigma_by_terms(const DPElem& a, long s) {
    const DPRing& ring = a.ring();
    long cp = s * ring.sigma_power();
    std::map<long, AElem> out;
    for (const auto& [n, z] : a.coeffs()) {
        AElem zs = sigma_apply(z, cp);
        for (const auto& [idx, w] : dp_sigma_terms(ring, n, s)) acc_add(out, idx, w * zs);
    }
    return dp_from_coeffs(ring, a.trunc(), std::move(out));
}

} // namespace

DPElem dp_sigma(const DPElem& a, long s) {
    if (s < 0) fail(ErrorKind::precondition, "sigma power must be nonnegative");
    if (s == 0) return a;
    DPElem closed = dp_sigma_by_terms(a, s);
    DPElem iter = a;
    for (long i = 0; i < s; ++i) iter = dp_sigma_by_terms(iter, 1);
    if (!(closed == iter))
        fail(ErrorKind::falsified, "closed sigma power disagrees with its iteration");
    return closed;
}

DPElem dp_twisted_mul(const DPRing& ring, long n, long m, long trunc) {
    if (n < 0 || m < 0)
        fail(ErrorKind::precondition, "divided power indices must be nonnegative");
    long N = trunc < 0 ? n + m : trunc;
    return dp_mul(dp_basis(ring, n, N), dp_sigma(dp_basis(ring, m, N), n));
}

DPRing mod_xi_ring(const DPRing& ring) {
    int p = q_char(ring.algebra().ring());
    if (p <= 0)
        fail(ErrorKind::precondition, "quotient context needs positive q-characteristic");
    return DPRing(ring.algebra(),
                  TwistParams(ring.algebra().ring().one(), ring.shift().pow(p)),
                  ring.taylor_step() * p);
}

DPElem divided_p_power(const DPElem& w, const DPRing& target) {
    const Ring& r = target.algebra().ring();
    int p = q_char(r);
    if (p <= 0)
        fail(ErrorKind::precondition, "divided p-power map needs positive q-characteristic");
    const DPRing& src = w.ring();
    if (src.algebra() != target.algebra())
        fail(ErrorKind::mismatch, "source and target live over different algebras");
    if (!(src.twist_base() == r.one()) || src.shift() != target.shift().pow(p))
        fail(ErrorKind::mismatch,
             "source parameters must be the (1, Y^p) reduction of the target");
    std::map<long, AElem> out;
    for (const auto& [k, z] : w.coeffs()) out.emplace(k * p, z);
    return dp_from_coeffs(target, w.trunc() * p, std::move(out));
}

DPElem general_divided_power(const DPRing& target, long k, long p, long trunc) {
    if (k < 0) fail(ErrorKind::precondition, "divided power index must be nonnegative");
    if (p < 1) fail(ErrorKind::precondition, "power exponent must be positive");
    long N = trunc < 0 ? k * p : trunc;
    RElem c = target.algebra().ring().one();
    for (long i = 2; i <= k; ++i) c = c * target.qbinom(i * p - 1, p - 1);
    return dp_basis(target, k * p, N).scaled(c);
}

DPElem mod_xi_reduce(const DPElem& a) {
    const Ring& r = a.ring().algebra().ring();
    if (!r.q_divisible())
        fail(ErrorKind::precondition, "reduction needs a q-divisible coefficient ring");
    int p = q_char(r);
    if (p <= 0) fail(ErrorKind::precondition, "reduction needs positive q-characteristic");
    DPRing src = mod_xi_ring(a.ring());
    std::map<long, AElem> out;
    for (const auto& [k, z] : a.coeffs())
        if (k % p == 0) out.emplace(k / p, z);
    return dp_from_coeffs(src, a.trunc() / p, std::move(out));
}

DPTensor::DPTensor(DPRing ring, long ltrunc, long rtrunc)
    : ring_(std::move(ring)), lt_(ltrunc), rt_(rtrunc) {
    if (ltrunc < 0 || rtrunc < 0)
        fail(ErrorKind::precondition, "working precisions must be nonnegative");
}

AElem DPTensor::coeff(long i, long j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? ring_.algebra().zero_elem() : it->second;
}

void DPTensor::add_term(long i, long j, const AElem& z) {
    if (i < 0 || j < 0) fail(ErrorKind::internal, "negative tensor index");
    if (i > lt_ || j > rt_ || z.is_zero()) return;
    auto it = c_.find({i, j});
    if (it == c_.end()) {
        c_.emplace(std::make_pair(i, j), z);
        return;
    }
    AElem s = it->second + z;
    if (s.is_zero()) c_.erase(it);
    else it->second = std::move(s);
}

namespace {

void require_same_context(const DPTensor& a, const DPTensor& b) {
    if (a.ring() != b.ring())
        fail(ErrorKind::mismatch, "tensors belong to different divided power contexts");
    if (a.ltrunc() != b.ltrunc() || a.rtrunc() != b.rtrunc())
        fail(ErrorKind::mismatch, "tensors have different working precisions");
}

} // namespace

bool DPTensor::operator==(const DPTensor& o) const {
    require_same_context(*this, o);
    return c_ == o.c_;
}

DPTensor DPTensor::operator+(const DPTensor& o) const {
    require_same_context(*this, o);
    DPTensor r = *this;
    for (const auto& [k, z] : o.c_) r.add_term(k.first, k.second, z);
    return r;
}

DPTensor DPTensor::operator-(const DPTensor& o) const {
    require_same_context(*this, o);
    DPTensor r = *this;
    for (const auto& [k, z] : o.c_) r.add_term(k.first, k.second, -z);
    return r;
}

DPTensor DPTensor::scaled_a(const AElem& z) const {
    DPTensor r(ring_, lt_, rt_);
    for (const auto& [k, w] : c_) r.add_term(k.first, k.second, w * z);
    return r;
}

std::string DPTensor::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, z] : c_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << z.str() << ")*xi^[" << k.first << "](x)xi^[" << k.second << "]";
    }
    return out.str();
}

DPTensor dp_comul(const DPElem& a) {
    long N = a.trunc();
    DPTensor t(a.ring(), N, N);
    for (const auto& [n, z] : a.coeffs())
        for (long i = 0; i <= n; ++i) t.add_term(n - i, i, z);
    return t;
}

DPTensor dp_tensor_one(const DPRing& ring, long lt, long rt) {
    DPTensor t(ring, lt, rt);
    t.add_term(0, 0, ring.algebra().one_elem());
    return t;
}

DPTensor dp_tensor_mul(const DPTensor& a, const DPTensor& b) {
    require_same_context(a, b);
    const DPRing& ring = a.ring();
    long lt = a.ltrunc(), rt = a.rtrunc();
    DPTensor out(ring, lt, rt);
    for (const auto& [ka, za] : a.coeffs())
        for (const auto& [kb, zb] : b.coeffs()) {
            DPElem left =
                dp_mul(dp_basis(ring, ka.first, lt), dp_basis(ring, kb.first, lt))
                    .scaled_a(za * zb);
            if (left.is_zero()) continue;
            for (const auto& [ridx, c] : dp_basis_product(ring, ka.second, kb.second)) {
                if (ridx > rt) continue;
                // the right factor's A-coefficient migrates to the left
                // factor through the Taylor expansion
                DPElem pushed = dp_mul(left, taylor0(c, ring, lt));
                for (const auto& [li, z] : pushed.coeffs()) out.add_term(li, ridx, z);
            }
        }
    return out;
}

DPTensor mod_xi_reduce(const DPTensor& a) {
    const Ring& r = a.ring().algebra().ring();
    if (!r.q_divisible())
        fail(ErrorKind::precondition, "reduction needs a q-divisible coefficient ring");
    int p = q_char(r);
    if (p <= 0) fail(ErrorKind::precondition, "reduction needs positive q-characteristic");
    DPTensor out(mod_xi_ring(a.ring()), a.ltrunc() / p, a.rtrunc() / p);
    for (const auto& [k, z] : a.coeffs())
        if (k.first % p == 0 && k.second % p == 0) out.add_term(k.first / p, k.second / p, z);
    return out;
}

ThetaPoly::ThetaPoly(Algebra alg, std::vector<AElem> coeffs)
    : alg_(std::move(alg)), c_(std::move(coeffs)) {
    for (const auto& z : c_)
        if (z.algebra() != alg_)
            fail(ErrorKind::precondition, "coefficient from a different algebra");
    normalize();
}

void ThetaPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AElem ThetaPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return alg_.zero_elem();
    return c_[static_cast<size_t>(k)];
}

bool ThetaPoly::operator==(const ThetaPoly& o) const {
    if (alg_ != o.alg_)
        fail(ErrorKind::precondition, "comparing polynomials over different algebras");
    return c_ == o.c_;
}

ThetaPoly ThetaPoly::operator+(const ThetaPoly& o) const {
    if (alg_ != o.alg_) fail(ErrorKind::precondition, "mixed-algebra arithmetic");
    std::vector<AElem> cs(std::max(c_.size(), o.c_.size()), alg_.zero_elem());
    for (size_t i = 0; i < c_.size(); ++i) cs[i] = cs[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) cs[i] = cs[i] + o.c_[i];
    return ThetaPoly(alg_, std::move(cs));
}

ThetaPoly ThetaPoly::operator-(const ThetaPoly& o) const { return *this + (-o); }

ThetaPoly ThetaPoly::operator-() const {
    std::vector<AElem> cs;
    cs.reserve(c_.size());
    for (const auto& z : c_) cs.push_back(-z);
    return ThetaPoly(alg_, std::move(cs));
}

ThetaPoly ThetaPoly::operator*(const ThetaPoly& o) const {
    if (alg_ != o.alg_) fail(ErrorKind::precondition, "mixed-algebra arithmetic");
    if (c_.empty() || o.c_.empty()) return ThetaPoly(alg_);
    std::vector<AElem> cs(c_.size() + o.c_.size() - 1, alg_.zero_elem());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) cs[i + j] = cs[i + j] + c_[i] * o.c_[j];
    return ThetaPoly(alg_, std::move(cs));
}

ThetaPoly ThetaPoly::scaled(const AElem& a) const {
    std::vector<AElem> cs;
    cs.reserve(c_.size());
    for (const auto& z : c_) cs.push_back(z * a);
    return ThetaPoly(alg_, std::move(cs));
}

ThetaPoly ThetaPoly::theta(const Algebra& alg, int k) {
    if (k < 0) fail(ErrorKind::precondition, "theta power needs k >= 0");
    std::vector<AElem> cs(static_cast<size_t>(k) + 1, alg.zero_elem());
    cs.back() = alg.one_elem();
    return ThetaPoly(alg, std::move(cs));
}

ThetaPoly ThetaPoly::constant(AElem a) {
    Algebra alg = a.algebra();
    return ThetaPoly(alg, {std::move(a)});
}

std::string ThetaPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << c_[k].str() << ")";
        if (k > 0) {
            out << "*theta";
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

AElem pairing(const ThetaPoly& f, const DPElem& g) {
    const Algebra& alg = g.ring().algebra();
    if (f.algebra() != alg)
        fail(ErrorKind::precondition, "pairing needs both sides over one algebra");
    AElem acc = alg.zero_elem();
    for (const auto& [k, z] : g.coeffs()) {
        if (k > f.degree()) break;
        acc = acc + f.coeff(static_cast<int>(k)) * z;
    }
    return acc;
}

namespace {

ThetaTensor tt_mul(const ThetaTensor& a, const ThetaTensor& b) {
    ThetaTensor r;
    for (const auto& [ka, za] : a)
        for (const auto& [kb, zb] : b) {
            std::pair<long, long> key{ka.first + kb.first, ka.second + kb.second};
            AElem v = za * zb;
            auto it = r.find(key);
            if (it == r.end()) {
                if (!v.is_zero()) r.emplace(key, std::move(v));
            } else {
                AElem s = it->second + v;
                if (s.is_zero()) r.erase(it);
                else it->second = std::move(s);
            }
        }
    return r;
}

void tt_add_scaled(ThetaTensor& acc, const ThetaTensor& t, const AElem& c) {
    for (const auto& [k, z] : t) {
        AElem v = z * c;
        if (v.is_zero()) continue;
        auto it = acc.find(k);
        if (it == acc.end()) {
            acc.emplace(k, std::move(v));
        } else {
            AElem s = it->second + v;
            if (s.is_zero()) acc.erase(it);
            else it->second = std::move(s);
        }
    }
}

} // namespace

ThetaTensor theta_comul(const ThetaPoly& f) {
    const Algebra& alg = f.algebra();
    if (!(alg.q() == alg.ring().one()))
        fail(ErrorKind::precondition, "dual comultiplication needs twist parameter q = 1");
    AElem one = alg.one_elem();
    ThetaTensor image;
    image.emplace(std::make_pair(0L, 1L), one);
    image.emplace(std::make_pair(1L, 0L), one);
    AElem my = -alg.y();
    if (!my.is_zero()) image.emplace(std::make_pair(1L, 1L), my);
    ThetaTensor out;
    ThetaTensor pw;
    pw.emplace(std::make_pair(0L, 0L), one);
    for (int k = 0; k <= f.degree(); ++k) {
        if (k > 0) pw = tt_mul(pw, image);
        tt_add_scaled(out, pw, f.coeff(k));
    }
    return out;
}

DPElem taylor0(const AElem& z, const DPRing& ring, long trunc) {
    if (z.algebra() != ring.algebra())
        fail(ErrorKind::precondition, "expanding an element of a different algebra");
    if (trunc < 0) fail(ErrorKind::precondition, "working precision must be nonnegative");
    std::map<long, AElem> out;
    AElem d = z;
    for (long k = 0; k <= trunc; ++k) {
        if (d.is_zero()) break;
        if (k > 0) d = derive_iter(d, ring.taylor_step());
        acc_add(out, k, d);
    }
    return dp_from_coeffs(ring, trunc, std::move(out));
}

std::vector<AElem> horizontal_sections(const Algebra& alg, long deg_bound) {
    if (deg_bound < 0) fail(ErrorKind::precondition, "degree bound must be nonnegative");
    const Ring& ring = alg.ring();
    long lo = alg.laurent() ? -deg_bound : 0;
    std::vector<long> exps;
    for (long e = lo; e <= deg_bound; ++e) exps.push_back(e);
    // images of the monomials, collected row by exponent
    std::map<long, size_t> rows;
    std::vector<AElem> images;
    images.reserve(exps.size());
    for (long e : exps) {
        AElem im = derive(alg.x(e));
        for (const auto& [re, c] : im.terms()) {
            (void)c;
            rows.emplace(re, rows.size());
        }
        images.push_back(std::move(im));
    }
    // rows.size() may have gaps in insertion order; rebuild as sorted indices
    size_t idx = 0;
    for (auto& [re, i] : rows) i = idx++;
    RMatrix m(ring, rows.size(), exps.size());
    for (size_t j = 0; j < exps.size(); ++j)
        for (const auto& [re, c] : images[j].terms()) m.at(rows.at(re), j) = c;
    std::vector<AElem> out;
    for (const auto& v : kernel_basis(m)) {
        std::map<long, RElem> terms;
        for (size_t j = 0; j < exps.size(); ++j)
            if (!v[j].is_zero()) terms.emplace(exps[j], v[j]);
        out.push_back(alg.from_terms(std::move(terms)));
    }
    return out;
}

} // namespace qdp
