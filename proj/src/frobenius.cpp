#include "frobenius.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace qdp {

namespace {

void check_table_args(long n, long i, int p) {
    if (n < 0 || i < 0) fail(ErrorKind::precondition, "coefficient indices must be nonnegative");
    if (p < 1) fail(ErrorKind::precondition, "the Frobenius exponent must be positive");
}

using TableKey = std::tuple<long, long, int>;

std::mutex table_mutex;
std::map<TableKey, ZPoly>& a_table() {
    static std::map<TableKey, ZPoly> t;
    return t;
}
std::map<TableKey, ZPoly>& b_table() {
    static std::map<TableKey, ZPoly> t;
    return t;
}

} // namespace

ZPoly frob_coeff_a(long n, long i, int p) {
    check_table_args(n, i, p);
    {
        std::lock_guard<std::mutex> lock(table_mutex);
        auto it = a_table().find({n, i, p});
        if (it != a_table().end()) return it->second;
    }
    ZPoly acc;
    for (long j = 0; j <= n; ++j) {
        ZPoly term = zq_binomial(n, j).substitute_power(p) * zq_binomial(p * j, i);
        if (term.is_zero()) continue;
        term = term.shifted(static_cast<int>(p * (n - j) * (n - j - 1) / 2));
        acc = ((n - j) % 2 != 0) ? acc - term : acc + term;
    }
    std::lock_guard<std::mutex> lock(table_mutex);
    a_table().emplace(TableKey{n, i, p}, acc);
    return acc;
}

ZPoly divided_coeff_from(const ZPoly& num, long n, int p) {
    check_table_args(n, 0, p);
    if (num.is_zero()) return ZPoly();
    ZPoly den = zq_factorial(n).substitute_power(p);
    ZPoly pint = zq_int(p);
    for (long k = 0; k < n; ++k) den = den * pint;
    auto quot = exact_divide(num, den);
    if (!quot) {
        std::ostringstream msg;
        msg << "the scaled coefficient is not divisible by the factorial-power"
            << " denominator (n=" << n << ", p=" << p << ")";
        fail(ErrorKind::falsified, msg.str());
    }
    return *quot;
}

ZPoly frob_coeff_b(long n, long i, int p) {
    check_table_args(n, i, p);
    {
        std::lock_guard<std::mutex> lock(table_mutex);
        auto it = b_table().find({n, i, p});
        if (it != b_table().end()) return it->second;
    }
    ZPoly b = divided_coeff_from(zq_factorial(i) * frob_coeff_a(n, i, p), n, p);
    std::lock_guard<std::mutex> lock(table_mutex);
    b_table().emplace(TableKey{n, i, p}, b);
    return b;
}

QPoly frob_coeff_c(long n, long i, int p) {
    check_table_args(n, i, p);
    QPoly bni = QPoly::from_z(frob_coeff_b(n, i, p));
    if (bni.is_zero()) return QPoly();
    QPoly bpn = QPoly::from_z(frob_coeff_b(n, p * n, p));
    auto dm = bni.divmod(bpn);
    if (!dm.rem.is_zero()) {
        std::ostringstream msg;
        msg << "the normalized coefficient is not polynomial (n=" << n << ", i=" << i
            << ", p=" << p << ")";
        fail(ErrorKind::falsified, msg.str());
    }
    QPoly lhs = QPoly::from_z(zq_factorial(i) * frob_coeff_a(n, i, p));
    QPoly rhs = QPoly::from_z(zq_factorial(p * n)) * dm.quo;
    if (lhs != rhs) {
        std::ostringstream msg;
        msg << "the normalized coefficient fails its defining identity (n=" << n
            << ", i=" << i << ", p=" << p << ")";
        fail(ErrorKind::falsified, msg.str());
    }
    return dm.quo;
}

namespace {

int checked_exponent(int p) {
    if (p < 1) fail(ErrorKind::precondition, "the Frobenius exponent must be positive");
    return p;
}

Algebra make_target(const Ring& r, bool laurent) {
    return laurent ? Algebra::laurent_h0(r) : Algebra::polynomial(r);
}

Algebra make_source(const Ring& r, int p, bool laurent) {
    return Algebra(r, r.q().pow(p), r.zero(), laurent, "x'");
}

TwistParams make_source_params(const Ring& r, const Algebra& source, int p) {
    return TwistParams(r.q().pow(p), source.x(1, r.one() - r.q()), 1);
}

TwistParams make_primed_params(const Ring& r, const Algebra& target, int p) {
    return TwistParams(r.q().pow(p), target.y().scaled(q_int_at(r.q(), p)), p);
}

} // namespace

FrobeniusContext::FrobeniusContext(Ring ring, int p, bool laurent)
    : ring_(std::move(ring)),
      p_(checked_exponent(p)),
      target_(make_target(ring_, laurent)),
      source_(make_source(ring_, p_, laurent)),
      tdp_(DPRing::canonical(target_)),
      sdp_(source_, make_source_params(ring_, source_, p_)),
      primed_(make_primed_params(ring_, target_, p_)),
      qchar_(q_char(ring_)) {}

AElem FrobeniusContext::on_A(const AElem& z) const {
    if (z.algebra() != source_)
        fail(ErrorKind::mismatch, "expected an element of the primed source algebra");
    return z.coeff_fstar(p_).transplant(target_).substitute_power(p_);
}

XiPoly FrobeniusContext::on_xi(const XiPoly& f) const {
    if (f.algebra() != source_)
        fail(ErrorKind::mismatch, "expected a polynomial over the primed source algebra");
    XiPoly shifted = XiPoly::constant(target_.x()) + XiPoly::xi(target_);
    XiPoly ximg = XiPoly::constant(target_.one_elem());
    for (int k = 0; k < p_; ++k) ximg = ximg * shifted;
    ximg = ximg - XiPoly::constant(target_.x(p_));
    XiPoly res(target_);
    for (int k = f.degree(); k >= 0; --k)
        res = res * ximg + XiPoly::constant(on_A(f.coeff(k)));
    return res;
}

AElem FrobeniusContext::transport(const AElem& z) const {
    if (z.algebra() != source_)
        fail(ErrorKind::mismatch, "expected an element of the primed source algebra");
    return z.transplant(target_).substitute_power(p_);
}

AElem frobenius_on_A(const FrobeniusContext& ctx, const AElem& z) { return ctx.on_A(z); }
XiPoly frobenius_on_xi(const FrobeniusContext& ctx, const XiPoly& f) { return ctx.on_xi(f); }

TwistedPowerImage frobenius_twisted_power(const FrobeniusContext& ctx, long n, long trunc) {
    if (n < 0) fail(ErrorKind::precondition, "the twisted power index must be nonnegative");
    XiPoly poly(ctx.target());
    for (long i = 0; i <= ctx.p() * n; ++i) {
        RElem c = ctx.ring().specialize(frob_coeff_a(n, i, ctx.p()));
        if (c.is_zero()) continue;
        XiPoly tp = twisted_power(ctx.target_ring().params(), i);
        poly = poly + tp.scaled(ctx.target().x(ctx.p() * n - i, c));
    }
    DPElem divided = dp_from_poly(poly, ctx.target_ring(), trunc);
    return {std::move(poly), std::move(divided)};
}

namespace {

// sum_{i=n}^{pn} B_{n,i}(q) x^{pn-i} xi^[i]
DPElem divided_basis_image(const FrobeniusContext& ctx, long n, long trunc) {
    std::map<long, AElem> cs;
    for (long i = n; i <= ctx.p() * n; ++i) {
        RElem c = ctx.ring().specialize(frob_coeff_b(n, i, ctx.p()));
        if (c.is_zero()) continue;
        cs.emplace(i, ctx.target().x(ctx.p() * n - i, c));
    }
    return dp_from_coeffs(ctx.target_ring(), trunc, std::move(cs));
}

} // namespace

DPElem divided_frobenius(const FrobeniusContext& ctx, const DPElem& w, long trunc) {
    if (w.ring() != ctx.source_ring())
        fail(ErrorKind::mismatch, "expected an element of the omega source ring");
    if (trunc < ctx.p() * w.trunc())
        fail(ErrorKind::precondition,
             "target truncation too small for the divided Frobenius image");
    DPElem res = dp_zero(ctx.target_ring(), trunc);
    for (const auto& [n, z] : w.coeffs())
        res = res + divided_basis_image(ctx, n, trunc).scaled_a(ctx.transport(z));
    return res;
}

MixedElem::MixedElem(Algebra alg, int p) : alg_(std::move(alg)), p_(checked_exponent(p)) {}

AElem MixedElem::coeff(long k, long n) const {
    auto it = c_.find({k, n});
    return it == c_.end() ? alg_.zero_elem() : it->second;
}

void MixedElem::add_term(long k, long n, const AElem& z) {
    if (k < 0 || k >= p_)
        fail(ErrorKind::precondition, "the reduced power index must lie in [0, p)");
    if (n < 0) fail(ErrorKind::precondition, "the divided index must be nonnegative");
    if (z.algebra() != alg_) fail(ErrorKind::mismatch, "mixed-algebra arithmetic");
    auto it = c_.find({k, n});
    if (it == c_.end()) {
        if (!z.is_zero()) c_.emplace(std::pair<long, long>{k, n}, z);
        return;
    }
    it->second = it->second + z;
    if (it->second.is_zero()) c_.erase(it);
}

bool MixedElem::operator==(const MixedElem& o) const {
    return alg_ == o.alg_ && p_ == o.p_ && c_ == o.c_;
}

std::string MixedElem::str() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, z] : c_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << z.str() << ")*xb^" << key.first << "*w^[" << key.second << "]";
    }
    return out.str();
}

namespace {

void check_splitting_context(const FrobeniusContext& ctx) {
    if (ctx.qchar() <= 0 || ctx.qchar() != ctx.p())
        fail(ErrorKind::precondition,
             "the splitting map needs q-characteristic equal to the Frobenius exponent");
}

} // namespace

DPElem mixed_to_divided(const FrobeniusContext& ctx, const MixedElem& m, long trunc) {
    check_splitting_context(ctx);
    if (m.algebra() != ctx.target() || m.p() != ctx.p())
        fail(ErrorKind::mismatch, "mixed element belongs to a different context");
    DPElem res = dp_zero(ctx.target_ring(), trunc);
    for (const auto& [key, z] : m.coeffs()) {
        DPElem term = dp_mul(dp_basis(ctx.target_ring(), key.first, trunc),
                             divided_basis_image(ctx, key.second, trunc));
        res = res + term.scaled_a(z);
    }
    return res;
}

MixedElem divided_to_mixed(const FrobeniusContext& ctx, const DPElem& a) {
    check_splitting_context(ctx);
    if (!ctx.ring().q_divisible())
        fail(ErrorKind::precondition, "the splitting inverse needs a q-divisible ring");
    if (a.ring() != ctx.target_ring())
        fail(ErrorKind::mismatch, "expected an element of the target divided power ring");
    MixedElem out(ctx.target(), ctx.p());
    DPElem rem = a;
    while (!rem.is_zero()) {
        long d = rem.top_index();
        long k = d % ctx.p();
        long n = d / ctx.p();
        RElem lead = ctx.ring().specialize(frob_coeff_b(n, ctx.p() * n, ctx.p()));
        auto inv = lead.try_invert();
        if (!inv) fail(ErrorKind::falsified, "the leading splitting coefficient is not a unit");
        AElem c = rem.coeff(d).scaled(*inv);
        out.add_term(k, n, c);
        DPElem sub = dp_mul(dp_basis(ctx.target_ring(), k, a.trunc()),
                            divided_basis_image(ctx, n, a.trunc()));
        rem = rem - sub.scaled_a(c);
        if (!rem.is_zero() && rem.top_index() >= d)
            fail(ErrorKind::internal, "splitting elimination failed to reduce the top index");
    }
    return out;
}

} // namespace qdp
