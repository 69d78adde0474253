#include "weyl.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace qdp {

namespace {

void require_same_algebra(const Algebra& a, const Algebra& b) {
    if (a != b) fail(ErrorKind::mismatch, "operands live over different algebras");
}

std::string poly_str(const std::vector<AElem>& c, const char* var) {
    if (c.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t k = c.size(); k-- > 0;) {
        if (c[k].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << c[k].str() << ")";
        if (k > 0) {
            out << "*" << var;
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

} // namespace

WeylElem::WeylElem(Algebra alg, std::vector<AElem> cs) : alg_(std::move(alg)), c_(std::move(cs)) {
    for (const auto& z : c_)
        if (z.algebra() != alg_) fail(ErrorKind::mismatch, "coefficient over a foreign algebra");
    normalize();
}

void WeylElem::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AElem WeylElem::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return alg_.zero_elem();
    return c_[static_cast<size_t>(k)];
}

bool WeylElem::operator==(const WeylElem& o) const {
    if (alg_ != o.alg_)
        fail(ErrorKind::precondition, "comparing operators over different algebras");
    return c_ == o.c_;
}

WeylElem WeylElem::operator+(const WeylElem& o) const {
    require_same_algebra(alg_, o.alg_);
    std::vector<AElem> cs(std::max(c_.size(), o.c_.size()), alg_.zero_elem());
    for (size_t i = 0; i < c_.size(); ++i) cs[i] = cs[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) cs[i] = cs[i] + o.c_[i];
    return WeylElem(alg_, std::move(cs));
}

WeylElem WeylElem::operator-(const WeylElem& o) const { return *this + (-o); }

WeylElem WeylElem::operator-() const {
    std::vector<AElem> cs;
    cs.reserve(c_.size());
    for (const auto& z : c_) cs.push_back(-z);
    return WeylElem(alg_, std::move(cs));
}

WeylElem WeylElem::scaled(const AElem& z) const {
    std::vector<AElem> cs;
    cs.reserve(c_.size());
    for (const auto& c : c_) cs.push_back(z * c);
    return WeylElem(alg_, std::move(cs));
}

WeylElem WeylElem::constant(AElem z) {
    Algebra alg = z.algebra();
    std::vector<AElem> cs;
    cs.push_back(std::move(z));
    return WeylElem(std::move(alg), std::move(cs));
}

WeylElem WeylElem::d_power(const Algebra& alg, int k) {
    if (k < 0) fail(ErrorKind::precondition, "derivation power needs k >= 0");
    std::vector<AElem> cs(static_cast<size_t>(k) + 1, alg.zero_elem());
    cs.back() = alg.one_elem();
    return WeylElem(alg, std::move(cs));
}

WeylElem WeylElem::monomial(const Algebra& alg, long a, int b) {
    if (b < 0) fail(ErrorKind::precondition, "derivation power needs k >= 0");
    std::vector<AElem> cs(static_cast<size_t>(b) + 1, alg.zero_elem());
    cs.back() = alg.x(a);
    return WeylElem(alg, std::move(cs));
}

std::string WeylElem::str() const { return poly_str(c_, "d"); }

WeylElem weyl_mul(const WeylElem& a, const WeylElem& b) {
    require_same_algebra(a.algebra(), b.algebra());
    const Algebra& alg = a.algebra();
    if (a.is_zero() || b.is_zero()) return WeylElem(alg);
    std::vector<AElem> out(static_cast<size_t>(a.degree() + b.degree()) + 1, alg.zero_elem());
    // cur holds the coefficients of d^k composed with b
    std::vector<AElem> cur = b.coeffs();
    for (int k = 0;; ++k) {
        AElem ak = a.coeff(k);
        if (!ak.is_zero())
            for (size_t j = 0; j < cur.size(); ++j) out[j] = out[j] + ak * cur[j];
        if (k == a.degree()) break;
        std::vector<AElem> nxt(cur.size() + 1, alg.zero_elem());
        for (size_t j = 0; j < cur.size(); ++j) {
            nxt[j + 1] = nxt[j + 1] + sigma_apply(cur[j], 1);
            nxt[j] = nxt[j] + derive(cur[j]);
        }
        cur = std::move(nxt);
    }
    return WeylElem(alg, std::move(out));
}

AElem weyl_apply(const WeylElem& op, const AElem& z) {
    require_same_algebra(op.algebra(), z.algebra());
    AElem acc = op.algebra().zero_elem();
    AElem d = z;
    for (int k = 0; k <= op.degree(); ++k) {
        AElem ck = op.coeff(k);
        if (!ck.is_zero()) acc = acc + ck * d;
        if (k < op.degree()) d = derive(d);
    }
    return acc;
}

WeylElem weyl_mul_via_duality(const WeylElem& a, const WeylElem& b, long trunc) {
    require_same_algebra(a.algebra(), b.algebra());
    const Algebra& alg = a.algebra();
    if (a.is_zero() || b.is_zero()) return WeylElem(alg);
    long da = a.degree(), db = b.degree();
    if (da + db > trunc)
        fail(ErrorKind::precondition, "truncation too small for the duality product");
    DPRing ring = DPRing::canonical(alg);
    // the right factor's coefficients travel into the left slot through the
    // Taylor expansion
    std::vector<DPElem> pushed;
    pushed.reserve(static_cast<size_t>(db) + 1);
    for (int j = 0; j <= db; ++j) pushed.push_back(taylor0(b.coeff(j), ring, trunc));
    std::vector<AElem> out(static_cast<size_t>(da + db) + 1, alg.zero_elem());
    for (long k = 0; k <= da + db; ++k) {
        AElem ck = alg.zero_elem();
        for (long j = 0; j <= std::min<long>(k, db); ++j) {
            DPElem w = dp_mul(dp_basis(ring, k - j, trunc), pushed[static_cast<size_t>(j)]);
            for (const auto& [i, z] : w.coeffs()) {
                if (i > da) break;
                AElem ai = a.coeff(static_cast<int>(i));
                if (!ai.is_zero()) ck = ck + ai * z;
            }
        }
        out[static_cast<size_t>(k)] = ck;
    }
    return WeylElem(alg, std::move(out));
}

CurvaturePoly::CurvaturePoly(Algebra alg, std::vector<AElem> cs)
    : alg_(std::move(alg)), c_(std::move(cs)) {
    for (const auto& z : c_)
        if (z.algebra() != alg_) fail(ErrorKind::mismatch, "coefficient over a foreign algebra");
    normalize();
}

void CurvaturePoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

AElem CurvaturePoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return alg_.zero_elem();
    return c_[static_cast<size_t>(k)];
}

bool CurvaturePoly::operator==(const CurvaturePoly& o) const {
    if (alg_ != o.alg_)
        fail(ErrorKind::precondition, "comparing polynomials over different algebras");
    return c_ == o.c_;
}

CurvaturePoly CurvaturePoly::operator+(const CurvaturePoly& o) const {
    require_same_algebra(alg_, o.alg_);
    std::vector<AElem> cs(std::max(c_.size(), o.c_.size()), alg_.zero_elem());
    for (size_t i = 0; i < c_.size(); ++i) cs[i] = cs[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) cs[i] = cs[i] + o.c_[i];
    return CurvaturePoly(alg_, std::move(cs));
}

CurvaturePoly CurvaturePoly::operator-(const CurvaturePoly& o) const { return *this + (-o); }

CurvaturePoly CurvaturePoly::operator-() const {
    std::vector<AElem> cs;
    cs.reserve(c_.size());
    for (const auto& z : c_) cs.push_back(-z);
    return CurvaturePoly(alg_, std::move(cs));
}

CurvaturePoly CurvaturePoly::operator*(const CurvaturePoly& o) const {
    require_same_algebra(alg_, o.alg_);
    if (c_.empty() || o.c_.empty()) return CurvaturePoly(alg_);
    std::vector<AElem> cs(c_.size() + o.c_.size() - 1, alg_.zero_elem());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) cs[i + j] = cs[i + j] + c_[i] * o.c_[j];
    return CurvaturePoly(alg_, std::move(cs));
}

CurvaturePoly CurvaturePoly::scaled(const AElem& z) const {
    std::vector<AElem> cs;
    cs.reserve(c_.size());
    for (const auto& c : c_) cs.push_back(z * c);
    return CurvaturePoly(alg_, std::move(cs));
}

CurvaturePoly CurvaturePoly::constant(AElem z) {
    Algebra alg = z.algebra();
    std::vector<AElem> cs;
    cs.push_back(std::move(z));
    return CurvaturePoly(std::move(alg), std::move(cs));
}

CurvaturePoly CurvaturePoly::theta(const Algebra& alg, int k) {
    if (k < 0) fail(ErrorKind::precondition, "theta power needs k >= 0");
    std::vector<AElem> cs(static_cast<size_t>(k) + 1, alg.zero_elem());
    cs.back() = alg.one_elem();
    return CurvaturePoly(alg, std::move(cs));
}

std::string CurvaturePoly::str() const { return poly_str(c_, "theta"); }

WeylElem p_curvature(const CurvaturePoly& f) {
    const Algebra& alg = f.algebra();
    long p = q_char(alg.ring());
    if (!alg.ring().q_divisible() || p <= 0)
        fail(ErrorKind::precondition,
             "curvature map needs a q-divisible ring with positive q-characteristic");
    if (f.is_zero()) return WeylElem(alg);
    std::vector<AElem> out(static_cast<size_t>(p * f.degree()) + 1, alg.zero_elem());
    for (int k = 0; k <= f.degree(); ++k) out[static_cast<size_t>(p) * k] = f.coeff(k);
    return WeylElem(alg, std::move(out));
}

namespace {

// monomials x^a d^b with |a| + b <= D, ordered by (b, a)
std::vector<std::pair<long, long>> monomial_grid(const Algebra& alg, long D) {
    std::vector<std::pair<long, long>> monos;
    for (long b = 0; b <= D; ++b) {
        long amax = D - b;
        for (long a = alg.laurent() ? -amax : 0; a <= amax; ++a) monos.emplace_back(a, b);
    }
    std::sort(monos.begin(), monos.end(),
              [](const auto& l, const auto& r) { return std::tie(l.second, l.first) < std::tie(r.second, r.first); });
    return monos;
}

using RowKey = std::tuple<int, long, long>;

// accumulate c into the (side, u, v) row of the commutator matrix
void add_entry(std::map<RowKey, std::map<size_t, RElem>>& rows, RowKey key, size_t col,
               const RElem& c) {
    if (c.is_zero()) return;
    auto& row = rows[key];
    auto it = row.find(col);
    if (it == row.end()) row.emplace(col, c);
    else {
        it->second = it->second + c;
        if (it->second.is_zero()) row.erase(it);
    }
}

std::vector<WeylElem> kernel_to_operators(const Algebra& alg,
                                          const std::vector<std::pair<long, long>>& monos,
                                          const std::map<RowKey, std::map<size_t, RElem>>& rows) {
    const Ring& r = alg.ring();
    RMatrix m(r, rows.size(), monos.size());
    size_t ri = 0;
    for (const auto& [key, row] : rows) {
        (void)key;
        for (const auto& [col, c] : row) m.at(ri, col) = c;
        ++ri;
    }
    std::vector<WeylElem> out;
    for (const auto& v : kernel_basis(m)) {
        long dmax = 0;
        for (size_t i = 0; i < monos.size(); ++i)
            if (!v[i].is_zero()) dmax = std::max(dmax, monos[i].second);
        std::vector<std::map<long, RElem>> terms(static_cast<size_t>(dmax) + 1);
        for (size_t i = 0; i < monos.size(); ++i)
            if (!v[i].is_zero()) terms[static_cast<size_t>(monos[i].second)].emplace(monos[i].first, v[i]);
        std::vector<AElem> cs;
        cs.reserve(terms.size());
        for (auto& t : terms) cs.push_back(alg.from_terms(std::move(t)));
        out.push_back(WeylElem(alg, std::move(cs)));
    }
    return out;
}

// rows of op -> op*x - x*op: the monomial x^a d^b contributes
// (q^b - 1) at (a+1, b), (b)_q h at (a, b), and (b)_q at (a, b-1)
void commutator_with_x(const Algebra& alg, const std::vector<std::pair<long, long>>& monos,
                       int side, std::map<RowKey, std::map<size_t, RElem>>& rows) {
    const Ring& r = alg.ring();
    for (size_t i = 0; i < monos.size(); ++i) {
        auto [a, b] = monos[i];
        RElem qb1 = r.q().pow(b) - r.one();
        RElem bq = q_int_at(r.q(), b);
        add_entry(rows, {side, a + 1, b}, i, qb1);
        add_entry(rows, {side, a, b}, i, bq * alg.h());
        if (b >= 1) add_entry(rows, {side, a, b - 1}, i, bq);
    }
}

// rows of op -> op*d - d*op: the monomial x^a d^b contributes
// (1 - q^a) x^a at (a, b+1) and -(a)_q x^{a-1} at (a-1, b); valid for h = 0
void commutator_with_d(const Algebra& alg, const std::vector<std::pair<long, long>>& monos,
                       int side, std::map<RowKey, std::map<size_t, RElem>>& rows) {
    const Ring& r = alg.ring();
    for (size_t i = 0; i < monos.size(); ++i) {
        auto [a, b] = monos[i];
        RElem qa = r.q().pow(a); // q must be a unit when a < 0
        add_entry(rows, {side, a, b + 1}, i, r.one() - qa);
        add_entry(rows, {side, a - 1, b}, i, -q_int_at(r.q(), a));
    }
}

} // namespace

std::vector<WeylElem> centralizer_basis(const Algebra& alg, long D) {
    if (D < 0) fail(ErrorKind::precondition, "degree bound must be nonnegative");
    auto monos = monomial_grid(alg, D);
    std::map<RowKey, std::map<size_t, RElem>> rows;
    commutator_with_x(alg, monos, 0, rows);
    return kernel_to_operators(alg, monos, rows);
}

std::vector<WeylElem> center_basis(const Algebra& alg, long D) {
    if (D < 0) fail(ErrorKind::precondition, "degree bound must be nonnegative");
    const Ring& r = alg.ring();
    if (!r.q_divisible() || q_char(r) <= 0)
        fail(ErrorKind::precondition,
             "center computation needs a q-divisible ring with positive q-characteristic");
    if (!alg.h().is_zero())
        fail(ErrorKind::precondition, "center computation needs h = 0");
    auto monos = monomial_grid(alg, D);
    std::map<RowKey, std::map<size_t, RElem>> rows;
    commutator_with_x(alg, monos, 0, rows);
    commutator_with_d(alg, monos, 1, rows);
    return kernel_to_operators(alg, monos, rows);
}

size_t weyl_grid_cols(const Algebra& alg, long xdeg, long ddeg) {
    size_t width = static_cast<size_t>(alg.laurent() ? 2 * xdeg + 1 : xdeg + 1);
    return width * static_cast<size_t>(ddeg + 1);
}

std::vector<std::vector<RElem>> weyl_span_rows(const Algebra& alg,
                                               const std::vector<WeylElem>& ops, long xdeg,
                                               long ddeg) {
    long xmin = alg.laurent() ? -xdeg : 0;
    size_t width = static_cast<size_t>(xdeg - xmin + 1);
    std::vector<std::vector<RElem>> rows;
    rows.reserve(ops.size());
    for (const WeylElem& op : ops) {
        if (op.algebra() != alg) fail(ErrorKind::mismatch, "operator over a foreign algebra");
        if (op.degree() > ddeg)
            fail(ErrorKind::precondition, "operator exceeds the monomial grid");
        std::vector<RElem> row(width * static_cast<size_t>(ddeg + 1), alg.ring().zero());
        for (int k = 0; k <= op.degree(); ++k) {
            AElem zk = op.coeff(k);
            for (const auto& [e, c] : zk.terms()) {
                if (e < xmin || e > xdeg)
                    fail(ErrorKind::precondition, "operator exceeds the monomial grid");
                row[static_cast<size_t>(k) * width + static_cast<size_t>(e - xmin)] = c;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace qdp
