#include "simpson.hpp"

#include "linalg.hpp"
#include "qcomb.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <utility>

namespace qdp {

namespace {

void check_square(const AMatrix& u, const Algebra& alg, const char* what) {
    if (u.empty()) fail(ErrorKind::precondition, std::string(what) + " needs positive rank");
    for (const auto& row : u) {
        if (row.size() != u.size())
            fail(ErrorKind::precondition, std::string(what) + " needs a square matrix");
        for (const auto& z : row)
            if (z.algebra() != alg) fail(ErrorKind::mismatch, "matrix entry from a different algebra");
    }
}

AMatrix amat_mul(const AMatrix& a, const AMatrix& b) {
    size_t n = a.size();
    const Algebra& alg = a[0][0].algebra();
    AMatrix out(n, std::vector<AElem>(n, alg.zero_elem()));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    return out;
}

bool amat_is_zero(const AMatrix& a) {
    for (const auto& row : a)
        for (const auto& z : row)
            if (!z.is_zero()) return false;
    return true;
}

WeylElem weyl_truncate(const WeylElem& w, long maxd) {
    if (w.degree() <= maxd) return w;
    std::vector<AElem> cs(w.coeffs().begin(), w.coeffs().begin() + (maxd + 1));
    return WeylElem(w.algebra(), std::move(cs));
}

// coordinates of a section over the subring R[x']: component i contributes
// its x^(p*a + m) coefficients to the polynomial at slot i*p + m
PolyVec section_to_prime(const std::vector<AElem>& s, int p, const Ring& ring) {
    PolyVec out(s.size() * p);
    for (size_t i = 0; i < s.size(); ++i)
        for (const auto& [e, c] : s[i].terms()) {
            long a = e / p, m = e % p;
            RPoly& g = out[i * p + m];
            if (static_cast<long>(g.size()) <= a) g.resize(a + 1, ring.from_long(0));
            g[a] = c;
        }
    for (auto& g : out) rp_strip(g);
    return out;
}

std::vector<AElem> prime_to_section(const PolyVec& v, const Algebra& alg, int p, long r) {
    std::vector<AElem> out;
    out.reserve(r);
    for (long i = 0; i < r; ++i) {
        std::map<long, RElem> terms;
        for (int m = 0; m < p; ++m) {
            const RPoly& g = v[i * p + m];
            for (size_t a = 0; a < g.size(); ++a)
                if (!g[a].is_zero()) terms.emplace(p * static_cast<long>(a) + m, g[a]);
        }
        out.push_back(alg.from_terms(std::move(terms)));
    }
    return out;
}

AElem rpoly_to_aelem(const RPoly& g, const Algebra& alg) {
    std::map<long, RElem> terms;
    for (size_t a = 0; a < g.size(); ++a)
        if (!g[a].is_zero()) terms.emplace(static_cast<long>(a), g[a]);
    return alg.from_terms(std::move(terms));
}

RPoly aelem_to_rpoly(const AElem& z, const Ring& ring) {
    RPoly g;
    for (const auto& [e, c] : z.terms()) {
        if (e < 0) fail(ErrorKind::precondition, "the similarity search needs polynomial entries");
        if (static_cast<long>(g.size()) <= e) g.resize(e + 1, ring.from_long(0));
        g[e] = c;
    }
    rp_strip(g);
    return g;
}

} // namespace

PhiContext::PhiContext(Ring ring, int p, bool laurent) : frob_(std::move(ring), p, laurent) {
    if (!frob_.ring().q_divisible())
        fail(ErrorKind::precondition, "the operator pullback needs a q-divisible ring");
    if (frob_.qchar() != p)
        fail(ErrorKind::precondition,
             "the operator pullback needs q-characteristic equal to the exponent");
}

WeylElem phi(const PhiContext& ctx, const WeylElem& op) {
    const Algebra& alg = ctx.target();
    if (op.algebra() != alg) fail(ErrorKind::mismatch, "operator from a different algebra");
    int p = ctx.p();
    int deg = op.degree();
    if (deg < 0) return WeylElem(alg);
    std::vector<AElem> out(static_cast<size_t>(p) * deg + 1, alg.zero_elem());
    for (int n = 0; n <= deg; ++n) {
        AElem z = op.coeff(n);
        if (z.is_zero()) continue;
        for (long k = (n + p - 1) / p; k <= n; ++k) {
            RElem c = ctx.ring().specialize(frob_coeff_b(k, n, p));
            if (c.is_zero()) continue;
            out[p * k] = out[p * k] + z * alg.x(p * k - n, c);
        }
    }
    return WeylElem(alg, std::move(out));
}

std::vector<std::vector<WeylElem>> azumaya_matrix(const PhiContext& ctx, const WeylElem& op,
                                                  long trunc) {
    const Algebra& alg = ctx.target();
    if (op.algebra() != alg) fail(ErrorKind::mismatch, "operator from a different algebra");
    if (trunc < 0) fail(ErrorKind::precondition, "the matrix truncation must be nonnegative");
    int p = ctx.p();
    std::vector<std::vector<WeylElem>> mat(p, std::vector<WeylElem>(p, WeylElem(alg)));
    for (int j = 0; j < p; ++j) {
        WeylElem w = phi(ctx, weyl_mul(op, WeylElem::monomial(alg, j, 0)));
        std::vector<std::vector<AElem>> cs(
            p, std::vector<AElem>(static_cast<size_t>(p) * trunc + 1, alg.zero_elem()));
        for (int n = 0; n <= w.degree(); ++n) {
            AElem z = w.coeff(n);
            if (z.is_zero()) continue;
            if (n % p != 0)
                fail(ErrorKind::internal, "the pullback image has a derivation degree off the p-grid");
            long i = n / p;
            if (i > trunc) continue;
            for (const auto& [e, c] : z.terms()) {
                long m = ((e % p) + p) % p;
                cs[m][n] = cs[m][n] + alg.x(e - m, c);
            }
        }
        for (int m = 0; m < p; ++m) mat[m][j] = WeylElem(alg, cs[m]);
    }
    return mat;
}

std::vector<std::vector<WeylElem>> azumaya_product(const std::vector<std::vector<WeylElem>>& a,
                                                   const std::vector<std::vector<WeylElem>>& b,
                                                   int p, long trunc) {
    if (static_cast<int>(a.size()) != p || static_cast<int>(b.size()) != p)
        fail(ErrorKind::precondition, "matrix size must match the exponent");
    const Algebra& alg = a[0][0].algebra();
    std::vector<std::vector<WeylElem>> out(p, std::vector<WeylElem>(p, WeylElem(alg)));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            WeylElem acc(alg);
            for (int k = 0; k < p; ++k) acc = acc + weyl_mul(a[i][k], b[k][j]);
            out[i][j] = weyl_truncate(acc, p * trunc);
        }
    return out;
}

HiggsModule::HiggsModule(Algebra aprime, AMatrix theta)
    : alg_(std::move(aprime)), u_(std::move(theta)) {
    check_square(u_, alg_, "a curvature module");
}

QDiffModule::QDiffModule(Algebra a, AMatrix derivation)
    : alg_(std::move(a)), u_(std::move(derivation)) {
    check_square(u_, alg_, "a twisted connection");
}

std::vector<AElem> qdiff_apply(const QDiffModule& m, const std::vector<AElem>& v) {
    long r = m.rank();
    if (static_cast<long>(v.size()) != r)
        fail(ErrorKind::mismatch, "vector length differs from the module rank");
    std::vector<AElem> out;
    out.reserve(r);
    for (long i = 0; i < r; ++i) {
        AElem acc = derive(v[i]);
        for (long j = 0; j < r; ++j) {
            const AElem& n = m.derivation()[i][j];
            if (n.is_zero() || v[j].is_zero()) continue;
            acc = acc + n * sigma_apply(v[j]);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<AElem> qdiff_apply_op(const QDiffModule& m, const WeylElem& op,
                                  const std::vector<AElem>& v) {
    if (op.algebra() != m.algebra()) fail(ErrorKind::mismatch, "operator from a different algebra");
    std::vector<AElem> cur = v;
    std::vector<AElem> out(m.rank(), m.algebra().zero_elem());
    for (int n = 0; n <= op.degree(); ++n) {
        if (n > 0) cur = qdiff_apply(m, cur);
        AElem z = op.coeff(n);
        if (z.is_zero()) continue;
        for (long i = 0; i < m.rank(); ++i)
            if (!cur[i].is_zero()) out[i] = out[i] + z * cur[i];
    }
    return out;
}

bool is_quasi_nilpotent(const AMatrix& mat, long bound) {
    if (mat.empty()) fail(ErrorKind::precondition, "a curvature module needs positive rank");
    check_square(mat, mat[0][0].algebra(), "a curvature module");
    if (bound < 1) fail(ErrorKind::precondition, "the nilpotency bound must be positive");
    AMatrix pw = mat;
    for (long s = 1; s <= bound; ++s) {
        if (amat_is_zero(pw)) return true;
        if (s < bound) pw = amat_mul(pw, mat);
    }
    return amat_is_zero(pw);
}

bool is_quasi_nilpotent(const QDiffModule& m, long bound) {
    if (bound < 1) fail(ErrorKind::precondition, "the nilpotency bound must be positive");
    long r = m.rank();
    for (long j = 0; j < r; ++j) {
        std::vector<AElem> v(r, m.algebra().zero_elem());
        v[j] = m.algebra().one_elem();
        for (long s = 0; s < bound; ++s) {
            bool zero = true;
            for (const auto& z : v)
                if (!z.is_zero()) zero = false;
            if (zero) break;
            v = qdiff_apply(m, v);
        }
        for (const auto& z : v)
            if (!z.is_zero()) return false;
    }
    return true;
}

QDiffModule higgs_to_qdiff(const PhiContext& ctx, const HiggsModule& h) {
    if (h.algebra() != ctx.source()) fail(ErrorKind::mismatch, "module from a different algebra");
    if (!is_quasi_nilpotent(h.theta(), h.rank()))
        fail(ErrorKind::precondition, "the curvature matrix is not nilpotent");
    const Algebra& alg = ctx.target();
    AElem xfac = alg.x(ctx.p() - 1);
    AMatrix d(h.rank(), std::vector<AElem>(h.rank(), alg.zero_elem()));
    for (long i = 0; i < h.rank(); ++i)
        for (long j = 0; j < h.rank(); ++j)
            d[i][j] = xfac * ctx.frob().transport(h.theta()[i][j]);
    return QDiffModule(alg, std::move(d));
}

namespace {

// specialized pullback coefficient B_{k,n}(q), valid for k <= n <= pk
RElem pullback_coeff(const PhiContext& ctx, long k, long n) {
    return ctx.ring().specialize(frob_coeff_b(k, n, ctx.p()));
}

// inverse of the top coefficient B_{k,pk} = ((p-1)_q!)^k, a unit at
// q-characteristic p
RElem top_coeff_inverse(const PhiContext& ctx, long k) {
    auto inv = pullback_coeff(ctx, k, static_cast<long>(ctx.p()) * k).try_invert();
    if (!inv) fail(ErrorKind::internal, "the top pullback coefficient is not a unit");
    return *inv;
}

} // namespace

WeylElem horizontal_condition_op(const PhiContext& ctx, long m, long grid) {
    const Algebra& alg = ctx.target();
    const Ring& ring = ctx.ring();
    int p = ctx.p();
    if (m <= 0 || m % p == 0)
        fail(ErrorKind::precondition, "horizontal conditions are indexed off the p-grid");
    if (grid < 0) fail(ErrorKind::precondition, "negative grid bound");
    long kmin = (m + p - 1) / p;
    long top = std::max(m, static_cast<long>(p) * grid);
    std::vector<AElem> out(static_cast<size_t>(top) + 1, alg.zero_elem());
    out[static_cast<size_t>(m)] = alg.one_elem();
    // triangular solve: the d^(pk) coefficient of phi applied to the series
    // must vanish for every k, which determines each correction from the
    // lower ones
    std::vector<RElem> gamma;
    for (long k = kmin; k <= grid; ++k) {
        RElem acc = k <= m ? pullback_coeff(ctx, k, m) : ring.from_long(0);
        for (long j = std::max(kmin, (k + p - 1) / p); j < k; ++j)
            acc = acc + pullback_coeff(ctx, k, p * j) * gamma[static_cast<size_t>(j - kmin)];
        RElem g = (ring.from_long(0) - acc) * top_coeff_inverse(ctx, k);
        gamma.push_back(g);
        if (!g.is_zero()) out[static_cast<size_t>(p * k)] = alg.x(p * k - m, g);
    }
    return WeylElem(alg, std::move(out));
}

WeylElem curvature_section_op(const PhiContext& ctx, long grid) {
    const Algebra& alg = ctx.target();
    const Ring& ring = ctx.ring();
    int p = ctx.p();
    if (grid < 1)
        fail(ErrorKind::precondition, "the curvature operator needs at least one grid term");
    std::vector<AElem> out(static_cast<size_t>(p) * grid + 1, alg.zero_elem());
    // same triangular solve with target d^p instead of zero
    std::vector<RElem> eta;
    for (long k = 1; k <= grid; ++k) {
        RElem acc = ring.from_long(k == 1 ? -1 : 0);
        for (long j = std::max(1L, (k + p - 1) / p); j < k; ++j)
            acc = acc + pullback_coeff(ctx, k, p * j) * eta[static_cast<size_t>(j - 1)];
        RElem g = (ring.from_long(0) - acc) * top_coeff_inverse(ctx, k);
        eta.push_back(g);
        if (!g.is_zero()) out[static_cast<size_t>(p * k)] = alg.x(p * k - p, g);
    }
    return WeylElem(alg, std::move(out));
}

namespace {

// one attempt at the inverse direction with a fixed degree bound; on
// failure leaves a diagnostic for the caller
std::optional<HiggsModule> recover_at_degree(const PhiContext& ctx, const QDiffModule& m, long K,
                                             long D, std::string* diag) {
    const Ring& ring = ctx.ring();
    const Algebra& alg = ctx.target();
    long r = m.rank();
    int p = ctx.p();

    // grid horizon for the truncated kernel generators: comfortably past
    // the derivation order that kills every candidate section
    long grid = (K + p - 1) / p;

    // solution space of the horizontal-section conditions, refined one
    // kernel operator at a time so every elimination stays small
    std::vector<std::vector<AElem>> secs;
    for (long i = 0; i < r; ++i)
        for (long e = 0; e <= D; ++e) {
            std::vector<AElem> v(r, alg.zero_elem());
            v[i] = alg.x(e);
            secs.push_back(std::move(v));
        }
    for (long k = 1; k <= K && !secs.empty(); ++k) {
        // powers on the p-grid are not conditions: they act through the
        // recovered curvature instead
        if (k % p == 0) continue;
        WeylElem opk = horizontal_condition_op(ctx, k, grid);
        std::vector<std::vector<AElem>> imgs;
        imgs.reserve(secs.size());
        bool allzero = true;
        long emax = 0;
        for (const auto& s : secs) {
            auto im = qdiff_apply_op(m, opk, s);
            for (const auto& z : im)
                if (!z.is_zero()) {
                    allzero = false;
                    emax = std::max(emax, z.max_exp());
                }
            imgs.push_back(std::move(im));
        }
        if (allzero) continue;
        RMatrix cond(ring, static_cast<size_t>(r) * (emax + 1), imgs.size());
        for (size_t col = 0; col < imgs.size(); ++col)
            for (long i = 0; i < r; ++i)
                for (const auto& [e, c] : imgs[col][i].terms())
                    cond.at(static_cast<size_t>(i) * (emax + 1) + e, col) = c;
        auto kern = kernel_basis(cond);
        std::vector<std::vector<AElem>> next;
        next.reserve(kern.size());
        for (const auto& kv : kern) {
            std::vector<AElem> v(r, alg.zero_elem());
            for (size_t c = 0; c < secs.size(); ++c) {
                if (kv[c].is_zero()) continue;
                for (long i = 0; i < r; ++i) v[i] = v[i] + secs[c][i].scaled(kv[c]);
            }
            next.push_back(std::move(v));
        }
        secs = std::move(next);
    }

    PolyCols cols;
    cols.reserve(secs.size());
    for (const auto& s : secs) cols.push_back(section_to_prime(s, p, ring));
    PolyCols basis = column_module_basis(cols, ring);
    if (static_cast<long>(basis.size()) < r) {
        *diag = "the horizontal sections do not saturate the module rank; raise the degree bound";
        return std::nullopt;
    }
    if (static_cast<long>(basis.size()) > r)
        fail(ErrorKind::internal, "the horizontal module exceeds the module rank");

    WeylElem uop = curvature_section_op(ctx, grid);
    AMatrix theta(r, std::vector<AElem>(r, ctx.source().zero_elem()));
    for (long j = 0; j < r; ++j) {
        std::vector<AElem> sb = prime_to_section(basis[j], alg, p, r);
        std::vector<AElem> ub = qdiff_apply_op(m, uop, sb);
        auto coords = module_solve(basis, section_to_prime(ub, p, ring), ring);
        if (!coords) {
            *diag = "the curvature action leaves the recovered module; raise the degree bound";
            return std::nullopt;
        }
        for (long i = 0; i < r; ++i) theta[i][j] = rpoly_to_aelem((*coords)[i], ctx.source());
    }
    return HiggsModule(ctx.source(), std::move(theta));
}

} // namespace

HiggsModule qdiff_to_higgs(const PhiContext& ctx, const QDiffModule& m, long degree_bound) {
    if (m.algebra() != ctx.target()) fail(ErrorKind::mismatch, "module from a different algebra");
    if (ctx.target().laurent())
        fail(ErrorKind::precondition, "the section search needs a polynomial coordinate ring");
    long r = m.rank();
    int p = ctx.p();

    // quasi-nilpotency probe: the smallest iterate killing every basis
    // vector also bounds the iterate on arbitrary sections, since the
    // derivation on coefficients dies after p steps
    long cap = static_cast<long>(p) * r + p + 4;
    long nb = -1;
    {
        std::vector<std::vector<AElem>> vs;
        for (long j = 0; j < r; ++j) {
            std::vector<AElem> v(r, m.algebra().zero_elem());
            v[j] = m.algebra().one_elem();
            vs.push_back(std::move(v));
        }
        for (long s = 1; s <= cap && nb < 0; ++s) {
            bool zero = true;
            for (auto& v : vs) {
                v = qdiff_apply(m, v);
                for (const auto& z : v)
                    if (!z.is_zero()) zero = false;
            }
            if (zero) nb = s;
        }
    }
    if (nb < 0)
        fail(ErrorKind::precondition,
             "the module derivation is not quasi-nilpotent within the probe bound");
    long K = static_cast<long>(p) * nb + p;

    long maxdeg = 0;
    for (const auto& row : m.derivation())
        for (const auto& z : row)
            if (!z.is_zero()) maxdeg = std::max(maxdeg, z.max_exp());
    long d0 = degree_bound >= 0 ? degree_bound : static_cast<long>(p) * r + maxdeg + p;
    int rounds = degree_bound >= 0 ? 1 : 3;
    std::string diag;
    for (int round = 0; round < rounds; ++round) {
        auto h = recover_at_degree(ctx, m, K, d0 + static_cast<long>(round) * p, &diag);
        if (h) return *h;
    }
    fail(ErrorKind::precondition, diag);
}

std::optional<AMatrix> similarity_witness(const AMatrix& a, const AMatrix& b, unsigned seed) {
    if (a.empty() || a.size() != b.size())
        fail(ErrorKind::mismatch, "similarity needs matrices of equal positive rank");
    const Algebra& alg = a[0][0].algebra();
    check_square(a, alg, "similarity");
    check_square(b, alg, "similarity");
    const Ring& ring = alg.ring();
    long r = static_cast<long>(a.size());

    std::vector<std::vector<RPoly>> ap(r, std::vector<RPoly>(r)), bp(r, std::vector<RPoly>(r));
    long maxdeg = 0;
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) {
            ap[i][j] = aelem_to_rpoly(a[i][j], ring);
            bp[i][j] = aelem_to_rpoly(b[i][j], ring);
            maxdeg = std::max({maxdeg, static_cast<long>(rp_deg(ap[i][j])),
                               static_cast<long>(rp_deg(bp[i][j]))});
        }

    auto to_amatrix = [&](const std::vector<std::vector<RPoly>>& pm) {
        AMatrix out(r, std::vector<AElem>(r, alg.zero_elem()));
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < r; ++j) out[i][j] = rpoly_to_aelem(pm[i][j], alg);
        return out;
    };
    auto is_unit_det = [&](const std::vector<std::vector<RPoly>>& pm) {
        PolyCols cols(r, PolyVec(r));
        for (long j = 0; j < r; ++j)
            for (long i = 0; i < r; ++i) cols[j][i] = pm[i][j];
        RPoly det = rp_det(cols, ring);
        return rp_deg(det) == 0 && det[0].try_invert().has_value();
    };

    std::mt19937 rng(seed);
    for (long d = 0; d <= 4; ++d) {
        // kernel of P -> P*a - b*P on entry polynomials of degree <= d
        long cols = r * r * (d + 1);
        long rowdeg = d + maxdeg;
        RMatrix cond(ring, static_cast<size_t>(r) * r * (rowdeg + 1), cols);
        for (long pi = 0; pi < r; ++pi)
            for (long pj = 0; pj < r; ++pj)
                for (long e = 0; e <= d; ++e) {
                    size_t col = static_cast<size_t>((pi * r + pj) * (d + 1) + e);
                    // (P a)_{pi, c} picks up P_{pi, pj} a_{pj, c}
                    for (long c = 0; c < r; ++c) {
                        const RPoly& g = ap[pj][c];
                        for (size_t t = 0; t < g.size(); ++t) {
                            size_t row = static_cast<size_t>((pi * r + c) * (rowdeg + 1)) + e + t;
                            cond.at(row, col) = cond.at(row, col) + g[t];
                        }
                    }
                    // (b P)_{c, pj} picks up b_{c, pi} P_{pi, pj}
                    for (long c = 0; c < r; ++c) {
                        const RPoly& g = bp[c][pi];
                        for (size_t t = 0; t < g.size(); ++t) {
                            size_t row = static_cast<size_t>((c * r + pj) * (rowdeg + 1)) + e + t;
                            cond.at(row, col) = cond.at(row, col) - g[t];
                        }
                    }
                }
        auto kern = kernel_basis(cond);
        if (kern.empty()) continue;

        auto build = [&](const std::vector<RElem>& v) {
            std::vector<std::vector<RPoly>> pm(r, std::vector<RPoly>(r));
            for (long pi = 0; pi < r; ++pi)
                for (long pj = 0; pj < r; ++pj) {
                    RPoly g(d + 1, ring.from_long(0));
                    for (long e = 0; e <= d; ++e) g[e] = v[(pi * r + pj) * (d + 1) + e];
                    rp_strip(g);
                    pm[pi][pj] = std::move(g);
                }
            return pm;
        };
        for (const auto& v : kern) {
            auto pm = build(v);
            if (is_unit_det(pm)) return to_amatrix(pm);
        }
        std::uniform_int_distribution<int> coef(-2, 2);
        for (int tries = 0; tries < 200; ++tries) {
            std::vector<RElem> v(cols, ring.from_long(0));
            bool any = false;
            for (const auto& kv : kern) {
                int c = coef(rng);
                if (c == 0) continue;
                any = true;
                RElem cc = ring.from_long(c);
                for (long idx = 0; idx < cols; ++idx) v[idx] = v[idx] + kv[idx] * cc;
            }
            if (!any) continue;
            auto pm = build(v);
            if (is_unit_det(pm)) return to_amatrix(pm);
        }
    }
    return std::nullopt;
}

} // namespace qdp
