#include "suites.hpp"

#include "divpow.hpp"
#include "linalg.hpp"
#include "qcomb.hpp"
#include "simpson.hpp"

#include <algorithm>
#include <sstream>

namespace qdp {

namespace {

std::string fmt_key(const char* fmt, long a, long b = 0, long c = 0) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

void push_case(SuiteReport& rep, std::string key, bool ok, std::string detail = "",
               Json data = Json()) {
    if (!ok) ++rep.failures;
    rep.cases.push_back({std::move(key), ok, std::move(detail), std::move(data)});
}

void sort_cases(SuiteReport& rep) {
    std::sort(rep.cases.begin(), rep.cases.end(),
              [](const SuiteCase& a, const SuiteCase& b) { return a.key < b.key; });
}

Ring ring_or(const SuiteOptions& opt, const char* fallback) {
    return Ring::parse(opt.ring.empty() ? fallback : opt.ring);
}

Algebra algebra_for(const Ring& r) {
    return r.with_s() ? Algebra::with_s(r) : Algebra::polynomial(r);
}

Int int_binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int out = 1;
    for (long i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

// right factor coefficients migrate left through the Taylor expansion, as
// in the tensor product
DPTensor tensor_pair(const DPElem& a, const DPElem& b, long lt, long rt) {
    DPTensor out(a.ring(), lt, rt);
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    for (const auto& [i, za] : ac)
        for (const auto& [j, zb] : bc) {
            if (j > rt) continue;
            DPElem pushed =
                dp_mul(dp_basis(a.ring(), i, lt), taylor0(zb, a.ring(), lt)).scaled_a(za);
            const auto& pc = pushed.coeffs();
            for (const auto& [m, w] : pc) out.add_term(m, j, w);
        }
    return out;
}

SuiteReport suite_sqform_assoc(const SuiteOptions& opt) {
    Ring r = ring_or(opt, "Zt");
    long nmax = opt.nmax < 0 ? 5 : opt.nmax;
    SuiteReport rep{"sqform-assoc", {{"ring", r.descriptor()}, {"nmax", nmax}}, {}, 0};

    DPRing ring = DPRing::canonical(algebra_for(r));
    long trunc = 3 * nmax;
    for (long m = 0; m <= nmax; ++m)
        for (long n = m; n <= nmax; ++n) {
            DPElem em = dp_basis(ring, m, trunc), en = dp_basis(ring, n, trunc);
            push_case(rep, fmt_key("comm m=%ld,n=%ld", m, n), dp_mul(em, en) == dp_mul(en, em),
                      "the product is not symmetric");
            for (long k = n; k <= nmax; ++k) {
                DPElem ek = dp_basis(ring, k, trunc);
                bool ok = dp_mul(dp_mul(em, en), ek) == dp_mul(em, dp_mul(en, ek));
                push_case(rep, fmt_key("assoc m=%ld,n=%ld,k=%ld", m, n, k), ok,
                          "the two associations differ");
            }
        }
    return rep;
}

SuiteReport suite_lucas(const SuiteOptions& opt) {
    Ring r = ring_or(opt, "CycF:3");
    long p = q_char(r);
    if (p < 2)
        fail(ErrorKind::usage, "the q-Lucas suite needs a ring of positive q-characteristic");
    long nmax = opt.nmax < 0 ? 12 : opt.nmax;
    SuiteReport rep{"lucas", {{"ring", r.descriptor()}, {"nmax", nmax}}, {}, 0};

    RElem q = r.q();
    for (long n = 0; n <= nmax; ++n)
        for (long k = 0; k <= n; ++k) {
            RElem value = q_binomial_at(q, n, k);
            RElem oracle =
                r.from_int(int_binomial(n / p, k / p)) * q_binomial_at(q, n % p, k % p);
            push_case(rep, fmt_key("n=%ld,k=%ld", n, k), value == oracle,
                      "the carry decomposition does not match",
                      Json::array({relem_to_json(value), relem_to_json(oracle)}));
        }
    return rep;
}

SuiteReport suite_gooddf(const SuiteOptions& opt) {
    long p = opt.p < 0 ? 2 : opt.p;
    if (p < 2) fail(ErrorKind::usage, "the exponent must be at least 2");
    Ring r = ring_or(opt, "Zt");
    long nmax = opt.nmax < 0 ? 10 : opt.nmax;
    SuiteReport rep{"gooddf", {{"ring", r.descriptor()}, {"p", p}, {"nmax", nmax}}, {}, 0};

    FrobeniusContext ctx(r, static_cast<int>(p));
    for (long m = 0; p * (m + m) <= nmax; ++m)
        for (long n = m; p * (m + n) <= nmax; ++n) {
            long st = m + n;
            long tt = p * st;
            DPElem wm = dp_basis(ctx.source_ring(), m, st);
            DPElem wn = dp_basis(ctx.source_ring(), n, st);
            DPElem lhs = divided_frobenius(ctx, dp_mul(wm, wn), tt);
            DPElem rhs =
                dp_mul(divided_frobenius(ctx, wm, tt), divided_frobenius(ctx, wn, tt));
            push_case(rep, fmt_key("m=%ld,n=%ld", m, n), lhs == rhs,
                      "the divided image of the product differs from the product of images");
        }
    return rep;
}

SuiteReport suite_center(const SuiteOptions& opt) {
    Ring r = ring_or(opt, "CycF:3");
    long p = q_char(r);
    if (p < 2)
        fail(ErrorKind::usage, "the center tables need a ring of positive q-characteristic");
    long D = opt.degree < 0 ? 2 * p : opt.degree;
    if (D < 0) fail(ErrorKind::usage, "negative degree bound");
    SuiteReport rep{"center", {{"ring", r.descriptor()}, {"degree", D}}, {}, 0};

    Algebra alg = algebra_for(r);
    auto cent = centralizer_basis(alg, D);
    auto zc = center_basis(alg, D);

    std::vector<WeylElem> cent_expect, center_expect;
    for (long b = 0; p * b <= D; ++b) {
        for (long a = 0; a + p * b <= D; ++a)
            cent_expect.push_back(WeylElem::monomial(alg, a, static_cast<int>(p * b)));
        for (long a = 0; p * a + p * b <= D; ++a)
            center_expect.push_back(WeylElem::monomial(alg, p * a, static_cast<int>(p * b)));
    }

    size_t cols = weyl_grid_cols(alg, D + 1, D + 1);
    push_case(rep, "centralizer rank", cent.size() == cent_expect.size(),
              "unexpected number of basis elements",
              Json::array({cent.size(), cent_expect.size()}));
    push_case(rep, "centralizer span",
              same_span(weyl_span_rows(alg, cent, D + 1, D + 1),
                        weyl_span_rows(alg, cent_expect, D + 1, D + 1), r, cols),
              "the computed basis does not span the curvature grid");
    push_case(rep, "center rank", zc.size() == center_expect.size(),
              "unexpected number of basis elements",
              Json::array({zc.size(), center_expect.size()}));
    push_case(rep, "center span",
              same_span(weyl_span_rows(alg, zc, D + 1, D + 1),
                        weyl_span_rows(alg, center_expect, D + 1, D + 1), r, cols),
              "the computed basis does not span the doubly divisible grid");
    return rep;
}

SuiteReport suite_comdlef(const SuiteOptions& opt) {
    long p = opt.p < 0 ? 2 : opt.p;
    if (p < 2) fail(ErrorKind::usage, "the exponent must be at least 2");
    Ring r = ring_or(opt, "Zt");
    long nmax = opt.nmax < 0 ? 3 : opt.nmax;
    SuiteReport rep{"comdlef", {{"ring", r.descriptor()}, {"p", p}, {"nmax", nmax}}, {}, 0};

    FrobeniusContext fc(r, static_cast<int>(p));
    for (long n = 0; n <= nmax; ++n) {
        DPElem w = dp_basis(fc.source_ring(), n, n);
        DPElem fw = divided_frobenius(fc, w, p * n);
        DPTensor lhs = dp_comul(fw);
        DPTensor rhs(fc.target_ring(), p * n, p * n);
        for (long k = 0; k <= n; ++k) {
            DPElem left =
                divided_frobenius(fc, dp_basis(fc.source_ring(), n - k, n - k), p * (n - k));
            DPElem right = divided_frobenius(fc, dp_basis(fc.source_ring(), k, k), p * k);
            rhs = rhs + tensor_pair(left, right, p * n, p * n);
        }
        push_case(rep, fmt_key("n=%ld", n), lhs == rhs,
                  "comultiplication does not commute with the divided image");
    }
    return rep;
}

AMatrix zero_matrix(const Algebra& alg, long rk) {
    return AMatrix(rk, std::vector<AElem>(rk, alg.zero_elem()));
}

AMatrix tmat_mul(const AMatrix& a, const AMatrix& b) {
    size_t n = a.size();
    AMatrix out = zero_matrix(a[0][0].algebra(), static_cast<long>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    return out;
}

Json amatrix_to_json(const AMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json jrow = Json::array();
        for (const auto& z : row) jrow.push_back(aelem_to_json(z));
        out.push_back(std::move(jrow));
    }
    return out;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"center", "comdlef", "gooddf", "lucas", "sqform-assoc"};
}

SuiteReport run_verify_suite(const std::string& name, const SuiteOptions& opt) {
    SuiteReport rep;
    if (name == "sqform-assoc")
        rep = suite_sqform_assoc(opt);
    else if (name == "lucas")
        rep = suite_lucas(opt);
    else if (name == "gooddf")
        rep = suite_gooddf(opt);
    else if (name == "center")
        rep = suite_center(opt);
    else if (name == "comdlef")
        rep = suite_comdlef(opt);
    else
        fail(ErrorKind::usage, "unknown suite: " + name);
    sort_cases(rep);
    return rep;
}

SuiteReport run_simpson_suite(const std::string& ring_desc, const std::string& suite,
                              unsigned long seed) {
    if (suite != "default") fail(ErrorKind::usage, "unknown instance suite: " + suite);
    Ring r = Ring::parse(ring_desc);
    int p = q_char(r);
    if (p < 2)
        fail(ErrorKind::usage,
             "the correspondence needs a ring of positive q-characteristic");
    PhiContext ctx(r, p);
    const Algebra& src = ctx.source();

    SuiteReport rep{"simpson-default",
                    {{"ring", r.descriptor()}, {"suite", suite}, {"seed", seed}},
                    {},
                    0};

    std::vector<std::pair<std::string, AMatrix>> fixtures;
    fixtures.emplace_back("r1-zero", zero_matrix(src, 1));
    {
        AMatrix u = zero_matrix(src, 2);
        u[0][1] = src.one_elem();
        fixtures.emplace_back("r2-constant", u);
    }
    {
        AMatrix u = zero_matrix(src, 2);
        u[0][1] = src.x(1);
        fixtures.emplace_back("r2-linear", u);
    }
    {
        AMatrix u = zero_matrix(src, 2);
        u[0][1] = src.one_elem() + src.x(2);
        fixtures.emplace_back("r2-quadratic", u);
    }
    {
        AMatrix u = zero_matrix(src, 3);
        u[0][1] = src.one_elem();
        u[1][2] = src.one_elem();
        fixtures.emplace_back("r3-chain", u);
    }
    {
        AMatrix u = zero_matrix(src, 3);
        u[0][1] = src.x(1);
        u[0][2] = src.x(2);
        u[1][2] = src.one_elem() + src.x(1);
        fixtures.emplace_back("r3-mixed", u);
    }

    for (const auto& [key, u] : fixtures) {
        try {
            long rank = static_cast<long>(u.size());
            HiggsModule h(src, u);
            QDiffModule m = higgs_to_qdiff(ctx, h);
            HiggsModule back = qdiff_to_higgs(ctx, m);
            if (back.rank() != rank) {
                push_case(rep, key, false, "the recovered module has the wrong rank");
                continue;
            }
            auto wit = similarity_witness(u, back.theta(), static_cast<unsigned>(seed));
            bool ok = wit.has_value() && tmat_mul(*wit, u) == tmat_mul(back.theta(), *wit);
            push_case(rep, key, ok,
                      ok ? "" : "no change of basis matches the recovered curvature",
                      amatrix_to_json(back.theta()));
        } catch (const Error& e) {
            push_case(rep, key, false, e.what());
        }
    }
    sort_cases(rep);
    return rep;
}

Json suite_report_to_json(const SuiteReport& rep) {
    Json cases = Json::array();
    for (const auto& c : rep.cases) {
        Json jc;
        jc["case"] = c.key;
        jc["ok"] = c.ok;
        if (!c.ok && !c.detail.empty()) jc["detail"] = c.detail;
        if (!c.data.is_null()) jc["data"] = c.data;
        cases.push_back(std::move(jc));
    }
    Json out;
    out["suite"] = rep.suite;
    out["params"] = rep.params;
    out["cases"] = std::move(cases);
    out["failures"] = rep.failures;
    return out;
}

} // namespace qdp
