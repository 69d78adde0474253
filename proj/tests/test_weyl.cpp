#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linalg.hpp"
#include "qcomb.hpp"
#include "ring.hpp"
#include "twisted.hpp"
#include "weyl.hpp"

#include <random>

using namespace qdp;

namespace {

AElem rand_elem(const Algebra& alg, std::mt19937& rng, int maxdeg = 2) {
    std::map<long, RElem> terms;
    for (int tries = 0; tries < 3; ++tries) {
        long e = static_cast<long>(rng() % static_cast<unsigned>(maxdeg + 1));
        RElem c = alg.ring().from_long(static_cast<long>(rng() % 7) - 3);
        if (c.is_zero()) continue;
        terms.emplace(e, c);
    }
    return alg.from_terms(std::move(terms));
}

WeylElem rand_op(const Algebra& alg, std::mt19937& rng, int deg) {
    std::vector<AElem> cs;
    for (int k = 0; k <= deg; ++k) cs.push_back(rand_elem(alg, rng));
    return WeylElem(alg, std::move(cs));
}

// all monomials x^a d^(p*b) with a + p*b <= D
std::vector<WeylElem> curvature_grid(const Algebra& alg, long p, long D) {
    std::vector<WeylElem> out;
    for (long b = 0; p * b <= D; ++b)
        for (long a = 0; a + p * b <= D; ++a)
            out.push_back(WeylElem::monomial(alg, a, static_cast<int>(p * b)));
    return out;
}

} // namespace

TEST_CASE("the commutation rule and its iterates") {
    Ring zts = Ring::parse("Zts");
    Algebra alg = Algebra::with_s(zts);
    WeylElem d = WeylElem::d_power(alg);
    WeylElem x = WeylElem::constant(alg.x());

    // d * x = sigma(x) d + 1
    WeylElem dx = weyl_mul(d, x);
    CHECK(dx.coeff(1) == sigma_apply(alg.x(), 1));
    CHECK(dx.coeff(0) == alg.one_elem());
    CHECK(dx.degree() == 1);

    // d^k * x = sigma^k(x) d^k + (k)_q d^(k-1)
    for (int k = 1; k <= 6; ++k) {
        WeylElem lhs = weyl_mul(WeylElem::d_power(alg, k), x);
        CHECK(lhs.coeff(k) == sigma_apply(alg.x(), k));
        CHECK(lhs.coeff(k - 1) == alg.scalar(q_int_at(zts.q(), k)));
        CHECK(lhs.degree() == k);
        for (int j = 0; j < k - 1; ++j) CHECK(lhs.coeff(j).is_zero());
    }

    // multiplying by one changes nothing
    std::mt19937 rng(3);
    WeylElem z = rand_op(alg, rng, 3);
    CHECK(weyl_mul(z, WeylElem::constant(alg.one_elem())) == z);
    CHECK(weyl_mul(WeylElem::constant(alg.one_elem()), z) == z);
}

TEST_CASE("the operator product is associative") {
    // exhaustive monomial triples over the generic one-parameter ring
    Ring zt = Ring::parse("Zt");
    Algebra alg = Algebra::polynomial(zt);
    std::vector<WeylElem> monos;
    for (long a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) monos.push_back(WeylElem::monomial(alg, a, b));
    for (const auto& u : monos)
        for (const auto& v : monos)
            for (const auto& w : monos)
                CHECK(weyl_mul(weyl_mul(u, v), w) == weyl_mul(u, weyl_mul(v, w)));

    // random operators with a generic additive shift
    Ring zts = Ring::parse("Zts");
    Algebra as = Algebra::with_s(zts);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        WeylElem u = rand_op(as, rng, 2), v = rand_op(as, rng, 2), w = rand_op(as, rng, 2);
        CHECK(weyl_mul(weyl_mul(u, v), w) == weyl_mul(u, weyl_mul(v, w)));
    }
}

TEST_CASE("operators act on the base algebra") {
    Ring zt = Ring::parse("Zt");
    Algebra alg = Algebra::polynomial(zt);
    WeylElem d = WeylElem::d_power(alg);

    CHECK(weyl_apply(d, alg.x()) == alg.one_elem());
    // (x d)(x^2) = (2)_q x^2 when h = 0
    WeylElem xd = WeylElem::monomial(alg, 1, 1);
    CHECK(weyl_apply(xd, alg.x(2)) == alg.x(2, q_int_at(zt.q(), 2)));
    std::mt19937 rng(7);
    AElem z = rand_elem(alg, rng, 4);
    CHECK(weyl_apply(WeylElem::constant(alg.one_elem()), z) == z);

    // the action turns products into composites
    Ring zts = Ring::parse("Zts");
    Algebra as = Algebra::with_s(zts);
    for (int trial = 0; trial < 8; ++trial) {
        WeylElem u = rand_op(as, rng, 3), v = rand_op(as, rng, 3);
        AElem w = rand_elem(as, rng, 4);
        CHECK(weyl_apply(weyl_mul(u, v), w) == weyl_apply(u, weyl_apply(v, w)));
    }
}

TEST_CASE("the duality route reproduces the operator product") {
    for (const char* desc : {"Zts", "CycF:3"}) {
        Ring r = Ring::parse(desc);
        Algebra alg = r.with_s() ? Algebra::with_s(r) : Algebra::polynomial(r);

        // generator examples
        WeylElem d = WeylElem::d_power(alg);
        WeylElem x = WeylElem::constant(alg.x());
        CHECK(weyl_mul_via_duality(d, d, 6) == WeylElem::d_power(alg, 2));
        CHECK(weyl_mul_via_duality(d, x, 6) == weyl_mul(d, x));
        CHECK(weyl_mul_via_duality(x, d, 6) == WeylElem::monomial(alg, 1, 1));

        // all monomial pairs with total derivation degree <= 6
        for (long a1 = 0; a1 <= 2; ++a1)
            for (int b1 = 0; b1 <= 3; ++b1)
                for (long a2 = 0; a2 <= 2; ++a2)
                    for (int b2 = 0; b2 + b1 <= 6; ++b2) {
                        WeylElem u = WeylElem::monomial(alg, a1, b1);
                        WeylElem v = WeylElem::monomial(alg, a2, b2);
                        CHECK(weyl_mul_via_duality(u, v, 6) == weyl_mul(u, v));
                    }

        // random operators at exactly the required truncation
        std::mt19937 rng(11);
        for (int trial = 0; trial < 5; ++trial) {
            WeylElem u = rand_op(alg, rng, 3), v = rand_op(alg, rng, 3);
            CHECK(weyl_mul_via_duality(u, v, u.degree() + v.degree()) == weyl_mul(u, v));
        }
    }

    // too small a truncation is refused
    Ring zt = Ring::parse("Zt");
    Algebra alg = Algebra::polynomial(zt);
    WeylElem d3 = WeylElem::d_power(alg, 3);
    CHECK_THROWS_AS(weyl_mul_via_duality(d3, d3, 5), Error);
}

TEST_CASE("curvature map: values, injectivity, centrality, multiplicativity") {
    Ring cf3 = Ring::parse("CycF:3");
    Algebra alg = Algebra::polynomial(cf3);
    long p = 3;

    CHECK(p_curvature(CurvaturePoly::theta(alg)) == WeylElem::d_power(alg, 3));
    CHECK(p_curvature(CurvaturePoly::constant(alg.one_elem())) == WeylElem::constant(alg.one_elem()));
    CHECK(p_curvature(CurvaturePoly::theta(alg, 2).scaled(alg.x())) ==
          WeylElem::monomial(alg, 1, 6));

    // injective: the input is recovered from every p-th coefficient
    std::mt19937 rng(13);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<AElem> cs;
        for (int k = 0; k <= 4; ++k) cs.push_back(rand_elem(alg, rng));
        CurvaturePoly f(alg, cs);
        WeylElem im = p_curvature(f);
        for (int k = 0; k <= 4; ++k) CHECK(im.coeff(static_cast<int>(p) * k) == f.coeff(k));
        for (int j = 0; j <= im.degree(); ++j)
            if (j % p != 0) CHECK(im.coeff(j).is_zero());
    }

    // the image commutes with multiplication operators
    for (long a = 0; a <= 4; ++a) {
        WeylElem xa = WeylElem::constant(alg.x(a));
        WeylElem im = p_curvature(CurvaturePoly::theta(alg, 2) + CurvaturePoly::theta(alg, 1));
        CHECK(weyl_mul(im, xa) == weyl_mul(xa, im));
    }

    // multiplicative on monomials
    for (long u = 0; u <= 2; ++u)
        for (int i = 0; i <= 2; ++i)
            for (long v = 0; v <= 2; ++v)
                for (int j = 0; j <= 2; ++j) {
                    CurvaturePoly f = CurvaturePoly::theta(alg, i).scaled(alg.x(u));
                    CurvaturePoly g = CurvaturePoly::theta(alg, j).scaled(alg.x(v));
                    CHECK(p_curvature(f * g) == weyl_mul(p_curvature(f), p_curvature(g)));
                }

    // rejected away from positive q-characteristic or divisibility
    Ring zt = Ring::parse("Zt");
    CHECK_THROWS_AS(p_curvature(CurvaturePoly::theta(Algebra::polynomial(zt))), Error);
    Ring cr3 = Ring::parse("CycR:3");
    CHECK_THROWS_AS(p_curvature(CurvaturePoly::theta(Algebra::polynomial(cr3))), Error);
}

TEST_CASE("centralizer of the coordinate by brute force") {
    // over the generic ring only multiplication operators survive
    Ring zt = Ring::parse("Zt");
    Algebra alg = Algebra::polynomial(zt);
    auto cent = centralizer_basis(alg, 3);
    REQUIRE(cent.size() == 4);
    std::vector<WeylElem> expect;
    for (long a = 0; a <= 3; ++a) expect.push_back(WeylElem::constant(alg.x(a)));
    CHECK(same_span(weyl_span_rows(alg, cent, 4, 4), weyl_span_rows(alg, expect, 4, 4), zt,
                    weyl_grid_cols(alg, 4, 4)));

    // degree zero: scalars only
    auto c0 = centralizer_basis(alg, 0);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0] == WeylElem::constant(alg.one_elem()));

    // at a root of unity the pure derivation powers d^(p*b) join in
    Ring cf2 = Ring::parse("CycF:2");
    Algebra a2 = Algebra::polynomial(cf2);
    auto cent2 = centralizer_basis(a2, 4);
    auto expect2 = curvature_grid(a2, 2, 4);
    CHECK(cent2.size() == expect2.size());
    CHECK(same_span(weyl_span_rows(a2, cent2, 5, 5), weyl_span_rows(a2, expect2, 5, 5), cf2,
                    weyl_grid_cols(a2, 5, 5)));
}

TEST_CASE("centralizer agrees with the curvature image over fields") {
    for (const char* desc : {"CycF:2", "CycF:3", "Fp:2", "Fp:3"}) {
        Ring r = Ring::parse(desc);
        Algebra alg = Algebra::polynomial(r);
        long p = q_char(r);
        long D = 2 * p;
        auto cent = centralizer_basis(alg, D);
        std::vector<WeylElem> expect;
        for (long b = 0; p * b <= D; ++b)
            for (long a = 0; a + p * b <= D; ++a)
                expect.push_back(
                    p_curvature(CurvaturePoly::theta(alg, static_cast<int>(b)).scaled(alg.x(a))));
        CHECK(cent.size() == expect.size());
        CHECK(same_span(weyl_span_rows(alg, cent, D + 1, D + 1),
                        weyl_span_rows(alg, expect, D + 1, D + 1), r,
                        weyl_grid_cols(alg, D + 1, D + 1)));
    }
}

TEST_CASE("centralizer containment over a flat non-divisible ring") {
    // containment in the span of x^a d^(p*b) holds even where spans cannot
    // be compared by rank
    Ring cr2 = Ring::parse("CycR:2");
    Algebra alg = Algebra::polynomial(cr2);
    long D = 4;
    auto cent = centralizer_basis(alg, D);
    auto grid = curvature_grid(alg, 2, D);
    auto family = weyl_span_rows(alg, grid, D + 1, D + 1);
    size_t n = weyl_grid_cols(alg, D + 1, D + 1);
    CHECK(!cent.empty());
    for (const auto& row : weyl_span_rows(alg, cent, D + 1, D + 1))
        CHECK(span_contains(family, row, cr2, n));
}

TEST_CASE("center of the operator algebra by brute force") {
    // the stated basis at the cube root of unity, total degree 6
    Ring cf3 = Ring::parse("CycF:3");
    Algebra a3 = Algebra::polynomial(cf3);
    auto z3 = center_basis(a3, 6);
    std::vector<WeylElem> expect3 = {
        WeylElem::constant(a3.one_elem()),    WeylElem::constant(a3.x(3)),
        WeylElem::constant(a3.x(6)),          WeylElem::d_power(a3, 3),
        WeylElem::monomial(a3, 3, 3),         WeylElem::d_power(a3, 6),
    };
    CHECK(z3.size() == expect3.size());
    CHECK(same_span(weyl_span_rows(a3, z3, 7, 7), weyl_span_rows(a3, expect3, 7, 7), cf3,
                    weyl_grid_cols(a3, 7, 7)));

    // the classical Weyl algebra in characteristic 2
    Ring f2 = Ring::parse("Fp:2");
    Algebra a2 = Algebra::polynomial(f2);
    auto z2 = center_basis(a2, 2);
    std::vector<WeylElem> expect2 = {WeylElem::constant(a2.one_elem()),
                                     WeylElem::constant(a2.x(2)), WeylElem::d_power(a2, 2)};
    CHECK(z2.size() == expect2.size());
    CHECK(same_span(weyl_span_rows(a2, z2, 3, 3), weyl_span_rows(a2, expect2, 3, 3), f2,
                    weyl_grid_cols(a2, 3, 3)));

    // degree zero
    auto z0 = center_basis(a2, 0);
    REQUIRE(z0.size() == 1);
    CHECK(z0[0] == WeylElem::constant(a2.one_elem()));

    // the full grid x^(pa) d^(pb) with pa + pb <= 2p, over several fields
    for (const char* desc : {"CycF:2", "CycF:3", "Fp:3"}) {
        Ring r = Ring::parse(desc);
        Algebra alg = Algebra::polynomial(r);
        long p = q_char(r);
        long D = 2 * p;
        auto z = center_basis(alg, D);
        std::vector<WeylElem> expect;
        for (long b = 0; p * b <= D; ++b)
            for (long a = 0; p * a + p * b <= D; ++a)
                expect.push_back(WeylElem::monomial(alg, p * a, static_cast<int>(p * b)));
        CHECK(z.size() == expect.size());
        CHECK(same_span(weyl_span_rows(alg, z, D + 1, D + 1),
                        weyl_span_rows(alg, expect, D + 1, D + 1), r,
                        weyl_grid_cols(alg, D + 1, D + 1)));
    }

    // preconditions: generic ring, non-divisible ring, nonzero shift
    Ring zt = Ring::parse("Zt");
    CHECK_THROWS_AS(center_basis(Algebra::polynomial(zt), 2), Error);
    Ring cr3 = Ring::parse("CycR:3");
    CHECK_THROWS_AS(center_basis(Algebra::polynomial(cr3), 2), Error);
    Ring f3 = Ring::parse("Fp:3");
    Algebra shifted(f3, f3.from_long(2));
    CHECK_THROWS_AS(center_basis(shifted, 2), Error);
}
