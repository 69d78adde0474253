#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobenius.hpp"
#include "qcomb.hpp"
#include "ring.hpp"
#include "twisted.hpp"

#include <map>
#include <vector>

using namespace qdp;

namespace {

ZPoly one_minus_t() { return ZPoly(std::vector<Int>{1, -1}); }

ZPoly zpow(const ZPoly& base, long e) {
    ZPoly r(1);
    for (long k = 0; k < e; ++k) r = r * base;
    return r;
}

// sum_{i=1}^{p} (i-1)_t! {p-1 over i-1}_t at index i
ZPoly first_divided_row(long i, int p) {
    return zq_factorial(i - 1) * zq_binomial(p - 1, i - 1);
}

} // namespace

TEST_CASE("coefficient family values") {
    for (int p : {2, 3, 5}) {
        for (long n = 0; n <= 5; ++n) {
            CHECK(frob_coeff_a(n, p * n, p) == ZPoly(1));
            for (long i = p * n + 1; i <= p * n + 3; ++i)
                CHECK(frob_coeff_a(n, i, p).is_zero());
            for (long i = 0; i < n; ++i) CHECK(frob_coeff_a(n, i, p).is_zero());
        }
        for (long i = 1; i <= p; ++i) CHECK(frob_coeff_a(1, i, p) == zq_binomial(p, i));
    }
    for (int p : {4}) {
        for (long n = 0; n <= 5; ++n)
            for (long i = 0; i < n; ++i) CHECK(frob_coeff_a(n, i, p).is_zero());
    }
    // (n)_t! A_{n,n} = (p)_t^n (n)_{t^p}! t^{(p-1)n(n-1)/2}
    for (int p : {2, 3}) {
        for (long n = 0; n <= 5; ++n) {
            ZPoly lhs = zq_factorial(n) * frob_coeff_a(n, n, p);
            ZPoly rhs = zpow(zq_int(p), n) * zq_factorial(n).substitute_power(p);
            rhs = rhs.shifted(static_cast<int>((p - 1) * n * (n - 1) / 2));
            CHECK(lhs == rhs);
        }
    }
    CHECK_THROWS_AS(frob_coeff_a(1, 1, 0), Error);
    CHECK_THROWS_AS(frob_coeff_a(-1, 0, 2), Error);
}

TEST_CASE("exchange identity") {
    // q^(n(n-1)/2) (1-q)^n (n)_q! {m over n}_q
    //   = sum_k (-1)^(n-k) q^(k(k-1)/2) {n over k}_q q^(m(n-k))
    for (long m = 0; m <= 6; ++m) {
        for (long n = 0; n <= 6; ++n) {
            ZPoly lhs = zpow(one_minus_t(), n) * zq_factorial(n) * zq_binomial(m, n);
            lhs = lhs.shifted(static_cast<int>(n * (n - 1) / 2));
            ZPoly rhs;
            for (long k = 0; k <= n; ++k) {
                ZPoly term = zq_binomial(n, k).shifted(
                    static_cast<int>(k * (k - 1) / 2 + m * (n - k)));
                rhs = ((n - k) % 2 != 0) ? rhs - term : rhs + term;
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("band identity for the coefficient family") {
    // q^(i(i-1)/2) (1-q)^(i-n) (i)_t! A_{n,i}
    //   = (p)_t^n (n)_{t^p}! q^(pn(n-1)/2)
    //     * sum_l (-1)^(i-n+l) q^(l(l-1)/2) {i over l}_t {i-l over n}_{t^p}
    for (int p : {2, 3}) {
        for (long n = 0; n <= 4; ++n) {
            for (long i = n; i <= p * n; ++i) {
                ZPoly lhs = zpow(one_minus_t(), i - n) * zq_factorial(i) *
                            frob_coeff_a(n, i, p);
                lhs = lhs.shifted(static_cast<int>(i * (i - 1) / 2));
                ZPoly sum;
                for (long l = 0; l <= i - n; ++l) {
                    ZPoly term = zq_binomial(i, l) *
                                 zq_binomial(i - l, n).substitute_power(p);
                    term = term.shifted(static_cast<int>(l * (l - 1) / 2));
                    sum = ((i - n + l) % 2 != 0) ? sum - term : sum + term;
                }
                ZPoly rhs = zpow(zq_int(p), n) * zq_factorial(n).substitute_power(p) * sum;
                rhs = rhs.shifted(static_cast<int>(p * n * (n - 1) / 2));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("divided coefficient closed forms") {
    for (int p : {2, 3, 5}) {
        CHECK(frob_coeff_b(1, 1, p) == ZPoly(1));
        CHECK(frob_coeff_b(1, 2, p) == zq_int(p - 1));
        CHECK(frob_coeff_b(2, 2, p) == ZPoly::t(p - 1));
        CHECK(frob_coeff_b(3, 3, p) == ZPoly::t(3 * (p - 1)));
        for (long i = 1; i <= p; ++i) CHECK(frob_coeff_b(1, i, p) == first_divided_row(i, p));
        for (long n = 0; n <= 5; ++n) {
            CHECK(frob_coeff_b(n, n, p) ==
                  ZPoly::t(static_cast<int>((p - 1) * n * (n - 1) / 2)));
            // the whole band is integral
            for (long i = n; i <= p * n; ++i) CHECK_NOTHROW(frob_coeff_b(n, i, p));
            for (long i = 0; i < n; ++i) CHECK(frob_coeff_b(n, i, p).is_zero());
            CHECK(frob_coeff_b(n, p * n + 1, p).is_zero());
        }
    }
    // B_{n,pn} = prod_{k=1}^n prod_{i=1}^{p-1} (kp-i)_t
    for (int p : {2, 3}) {
        for (long n = 0; n <= 4; ++n) {
            ZPoly prod(1);
            for (long k = 1; k <= n; ++k)
                for (long i = 1; i <= p - 1; ++i) prod = prod * zq_int(k * p - i);
            CHECK(frob_coeff_b(n, p * n, p) == prod);
        }
    }
    // corrupted numerator trips the falsifier channel
    ZPoly bad = zq_factorial(2) * (frob_coeff_a(2, 2, 2) + ZPoly(1));
    CHECK_THROWS_AS(divided_coeff_from(bad, 2, 2), Error);
    try {
        divided_coeff_from(bad, 2, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::falsified);
    }
}

TEST_CASE("divided coefficients at a root of unity") {
    // B_{n,pn}(q) = ((p-1)_q!)^n and (1-q)^(p-n) B_{n,p}(q) = (-1)^(n-1) C(p,n)
    for (int p : {2, 3, 5}) {
        for (const char* desc : {"CycF", "Fp"}) {
            Ring r = Ring::parse(std::string(desc) + ":" + std::to_string(p));
            RElem unit = q_factorial_at(r.q(), p - 1);
            for (long n = 0; n <= 3; ++n)
                CHECK(r.specialize(frob_coeff_b(n, p * n, p)) == unit.pow(n));
            RElem omq = r.one() - r.q();
            for (long n = 1; n <= p; ++n) {
                RElem lhs = omq.pow(p - n) * r.specialize(frob_coeff_b(n, p, p));
                Int sign = (n % 2 != 0) ? 1 : -1;
                CHECK(lhs == r.from_int(sign * binom_int(p, n)));
            }
        }
    }
    // the p = 3 value at the primitive root: B_{2,3}(q) = q^2 - 1
    Ring r3 = Ring::cyclotomic_field(3);
    CHECK(r3.specialize(frob_coeff_b(2, 3, 3)) == r3.q().pow(2) - r3.one());
}

TEST_CASE("normalized coefficients") {
    for (int p : {2, 3}) {
        for (long n = 0; n <= 4; ++n) {
            QPoly c = frob_coeff_c(n, p * n, p);
            CHECK(c == QPoly(Rat(1)));
        }
    }
    CHECK(frob_coeff_c(1, 1, 2) == QPoly(Rat(1)));
    CHECK(frob_coeff_c(1, 2, 2) == QPoly(Rat(1)));
    CHECK(frob_coeff_c(0, 0, 3) == QPoly(Rat(1)));
    CHECK(frob_coeff_c(2, 1, 2).is_zero());
    // the normalized family is not polynomial in general; the division
    // failure surfaces as the falsifier error
    CHECK_THROWS_AS(frob_coeff_c(2, 2, 2), Error);
    CHECK_THROWS_AS(frob_coeff_c(1, 1, 3), Error);
    try {
        frob_coeff_c(2, 2, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::falsified);
    }
}

TEST_CASE("binomial expansion in the auxiliary ring") {
    // (x + xi)^m = sum_i {m over i}_q x^(m-i) xi^(i)
    for (const char* desc : {"Zt", "CycF:3"}) {
        Ring r = Ring::parse(desc);
        Algebra alg = Algebra::polynomial(r);
        TwistParams par(r.q(), alg.y(), 1);
        XiPoly base = XiPoly::constant(alg.x()) + XiPoly::xi(alg);
        XiPoly lhs = XiPoly::constant(alg.one_elem());
        for (long m = 0; m <= 6; ++m) {
            XiPoly rhs(alg);
            for (long i = 0; i <= m; ++i) {
                RElem c = q_binomial_at(r.q(), m, i);
                rhs = rhs + twisted_power(par, i).scaled(alg.x(m - i, c));
            }
            CHECK(lhs == rhs);
            lhs = lhs * base;
        }
    }
}

TEST_CASE("pullback on the coordinate ring") {
    Ring zt = Ring::generic_zt();
    FrobeniusContext ctx(zt, 2);
    CHECK(ctx.on_A(ctx.source().x()) == ctx.target().x(2));
    CHECK(ctx.on_A(ctx.source().scalar(zt.from_long(5))) ==
          ctx.target().scalar(zt.from_long(5)));
    // t x'^2 -> t^2 x^4: the coefficient endomorphism rides along
    CHECK(ctx.on_A(ctx.source().x(2, zt.q())) == ctx.target().x(4, zt.q() * zt.q()));
    // the transport keeps coefficients fixed
    CHECK(ctx.transport(ctx.source().x(2, zt.q())) == ctx.target().x(4, zt.q()));
    // ring homomorphism on a sample
    AElem a = ctx.source().x(1, zt.q()) + ctx.source().one_elem();
    AElem b = ctx.source().x(2) - ctx.source().scalar(zt.from_long(3));
    CHECK(ctx.on_A(a * b) == ctx.on_A(a) * ctx.on_A(b));

    Ring c3 = Ring::cyclotomic_field(3);
    FrobeniusContext f3(c3, 3);
    CHECK(f3.on_A(f3.source().x(1, c3.q())) == f3.target().x(3, c3.q()));

    FrobeniusContext lau(c3, 3, true);
    CHECK(lau.on_A(lau.source().x(-1)) == lau.target().x(-3));

    CHECK_THROWS_AS(ctx.on_A(ctx.target().x()), Error);
    CHECK_THROWS_AS(FrobeniusContext(zt, 0), Error);
}

TEST_CASE("pullback on the auxiliary ring") {
    Ring zt = Ring::generic_zt();
    FrobeniusContext ctx(zt, 2);
    const Algebra& src = ctx.source();
    const Algebra& tgt = ctx.target();
    XiPoly xi_img = ctx.on_xi(XiPoly::xi(src));
    XiPoly shifted = XiPoly::constant(tgt.x()) + XiPoly::xi(tgt);
    CHECK(xi_img == shifted * shifted - XiPoly::constant(tgt.x(2)));
    CHECK(ctx.on_xi(XiPoly::constant(src.one_elem())) ==
          XiPoly::constant(tgt.one_elem()));
    // semilinearity over the coefficient endomorphism
    CHECK(ctx.on_xi(XiPoly::xi(src).scaled(src.scalar(zt.q()))) ==
          xi_img.scaled(tgt.scalar(zt.q() * zt.q())));
    // ring homomorphism on samples
    XiPoly f = XiPoly::xi(src) + XiPoly::constant(src.x());
    XiPoly g = XiPoly::xi(src, 2).scaled(src.x(1, zt.q())) -
               XiPoly::constant(src.scalar(zt.from_long(2)));
    CHECK(ctx.on_xi(f * g) == ctx.on_xi(f) * ctx.on_xi(g));

    // at q-characteristic p the coordinate image is the p-th twisted power
    for (int p : {2, 3, 5}) {
        for (const char* desc : {"CycF", "Fp"}) {
            Ring r = Ring::parse(std::string(desc) + ":" + std::to_string(p));
            FrobeniusContext c(r, p);
            CHECK(c.on_xi(XiPoly::xi(c.source())) ==
                  twisted_power(c.target_ring().params(), p));
        }
    }
}

TEST_CASE("twisted power images") {
    Ring zt = Ring::generic_zt();
    for (int p : {2, 3}) {
        FrobeniusContext ctx(zt, p);
        TwistedPowerImage img0 = frobenius_twisted_power(ctx, 0, 4);
        CHECK(img0.poly == XiPoly::constant(ctx.target().one_elem()));
        CHECK(img0.divided == dp_one(ctx.target_ring(), 4));

        // n = 1: sum_{i=1}^p {p over i}_q x^(p-i) xi^(i)
        TwistedPowerImage img1 = frobenius_twisted_power(ctx, 1, p);
        XiPoly expect(ctx.target());
        for (long i = 1; i <= p; ++i) {
            RElem c = q_binomial_at(zt.q(), p, i);
            expect = expect +
                     twisted_power(ctx.target_ring().params(), i)
                         .scaled(ctx.target().x(p - i, c));
        }
        CHECK(img1.poly == expect);

        // brute force: prod_{i<n} ((x+xi)^p - q^(pi) x^p)
        XiPoly shifted = XiPoly::constant(ctx.target().x()) + XiPoly::xi(ctx.target());
        XiPoly sp = XiPoly::constant(ctx.target().one_elem());
        for (int k = 0; k < p; ++k) sp = sp * shifted;
        for (long n = 0; n <= 3; ++n) {
            XiPoly prod = XiPoly::constant(ctx.target().one_elem());
            for (long i = 0; i < n; ++i)
                prod = prod * (sp - XiPoly::constant(ctx.target().x(p, zt.q().pow(p * i))));
            TwistedPowerImage img = frobenius_twisted_power(ctx, n, p * n);
            CHECK(img.poly == prod);
            CHECK(img.divided == dp_from_poly(prod, ctx.target_ring(), p * n));
        }
    }
    // the same product identity at a root of unity
    Ring c3 = Ring::cyclotomic_field(3);
    FrobeniusContext f3(c3, 3);
    XiPoly shifted = XiPoly::constant(f3.target().x()) + XiPoly::xi(f3.target());
    XiPoly sp = XiPoly::constant(f3.target().one_elem());
    for (int k = 0; k < 3; ++k) sp = sp * shifted;
    for (long n = 0; n <= 2; ++n) {
        XiPoly prod = XiPoly::constant(f3.target().one_elem());
        for (long i = 0; i < n; ++i)
            prod = prod * (sp - XiPoly::constant(f3.target().x(3, c3.q().pow(3 * i))));
        CHECK(frobenius_twisted_power(f3, n, 3 * n).poly == prod);
    }
}

TEST_CASE("divided Frobenius basis images") {
    Ring zt = Ring::generic_zt();
    for (int p : {2, 3, 5}) {
        FrobeniusContext ctx(zt, p);
        DPElem one_img = divided_frobenius(ctx, dp_one(ctx.source_ring(), 0), 1);
        CHECK(one_img == dp_one(ctx.target_ring(), 1));

        // omega^[1] -> sum_{i=1}^p (i-1)_q! {p-1 over i-1}_q x^(p-i) xi^[i]
        DPElem w1 = dp_basis(ctx.source_ring(), 1, 1);
        DPElem img = divided_frobenius(ctx, w1, p);
        std::map<long, AElem> cs;
        for (long i = 1; i <= p; ++i)
            cs.emplace(i, ctx.target().x(p - i, zt.specialize(first_divided_row(i, p))));
        CHECK(img == dp_from_coeffs(ctx.target_ring(), p, std::move(cs)));
    }

    // (n)_{q^p}! (p)_q^n [F*](omega^[n]) is the class of the twisted power image
    for (int p : {2, 3}) {
        FrobeniusContext ctx(zt, p);
        for (long n = 0; n <= 4; ++n) {
            DPElem lhs = divided_frobenius(ctx, dp_basis(ctx.source_ring(), n, n), p * n);
            RElem c = q_factorial_at(zt.q().pow(p), n) * q_int_at(zt.q(), p).pow(n);
            CHECK(lhs.scaled(c) == frobenius_twisted_power(ctx, n, p * n).divided);
        }
    }

    // filtration: the image of omega^[n] starts at index n
    FrobeniusContext ctx2(zt, 2);
    for (long n = 1; n <= 4; ++n) {
        DPElem img = divided_frobenius(ctx2, dp_basis(ctx2.source_ring(), n, n), 2 * n);
        CHECK(img.coeffs().begin()->first == n);
        CHECK(!img.coeff(n).is_zero());
    }

    // coefficient transport is linear over the plain substitution
    DPElem w = dp_basis(ctx2.source_ring(), 1, 1);
    AElem z = ctx2.source().x(1, zt.q());
    CHECK(divided_frobenius(ctx2, w.scaled_a(z), 2) ==
          divided_frobenius(ctx2, w, 2).scaled_a(ctx2.transport(z)));

    CHECK_THROWS_AS(divided_frobenius(ctx2, dp_basis(ctx2.source_ring(), 2, 2), 3), Error);
    CHECK_THROWS_AS(divided_frobenius(ctx2, dp_basis(ctx2.target_ring(), 1, 1), 4), Error);
}

TEST_CASE("divided Frobenius is a ring homomorphism") {
    for (int p : {2, 3, 4}) {
        std::vector<Ring> rings = {Ring::generic_zt(),
                                   Ring::cyclotomic_field(p)};
        for (const Ring& r : rings) {
            FrobeniusContext ctx(r, p);
            for (long m = 0; p * (m + m) <= 10; ++m) {
                for (long n = m; p * (m + n) <= 10; ++n) {
                    long st = m + n;
                    long tt = p * st;
                    DPElem wm = dp_basis(ctx.source_ring(), m, st);
                    DPElem wn = dp_basis(ctx.source_ring(), n, st);
                    DPElem lhs = divided_frobenius(ctx, dp_mul(wm, wn), tt);
                    DPElem rhs = dp_mul(divided_frobenius(ctx, wm, tt),
                                        divided_frobenius(ctx, wn, tt));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("splitting forward values") {
    for (int p : {2, 3}) {
        Ring r = Ring::cyclotomic_field(p);
        FrobeniusContext ctx(r, p);
        for (long k = 0; k < p; ++k) {
            MixedElem m(ctx.target(), p);
            m.add_term(k, 0, ctx.target().one_elem());
            CHECK(mixed_to_divided(ctx, m, p) == dp_basis(ctx.target_ring(), k, p));
        }
    }
    // xb^0 w^[1] at p = 2: x xi^[1] + xi^[2]
    Ring c2 = Ring::cyclotomic_field(2);
    FrobeniusContext ctx2(c2, 2);
    MixedElem m(ctx2.target(), 2);
    m.add_term(0, 1, ctx2.target().one_elem());
    DPElem img = mixed_to_divided(ctx2, m, 2);
    std::map<long, AElem> cs;
    cs.emplace(1, ctx2.target().x());
    cs.emplace(2, ctx2.target().one_elem());
    CHECK(img == dp_from_coeffs(ctx2.target_ring(), 2, std::move(cs)));

    // filtration compatibility on basis elements
    Ring c3 = Ring::cyclotomic_field(3);
    FrobeniusContext ctx3(c3, 3);
    for (long n = 0; n <= 2; ++n) {
        for (long k = 0; k < 3; ++k) {
            MixedElem b(ctx3.target(), 3);
            b.add_term(k, n, ctx3.target().one_elem());
            DPElem fwd = mixed_to_divided(ctx3, b, 3 * n + k);
            CHECK(!fwd.is_zero());
            CHECK(fwd.coeffs().begin()->first >= n);
            CHECK(fwd.top_index() == 3 * n + k);
        }
    }
}

TEST_CASE("splitting roundtrip") {
    for (int p : {2, 3}) {
        Ring r = Ring::cyclotomic_field(p);
        FrobeniusContext ctx(r, p);
        for (long n = 0; p * n <= 8; ++n) {
            for (long k = 0; k < p && p * n + k <= 8; ++k) {
                MixedElem m(ctx.target(), p);
                m.add_term(k, n, ctx.target().one_elem());
                DPElem fwd = mixed_to_divided(ctx, m, 8);
                CHECK(divided_to_mixed(ctx, fwd) == m);
            }
        }
        // a combined element with polynomial coefficients
        MixedElem m(ctx.target(), p);
        m.add_term(0, 0, ctx.target().x(2, r.q()));
        m.add_term(p - 1, 1, ctx.target().x() + ctx.target().one_elem());
        m.add_term(0, 2, ctx.target().scalar(r.q() - r.from_long(3)));
        DPElem fwd = mixed_to_divided(ctx, m, 2 * p + p - 1 + 1);
        CHECK(divided_to_mixed(ctx, fwd) == m);
        // and forward is injective on it
        CHECK(!fwd.is_zero());
    }
}

TEST_CASE("splitting preconditions") {
    Ring zt = Ring::generic_zt();
    FrobeniusContext generic(zt, 2);
    MixedElem m0(generic.target(), 2);
    m0.add_term(0, 0, generic.target().one_elem());
    CHECK_THROWS_AS(mixed_to_divided(generic, m0, 2), Error);

    // q-characteristic must match the exponent
    Ring c3 = Ring::cyclotomic_field(3);
    FrobeniusContext off(c3, 2);
    MixedElem m1(off.target(), 2);
    m1.add_term(0, 0, off.target().one_elem());
    CHECK_THROWS_AS(mixed_to_divided(off, m1, 2), Error);

    // the flat ring admits the forward map but not the inverse
    Ring cr3 = Ring::cyclotomic_ring(3);
    FrobeniusContext flat(cr3, 3);
    MixedElem m2(flat.target(), 3);
    m2.add_term(1, 1, flat.target().one_elem());
    DPElem fwd = mixed_to_divided(flat, m2, 4);
    CHECK(!fwd.is_zero());
    CHECK_THROWS_AS(divided_to_mixed(flat, fwd), Error);

    // reduced index bound
    FrobeniusContext ctx(Ring::cyclotomic_field(2), 2);
    MixedElem m3(ctx.target(), 2);
    CHECK_THROWS_AS(m3.add_term(2, 0, ctx.target().one_elem()), Error);
    CHECK_THROWS_AS(m3.add_term(-1, 0, ctx.target().one_elem()), Error);
    CHECK_THROWS_AS(m3.add_term(0, -1, ctx.target().one_elem()), Error);
}
