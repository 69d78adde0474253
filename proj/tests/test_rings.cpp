#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcomb.hpp"
#include "ring.hpp"
#include "zpoly.hpp"

#include <random>

using namespace qdp;

TEST_CASE("integer polynomial arithmetic and printing") {
    ZPoly a = ZPoly::t(2, 3) + ZPoly(1);      // 3t^2 + 1
    ZPoly b = ZPoly::t(1) - ZPoly(2);         // t - 2
    CHECK(a.degree() == 2);
    CHECK((a * b).coeff(3) == 3);
    CHECK((a * b).coeff(0) == -2);
    CHECK((a - a).is_zero());
    CHECK((a - a).degree() == -1);
    CHECK(a.str() == "3*t^2 + 1");
    CHECK(b.str() == "t - 2");
    CHECK(ZPoly().str() == "0");
    CHECK((-b).str() == "-t + 2");
    CHECK(a.eval(Int(2)) == 13);
    CHECK(a.substitute_power(3) == ZPoly::t(6, 3) + ZPoly(1));
    CHECK(a.shifted(2) == ZPoly::t(4, 3) + ZPoly::t(2));
}

TEST_CASE("exact integer polynomial division") {
    ZPoly one_minus_t2 = ZPoly(1) - ZPoly::t(2);
    ZPoly one_minus_t = ZPoly(1) - ZPoly::t(1);
    auto q = exact_divide(one_minus_t2, one_minus_t);
    REQUIRE(q.has_value());
    CHECK(*q == ZPoly(1) + ZPoly::t(1));

    auto bad = exact_divide(ZPoly(1) + ZPoly::t(1), ZPoly(1) + ZPoly::t(2));
    CHECK_FALSE(bad.has_value());

    // integrality matters, not just divisibility over the rationals
    auto frac = exact_divide(ZPoly::t(1), ZPoly(2));
    CHECK_FALSE(frac.has_value());

    auto zero = exact_divide(ZPoly(), one_minus_t);
    REQUIRE(zero.has_value());
    CHECK(zero->is_zero());

    ZPoly t3m1 = ZPoly::t(3) - ZPoly(1);
    ZPoly tm1 = ZPoly::t(1) - ZPoly(1);
    CHECK(*exact_divide(t3m1, tm1) == zq_int(3));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == ZPoly::t(1) - ZPoly(1));
    CHECK(cyclotomic(2) == ZPoly::t(1) + ZPoly(1));
    CHECK(cyclotomic(3) == zq_int(3));
    CHECK(cyclotomic(4) == ZPoly::t(2) + ZPoly(1));
    CHECK(cyclotomic(5) == zq_int(5));
    CHECK(cyclotomic(6) == ZPoly::t(2) - ZPoly::t(1) + ZPoly(1));
    CHECK(cyclotomic(12) == ZPoly::t(4) - ZPoly::t(2) + ZPoly(1));
    // product over divisors reassembles t^n - 1
    ZPoly prod = cyclotomic(1) * cyclotomic(2) * cyclotomic(3) * cyclotomic(6);
    CHECK(prod == ZPoly::t(6) - ZPoly(1));
}

TEST_CASE("rational polynomial helpers") {
    QPoly a = QPoly::from_z(ZPoly::t(2) - ZPoly(1));
    QPoly b = QPoly::from_z(ZPoly::t(1) - ZPoly(1));
    auto dm = a.divmod(b);
    CHECK(dm.rem.is_zero());
    CHECK(dm.quo == QPoly::from_z(ZPoly::t(1) + ZPoly(1)));

    auto g = xgcd(a, QPoly::from_z(cyclotomic(4)));
    CHECK(g.g.degree() == 0); // t^2 - 1 and t^2 + 1 are coprime over Q
    CHECK((g.s * a + g.t * QPoly::from_z(cyclotomic(4))) == g.g);

    auto z = QPoly(Rat(1, 2)).to_z();
    CHECK_FALSE(z.has_value());
    auto w = QPoly::from_z(ZPoly::t(1, 7)).to_z();
    REQUIRE(w.has_value());
    CHECK(*w == ZPoly::t(1, 7));
}

TEST_CASE("ring descriptors parse and round-trip") {
    for (const char* d : {"Zt", "Zts", "CycF:3", "CycF:4", "CycR:5", "Fp:7"}) {
        Ring r = Ring::parse(d);
        CHECK(r.descriptor() == d);
    }
    CHECK(Ring::parse("Zt").declared_qchar() == 0);
    CHECK(Ring::parse("CycF:4").declared_qchar() == 4);
    CHECK(Ring::parse("Fp:2").declared_qchar() == 2);
    CHECK(Ring::parse("CycF:6").q_divisible());
    CHECK(Ring::parse("CycR:3").q_flat());
    CHECK_FALSE(Ring::parse("CycR:3").is_field());
    CHECK(Ring::parse("Fp:3").is_field());

    for (const char* bad : {"Zq", "CycF", "CycF:1", "CycR:4", "Fp:6", "Fp:0", "Fp:x", "Fp:2x"}) {
        CHECK_THROWS_AS(Ring::parse(bad), Error);
        try {
            Ring::parse(bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::usage);
        }
    }
}

TEST_CASE("ring axioms hold on random triples") {
    std::mt19937_64 rng(12345);
    auto sample_z = [&](int deg) {
        std::vector<Int> c(static_cast<size_t>(deg) + 1);
        for (auto& x : c) x = Int(static_cast<long>(rng() % 11) - 5);
        return ZPoly(std::move(c));
    };
    for (const char* d : {"Zt", "Zts", "CycF:5", "CycR:3", "Fp:7"}) {
        Ring r = Ring::parse(d);
        for (int trial = 0; trial < 25; ++trial) {
            RElem a = r.specialize(sample_z(3));
            RElem b = r.specialize(sample_z(3));
            RElem c = r.specialize(sample_z(3));
            if (r.with_s()) a = a + r.s_gen() * r.specialize(sample_z(2));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a + b == b + a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + r.zero() == a);
            CHECK(a * r.one() == a);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("cyclotomic field elements invert") {
    Ring r = Ring::parse("CycF:3");
    RElem q = r.q();
    CHECK(q.pow(3) == r.one()); // t^3 = 1 in Q[t]/Phi_3
    auto qi = q.try_invert();
    REQUIRE(qi.has_value());
    CHECK(*qi == q.pow(2));
    CHECK(q.pow(-1) == q.pow(2));
    CHECK_FALSE(r.zero().try_invert().has_value());

    // (2)_q = 1 + i in the fourth cyclotomic field; its inverse is (1 - i)/2
    Ring r4 = Ring::parse("CycF:4");
    RElem two_q = q_int_at(r4.q(), 2);
    auto inv = two_q.try_invert();
    REQUIRE(inv.has_value());
    CHECK(*inv * two_q == r4.one());
    RElem half = *r4.from_long(2).try_invert();
    CHECK(*inv == (r4.one() - r4.q()) * half);
}

TEST_CASE("cyclotomic integer ring distinguishes units") {
    Ring r = Ring::parse("CycR:3");
    RElem q = r.q();
    auto qi = q.try_invert();
    REQUIRE(qi.has_value());
    CHECK(*qi == q * q);

    auto u = (r.one() + q).try_invert(); // 1 + zeta is a unit, inverse -zeta
    REQUIRE(u.has_value());
    CHECK(*u == -q);

    // 1 - zeta has norm 3, hence is not invertible over the integers
    CHECK_FALSE((r.one() - q).try_invert().has_value());
}

TEST_CASE("prime field arithmetic") {
    Ring r = Ring::parse("Fp:5");
    CHECK(r.from_long(3) + r.from_long(4) == r.from_long(2));
    CHECK(r.from_long(3) * r.from_long(4) == r.from_long(2));
    CHECK(*r.from_long(2).try_invert() == r.from_long(3));
    CHECK(r.from_long(2).pow(-2) == r.from_long(4));
    CHECK(r.from_long(-1) == r.from_long(4));
    CHECK(r.q() == r.one());
    CHECK(r.specialize(ZPoly::t(3) + ZPoly(2)) == r.from_long(3));
}

TEST_CASE("two-variable coefficients") {
    Ring r = Ring::parse("Zts");
    RElem t = r.q();
    RElem s = r.s_gen();
    RElem sq = (t + s) * (t + s);
    CHECK(sq == t * t + r.from_long(2) * t * s + s * s);
    CHECK(sq.str() == "s^2 + (2*t)*s + t^2");
    CHECK((t + s).fstar(2) == t * t + s * s);
    CHECK_THROWS_AS(Ring::parse("Zt").s_gen(), Error);
}

TEST_CASE("ring endomorphism fixes prime and cyclotomic scalars") {
    for (const char* d : {"CycF:3", "CycR:5", "Fp:3"}) {
        Ring r = Ring::parse(d);
        RElem a = r.specialize(ZPoly::t(1, 2) + ZPoly(1));
        CHECK(a.fstar(r.p()) == a);
    }
    Ring zt = Ring::parse("Zt");
    CHECK(zt.q().fstar(3) == zt.q().pow(3));
}

TEST_CASE("exact division inside a ring") {
    Ring zt = Ring::parse("Zt");
    RElem num = zt.one() - zt.q().pow(2);
    RElem den = zt.one() - zt.q();
    auto d = num.exact_div(den);
    REQUIRE(d.has_value());
    CHECK(*d == zt.one() + zt.q());
    CHECK_FALSE((zt.one() + zt.q()).exact_div(zt.from_long(2)).has_value());

    Ring zts = Ring::parse("Zts");
    RElem s = zts.s_gen();
    RElem t = zts.q();
    auto e = (t * s + s * s).exact_div(s);
    REQUIRE(e.has_value());
    CHECK(*e == t + s);
    CHECK_FALSE((t + s).exact_div(s).has_value());

    Ring cr = Ring::parse("CycR:5");
    auto f = cr.q().pow(3).exact_div(cr.q());
    REQUIRE(f.has_value());
    CHECK(*f == cr.q().pow(2));
    CHECK_THROWS_AS((void)cr.one().exact_div(cr.zero()), Error);
}

TEST_CASE("universal q-analogs") {
    CHECK(zq_int(0).is_zero());
    CHECK(zq_int(1) == ZPoly(1));
    CHECK(zq_int(4) == ZPoly(std::vector<Int>{1, 1, 1, 1}));
    CHECK(zq_factorial(3) == zq_int(1) * zq_int(2) * zq_int(3));
    CHECK(zq_binomial(4, 2) == ZPoly(std::vector<Int>{1, 1, 2, 1, 1}));
    CHECK(zq_binomial(3, 5).is_zero());
    CHECK(zq_binomial(5, 0) == ZPoly(1));

    // (m)_q is the edge column of the binomial table
    for (long m = 1; m <= 20; ++m) CHECK(zq_binomial(m, 1) == zq_int(m));

    // symmetry in the column index
    for (long n = 0; n <= 12; ++n)
        for (long k = 0; k <= n; ++k) CHECK(zq_binomial(n, k) == zq_binomial(n, n - k));

    // factorial quotient form: {n,k} * (k)! * (n-k)! = (n)!
    for (long n = 0; n <= 9; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(zq_binomial(n, k) * zq_factorial(k) * zq_factorial(n - k) ==
                  zq_factorial(n));

    // transposed Pascal recurrence as an independent cross-check
    for (long n = 1; n <= 10; ++n)
        for (long k = 1; k <= n; ++k)
            CHECK(zq_binomial(n, k) ==
                  zq_binomial(n - 1, k - 1).shifted(static_cast<int>(n - k)) +
                      zq_binomial(n - 1, k));
}

TEST_CASE("Vandermonde convolution for Gaussian binomials") {
    for (long m = 0; m <= 8; ++m)
        for (long n = 0; n <= 8; ++n)
            for (long k = 0; k <= m + n; ++k) {
                ZPoly sum;
                for (long j = std::max(0L, k - m); j <= std::min(n, k); ++j) {
                    ZPoly term = zq_binomial(m, k - j) * zq_binomial(n, j);
                    sum = sum + term.shifted(static_cast<int>((m - (k - j)) * j));
                }
                CHECK(sum == zq_binomial(m + n, k));
            }
}

TEST_CASE("q-integers at arbitrary base elements") {
    Ring r = Ring::parse("CycF:3");
    RElem q = r.q();
    CHECK(q_int_at(q, 0).is_zero());
    CHECK(q_int_at(q, 3).is_zero()); // q-characteristic 3
    CHECK(q_int_at(q, 2) == r.one() + q);
    CHECK(q_factorial_at(q, 2) == r.one() + q);

    // (m+n)_q = (m)_q + q^m (n)_q, including negative m
    for (long m = -4; m <= 4; ++m)
        for (long n = -4; n <= 4; ++n)
            CHECK(q_int_at(q, m + n) == q_int_at(q, m) + q.pow(m) * q_int_at(q, n));

    // base q^2 differs from base q
    CHECK(q_int_at(q.pow(2), 2) == r.one() + q.pow(2));

    Ring zt = Ring::parse("Zt");
    CHECK_THROWS_AS(q_int_at(zt.q(), -1), Error);

    CHECK(q_binomial_at(q, 4, 2) == r.specialize(zq_binomial(4, 2)));
}

TEST_CASE("q-characteristic scan agrees with the descriptor") {
    CHECK(q_char(Ring::parse("Zt")) == 0);
    CHECK(q_char(Ring::parse("Zts")) == 0);
    CHECK(q_char(Ring::parse("CycF:4")) == 4);
    CHECK(q_char(Ring::parse("CycF:6")) == 6);
    CHECK(q_char(Ring::parse("CycR:5")) == 5);
    CHECK(q_char(Ring::parse("Fp:7")) == 7);
}

TEST_CASE("base-p factorization of Gaussian binomials") {
    for (int p : {2, 3, 4, 5, 6}) {
        Ring r = Ring::cyclotomic_field(p);
        QBinomCache cache(r.q());
        for (long n = 0; n <= 3L * p; ++n)
            for (long k = 0; k <= n; ++k) CHECK(cache.binom(n, k) == q_lucas(r, n, k));
    }
    Ring f5 = Ring::parse("Fp:5");
    QBinomCache cache(f5.q());
    for (long n = 0; n <= 15; ++n)
        for (long k = 0; k <= n; ++k) CHECK(cache.binom(n, k) == q_lucas(f5, n, k));
    CHECK_THROWS_AS(q_lucas(Ring::parse("Zt"), 2, 1), Error);
}

TEST_CASE("sign powers at roots of unity") {
    // (-1)^(ip) = (-1)^i q^(ip(ip-1)/2) when the q-characteristic is p
    for (int p : {2, 3, 5}) {
        Ring r = Ring::cyclotomic_ring(p);
        for (long i = 0; i <= 6; ++i) {
            long ip = i * p;
            RElem lhs = r.from_long(ip % 2 == 0 ? 1 : -1);
            RElem rhs = r.from_long(i % 2 == 0 ? 1 : -1) * r.q().pow(ip * (ip - 1) / 2);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("ordinary binomials") {
    CHECK(binom_int(6, 3) == 20);
    CHECK(binom_int(5, 0) == 1);
    CHECK(binom_int(4, 7) == 0);
    CHECK(binom_int(40, 20) == Int("137846528820"));
}
