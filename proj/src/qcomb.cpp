#include "qcomb.hpp"

#include <mutex>

namespace qdp {

Int binom_int(long n, long k) {
    if (k < 0 || k > n || n < 0) return Int(0);
    if (k > n - k) k = n - k;
    Int r(1);
    for (long i = 1; i <= k; ++i) {
        r *= Int(n - k + i);
        r /= Int(i); // exact at every step: r is binom(n-k+i, i)
    }
    return r;
}

ZPoly zq_int(long m) {
    if (m < 0) fail(ErrorKind::precondition, "universal q-integer needs m >= 0");
    std::vector<Int> c(static_cast<size_t>(m), Int(1));
    return ZPoly(std::move(c));
}

ZPoly zq_factorial(long m) {
    if (m < 0) fail(ErrorKind::precondition, "universal q-factorial needs m >= 0");
    ZPoly r(1);
    for (long i = 2; i <= m; ++i) r = r * zq_int(i);
    return r;
}

namespace {

ZPoly zq_binomial_impl(long n, long k, std::map<std::pair<long, long>, ZPoly>& cache) {
    if (k < 0 || k > n) return ZPoly();
    if (k == 0 || k == n) return ZPoly(1);
    auto key = std::make_pair(n, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // Pascal recurrence: {n,k} = {n-1,k-1} + t^k * {n-1,k}
    ZPoly r = zq_binomial_impl(n - 1, k - 1, cache) +
              zq_binomial_impl(n - 1, k, cache).shifted(static_cast<int>(k));
    cache.emplace(key, r);
    return r;
}

} // namespace

ZPoly zq_binomial(long n, long k) {
    if (n < 0) fail(ErrorKind::precondition, "universal Gaussian binomial needs n >= 0");
    static std::map<std::pair<long, long>, ZPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    return zq_binomial_impl(n, k, cache);
}

QBinomCache::QBinomCache(RElem base) : base_(std::move(base)) {
    pows_.push_back(base_.ring().one());
    ints_.push_back(base_.ring().zero());
    facts_.push_back(base_.ring().one());
}

const RElem& QBinomCache::base_pow(long k) {
    while (static_cast<long>(pows_.size()) <= k) pows_.push_back(pows_.back() * base_);
    return pows_[static_cast<size_t>(k)];
}

RElem QBinomCache::qint(long m) {
    if (m < 0) fail(ErrorKind::precondition, "cache holds q-integers for m >= 0 only");
    while (static_cast<long>(ints_.size()) <= m)
        ints_.push_back(ints_.back() + base_pow(static_cast<long>(ints_.size()) - 1));
    return ints_[static_cast<size_t>(m)];
}

RElem QBinomCache::qfact(long m) {
    if (m < 0) fail(ErrorKind::precondition, "cache holds q-factorials for m >= 0 only");
    while (static_cast<long>(facts_.size()) <= m)
        facts_.push_back(facts_.back() * qint(static_cast<long>(facts_.size())));
    return facts_[static_cast<size_t>(m)];
}

RElem QBinomCache::binom(long n, long k) {
    if (k < 0 || k > n || n < 0) return base_.ring().zero();
    if (k == 0 || k == n) return base_.ring().one();
    auto key = std::make_pair(n, k);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    RElem r = binom(n - 1, k - 1) + base_pow(k) * binom(n - 1, k);
    memo_.emplace(key, r);
    return r;
}

RElem q_int_at(const RElem& base, long m) {
    QBinomCache cache(base);
    if (m >= 0) return cache.qint(m);
    // (-m)_q = -q^(-m) (m)_q, valid when the base is a unit
    auto inv = base.try_invert();
    if (!inv)
        fail(ErrorKind::precondition,
             "negative q-integer needs an invertible base, got " + base.str());
    return -(inv->pow(-m) * cache.qint(-m));
}

RElem q_factorial_at(const RElem& base, long m) {
    QBinomCache cache(base);
    return cache.qfact(m);
}

RElem q_binomial_at(const RElem& base, long n, long k) {
    QBinomCache cache(base);
    return cache.binom(n, k);
}

int q_char(const Ring& ring) {
    int declared = ring.declared_qchar();
    QBinomCache cache(ring.q());
    // scan for the first vanishing q-integer; past the declared value (or a
    // fixed horizon in the torsion-free case) the scan is conclusive
    int horizon = declared > 0 ? declared : 24;
    int found = 0;
    for (int m = 1; m <= horizon; ++m) {
        if (cache.qint(m).is_zero()) {
            found = m;
            break;
        }
    }
    if (found != declared)
        fail(ErrorKind::internal, "q-characteristic scan found " + std::to_string(found) +
                                      " but " + ring.descriptor() + " declares " +
                                      std::to_string(declared));
    return declared;
}

RElem q_lucas(const Ring& ring, long n, long k) {
    if (n < 0 || k < 0) fail(ErrorKind::precondition, "factorization rule needs n, k >= 0");
    int p = q_char(ring);
    if (p <= 0) fail(ErrorKind::precondition, "factorization rule needs positive q-characteristic");
    long n1 = n / p, n0 = n % p;
    long k1 = k / p, k0 = k % p;
    return ring.from_int(binom_int(n1, k1)) * ring.specialize(zq_binomial(n0, k0));
}

} // namespace qdp
