#include "linalg.hpp"

#include <sstream>

namespace qdp {

RMatrix::RMatrix(Ring ring, size_t rows, size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols, ring_.zero()) {}

RElem& RMatrix::at(size_t i, size_t j) {
    if (i >= rows_ || j >= cols_) fail(ErrorKind::internal, "matrix index out of range");
    return a_[i * cols_ + j];
}

const RElem& RMatrix::at(size_t i, size_t j) const {
    if (i >= rows_ || j >= cols_) fail(ErrorKind::internal, "matrix index out of range");
    return a_[i * cols_ + j];
}

namespace {

struct Eliminated {
    std::vector<std::vector<RElem>> m; // fraction-free row echelon form
    std::vector<long> pivot_col;       // per echelon row
    size_t cols = 0;
};

// one-step fraction-free elimination: every 2x2 cross-product is exactly
// divisible by the previous pivot, so entries stay determinant-sized
Eliminated eliminate(const RMatrix& mat) {
    const Ring& ring = mat.ring();
    Eliminated e;
    e.cols = mat.cols();
    std::vector<std::vector<RElem>> m(mat.rows());
    for (size_t i = 0; i < mat.rows(); ++i) {
        m[i].reserve(mat.cols());
        for (size_t j = 0; j < mat.cols(); ++j) m[i].push_back(mat.at(i, j));
    }
    RElem prev = ring.one();
    size_t row = 0;
    for (size_t col = 0; col < mat.cols() && row < m.size(); ++col) {
        size_t pr = row;
        while (pr < m.size() && m[pr][col].is_zero()) ++pr;
        if (pr == m.size()) continue;
        std::swap(m[row], m[pr]);
        const RElem& pivot = m[row][col];
        for (size_t i = row + 1; i < m.size(); ++i) {
            for (size_t j = col + 1; j < mat.cols(); ++j) {
                RElem t = pivot * m[i][j] - m[i][col] * m[row][j];
                if (t.is_zero()) {
                    m[i][j] = t;
                    continue;
                }
                auto quot = t.exact_div(prev);
                if (!quot) fail(ErrorKind::internal, "fraction-free elimination step failed");
                m[i][j] = std::move(*quot);
            }
            m[i][col] = ring.zero();
        }
        prev = pivot;
        e.pivot_col.push_back(static_cast<long>(col));
        ++row;
    }
    m.resize(e.pivot_col.size(), {});
    e.m = std::move(m);
    return e;
}

} // namespace

std::vector<std::vector<RElem>> kernel_basis(const RMatrix& mat) {
    const Ring& ring = mat.ring();
    Eliminated e = eliminate(mat);
    std::vector<bool> is_pivot(mat.cols(), false);
    for (long c : e.pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<RElem>> out;
    for (size_t free_col = 0; free_col < mat.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        // division-free back-substitution: to solve pivot * v[pc] = -s the
        // whole vector is rescaled by the pivot first, keeping entries in
        // the ring throughout
        std::vector<RElem> v(mat.cols(), ring.zero());
        v[free_col] = ring.one();
        for (size_t r = e.pivot_col.size(); r-- > 0;) {
            size_t pc = static_cast<size_t>(e.pivot_col[r]);
            RElem s = ring.zero();
            for (size_t j = pc + 1; j < mat.cols(); ++j)
                if (!v[j].is_zero()) s = s + e.m[r][j] * v[j];
            if (s.is_zero()) continue;
            const RElem& pivot = e.m[r][pc];
            for (auto& entry : v)
                if (!entry.is_zero()) entry = entry * pivot;
            v[pc] = -s;
        }
        out.push_back(std::move(v));
    }
    return out;
}

long matrix_rank(const RMatrix& mat) {
    return static_cast<long>(eliminate(mat).pivot_col.size());
}

bool span_contains(const std::vector<std::vector<RElem>>& family,
                   const std::vector<RElem>& v, const Ring& ring, size_t n) {
    RMatrix base(ring, n, family.size());
    for (size_t j = 0; j < family.size(); ++j) {
        if (family[j].size() != n) fail(ErrorKind::precondition, "vector length mismatch");
        for (size_t i = 0; i < n; ++i) base.at(i, j) = family[j][i];
    }
    long r0 = matrix_rank(base);
    RMatrix ext(ring, n, family.size() + 1);
    for (size_t j = 0; j < family.size(); ++j)
        for (size_t i = 0; i < n; ++i) ext.at(i, j) = family[j][i];
    if (v.size() != n) fail(ErrorKind::precondition, "vector length mismatch");
    for (size_t i = 0; i < n; ++i) ext.at(i, family.size()) = v[i];
    return matrix_rank(ext) == r0;
}

bool same_span(const std::vector<std::vector<RElem>>& a,
               const std::vector<std::vector<RElem>>& b, const Ring& ring, size_t n) {
    for (const auto& v : b)
        if (!span_contains(a, v, ring, n)) return false;
    for (const auto& v : a)
        if (!span_contains(b, v, ring, n)) return false;
    return true;
}

void rp_strip(RPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int rp_deg(const RPoly& p) { return static_cast<int>(p.size()) - 1; }

RPoly rp_add(const RPoly& a, const RPoly& b, const Ring& ring) {
    RPoly r(std::max(a.size(), b.size()), ring.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    rp_strip(r);
    return r;
}

RPoly rp_sub(const RPoly& a, const RPoly& b, const Ring& ring) {
    RPoly r(std::max(a.size(), b.size()), ring.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    rp_strip(r);
    return r;
}

RPoly rp_mul(const RPoly& a, const RPoly& b, const Ring& ring) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, ring.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    rp_strip(r);
    return r;
}

RPoly rp_scale(const RPoly& a, const RElem& c) {
    if (c.is_zero()) return {};
    RPoly r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    rp_strip(r);
    return r;
}

std::pair<RPoly, RPoly> rp_divmod(const RPoly& a, const RPoly& b, const Ring& ring) {
    if (b.empty()) fail(ErrorKind::precondition, "polynomial division by zero");
    auto lead_inv = b.back().try_invert();
    if (!lead_inv)
        fail(ErrorKind::precondition, "polynomial division needs an invertible leading term");
    RPoly rem = a;
    rp_strip(rem);
    int db = rp_deg(b);
    int da = rp_deg(rem);
    if (da < db) return {{}, rem};
    RPoly quo(static_cast<size_t>(da - db) + 1, ring.zero());
    for (int i = da; i >= db; --i) {
        RElem c = rem[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        RElem f = c * *lead_inv;
        quo[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(i - db + j)] =
                rem[static_cast<size_t>(i - db + j)] - f * b[static_cast<size_t>(j)];
    }
    rp_strip(rem);
    rp_strip(quo);
    return {quo, rem};
}

std::string rp_str(const RPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << p[i].str() << ")";
        if (i > 0) {
            out << "*" << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

namespace {

bool pv_zero_at(const PolyVec& v, size_t row) { return v[row].empty(); }

} // namespace

PolyCols column_module_basis(PolyCols cols, const Ring& ring) {
    if (cols.empty()) return {};
    size_t rows = cols[0].size();
    for (auto& c : cols) {
        if (c.size() != rows) fail(ErrorKind::precondition, "ragged column heights");
        for (auto& e : c) rp_strip(e);
    }
    PolyCols basis;
    std::vector<size_t> active(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) active[i] = i;
    for (size_t row = 0; row < rows && !active.empty(); ++row) {
        // Euclidean elimination among the columns with a nonzero entry here
        while (true) {
            long best = -1, second = -1;
            for (size_t idx = 0; idx < active.size(); ++idx) {
                if (pv_zero_at(cols[active[idx]], row)) continue;
                if (best < 0 ||
                    rp_deg(cols[active[idx]][row]) < rp_deg(cols[active[static_cast<size_t>(best)]][row]))
                    best = static_cast<long>(idx);
            }
            for (size_t idx = 0; idx < active.size(); ++idx) {
                if (static_cast<long>(idx) == best) continue;
                if (!pv_zero_at(cols[active[idx]], row)) {
                    second = static_cast<long>(idx);
                    break;
                }
            }
            if (best < 0 || second < 0) {
                if (best >= 0) {
                    // lone pivot for this row
                    basis.push_back(cols[active[static_cast<size_t>(best)]]);
                    active.erase(active.begin() + best);
                }
                break;
            }
            size_t bi = active[static_cast<size_t>(best)];
            for (size_t idx = 0; idx < active.size(); ++idx) {
                if (static_cast<long>(idx) == best) continue;
                size_t ci = active[idx];
                if (pv_zero_at(cols[ci], row)) continue;
                auto [quo, rem] = rp_divmod(cols[ci][row], cols[bi][row], ring);
                (void)rem;
                // subtract quo * pivot column so the entry degree drops
                for (size_t r = 0; r < rows; ++r)
                    cols[ci][r] = rp_sub(cols[ci][r], rp_mul(quo, cols[bi][r], ring), ring);
            }
        }
    }
    return basis;
}

std::optional<std::vector<RPoly>> module_solve(const PolyCols& basis, PolyVec target,
                                               const Ring& ring) {
    size_t rows = target.size();
    for (auto& e : target) rp_strip(e);
    std::vector<RPoly> coords;
    coords.reserve(basis.size());
    for (const auto& b : basis) {
        if (b.size() != rows) fail(ErrorKind::precondition, "ragged column heights");
        size_t pivot = rows;
        for (size_t r = 0; r < rows; ++r)
            if (!b[r].empty()) {
                pivot = r;
                break;
            }
        if (pivot == rows) fail(ErrorKind::precondition, "zero basis column");
        auto [quo, rem] = rp_divmod(target[pivot], b[pivot], ring);
        if (!rem.empty()) return std::nullopt;
        coords.push_back(quo);
        for (size_t r = 0; r < rows; ++r)
            target[r] = rp_sub(target[r], rp_mul(quo, b[r], ring), ring);
    }
    for (const auto& e : target)
        if (!e.empty()) return std::nullopt;
    return coords;
}

RPoly rp_det(const std::vector<PolyVec>& cols, const Ring& ring) {
    size_t n = cols.size();
    for (const auto& c : cols)
        if (c.size() != n) fail(ErrorKind::precondition, "determinant needs a square matrix");
    if (n == 0) return {ring.one()};
    if (n == 1) return cols[0][0];
    RPoly det;
    for (size_t j = 0; j < n; ++j) {
        if (cols[j][0].empty()) continue;
        std::vector<PolyVec> minor;
        minor.reserve(n - 1);
        for (size_t jj = 0; jj < n; ++jj) {
            if (jj == j) continue;
            PolyVec col(cols[jj].begin() + 1, cols[jj].end());
            minor.push_back(std::move(col));
        }
        RPoly term = rp_mul(cols[j][0], rp_det(minor, ring), ring);
        det = j % 2 == 0 ? rp_add(det, term, ring) : rp_sub(det, term, ring);
    }
    return det;
}

} // namespace qdp
