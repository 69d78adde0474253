// Exact linear algebra over the coefficient rings: kernels and ranks via
// fraction-free Bareiss elimination (valid over any of the integral domains
// here, with determinant-bounded entry growth), and column modules over a
// univariate polynomial ring with field coefficients.
#pragma once

#include "ring.hpp"

#include <optional>
#include <vector>

namespace qdp {

class RMatrix {
public:
    RMatrix(Ring ring, size_t rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Ring& ring() const { return ring_; }
    RElem& at(size_t i, size_t j);
    const RElem& at(size_t i, size_t j) const;

private:
    Ring ring_;
    size_t rows_, cols_;
    std::vector<RElem> a_;
};

// basis of the right kernel {v : M v = 0}, denominators cleared so every
// entry lies in the ring
std::vector<std::vector<RElem>> kernel_basis(const RMatrix& m);
long matrix_rank(const RMatrix& m);

// span comparisons of vector families inside ring^n, taken over the
// fraction field
bool span_contains(const std::vector<std::vector<RElem>>& family,
                   const std::vector<RElem>& v, const Ring& ring, size_t n);
bool same_span(const std::vector<std::vector<RElem>>& a,
               const std::vector<std::vector<RElem>>& b, const Ring& ring, size_t n);

// dense univariate polynomials over R, little-endian, trailing zeros
// stripped; division assumes field coefficients
using RPoly = std::vector<RElem>;

void rp_strip(RPoly& p);
int rp_deg(const RPoly& p); // -1 for zero
RPoly rp_add(const RPoly& a, const RPoly& b, const Ring& ring);
RPoly rp_sub(const RPoly& a, const RPoly& b, const Ring& ring);
RPoly rp_mul(const RPoly& a, const RPoly& b, const Ring& ring);
RPoly rp_scale(const RPoly& a, const RElem& c);
std::pair<RPoly, RPoly> rp_divmod(const RPoly& a, const RPoly& b, const Ring& ring);
std::string rp_str(const RPoly& p, const std::string& var);

using PolyVec = std::vector<RPoly>;   // one column, entries indexed by row
using PolyCols = std::vector<PolyVec>; // list of columns

// echelon basis of the column module spanned inside R[z]^rows: pivots are
// found row by row with Euclidean elimination between columns. Each output
// column is zero above its pivot row.
PolyCols column_module_basis(PolyCols cols, const Ring& ring);
// coordinates of target in an echelon basis; nullopt when target is not in
// the module
std::optional<std::vector<RPoly>> module_solve(const PolyCols& basis, PolyVec target,
                                               const Ring& ring);
// determinant of a square matrix of polynomials (Laplace expansion; the
// matrices here are tiny)
RPoly rp_det(const std::vector<PolyVec>& cols, const Ring& ring);

} // namespace qdp
