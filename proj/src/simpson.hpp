// The central-reduction side of the story at positive q-characteristic p:
// the divided pullback of operators Phi, the matrix of an operator acting
// on the coordinate ring over its p-th power subring, and the equivalence
// between quasi-nilpotent twisted connections and quasi-nilpotent
// curvature modules over the subring.
#pragma once

#include "frobenius.hpp"
#include "weyl.hpp"

#include <optional>
#include <vector>

namespace qdp {

using AMatrix = std::vector<std::vector<AElem>>;

// validated environment for the operator pullback: a q-divisible
// coefficient ring whose q-characteristic equals the exponent p
class PhiContext {
public:
    PhiContext(Ring ring, int p, bool laurent = false);

    const FrobeniusContext& frob() const { return frob_; }
    const Ring& ring() const { return frob_.ring(); }
    int p() const { return frob_.p(); }
    const Algebra& target() const { return frob_.target(); }
    const Algebra& source() const { return frob_.source(); }

private:
    FrobeniusContext frob_;
};

// A-linear pullback on operators: d^n -> sum_k B_{k,n}(q) x^(pk-n) d^(pk),
// with the same coefficient family as the divided pullback of forms on the
// other side of the duality; not a ring homomorphism
WeylElem phi(const PhiContext& ctx, const WeylElem& op);

// matrix of op acting on the rank-p module A[d^p] over its center, in the
// column convention: column j expands op * x^j over the basis 1, x, ...,
// x^(p-1) with entries in R[x^p][d^p]. The action is op * (z d^(pi)) =
// phi(op compose z) d^(pi); entries are truncated at d-degree p*trunc.
std::vector<std::vector<WeylElem>> azumaya_matrix(const PhiContext& ctx, const WeylElem& op,
                                                  long trunc);
// entrywise operator product of two such matrices, truncated the same way
std::vector<std::vector<WeylElem>> azumaya_product(const std::vector<std::vector<WeylElem>>& a,
                                                   const std::vector<std::vector<WeylElem>>& b,
                                                   int p, long trunc);

// free module over the subring R[x'] with a commuting curvature matrix, in
// the column convention: column j is the image of the j-th basis vector
class HiggsModule {
public:
    HiggsModule(Algebra aprime, AMatrix theta);

    const Algebra& algebra() const { return alg_; }
    long rank() const { return static_cast<long>(u_.size()); }
    const AMatrix& theta() const { return u_; }

private:
    Algebra alg_;
    AMatrix u_;
};

// free module over the coordinate ring with a twisted connection: the
// derivation acts on column vectors by v -> derive(v) + N * sigma(v)
class QDiffModule {
public:
    QDiffModule(Algebra a, AMatrix derivation);

    const Algebra& algebra() const { return alg_; }
    long rank() const { return static_cast<long>(u_.size()); }
    const AMatrix& derivation() const { return u_; }

private:
    Algebra alg_;
    AMatrix u_;
};

// one application of the module derivation to a column vector
std::vector<AElem> qdiff_apply(const QDiffModule& m, const std::vector<AElem>& v);
// action of an operator sum_n z_n d^n through iterated module derivations
std::vector<AElem> qdiff_apply_op(const QDiffModule& m, const WeylElem& op,
                                  const std::vector<AElem>& v);

// nilpotency of a commuting curvature matrix within the given bound
bool is_quasi_nilpotent(const AMatrix& mat, long bound);
// quasi-nilpotency of the module derivation: the bound-fold iterate kills
// every basis vector (Leibniz contributions included)
bool is_quasi_nilpotent(const QDiffModule& m, long bound);

// base change along the p-th power inclusion: the derivation matrix is
// x^(p-1) times the transported curvature matrix; needs a quasi-nilpotent
// input
QDiffModule higgs_to_qdiff(const PhiContext& ctx, const HiggsModule& h);

// kernel generator of the completed operator pullback with leading term
// d^m, for m off the p-grid: d^m plus grid corrections c_k x^(pk-m) d^(pk)
// chosen so that phi of the full series vanishes. The grid corrections are
// solvable because the top pullback coefficient is a power of the unit
// (p-1)_q!. Truncated past the grid bound, so phi of the result is
// supported in d-degrees strictly above p*grid.
WeylElem horizontal_condition_op(const PhiContext& ctx, long m, long grid);

// canonical preimage of d^p under the completed pullback, truncated the
// same way: c_k x^(pk-p) d^(pk) with phi of the result equal to d^p up to
// terms in d-degrees strictly above p*grid. This operator induces the
// curvature action on horizontal sections.
WeylElem curvature_section_op(const PhiContext& ctx, long grid);

// inverse direction: horizontal sections are the ones annihilated by every
// kernel generator of the completed pullback (on quasi-nilpotent modules
// the truncated generators suffice). Solve those conditions on sections of
// x-degree at most the bound, extract a rank-r basis of the solution
// module over R[x'], and read off the induced curvature action. A negative
// bound asks for the automatic schedule (escalating rounds). Needs a
// quasi-nilpotent derivation and a polynomial coordinate ring.
HiggsModule qdiff_to_higgs(const PhiContext& ctx, const QDiffModule& m, long degree_bound = -1);

// change of basis P with P * a = b * P and unit determinant, sought with
// polynomial entries of escalating degree; nullopt when the search space
// is exhausted
std::optional<AMatrix> similarity_witness(const AMatrix& a, const AMatrix& b,
                                          unsigned seed = 9181u);

} // namespace qdp
