#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "sosv/linalg.hpp"

namespace sosv {

// ---- exact side ----

struct LDLWitness {
    std::vector<std::size_t> perm;  // pivot order: A[perm[i]][perm[j]] = (L D L^T)[i][j]
    QMat unit_lower;
    QVec diag;  // nonnegative pivots
    std::size_t rank = 0;
};

struct NotPSDWitness {
    QVec vector;     // exact v with v^T A v < 0
    Rational value;  // the negative quadratic value
};

using PSDCheck = std::variant<LDLWitness, NotPSDWitness>;

// Pivoted rational LDL^T. PSD iff all pivots are nonnegative and elimination
// never needs an indefinite 2x2 pivot; otherwise an exact certifying vector.
PSDCheck exact_psd_check(const QMat& a);
bool is_psd_exact(const QMat& a);

// ---- numeric side ----

using DMat = std::vector<std::vector<double>>;

DMat dmat_zero(std::size_t n);
QMat to_exact(const DMat& m);  // entrywise (no rounding; doubles are rationals)
DMat to_double(const QMat& m);

// Cyclic Jacobi eigendecomposition of a symmetric matrix (deterministic sweep
// order). Returns eigenvalues and the orthogonal matrix of column eigenvectors.
void jacobi_eigen(const DMat& a, std::vector<double>& eigenvalues, DMat& eigenvectors);

// Metric projection onto the PSD cone (eigenvalue clamp).
DMat project_psd(const DMat& a);

// Element of a direct sum of symmetric-matrix spaces.
struct BlockVec {
    std::vector<DMat> blocks;
};
struct BlockVecQ {
    std::vector<QMat> blocks;
};

BlockVecQ to_exact(const BlockVec& v);
BlockVec to_double(const BlockVecQ& v);

// PSD-feasibility over an affine subspace of a direct sum of symmetric
// blocks. The subspace is given either by affine constraints (nullspace form)
// or by an offset plus spanning directions (parametric form); the projector
// onto it is derived exactly and then run in floating point.
class FeasibilityProblem {
public:
    explicit FeasibilityProblem(std::vector<std::size_t> block_sizes);

    const std::vector<std::size_t>& block_sizes() const { return sizes_; }

    // nullspace form: sum_{b,i,j} coeff[b][i][j] X[b][i][j] = rhs
    void add_constraint(BlockVecQ coeff, Rational rhs);
    // parametric form: X = offset + span(directions)
    void set_parametric(BlockVecQ offset, std::vector<BlockVecQ> directions);

    bool parametric() const { return parametric_.has_value(); }
    std::size_t constraint_count() const { return constraints_.size(); }

    // exact affine-space membership and projection (least squares)
    bool affine_satisfied(const BlockVecQ& x) const;
    BlockVecQ project_affine_exact(const BlockVecQ& x) const;
    // consistency of the affine space itself (nullspace form can be empty)
    bool affine_consistent() const;

    BlockVec project_affine(const BlockVec& x) const;
    BlockVecQ zero_exact() const;
    BlockVec zero() const;

    // exact values of the constraint functionals at x (nullspace form)
    QVec constraint_values(const BlockVecQ& x) const;
    const QVec& constraint_rhs() const { return rhs_; }

private:
    std::vector<std::size_t> sizes_;
    // nullspace form
    std::vector<BlockVecQ> constraints_;
    QVec rhs_;
    // parametric form
    struct Parametric {
        BlockVecQ offset;
        std::vector<BlockVecQ> directions;
    };
    std::optional<Parametric> parametric_;

    // projector data, derived exactly on first use
    mutable bool prepared_ = false;
    mutable std::vector<std::size_t> kept_;  // independent constraint/direction indices
    mutable QMat gram_inv_;                  // exact inverse Gram of the kept set
    mutable std::vector<std::vector<double>> gram_inv_d_;
    mutable std::vector<std::vector<DMat>> family_d_;  // kept coefficients, double
    mutable std::vector<DMat> offset_d_;
    void prepare() const;
};

enum class SolveStatus { Feasible, InfeasibleEvidence, Inconclusive };

struct SolveResult {
    SolveStatus status = SolveStatus::Inconclusive;
    BlockVec solution;              // affine-side iterate
    BlockVec psd_side;              // PSD-side iterate
    BlockVec separating_direction;  // populated on InfeasibleEvidence
    std::size_t iterations = 0;
    double gap = 0.0;
};

struct SolveOptions {
    double tol = 1e-9;
    std::size_t max_iter = 50000;  // SOSV_MAX_ITER overrides
    std::optional<BlockVec> start;
};

std::size_t solver_max_iter_default();

// Alternating projections with Dykstra correction between the PSD cone and
// the affine subspace. Never claims infeasibility; it reports evidence only.
SolveResult solve_feasibility(const FeasibilityProblem& p, const SolveOptions& opts = {});

// Continued-fraction rounding of every entry followed by exact projection
// onto the affine subspace. The result satisfies the constraints exactly;
// PSD-ness must be checked by the caller.
std::optional<BlockVecQ> rationalize(const BlockVec& numeric, const FeasibilityProblem& p,
                                     const Int& denominator_bound);

// Denominator schedule used by certification: 10^3, 10^6, 10^9.
const std::vector<Int>& denominator_schedule();

}  // namespace sosv
