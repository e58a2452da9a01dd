#include "sosv/sdp.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace sosv {

// ---- exact PSD check ----

PSDCheck exact_psd_check(const QMat& a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("exact_psd_check: not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[i][j] != a[j][i]) throw std::invalid_argument("exact_psd_check: not symmetric");

    QMat work = a;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    QMat lower = qmat_identity(n);
    QVec diag(n, Rational(0));
    std::size_t step = 0;

    auto swap_index = [&](std::size_t r, std::size_t s) {
        if (r == s) return;
        std::swap(perm[r], perm[s]);
        std::swap(work[r], work[s]);
        for (std::size_t i = 0; i < n; ++i) std::swap(work[i][r], work[i][s]);
        for (std::size_t j = 0; j < step; ++j) std::swap(lower[r][j], lower[s][j]);
    };

    // back-substitute a witness from the reduced coordinates through L^T
    auto lift_witness = [&](const QVec& reduced, const Rational& value) {
        // solve L^T (in eliminated coordinates) y = [0...0, reduced]
        QVec y(n, Rational(0));
        for (std::size_t i = 0; i < n - step; ++i) y[step + i] = reduced[i];
        for (std::size_t i = step; i-- > 0;) {
            Rational s = y[i];
            for (std::size_t r = i + 1; r < n; ++r) s -= lower[r][i] * y[r];
            y[i] = s;  // unit diagonal
        }
        QVec v(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) v[perm[i]] = y[i];
        return NotPSDWitness{v, value};
    };

    for (; step < n; ++step) {
        // max-diagonal symmetric pivot
        std::size_t best = step;
        for (std::size_t i = step + 1; i < n; ++i)
            if (work[i][i] > work[best][best]) best = i;
        if (sgn(work[best][best]) < 0) {
            QVec e(n - step, Rational(0));
            // witness in reduced coordinates before this step's pivoting
            e[best - step] = 1;
            return lift_witness(e, work[best][best]);
        }
        if (sgn(work[best][best]) == 0) {
            // all remaining diagonals <= 0; check each nonpositive diagonal row
            for (std::size_t i = step; i < n; ++i) {
                if (sgn(work[i][i]) < 0) {
                    QVec e(n - step, Rational(0));
                    e[i - step] = 1;
                    return lift_witness(e, work[i][i]);
                }
                for (std::size_t j = step; j < n; ++j) {
                    if (j == i || sgn(work[i][j]) == 0) continue;
                    // zero diagonal with nonzero off-diagonal: indefinite
                    QVec e(n - step, Rational(0));
                    Rational t = (work[j][j] + 1) / (work[i][j] * 2);
                    e[i - step] = -t;
                    e[j - step] = 1;
                    // value: t^2*0 - 2 t w_ij + w_jj = -1
                    return lift_witness(e, Rational(-1));
                }
            }
            break;  // remaining block is identically zero: PSD, rank = step
        }
        swap_index(step, best);
        Rational pivot = work[step][step];
        diag[step] = pivot;
        for (std::size_t i = step + 1; i < n; ++i) lower[i][step] = work[i][step] / pivot;
        for (std::size_t i = step + 1; i < n; ++i) {
            const Rational& f = lower[i][step];
            if (sgn(f) == 0) continue;
            for (std::size_t j = step + 1; j < n; ++j) work[i][j] -= f * work[step][j];
        }
        for (std::size_t j = step + 1; j < n; ++j) work[step][j] = work[j][step] = Rational(0);
    }

    LDLWitness w;
    w.perm = perm;
    w.unit_lower = lower;
    w.diag = diag;
    w.rank = step;
    return w;
}

bool is_psd_exact(const QMat& a) { return std::holds_alternative<LDLWitness>(exact_psd_check(a)); }

// ---- numeric utilities ----

DMat dmat_zero(std::size_t n) { return DMat(n, std::vector<double>(n, 0.0)); }

QMat to_exact(const DMat& m) {
    QMat out(m.size(), QVec(m.empty() ? 0 : m[0].size(), Rational(0)));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = Rational(m[i][j]);
    return out;
}

DMat to_double(const QMat& m) {
    DMat out(m.size(), std::vector<double>(m.empty() ? 0 : m[0].size(), 0.0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = m[i][j].get_d();
    return out;
}

BlockVecQ to_exact(const BlockVec& v) {
    BlockVecQ out;
    for (const auto& b : v.blocks) out.blocks.push_back(to_exact(b));
    return out;
}

BlockVec to_double(const BlockVecQ& v) {
    BlockVec out;
    for (const auto& b : v.blocks) out.blocks.push_back(to_double(b));
    return out;
}

void jacobi_eigen(const DMat& a_in, std::vector<double>& eigenvalues, DMat& eigenvectors) {
    const std::size_t n = a_in.size();
    DMat a = a_in;
    eigenvectors = dmat_zero(n);
    for (std::size_t i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a[i][i]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a[i][j]));
    const double stop = 1e-14 * (scale > 0 ? scale : 1.0);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a[p][q]));
        if (off <= stop) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p][q];
                if (std::fabs(apq) <= stop * 1e-2) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = eigenvectors[k][p], vkq = eigenvectors[k][q];
                    eigenvectors[k][p] = c * vkp - s * vkq;
                    eigenvectors[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

DMat project_psd(const DMat& a) {
    const std::size_t n = a.size();
    std::vector<double> lambda;
    DMat v;
    jacobi_eigen(a, lambda, v);
    DMat out = dmat_zero(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (lambda[k] <= 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += lambda[k] * v[i][k] * v[j][k];
    }
    // enforce symmetry against roundoff
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double m = 0.5 * (out[i][j] + out[j][i]);
            out[i][j] = out[j][i] = m;
        }
    return out;
}

// ---- FeasibilityProblem ----

namespace {

Rational frob_inner(const QMat& a, const QMat& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (sgn(a[i][j]) != 0 && sgn(b[i][j]) != 0) s += a[i][j] * b[i][j];
    return s;
}

Rational frob_inner(const BlockVecQ& a, const BlockVecQ& b) {
    Rational s(0);
    for (std::size_t k = 0; k < a.blocks.size(); ++k) s += frob_inner(a.blocks[k], b.blocks[k]);
    return s;
}

double frob_inner_d(const std::vector<DMat>& a, const std::vector<DMat>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t i = 0; i < a[k].size(); ++i)
            for (std::size_t j = 0; j < a[k].size(); ++j) s += a[k][i][j] * b[k][i][j];
    return s;
}

QVec flatten_upper(const BlockVecQ& v) {
    QVec out;
    for (const auto& b : v.blocks)
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i; j < b.size(); ++j) out.push_back(b[i][j]);
    return out;
}

void axpy(BlockVecQ& y, const Rational& c, const BlockVecQ& x) {
    for (std::size_t k = 0; k < y.blocks.size(); ++k)
        for (std::size_t i = 0; i < y.blocks[k].size(); ++i)
            for (std::size_t j = 0; j < y.blocks[k].size(); ++j)
                y.blocks[k][i][j] += c * x.blocks[k][i][j];
}

void axpy_d(BlockVec& y, double c, const BlockVec& x) {
    for (std::size_t k = 0; k < y.blocks.size(); ++k)
        for (std::size_t i = 0; i < y.blocks[k].size(); ++i)
            for (std::size_t j = 0; j < y.blocks[k].size(); ++j)
                y.blocks[k][i][j] += c * x.blocks[k][i][j];
}

}  // namespace

FeasibilityProblem::FeasibilityProblem(std::vector<std::size_t> block_sizes)
    : sizes_(std::move(block_sizes)) {
    if (sizes_.empty()) throw std::invalid_argument("feasibility problem without blocks");
}

BlockVecQ FeasibilityProblem::zero_exact() const {
    BlockVecQ v;
    for (auto n : sizes_) v.blocks.push_back(qmat_zero(n, n));
    return v;
}

BlockVec FeasibilityProblem::zero() const {
    BlockVec v;
    for (auto n : sizes_) v.blocks.push_back(dmat_zero(n));
    return v;
}

void FeasibilityProblem::add_constraint(BlockVecQ coeff, Rational rhs) {
    if (parametric_) throw std::logic_error("problem already parametric");
    if (coeff.blocks.size() != sizes_.size())
        throw std::invalid_argument("constraint block count mismatch");
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
        if (coeff.blocks[k].size() != sizes_[k])
            throw std::invalid_argument("constraint block size mismatch");
        for (std::size_t i = 0; i < sizes_[k]; ++i)
            for (std::size_t j = i + 1; j < sizes_[k]; ++j)
                if (coeff.blocks[k][i][j] != coeff.blocks[k][j][i])
                    throw std::invalid_argument("constraint coefficients not symmetric");
    }
    constraints_.push_back(std::move(coeff));
    rhs_.push_back(std::move(rhs));
    prepared_ = false;
}

void FeasibilityProblem::set_parametric(BlockVecQ offset, std::vector<BlockVecQ> directions) {
    if (!constraints_.empty()) throw std::logic_error("problem already has constraints");
    parametric_ = Parametric{std::move(offset), std::move(directions)};
    prepared_ = false;
}

void FeasibilityProblem::prepare() const {
    if (prepared_) return;
    kept_.clear();
    const auto& family = parametric_ ? parametric_->directions : constraints_;
    // keep a maximal independent subset (exact row reduction on flattened vectors)
    QMat flat;
    for (const auto& a : family) flat.push_back(flatten_upper(a));
    QMat echelon;
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < flat.size(); ++r) {
        QVec row = flat[r];
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            Rational f = row[pivots[k]];
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * echelon[k][j];
        }
        std::size_t piv = row.size();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (sgn(row[j]) != 0) {
                piv = j;
                break;
            }
        if (piv == row.size()) continue;
        Rational inv = Rational(1) / row[piv];
        for (auto& x : row) x *= inv;
        echelon.push_back(std::move(row));
        pivots.push_back(piv);
        kept_.push_back(r);
    }
    QMat gram(kept_.size(), QVec(kept_.size(), Rational(0)));
    for (std::size_t a = 0; a < kept_.size(); ++a)
        for (std::size_t b = a; b < kept_.size(); ++b)
            gram[a][b] = gram[b][a] = frob_inner(family[kept_[a]], family[kept_[b]]);
    auto inv = inverse(gram);
    if (!inv) throw std::logic_error("independent family produced singular Gram matrix");
    gram_inv_ = *inv;
    gram_inv_d_.assign(kept_.size(), std::vector<double>(kept_.size(), 0.0));
    for (std::size_t a = 0; a < kept_.size(); ++a)
        for (std::size_t b = 0; b < kept_.size(); ++b) gram_inv_d_[a][b] = gram_inv_[a][b].get_d();
    family_d_.clear();
    for (auto r : kept_) {
        std::vector<DMat> blocks;
        for (const auto& b : family[r].blocks) blocks.push_back(to_double(b));
        family_d_.push_back(std::move(blocks));
    }
    offset_d_.clear();
    if (parametric_)
        for (const auto& b : parametric_->offset.blocks) offset_d_.push_back(to_double(b));
    prepared_ = true;
}

bool FeasibilityProblem::affine_consistent() const {
    prepare();
    if (parametric_) return true;
    // dropped (dependent) constraints must be implied: check exact solvability
    // of the full system for the flattened upper triangle (off-diagonal
    // entries enter the functional twice)
    QMat flat;
    for (const auto& a : constraints_) flat.push_back(flatten_upper(a));
    QMat weighted = flat;
    std::size_t col = 0;
    for (std::size_t k = 0; k < sizes_.size(); ++k)
        for (std::size_t i = 0; i < sizes_[k]; ++i)
            for (std::size_t j = i; j < sizes_[k]; ++j) {
                if (i != j)
                    for (auto& row : weighted) row[col] *= 2;
                ++col;
            }
    return solve(weighted, rhs_).has_value();
}

QVec FeasibilityProblem::constraint_values(const BlockVecQ& x) const {
    QVec out;
    for (const auto& a : constraints_) out.push_back(frob_inner(a, x));
    return out;
}

bool FeasibilityProblem::affine_satisfied(const BlockVecQ& x) const {
    if (parametric_) {
        // x - offset must lie in span(directions): project and compare
        return project_affine_exact(x).blocks == x.blocks;
    }
    for (std::size_t r = 0; r < constraints_.size(); ++r)
        if (frob_inner(constraints_[r], x) != rhs_[r]) return false;
    return true;
}

BlockVecQ FeasibilityProblem::project_affine_exact(const BlockVecQ& x) const {
    prepare();
    const auto& family = parametric_ ? parametric_->directions : constraints_;
    if (parametric_) {
        BlockVecQ delta = x;
        axpy(delta, Rational(-1), parametric_->offset);
        QVec rhs;
        for (auto r : kept_) rhs.push_back(frob_inner(family[r], delta));
        QVec coeff = qmat_apply(gram_inv_, rhs);
        BlockVecQ out = parametric_->offset;
        for (std::size_t a = 0; a < kept_.size(); ++a) axpy(out, coeff[a], family[kept_[a]]);
        return out;
    }
    QVec residual;
    for (auto r : kept_) residual.push_back(frob_inner(constraints_[r], x) - rhs_[r]);
    QVec coeff = qmat_apply(gram_inv_, residual);
    BlockVecQ out = x;
    for (std::size_t a = 0; a < kept_.size(); ++a) axpy(out, -coeff[a], constraints_[kept_[a]]);
    return out;
}

BlockVec FeasibilityProblem::project_affine(const BlockVec& x) const {
    prepare();
    if (parametric_) {
        BlockVec delta = x;
        for (std::size_t k = 0; k < delta.blocks.size(); ++k)
            for (std::size_t i = 0; i < delta.blocks[k].size(); ++i)
                for (std::size_t j = 0; j < delta.blocks[k].size(); ++j)
                    delta.blocks[k][i][j] -= offset_d_[k][i][j];
        std::vector<double> rhs(kept_.size());
        for (std::size_t a = 0; a < kept_.size(); ++a)
            rhs[a] = frob_inner_d(family_d_[a], delta.blocks);
        std::vector<double> coeff(kept_.size(), 0.0);
        for (std::size_t a = 0; a < kept_.size(); ++a)
            for (std::size_t b = 0; b < kept_.size(); ++b) coeff[a] += gram_inv_d_[a][b] * rhs[b];
        BlockVec out;
        out.blocks = offset_d_;
        for (std::size_t a = 0; a < kept_.size(); ++a) {
            BlockVec dir{family_d_[a]};
            axpy_d(out, coeff[a], dir);
        }
        return out;
    }
    std::vector<double> residual(kept_.size());
    for (std::size_t a = 0; a < kept_.size(); ++a)
        residual[a] = frob_inner_d(family_d_[a], x.blocks) - rhs_[kept_[a]].get_d();
    std::vector<double> coeff(kept_.size(), 0.0);
    for (std::size_t a = 0; a < kept_.size(); ++a)
        for (std::size_t b = 0; b < kept_.size(); ++b) coeff[a] += gram_inv_d_[a][b] * residual[b];
    BlockVec out = x;
    for (std::size_t a = 0; a < kept_.size(); ++a) {
        BlockVec dir{family_d_[a]};
        axpy_d(out, -coeff[a], dir);
    }
    return out;
}

// ---- solver ----

std::size_t solver_max_iter_default() {
    if (const char* env = std::getenv("SOSV_MAX_ITER")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 50000;
}

namespace {

double max_abs_diff(const BlockVec& a, const BlockVec& b) {
    double m = 0;
    for (std::size_t k = 0; k < a.blocks.size(); ++k)
        for (std::size_t i = 0; i < a.blocks[k].size(); ++i)
            for (std::size_t j = 0; j < a.blocks[k].size(); ++j)
                m = std::max(m, std::fabs(a.blocks[k][i][j] - b.blocks[k][i][j]));
    return m;
}

}  // namespace

SolveResult solve_feasibility(const FeasibilityProblem& p, const SolveOptions& opts) {
    SolveResult result;
    std::size_t max_iter = opts.max_iter == 50000 ? solver_max_iter_default() : opts.max_iter;

    BlockVec x = opts.start ? *opts.start : p.zero();
    if (!opts.start) {
        // start from the affine projection of a scaled identity
        for (std::size_t k = 0; k < x.blocks.size(); ++k)
            for (std::size_t i = 0; i < x.blocks[k].size(); ++i) x.blocks[k][i][i] = 1.0;
    }
    x = p.project_affine(x);

    BlockVec pcorr = p.zero(), qcorr = p.zero();
    BlockVec y = x;
    double gap = 1e300;
    double stall_best = 1e300;
    std::size_t stall_count = 0;

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // Dykstra: project (x + p) on the cone, (y + q) on the affine space
        BlockVec xp = x;
        axpy_d(xp, 1.0, pcorr);
        y.blocks.clear();
        for (std::size_t k = 0; k < xp.blocks.size(); ++k)
            y.blocks.push_back(project_psd(xp.blocks[k]));
        pcorr = xp;
        axpy_d(pcorr, -1.0, y);

        BlockVec yq = y;
        axpy_d(yq, 1.0, qcorr);
        BlockVec xnew = p.project_affine(yq);
        qcorr = yq;
        axpy_d(qcorr, -1.0, xnew);
        x = xnew;

        gap = max_abs_diff(x, y);
        result.iterations = iter + 1;
        if (gap <= opts.tol) {
            result.status = SolveStatus::Feasible;
            result.solution = x;
            result.psd_side = y;
            result.gap = gap;
            return result;
        }
        // stall detection: the gap stops improving but stays solid
        if (gap < stall_best * 0.999) {
            stall_best = gap;
            stall_count = 0;
        } else if (++stall_count > 500 && gap > 1e-6) {
            result.status = SolveStatus::InfeasibleEvidence;
            result.solution = x;
            result.psd_side = y;
            result.separating_direction = x;
            axpy_d(result.separating_direction, -1.0, y);
            result.gap = gap;
            return result;
        }
    }
    result.status = SolveStatus::Inconclusive;
    result.solution = x;
    result.psd_side = y;
    result.gap = gap;
    return result;
}

std::optional<BlockVecQ> rationalize(const BlockVec& numeric, const FeasibilityProblem& p,
                                     const Int& denominator_bound) {
    BlockVecQ rounded;
    for (const auto& b : numeric.blocks) {
        QMat m = qmat_zero(b.size(), b.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i; j < b.size(); ++j) {
                auto r = rationalize_double(0.5 * (b[i][j] + b[j][i]), denominator_bound);
                if (!r) return std::nullopt;
                m[i][j] = m[j][i] = *r;
            }
        rounded.blocks.push_back(std::move(m));
    }
    BlockVecQ projected = p.project_affine_exact(rounded);
    if (!p.affine_satisfied(projected)) return std::nullopt;
    return projected;
}

const std::vector<Int>& denominator_schedule() {
    static const std::vector<Int> schedule{Int(1000), Int(1000000), Int(1000000000)};
    return schedule;
}

}  // namespace sosv
