#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosv/sdp.hpp"

using namespace sosv;

namespace {

Rational quad_form(const QMat& a, const QVec& v) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) s += v[i] * a[i][j] * v[j];
    return s;
}

// brute-force PSD oracle: all principal minors nonnegative
Rational minor_det(const QMat& sub) {
    if (sub.size() == 1) return sub[0][0];
    Rational det(0);
    for (std::size_t c = 0; c < sub.size(); ++c) {
        if (sgn(sub[0][c]) == 0) continue;
        QMat minor(sub.size() - 1, QVec(sub.size() - 1));
        for (std::size_t i = 1; i < sub.size(); ++i) {
            std::size_t col = 0;
            for (std::size_t j = 0; j < sub.size(); ++j) {
                if (j == c) continue;
                minor[i - 1][col++] = sub[i][j];
            }
        }
        Rational d = minor_det(minor);
        det += ((c % 2 == 0) ? sub[0][c] : -sub[0][c]) * d;
    }
    return det;
}

bool psd_by_minors(const QMat& a) {
    const std::size_t n = a.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        QMat sub(idx.size(), QVec(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = a[idx[i]][idx[j]];
        if (sgn(minor_det(sub)) < 0) return false;
    }
    return true;
}

QMat random_sym(SplitMix64& rng, std::size_t n, long lo = -4, long hi = 4) {
    QMat m = qmat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = Rational(rng.uniform(lo, hi));
    return m;
}

QMat random_psd(SplitMix64& rng, std::size_t n) {
    QMat b = qmat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = Rational(rng.uniform(-3, 3));
    return qmat_mul(qmat_transpose(b), b);
}

}  // namespace

TEST_CASE("exact psd check: identity and sign witnesses") {
    auto check = exact_psd_check(qmat_identity(3));
    auto* w = std::get_if<LDLWitness>(&check);
    REQUIRE(w != nullptr);
    CHECK(w->rank == 3);

    QMat indef = {{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}};
    auto bad = exact_psd_check(indef);
    auto* nw = std::get_if<NotPSDWitness>(&bad);
    REQUIRE(nw != nullptr);
    CHECK(quad_form(indef, nw->vector) == nw->value);
    CHECK(sgn(nw->value) < 0);
}

TEST_CASE("exact psd check: the sphere certificate Gram matrix has rank 2") {
    // Gram of 3x^2 + (y-z)^2 in basis (x,y,z,w)
    QMat g = qmat_zero(4, 4);
    g[0][0] = 3;
    g[1][1] = 1;
    g[2][2] = 1;
    g[1][2] = g[2][1] = -1;
    auto check = exact_psd_check(g);
    auto* w = std::get_if<LDLWitness>(&check);
    REQUIRE(w != nullptr);
    CHECK(w->rank == 2);
}

TEST_CASE("LDL reconstructs the matrix exactly") {
    SplitMix64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        QMat a = random_psd(rng, 4);
        auto check = exact_psd_check(a);
        auto* w = std::get_if<LDLWitness>(&check);
        REQUIRE(w != nullptr);
        const std::size_t n = 4;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational lhs = a[w->perm[i]][w->perm[j]];
                Rational rhs(0);
                for (std::size_t k = 0; k < n; ++k)
                    rhs += w->unit_lower[i][k] * w->diag[k] * w->unit_lower[j][k];
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("exact psd check agrees with the principal-minor oracle") {
    SplitMix64 rng(15);
    int psd_seen = 0, not_psd_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        QMat a = (trial % 2 == 0) ? random_psd(rng, 5) : random_sym(rng, 5);
        bool oracle = psd_by_minors(a);
        bool impl = is_psd_exact(a);
        CHECK(impl == oracle);
        (oracle ? psd_seen : not_psd_seen)++;
        if (!impl) {
            auto check = exact_psd_check(a);
            auto& w = std::get<NotPSDWitness>(check);
            CHECK(sgn(quad_form(a, w.vector)) < 0);
        }
    }
    CHECK(psd_seen >= 20);
    CHECK(not_psd_seen >= 20);
}

TEST_CASE("psd singular matrices are accepted with correct rank") {
    QMat ones = qmat_zero(3, 3);
    for (auto& row : ones)
        for (auto& v : row) v = 1;
    auto check = exact_psd_check(ones);
    auto* w = std::get_if<LDLWitness>(&check);
    REQUIRE(w != nullptr);
    CHECK(w->rank == 1);

    QMat z = qmat_zero(2, 2);
    z[0][1] = z[1][0] = 1;
    CHECK(!is_psd_exact(z));
}

TEST_CASE("continued-fraction rationalization") {
    CHECK(*rationalize_double(0.49999999913, Int(1000)) == Rational(1, 2));
    CHECK(*rationalize_double(0.333333333333, Int(1000)) == Rational(1, 3));
    CHECK(*rationalize_double(-2.0, Int(10)) == Rational(-2));
    CHECK(!rationalize_double(std::nan(""), Int(10)).has_value());
}

TEST_CASE("jacobi eigendecomposition reconstructs") {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0, 3));
        DMat a(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                a[i][j] = a[j][i] = static_cast<double>(rng.uniform(-5, 5)) / 2.0;
        std::vector<double> lambda;
        DMat v;
        jacobi_eigen(a, lambda, v);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double rec = 0;
                for (std::size_t k = 0; k < n; ++k) rec += lambda[k] * v[i][k] * v[j][k];
                CHECK(std::fabs(rec - a[i][j]) < 1e-10);
            }
    }
}

TEST_CASE("trivial feasibility: single 1x1 block pinned to 1") {
    FeasibilityProblem p({1});
    BlockVecQ c = p.zero_exact();
    c.blocks[0][0][0] = 1;
    p.add_constraint(c, Rational(1));
    auto r = solve_feasibility(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(std::fabs(r.solution.blocks[0][0][0] - 1.0) < 1e-8);
    auto exact = rationalize(r.solution, p, Int(1000));
    REQUIRE(exact.has_value());
    CHECK(exact->blocks[0][0][0] == Rational(1));
}

TEST_CASE("sphere one-parameter problem is feasible near lambda = 1") {
    // Gram(f) + lambda Gram(q) with f = 2(x^2-yz)+w^2, q = x^2+y^2+z^2-w^2
    FeasibilityProblem p({4});
    BlockVecQ offset = p.zero_exact();
    offset.blocks[0][0][0] = 2;
    offset.blocks[0][1][2] = offset.blocks[0][2][1] = -1;
    offset.blocks[0][3][3] = 1;
    BlockVecQ dir = p.zero_exact();
    dir.blocks[0][0][0] = 1;
    dir.blocks[0][1][1] = 1;
    dir.blocks[0][2][2] = 1;
    dir.blocks[0][3][3] = -1;
    p.set_parametric(offset, {dir});
    auto r = solve_feasibility(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(std::fabs(r.solution.blocks[0][1][1] - 1.0) < 1e-6);
    auto exact = rationalize(r.solution, p, Int(1000));
    REQUIRE(exact.has_value());
    auto check = exact_psd_check(exact->blocks[0]);
    auto* w = std::get_if<LDLWitness>(&check);
    REQUIRE(w != nullptr);
    CHECK(w->rank == 2);
    CHECK(exact->blocks[0][1][1] == Rational(1));
}

TEST_CASE("solver never reports infeasibility evidence on seeded feasible problems") {
    SplitMix64 rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0, 2));
        QMat q = random_psd(rng, n);
        FeasibilityProblem p({n});
        std::size_t ncons = 1 + static_cast<std::size_t>(rng.uniform(0, 3));
        for (std::size_t c = 0; c < ncons; ++c) {
            QMat a = random_sym(rng, n, -2, 2);
            Rational rhs(0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) rhs += a[i][j] * q[i][j];
            BlockVecQ coeff;
            coeff.blocks.push_back(a);
            p.add_constraint(std::move(coeff), rhs);
        }
        auto r = solve_feasibility(p);
        CHECK(r.status != SolveStatus::InfeasibleEvidence);
    }
}

TEST_CASE("rationalize recovers a pinned exact solution") {
    SplitMix64 rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0, 1));
        QMat q = random_psd(rng, n);
        FeasibilityProblem p({n});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                BlockVecQ c = p.zero_exact();
                c.blocks[0][i][j] = c.blocks[0][j][i] = 1;
                Rational rhs = (i == j) ? q[i][j] : q[i][j] * 2;
                p.add_constraint(std::move(c), rhs);
            }
        auto r = solve_feasibility(p);
        REQUIRE(r.status == SolveStatus::Feasible);
        auto exact = rationalize(r.solution, p, Int(1000000));
        REQUIRE(exact.has_value());
        CHECK(exact->blocks[0] == q);
    }
}

TEST_CASE("rank-deficient rounding recovers exact PSD after projection") {
    FeasibilityProblem p({2});
    BlockVecQ c1 = p.zero_exact();
    c1.blocks[0][0][1] = c1.blocks[0][1][0] = 1;
    p.add_constraint(c1, Rational(2));
    BlockVecQ c2 = p.zero_exact();
    c2.blocks[0][0][0] = c2.blocks[0][1][1] = 1;
    p.add_constraint(c2, Rational(2));
    BlockVec numeric = p.zero();
    numeric.blocks[0] = {{1.0 - 1e-11, 1.0 + 3e-12}, {1.0 + 3e-12, 1.0 + 1e-11}};
    auto exact = rationalize(numeric, p, Int(1000));
    REQUIRE(exact.has_value());
    CHECK(exact->blocks[0][0][0] == Rational(1));
    CHECK(exact->blocks[0][0][1] == Rational(1));
    CHECK(is_psd_exact(exact->blocks[0]));
}

TEST_CASE("infeasible affine point: evidence or inconclusive, never feasible") {
    FeasibilityProblem p({1});
    BlockVecQ c = p.zero_exact();
    c.blocks[0][0][0] = 1;
    p.add_constraint(c, Rational(-1));
    SolveOptions opts;
    opts.max_iter = 5000;
    auto r = solve_feasibility(p, opts);
    CHECK(r.status != SolveStatus::Feasible);
}
