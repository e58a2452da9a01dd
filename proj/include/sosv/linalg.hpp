#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sosv/rational.hpp"

namespace sosv {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major, rectangular

QMat qmat_zero(std::size_t rows, std::size_t cols);
QMat qmat_identity(std::size_t n);
QMat qmat_mul(const QMat& a, const QMat& b);
QVec qmat_apply(const QMat& a, const QVec& x);
QMat qmat_transpose(const QMat& a);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);

// Basis of { x : m x = 0 }.
std::vector<QVec> kernel_basis(const QMat& m);

// One solution of m x = b, or nullopt when inconsistent.
std::optional<QVec> solve(const QMat& m, const QVec& b);

// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<QMat> inverse(const QMat& m);

// Exact feasibility of { x >= 0 : A x = b } via phase-one simplex with
// Bland's rule. Returns a feasible point when one exists.
std::optional<QVec> lp_feasible_point(const QMat& a, const QVec& b);

// Scale a rational vector to coprime integers, first nonzero entry positive.
std::vector<Int> primitive_integer_vector(const QVec& v);

// ---- randomness (bit-stable across platforms) ----

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    // uniform in [lo, hi] inclusive, via rejection
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
};

// ---- modular arithmetic over word-sized primes ----

struct ModPrime {
    std::uint64_t p;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        if (s >= p || s < a) s -= p;
        return s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
    std::uint64_t reduce_int(const Int& z) const;
};

bool is_prime_u64(std::uint64_t n);

// Deterministic prime near 2^62 indexed by (seed, which).
ModPrime pick_prime(std::uint64_t seed, unsigned which);

// Rank of a matrix over GF(p); consumes the matrix.
std::size_t rank_mod(std::vector<std::vector<std::uint64_t>>& m, const ModPrime& mod);

}  // namespace sosv
