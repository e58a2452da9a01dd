#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sosv/variety.hpp"

namespace sosv {

// Successive projections of a parametrized variety away from sampled points,
// tracking the dimension of the space of quadrics vanishing on each image.
struct ProjectionChain {
    std::string label;
    std::vector<std::vector<Int>> centers;  // exact points on X, primitive integer
    std::vector<long> quadric_dims;         // entry k: dimension after k projections
};

// Dimension of the space of quadrics vanishing on the projection of V away
// from k sampled points. Exact modulo-prime ranks, two independent primes and
// two point batches; deterministic per seed.
long quadric_dim_after_projection(const Variety& v, int k, std::uint64_t seed);

// Full chain 0..k_max (shares the sampled centers across k).
ProjectionChain projection_chain(const Variety& v, int k_max, std::uint64_t seed);

// Least k such that no quadric vanishes on the k-fold projection.
int quadratic_persistence(const Variety& v, std::uint64_t seed);

struct PythagorasBounds {
    int lower = 0;
    std::optional<int> upper;
    std::vector<std::string> provenance;
    // Observed in every known example (qp + py = n + 1); reported, never asserted.
    std::optional<int> conjectural_py;
};

PythagorasBounds pythagoras_bounds(const Variety& v, std::uint64_t seed = 0);

}  // namespace sosv
