#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sosv/gb.hpp"
#include "sosv/graph.hpp"
#include "sosv/linalg.hpp"
#include "sosv/polynomial.hpp"

namespace sosv {

// Substitute images[i] for variable i; images live in their own ring.
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images);

// Projective subvariety: a homogeneous ideal, an optional rational
// parametrization, and cached numerical invariants. For parametrized
// families the ideal is interpolated lazily on first use, so that large
// ambient spaces stay cheap when only the parametrization is needed.
class Variety {
public:
    Variety() = default;

    static Variety from_ideal(Ideal ideal, std::string label, bool irreducible = true);
    static Variety from_parametrization(RingPtr param_ring, std::vector<Polynomial> components,
                                        std::string label, int generator_degree_cap = 4);
    static Variety from_ideal_and_parametrization(Ideal ideal, RingPtr param_ring,
                                                  std::vector<Polynomial> components,
                                                  std::string label);

    const Ideal& ideal() const;  // interpolates on demand for parametrized varieties
    bool has_parametrization() const { return !parametrization_.empty(); }
    const std::vector<Polynomial>& parametrization() const { return parametrization_; }
    const RingPtr& param_ring() const { return param_ring_; }
    const RingPtr& ambient_ring() const { return ambient_ring_; }
    std::size_t ambient_n() const { return ambient_ring_->nvars() - 1; }
    const std::string& label() const { return label_; }
    bool irreducible() const { return irreducible_; }

    const InvariantReport& invariants() const;  // cached

    // Exact projective rational point on the variety, deterministic per seed.
    std::vector<Rational> sample_point(std::uint64_t seed) const;
    // Same point scaled to coprime integers.
    std::vector<Int> sample_point_int(std::uint64_t seed) const;

private:
    mutable std::optional<Ideal> ideal_;
    std::vector<Polynomial> parametrization_;
    RingPtr param_ring_;
    RingPtr ambient_ring_;
    std::string label_;
    bool irreducible_ = true;
    int generator_degree_cap_ = 4;
    mutable std::optional<InvariantReport> invariants_;
};

// The d-th Veronese embedding of P^n: all degree-d monomials, grevlex order.
Variety veronese(int n, int d);

// Rational normal scroll with curve degrees d1..dk.
Variety scroll(const std::vector<int>& degrees);

// Toric variety of a list of lattice points (kept in the given order,
// homogenized by a fresh parameter to common degree).
Variety toric_from_polytope(const std::vector<std::vector<int>>& lattice_points,
                            int generator_degree_cap = 3);

// Coordinate subspace arrangement X(G): ideal of non-edge products x_i x_j.
Variety subspace_arrangement(const Graph& g);

// Quadric hypersurface x^T A x = 0; a rational point enables sampling via
// lines through it.
Variety quadric_hypersurface(const QMat& a, const std::optional<QVec>& point = std::nullopt);

struct MinimalDegreeReport {
    bool is_nondegenerate = false;
    Int degree;
    int codim = 0;
    bool is_minimal_degree = false;
};

MinimalDegreeReport classify_minimal_degree(const Variety& v);

// Rank of the degree-k evaluation matrix modulo two independent primes,
// i.e. the dimension of the degree-k function space on the image.
std::size_t interpolation_rank_mod(const RingPtr& ambient_ring, const RingPtr& param_ring,
                                   const std::vector<Polynomial>& components, int degree,
                                   std::uint64_t seed);

// Interpolate the degree-k part of the vanishing ideal of a parametrization:
// exact kernel of the evaluation matrix at random integer points, accepted
// only when stable across two independent batches.
std::vector<Polynomial> interpolate_vanishing_forms(const RingPtr& ambient_ring,
                                                    const RingPtr& param_ring,
                                                    const std::vector<Polynomial>& components,
                                                    int degree, std::uint64_t seed);

}  // namespace sosv
