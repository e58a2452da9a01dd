#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sosv/polynomial.hpp"

namespace sosv {

// Homogeneous ideal with a lazily computed reduced Groebner basis. The
// monomial order is grevlex in the declared variable order; the tag is kept
// with the basis so certificates can name it.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Polynomial> generators);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return generators_; }
    bool is_zero_ideal() const { return generators_.empty(); }

    // Reduced monic Groebner basis (unique for the order); {1} for the unit ideal.
    const std::vector<Polynomial>& groebner() const;
    bool is_unit_ideal() const;
    static constexpr const char* order_tag = "grevlex";

private:
    RingPtr ring_;
    std::vector<Polynomial> generators_;
    mutable std::optional<std::vector<Polynomial>> gb_;
};

Polynomial normal_form(const Polynomial& p, const Ideal& ideal);
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis);

bool ideal_contains(const Ideal& ideal, const Polynomial& p);

// Dimension of the degree-j graded piece of the quotient ring.
Int hilbert_function(const Ideal& ideal, int j);

// Monomials of the given degree divisible by no Groebner leading monomial.
std::vector<Monomial> standard_monomials(const Ideal& ideal, int degree);

struct InvariantReport {
    int dim = 0;    // projective dimension of X
    int codim = 0;  // ambient minus dim
    Int degree;
    int hilbreg = 0;
    std::optional<Int> genus;  // curves only
    std::vector<std::pair<int, Int>> hilbert_values;
    std::vector<Rational> hilbert_poly;  // coefficients, constant first
};

Rational eval_poly_at(const std::vector<Rational>& coeffs, const Rational& x);

// Degree, dimension, codimension, Hilbert regularity and (for curves) genus,
// all recovered from the Hilbert function by finite differences.
InvariantReport numerical_invariants(const Ideal& ideal);

// Numerator of the Hilbert series N(t)/(1-t)^nvars for a monomial ideal.
std::vector<Int> hilbert_numerator(std::vector<Monomial> gens, std::size_t nvars);

}  // namespace sosv
