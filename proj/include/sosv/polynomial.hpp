#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sosv/monomial.hpp"
#include "sosv/rational.hpp"

namespace sosv {

struct Ring {
    std::vector<std::string> vars;

    std::size_t nvars() const { return vars.size(); }
    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }
    bool operator==(const Ring& o) const { return vars == o.vars; }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const Ring>(Ring{std::move(names)});
}

// Ring with variables x0..x{n-1}.
RingPtr make_ring_xn(std::size_t n);

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

// Sparse exact-rational multivariate polynomial. Terms are kept in
// grevlex-descending order so begin() is the leading term. Immutable in
// spirit: all operations return fresh values.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrevlexGreater>;

    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
    Polynomial(RingPtr ring, const Rational& c);

    static Polynomial variable(const RingPtr& ring, std::size_t i);
    static Polynomial monomial_term(const RingPtr& ring, Monomial m, Rational c);

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Total degree; nullopt for the zero polynomial.
    std::optional<int> degree() const;
    bool is_homogeneous() const;
    // Degree when homogeneous and nonzero, else nullopt.
    std::optional<int> homogeneous_degree() const;

    const Monomial& leading_monomial() const;
    const Rational& leading_coeff() const;

    Rational coeff(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned e) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    Int evaluate_int(const std::vector<Int>& point) const;

    // Multiply the target-degree deficit of each term into variable new_var.
    Polynomial homogenize(std::size_t new_var, int target_degree) const;

    // Divide out content: integer coefficients with gcd 1, leading coeff > 0.
    Polynomial primitive_part() const;
    Polynomial monic() const;

    // Canonical text rendering, e.g. "3*x0^2 - 1/2*x1*x2". Parsing this back
    // yields an equal polynomial.
    std::string to_string() const;

    void add_term(const Monomial& m, const Rational& c);  // builder; keeps invariants

private:
    RingPtr ring_;
    TermMap terms_;

    void check_ring(const Polynomial& o) const;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::size_t at, const std::string& what)
        : std::runtime_error(what), pos(at) {}
};

// Parses the canonical expression grammar (+ - * ^, unary minus, parentheses,
// integer and num/den literals) over the ring's variables. `lookup`, when
// given, resolves identifiers that are not ring variables.
Polynomial parse_polynomial(
    const RingPtr& ring, const std::string& text,
    const std::function<std::optional<Polynomial>(const std::string&)>& lookup = nullptr);

struct NewtonPolytope {
    std::vector<Monomial> vertices;  // minimal vertex set, grevlex-descending
    bool reduced = true;
};

// Vertices of the convex hull of the exponent vectors. Throws on zero input.
NewtonPolytope newton_polytope(const Polynomial& p);

// Membership of a rational point in conv(points), decided exactly.
bool in_convex_hull(const std::vector<std::vector<Rational>>& points,
                    const std::vector<Rational>& query);

}  // namespace sosv
