#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sosv {

// Exponent vector with cached total degree.
struct Monomial {
    std::vector<int> exps;
    int deg = 0;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exps(std::move(e)) {
        for (int x : exps) {
            if (x < 0) throw std::invalid_argument("negative exponent");
            deg += x;
        }
    }
    static Monomial one(std::size_t nvars) { return Monomial(std::vector<int>(nvars, 0)); }
    static Monomial var(std::size_t i, std::size_t nvars, int power = 1) {
        std::vector<int> e(nvars, 0);
        e[i] = power;
        return Monomial(std::move(e));
    }

    std::size_t nvars() const { return exps.size(); }
    bool is_one() const { return deg == 0; }

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return exps != o.exps; }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
        r.deg += o.deg;
        return r;
    }

    bool divides(const Monomial& o) const {
        if (deg > o.deg) return false;
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > o.exps[i]) return false;
        return true;
    }

    // Quotient o / this; caller guarantees divisibility.
    Monomial divide_into(const Monomial& o) const {
        Monomial r = o;
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] -= exps[i];
        r.deg -= deg;
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r = *this;
        r.deg = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            r.exps[i] = std::max(exps[i], o.exps[i]);
            r.deg += r.exps[i];
        }
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0 && o.exps[i] > 0) return false;
        return true;
    }
};

// Graded reverse lexicographic: compare total degree first; on ties the
// monomial whose last nonzero entry of the difference is negative is larger.
// Returns <0, 0, >0 like strcmp, with >0 meaning a > b.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (std::size_t i = a.exps.size(); i-- > 0;) {
        int d = a.exps[i] - b.exps[i];
        if (d != 0) return d < 0 ? 1 : -1;
    }
    return 0;
}

struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};

struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) < 0; }
};

// All monomials of the given total degree in nvars variables, grevlex-descending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree);

}  // namespace sosv
