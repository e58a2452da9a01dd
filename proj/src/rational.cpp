#include "sosv/rational.hpp"

#include <cmath>

namespace sosv {

std::optional<Rational> rationalize_double(double x, const Int& max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    bool neg = x < 0;
    double v = neg ? -x : x;

    // Continued-fraction convergents p_k/q_k of v; stop before q exceeds bound.
    Int p_prev(0), q_prev(1);
    Int p(1), q(0);
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > 9e18) break;
        Int a(static_cast<unsigned long>(fl));
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        if (q_next > max_den) break;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q == 0) return std::nullopt;
    Rational r = make_rational(p, q);
    if (neg) r = -r;
    return r;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace sosv
