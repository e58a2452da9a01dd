#include "sosv/gb.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sosv {

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
    for (auto& g : generators) {
        if (g.is_zero()) continue;
        if (!g.is_homogeneous()) throw std::invalid_argument("ideal generator not homogeneous");
        if (!same_ring(g.ring(), ring_)) throw std::invalid_argument("generator ring mismatch");
        generators_.push_back(std::move(g));
    }
}

namespace {

// Full reduction: no monomial of the remainder is divisible by any LT(g).
Polynomial reduce_full(const Polynomial& p, const std::vector<Polynomial>& basis) {
    Polynomial rem(p.ring());
    Polynomial work = p;
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial();
        const Rational lc = work.leading_coeff();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (g.leading_monomial().divides(lm)) {
                Monomial q = g.leading_monomial().divide_into(lm);
                Rational f = lc / g.leading_coeff();
                work = work - Polynomial::monomial_term(g.ring(), q, f) * g;
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            work = work - Polynomial::monomial_term(work.ring(), lm, lc);
        }
    }
    return rem;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    Monomial l = f.leading_monomial().lcm(g.leading_monomial());
    Monomial qf = f.leading_monomial().divide_into(l);
    Monomial qg = g.leading_monomial().divide_into(l);
    Polynomial a = Polynomial::monomial_term(f.ring(), qf, Rational(1) / f.leading_coeff()) * f;
    Polynomial b = Polynomial::monomial_term(g.ring(), qg, Rational(1) / g.leading_coeff()) * g;
    return a - b;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

std::vector<Polynomial> buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens) {
    std::vector<Polynomial> basis;
    for (const auto& g : gens) {
        Polynomial r = reduce_full(g, basis);
        if (!r.is_zero()) basis.push_back(r.monic());
    }
    if (basis.empty()) return {};

    std::vector<Pair> queue;
    std::set<std::pair<std::size_t, std::size_t>> done;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            queue.push_back({i, k, basis[i].leading_monomial().lcm(basis[k].leading_monomial())});
    };
    for (std::size_t k = 1; k < basis.size(); ++k) push_pairs(k);

    while (!queue.empty()) {
        auto best = queue.begin();
        for (auto it = queue.begin(); it != queue.end(); ++it)
            if (grevlex_cmp(it->lcm, best->lcm) < 0) best = it;
        Pair pr = *best;
        queue.erase(best);
        done.insert({pr.i, pr.j});

        const Monomial& li = basis[pr.i].leading_monomial();
        const Monomial& lj = basis[pr.j].leading_monomial();
        if (li.coprime(lj)) continue;  // Buchberger's first criterion
        // chain criterion: some k with LT(k) | lcm and both pairs already handled
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!basis[k].leading_monomial().divides(pr.lcm)) continue;
            auto key_ik = std::minmax(pr.i, k);
            auto key_jk = std::minmax(pr.j, k);
            if (done.count({key_ik.first, key_ik.second}) &&
                done.count({key_jk.first, key_jk.second}))
                skip = true;
        }
        if (skip) continue;

        Polynomial r = reduce_full(s_polynomial(basis[pr.i], basis[pr.j]), basis);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        push_pairs(basis.size() - 1);
        if (r.degree() == 0) break;  // unit ideal; no further pairs matter
    }

    // minimalize: drop elements whose LT is divisible by another LT
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& li = basis[i].leading_monomial();
            const Monomial& lj = basis[j].leading_monomial();
            if (lj.divides(li) && (li != lj || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // tail-reduce each element against the others
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = reduce_full(minimal[i], others);
        if (!r.is_zero()) reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
        return grevlex_cmp(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return reduced;
}

}  // namespace

const std::vector<Polynomial>& Ideal::groebner() const {
    if (!gb_) gb_ = buchberger(ring_, generators_);
    return *gb_;
}

bool Ideal::is_unit_ideal() const {
    const auto& gb = groebner();
    return gb.size() == 1 && gb[0].degree() == 0;
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis) {
    return reduce_full(p, basis);
}

Polynomial normal_form(const Polynomial& p, const Ideal& ideal) {
    if (!same_ring(p.ring(), ideal.ring()) && !p.is_zero())
        throw std::invalid_argument("normal_form: ring mismatch");
    return reduce_full(p, ideal.groebner());
}

bool ideal_contains(const Ideal& ideal, const Polynomial& p) {
    return normal_form(p, ideal).is_zero();
}

// ---- Hilbert series of the monomial ideal of leading terms ----

namespace {

std::vector<Monomial> minimalize_monomials(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), GrevlexLess{});
    std::vector<Monomial> out;
    for (const auto& m : gens) {
        bool divisible = false;
        for (const auto& g : out)
            if (g.divides(m)) {
                divisible = true;
                break;
            }
        if (!divisible) out.push_back(m);
    }
    return out;
}

std::vector<Int> poly_mul_z(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<Int> poly_add_shifted(const std::vector<Int>& a, const std::vector<Int>& b, int shift) {
    std::vector<Int> r = a;
    if (r.size() < b.size() + shift) r.resize(b.size() + shift, Int(0));
    for (std::size_t j = 0; j < b.size(); ++j) r[j + shift] += b[j];
    return r;
}

}  // namespace

std::vector<Int> hilbert_numerator(std::vector<Monomial> gens, std::size_t nvars) {
    gens = minimalize_monomials(std::move(gens));
    if (gens.empty()) return {Int(1)};
    if (gens.size() == 1 && gens[0].deg == 0) return {Int(0)};
    // coprime base case: numerator is the product of (1 - t^deg)
    bool pairwise_coprime = true;
    for (std::size_t i = 0; i < gens.size() && pairwise_coprime; ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!gens[i].coprime(gens[j])) {
                pairwise_coprime = false;
                break;
            }
    if (pairwise_coprime) {
        std::vector<Int> num{Int(1)};
        for (const auto& g : gens) {
            std::vector<Int> factor(g.deg + 1, Int(0));
            factor[0] = 1;
            factor[g.deg] = -1;
            num = poly_mul_z(num, factor);
        }
        return num;
    }
    // pivot on the variable occurring most often
    std::vector<int> freq(nvars, 0);
    for (const auto& g : gens)
        for (std::size_t v = 0; v < nvars; ++v)
            if (g.exps[v] > 0) ++freq[v];
    std::size_t pivot_var =
        static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());

    // I + (x_v) and I : (x_v)
    std::vector<Monomial> sum_gens{Monomial::var(pivot_var, nvars)};
    std::vector<Monomial> colon_gens;
    for (const auto& g : gens) {
        if (g.exps[pivot_var] == 0) {
            sum_gens.push_back(g);
            colon_gens.push_back(g);
        } else {
            Monomial h = g;
            h.exps[pivot_var] -= 1;
            h.deg -= 1;
            colon_gens.push_back(h);
        }
    }
    std::vector<Int> k_sum = hilbert_numerator(std::move(sum_gens), nvars);
    std::vector<Int> k_colon = hilbert_numerator(std::move(colon_gens), nvars);
    return poly_add_shifted(k_sum, k_colon, 1);
}

namespace {

Int binom_z(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::vector<Monomial> leading_monomials(const Ideal& ideal) {
    std::vector<Monomial> lts;
    for (const auto& g : ideal.groebner()) lts.push_back(g.leading_monomial());
    return lts;
}

Int hf_from_numerator(const std::vector<Int>& num, std::size_t nvars, int j) {
    // coefficient of t^j in N(t) / (1-t)^nvars
    Int total(0);
    for (std::size_t i = 0; i < num.size() && static_cast<int>(i) <= j; ++i) {
        if (num[i] == 0) continue;
        total += num[i] * binom_z(static_cast<long>(nvars) - 1 + j - static_cast<long>(i),
                                  static_cast<long>(nvars) - 1);
    }
    return total;
}

}  // namespace

Int hilbert_function(const Ideal& ideal, int j) {
    if (j < 0) throw std::invalid_argument("hilbert_function: negative degree");
    auto num = hilbert_numerator(leading_monomials(ideal), ideal.ring()->nvars());
    return hf_from_numerator(num, ideal.ring()->nvars(), j);
}

std::vector<Monomial> standard_monomials(const Ideal& ideal, int degree) {
    auto lts = leading_monomials(ideal);
    std::vector<Monomial> out;
    for (const auto& m : monomials_of_degree(ideal.ring()->nvars(), degree)) {
        bool divisible = false;
        for (const auto& lt : lts)
            if (lt.divides(m)) {
                divisible = true;
                break;
            }
        if (!divisible) out.push_back(m);
    }
    return out;
}

Rational eval_poly_at(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational v(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
}

InvariantReport numerical_invariants(const Ideal& ideal) {
    if (ideal.is_unit_ideal()) throw std::invalid_argument("unit ideal: empty variety");
    const std::size_t nvars = ideal.ring()->nvars();
    const int ambient = static_cast<int>(nvars) - 1;
    const int window = ambient + 10;

    auto num = hilbert_numerator(leading_monomials(ideal), nvars);
    std::vector<Int> hf(window + 1);
    for (int j = 0; j <= window; ++j) hf[j] = hf_from_numerator(num, nvars, j);

    if (hf[window] == 0 && hf[window - 1] == 0)
        throw std::invalid_argument("empty variety: Hilbert function is eventually zero");

    // least D whose (D+1)-st difference vanishes for at least 5 trailing values
    constexpr int kStable = 5;
    int dim = -1;
    for (int d = 0; d <= ambient && dim < 0; ++d) {
        std::vector<Int> diff(hf.begin(), hf.end());
        for (int k = 0; k <= d; ++k) {
            for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
            diff.pop_back();
        }
        int zeros = 0;
        for (std::size_t i = diff.size(); i-- > 0;) {
            if (diff[i] == 0)
                ++zeros;
            else
                break;
        }
        if (zeros >= kStable) dim = d;
    }
    if (dim < 0)
        throw std::runtime_error("Hilbert polynomial did not stabilize within the window");

    // Lagrange interpolation of the Hilbert polynomial on the window tail
    std::vector<int> nodes;
    for (int i = 0; i <= dim; ++i) nodes.push_back(window - dim + i);
    std::vector<Rational> hp(static_cast<std::size_t>(dim) + 1, Rational(0));
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        // basis polynomial prod_{b != a} (x - x_b)/(x_a - x_b), coefficients
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t b = 0; b < nodes.size(); ++b) {
            if (b == a) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] += basis[i];
                next[i] -= basis[i] * Rational(nodes[b]);
            }
            basis = std::move(next);
            denom *= Rational(nodes[a] - nodes[b]);
        }
        Rational scale = Rational(hf[nodes[a]]) / denom;
        for (std::size_t i = 0; i < basis.size(); ++i) hp[i] += basis[i] * scale;
    }
    while (hp.size() > 1 && sgn(hp.back()) == 0) hp.pop_back();
    if (static_cast<int>(hp.size()) - 1 != dim)
        throw std::runtime_error("Hilbert polynomial degree disagrees with difference table");

    InvariantReport report;
    report.dim = dim;
    report.codim = ambient - dim;
    Rational deg_r = hp.back();
    for (int k = 2; k <= dim; ++k) deg_r *= k;
    if (deg_r.get_den() != 1 || sgn(deg_r) <= 0)
        throw std::runtime_error("degree computation did not yield a positive integer");
    report.degree = deg_r.get_num();

    int hilbreg = window + 1;
    for (int j = window; j >= 0; --j) {
        if (Rational(hf[j]) == eval_poly_at(hp, Rational(j)))
            hilbreg = j;
        else
            break;
    }
    if (hilbreg > window) throw std::runtime_error("no agreement point for hilbreg in window");
    report.hilbreg = hilbreg;

    if (dim == 1) {
        Rational g = Rational(1) - eval_poly_at(hp, Rational(0));
        report.genus = g.get_num();  // integer-valued at 0
    }
    for (int j = 0; j <= window; ++j) report.hilbert_values.emplace_back(j, hf[j]);
    report.hilbert_poly = hp;
    return report;
}

}  // namespace sosv
