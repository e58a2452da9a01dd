#include "sosv/variety.hpp"

#include <algorithm>
#include <stdexcept>

namespace sosv {

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images) {
    if (images.empty()) throw std::invalid_argument("substitute: no images");
    const RingPtr& target = images[0].ring();
    Polynomial out(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term(target, c);
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] > 0) term = term * images[i].pow(static_cast<unsigned>(m.exps[i]));
        out = out + term;
    }
    return out;
}

namespace {

std::vector<Int> random_param_point(SplitMix64& rng, std::size_t nparams, int lo, int hi) {
    for (;;) {
        std::vector<Int> pt(nparams);
        bool all_zero = true;
        for (auto& v : pt) {
            long x = rng.uniform(lo, hi);
            v = Int(x);
            if (x != 0) all_zero = false;
        }
        if (all_zero) continue;
        return pt;
    }
}

// rows: evaluations of all degree-`degree` ambient monomials at param points
QMat evaluation_matrix(const std::vector<Monomial>& monos,
                       const std::vector<Polynomial>& components,
                       const std::vector<std::vector<Int>>& points) {
    QMat m;
    m.reserve(points.size());
    for (const auto& pt : points) {
        std::vector<Int> coords;
        coords.reserve(components.size());
        for (const auto& c : components) coords.push_back(c.evaluate_int(pt));
        QVec row;
        row.reserve(monos.size());
        for (const auto& mono : monos) {
            Int v(1);
            for (std::size_t i = 0; i < mono.exps.size(); ++i)
                for (int e = 0; e < mono.exps[i]; ++e) v *= coords[i];
            row.emplace_back(v);
        }
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace

namespace {

std::vector<std::vector<std::uint64_t>> reduce_matrix_mod(const QMat& m, const ModPrime& p) {
    std::vector<std::vector<std::uint64_t>> out(m.size(), std::vector<std::uint64_t>(m.empty() ? 0 : m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = p.reduce_int(m[i][j].get_num());
    return out;
}

// Indices of a row subset spanning the row space mod p.
std::vector<std::size_t> independent_rows_mod(const QMat& m, const ModPrime& p) {
    auto mm = reduce_matrix_mod(m, p);
    std::vector<std::size_t> chosen;
    if (mm.empty()) return chosen;
    const std::size_t cols = mm[0].size();
    std::vector<std::vector<std::uint64_t>> echelon;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t i = 0; i < mm.size(); ++i) {
        auto row = mm[i];
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            std::uint64_t f = row[pivot_cols[k]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                row[j] = p.sub(row[j], p.mul(f, echelon[k][j]));
        }
        std::size_t piv = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (row[j] != 0) {
                piv = j;
                break;
            }
        if (piv == cols) continue;
        std::uint64_t inv = p.inv(row[piv]);
        for (std::size_t j = 0; j < cols; ++j) row[j] = p.mul(row[j], inv);
        echelon.push_back(std::move(row));
        pivot_cols.push_back(piv);
        chosen.push_back(i);
    }
    return chosen;
}

}  // namespace

std::size_t interpolation_rank_mod(const RingPtr& ambient_ring, const RingPtr& param_ring,
                                   const std::vector<Polynomial>& components, int degree,
                                   std::uint64_t seed) {
    const auto monos = monomials_of_degree(ambient_ring->nvars(), degree);
    const std::size_t npoints = 2 * monos.size() + 10;
    const std::size_t nparams = param_ring->nvars();
    std::size_t agreed = 0;
    for (unsigned which = 0; which < 2; ++which) {
        SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + degree * 1000003ULL + which * 77ULL);
        std::vector<std::vector<Int>> pts;
        for (std::size_t i = 0; i < npoints; ++i)
            pts.push_back(random_param_point(rng, nparams, -9, 9));
        QMat m = evaluation_matrix(monos, components, pts);
        auto p = pick_prime(seed + 101, which);
        auto mm = reduce_matrix_mod(m, p);
        std::size_t r = rank_mod(mm, p);
        if (which == 0)
            agreed = r;
        else if (r != agreed)
            throw std::runtime_error("modular interpolation ranks disagree across batches");
    }
    return agreed;
}

std::vector<Polynomial> interpolate_vanishing_forms(const RingPtr& ambient_ring,
                                                    const RingPtr& param_ring,
                                                    const std::vector<Polynomial>& components,
                                                    int degree, std::uint64_t seed) {
    const auto monos = monomials_of_degree(ambient_ring->nvars(), degree);
    const std::size_t npoints = 2 * monos.size() + 10;
    const std::size_t nparams = param_ring->nvars();

    for (int attempt = 0; attempt < 5; ++attempt) {
        SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + degree * 1000003ULL + attempt);
        std::vector<std::vector<Int>> batch1, batch2;
        for (std::size_t i = 0; i < npoints; ++i) batch1.push_back(random_param_point(rng, nparams, -9, 9));
        for (std::size_t i = 0; i < npoints; ++i) batch2.push_back(random_param_point(rng, nparams, -9, 9));

        QMat m1 = evaluation_matrix(monos, components, batch1);
        // exact kernel of a modularly chosen independent row subset; every
        // remaining row is then checked exactly against the kernel
        auto prime = pick_prime(seed + 7 * attempt, 0);
        auto rows = independent_rows_mod(m1, prime);
        QMat core;
        for (auto i : rows) core.push_back(m1[i]);
        auto kernel = kernel_basis(core);
        if (kernel.size() + rows.size() != monos.size()) continue;  // unlucky prime

        QMat m2 = evaluation_matrix(monos, components, batch2);
        auto prime2 = pick_prime(seed + 7 * attempt, 1);
        auto mm2 = reduce_matrix_mod(m2, prime2);
        bool stable = rank_mod(mm2, prime2) == rows.size();
        for (const QMat* m : {&m1, &m2}) {
            if (!stable) break;
            for (const auto& v : kernel) {
                if (!stable) break;
                QVec image = qmat_apply(*m, v);
                for (const auto& x : image)
                    if (sgn(x) != 0) {
                        stable = false;
                        break;
                    }
            }
        }
        if (!stable) continue;

        std::vector<Polynomial> forms;
        for (const auto& v : kernel) {
            auto iv = primitive_integer_vector(v);
            Polynomial f(ambient_ring);
            for (std::size_t j = 0; j < monos.size(); ++j)
                if (iv[j] != 0) f.add_term(monos[j], Rational(iv[j]));
            forms.push_back(f.primitive_part());
        }
        return forms;
    }
    throw std::runtime_error("interpolation did not stabilize across batches");
}

namespace {

Ideal build_ideal_from_parametrization(const RingPtr& ambient_ring, const RingPtr& param_ring,
                                       const std::vector<Polynomial>& components, int cap) {
    std::vector<Polynomial> gens;
    for (int k = 2; k <= cap; ++k) {
        // cheap modular pre-pass: when the ideal collected so far already cuts
        // the quotient down to the function-space dimension in degree k, no
        // new generator can exist there and the exact kernel is skipped
        std::size_t fn_rank =
            interpolation_rank_mod(ambient_ring, param_ring, components, k, 0xC0FFEE + k);
        Ideal current(ambient_ring, gens);
        if (hilbert_function(current, k) == Int(static_cast<unsigned long>(fn_rank))) continue;

        auto forms = interpolate_vanishing_forms(ambient_ring, param_ring, components, k, 0xC0FFEE + k);
        for (const auto& f : forms) {
            Polynomial nf = normal_form(f, current);
            if (!nf.is_zero()) {
                gens.push_back(f);
                current = Ideal(ambient_ring, gens);
            }
        }
    }
    Ideal ideal(ambient_ring, gens);
    // parametrization consistency: each generator vanishes identically
    for (const auto& g : ideal.generators()) {
        if (!substitute(g, components).is_zero())
            throw std::runtime_error("interpolated generator does not vanish on parametrization");
    }
    return ideal;
}

}  // namespace

Variety Variety::from_ideal(Ideal ideal, std::string label, bool irreducible) {
    Variety v;
    v.ambient_ring_ = ideal.ring();
    v.ideal_ = std::move(ideal);
    v.label_ = std::move(label);
    v.irreducible_ = irreducible;
    return v;
}

Variety Variety::from_parametrization(RingPtr param_ring, std::vector<Polynomial> components,
                                      std::string label, int generator_degree_cap) {
    if (components.size() < 2) throw std::invalid_argument("parametrization needs >= 2 components");
    std::optional<int> common;
    for (const auto& c : components) {
        auto d = c.homogeneous_degree();
        if (!d) throw std::invalid_argument("parametrization components must be homogeneous nonzero");
        if (common && *common != *d)
            throw std::invalid_argument("parametrization components of mixed degree");
        common = d;
    }
    Variety v;
    v.param_ring_ = std::move(param_ring);
    v.parametrization_ = std::move(components);
    v.ambient_ring_ = make_ring_xn(v.parametrization_.size());
    v.label_ = std::move(label);
    v.irreducible_ = true;  // image of an irreducible parameter space
    v.generator_degree_cap_ = generator_degree_cap;
    return v;
}

Variety Variety::from_ideal_and_parametrization(Ideal ideal, RingPtr param_ring,
                                                std::vector<Polynomial> components,
                                                std::string label) {
    Variety v = from_parametrization(std::move(param_ring), std::move(components), label);
    if (!same_ring(v.ambient_ring_, ideal.ring()))
        throw std::invalid_argument("ideal ring does not match parametrization arity");
    for (const auto& g : ideal.generators())
        if (!substitute(g, v.parametrization_).is_zero())
            throw std::invalid_argument("ideal generator does not vanish on parametrization");
    v.ideal_ = std::move(ideal);
    v.label_ = std::move(label);
    return v;
}

const Ideal& Variety::ideal() const {
    if (!ideal_) {
        ideal_ = build_ideal_from_parametrization(ambient_ring_, param_ring_, parametrization_,
                                                  generator_degree_cap_);
    }
    return *ideal_;
}

const InvariantReport& Variety::invariants() const {
    if (!invariants_) invariants_ = numerical_invariants(ideal());
    return *invariants_;
}

std::vector<Rational> Variety::sample_point(std::uint64_t seed) const {
    if (parametrization_.empty())
        throw std::invalid_argument("sample_point: variety has no parametrization");
    SplitMix64 rng(seed ^ 0xA5A5A5A5F00DULL);
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto params = random_param_point(rng, param_ring_->nvars(), -9, 9);
        std::vector<Rational> pt;
        bool nonzero = false;
        for (const auto& c : parametrization_) {
            Int v = c.evaluate_int(params);
            if (v != 0) nonzero = true;
            pt.emplace_back(v);
        }
        if (nonzero) return pt;
    }
    throw std::runtime_error("sample_point: degenerate samples exhausted retries");
}

std::vector<Int> Variety::sample_point_int(std::uint64_t seed) const {
    return primitive_integer_vector(sample_point(seed));
}

Variety veronese(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("veronese: need n >= 1, d >= 1");
    Int count = 1;
    mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(n + d), static_cast<unsigned long>(d));
    if (count > 10000) throw std::invalid_argument("veronese: ambient dimension over 10^4");
    RingPtr params = make_ring_xn(static_cast<std::size_t>(n) + 1);
    std::vector<Polynomial> comps;
    for (const auto& m : monomials_of_degree(params->nvars(), d))
        comps.push_back(Polynomial::monomial_term(params, m, Rational(1)));
    std::string label = "veronese(" + std::to_string(n) + "," + std::to_string(d) + ")";
    return Variety::from_parametrization(params, std::move(comps), label, 3);
}

Variety scroll(const std::vector<int>& degrees) {
    if (degrees.empty()) throw std::invalid_argument("scroll: empty degree list");
    const std::size_t k = degrees.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back("s" + std::to_string(i));
    names.push_back("t0");
    names.push_back("t1");
    RingPtr params = make_ring(names);
    const std::size_t t0 = k, t1 = k + 1;
    // common parameter degree: 1 (in s) + max d (in t); pad lower blocks with t0
    int dmax = *std::max_element(degrees.begin(), degrees.end());
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < k; ++i) {
        if (degrees[i] < 1) throw std::invalid_argument("scroll: degrees must be positive");
        for (int r = 0; r <= degrees[i]; ++r) {
            std::vector<int> e(params->nvars(), 0);
            e[i] = 1;
            e[t0] = degrees[i] - r + (dmax - degrees[i]);
            e[t1] = r;
            comps.push_back(Polynomial::monomial_term(params, Monomial(e), Rational(1)));
        }
    }
    std::string label = "scroll(";
    for (std::size_t i = 0; i < k; ++i) label += (i ? "," : "") + std::to_string(degrees[i]);
    label += ")";
    return Variety::from_parametrization(params, std::move(comps), label, 3);
}

Variety toric_from_polytope(const std::vector<std::vector<int>>& lattice_points, int cap) {
    if (lattice_points.size() < 2) throw std::invalid_argument("toric: need >= 2 lattice points");
    const std::size_t dim = lattice_points[0].size();
    for (const auto& p : lattice_points)
        if (p.size() != dim) throw std::invalid_argument("toric: inconsistent point dimension");
    for (std::size_t i = 0; i < lattice_points.size(); ++i)
        for (std::size_t j = i + 1; j < lattice_points.size(); ++j)
            if (lattice_points[i] == lattice_points[j])
                throw std::invalid_argument("toric: duplicate lattice point");
    // affine span check: differences from the first point must span dim... at
    // least rank 1; full-dimensionality is not required, only nondegeneracy.
    QMat diffs;
    for (std::size_t i = 1; i < lattice_points.size(); ++i) {
        QVec row;
        for (std::size_t j = 0; j < dim; ++j)
            row.emplace_back(lattice_points[i][j] - lattice_points[0][j]);
        diffs.push_back(std::move(row));
    }
    if (rank(diffs) == 0) throw std::invalid_argument("toric: points do not span affinely");

    int min_coord = 0;
    for (const auto& p : lattice_points)
        for (int c : p) min_coord = std::min(min_coord, c);
    if (min_coord < 0) throw std::invalid_argument("toric: lattice points must be nonnegative");

    int dmax = 0;
    for (const auto& p : lattice_points) {
        int s = 0;
        for (int c : p) s += c;
        dmax = std::max(dmax, s);
    }
    std::vector<std::string> names{"u"};
    for (std::size_t i = 0; i < dim; ++i) names.push_back("t" + std::to_string(i));
    RingPtr params = make_ring(names);
    std::vector<Polynomial> comps;
    for (const auto& p : lattice_points) {
        std::vector<int> e(params->nvars(), 0);
        int s = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            e[i + 1] = p[i];
            s += p[i];
        }
        e[0] = dmax - s;
        comps.push_back(Polynomial::monomial_term(params, Monomial(e), Rational(1)));
    }
    return Variety::from_parametrization(params, std::move(comps), "toric", cap);
}

Variety subspace_arrangement(const Graph& g) {
    if (g.n < 1) throw std::invalid_argument("arrangement: graph needs >= 1 vertex");
    RingPtr ring = make_ring_xn(g.n);
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j)
            if (!g.has_edge(i, j)) {
                Monomial m = Monomial::var(i, g.n) * Monomial::var(j, g.n);
                gens.push_back(Polynomial::monomial_term(ring, m, Rational(1)));
            }
    bool complete = gens.empty();
    return Variety::from_ideal(Ideal(ring, std::move(gens)), "arrangement", complete);
}

Variety quadric_hypersurface(const QMat& a, const std::optional<QVec>& point) {
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("quadric: matrix too small");
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("quadric: matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a[i][j] != a[j][i]) throw std::invalid_argument("quadric: matrix not symmetric");

    RingPtr ring = make_ring_xn(n);
    Polynomial q(ring);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rational c = (i == j) ? a[i][j] : a[i][j] * 2;
            if (sgn(c) != 0)
                q.add_term(Monomial::var(i, n) * Monomial::var(j, n), c);
        }
    Variety v = Variety::from_ideal(Ideal(ring, {q}), "quadric", true);
    if (!point) return v;

    // parametrize by second intersections of lines through the given point
    const QVec& p = *point;
    if (p.size() != n) throw std::invalid_argument("quadric: point dimension mismatch");
    QVec ap = qmat_apply(a, p);
    Rational qp(0);
    for (std::size_t i = 0; i < n; ++i) qp += p[i] * ap[i];
    if (sgn(qp) != 0) throw std::invalid_argument("quadric: supplied point is not on the quadric");

    // v ranges over the hyperplane {v_i0 = 0} with i0 the first nonzero of p
    std::size_t i0 = 0;
    while (i0 < n && sgn(p[i0]) == 0) ++i0;
    if (i0 == n) throw std::invalid_argument("quadric: zero point");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        if (i != i0) names.push_back("v" + std::to_string(i));
    RingPtr vring = make_ring(names);
    std::vector<Polynomial> vvars;
    {
        std::size_t vi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == i0)
                vvars.push_back(Polynomial(vring));
            else
                vvars.push_back(Polynomial::variable(vring, vi++));
        }
    }
    Polynomial qv(vring);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(a[i][j]) != 0) qv = qv + vvars[i] * vvars[j] * a[i][j];
    Polynomial bpv(vring);  // 2 p^T A v
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(ap[i]) != 0) bpv = bpv + vvars[i] * (ap[i] * 2);
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(qv * p[i] - bpv * vvars[i]);

    return Variety::from_ideal_and_parametrization(Ideal(ring, {q}), vring, comps, "quadric");
}

MinimalDegreeReport classify_minimal_degree(const Variety& v) {
    const auto& inv = v.invariants();
    MinimalDegreeReport r;
    const std::size_t n = v.ambient_n();
    Int hf1 = hilbert_function(v.ideal(), 1);
    r.is_nondegenerate = (hf1 == Int(static_cast<unsigned long>(n + 1)));
    r.degree = inv.degree;
    r.codim = inv.codim;
    r.is_minimal_degree = r.is_nondegenerate && inv.degree == Int(static_cast<long>(inv.codim) + 1);
    return r;
}

}  // namespace sosv
