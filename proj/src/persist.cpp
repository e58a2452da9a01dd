#include "sosv/persist.hpp"

#include <algorithm>
#include <stdexcept>

#include "sosv/completion.hpp"
#include "sosv/gb.hpp"

namespace sosv {

namespace {

std::vector<Int> center_on_variety(const Variety& v, SplitMix64& rng) {
    const std::size_t nparams = v.param_ring()->nvars();
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<Int> params(nparams);
        bool all_zero = true;
        for (auto& x : params) {
            long t = rng.uniform(-20, 20);
            x = Int(t);
            if (t != 0) all_zero = false;
        }
        if (all_zero) continue;
        std::vector<Int> pt;
        bool nonzero = false;
        for (const auto& c : v.parametrization()) {
            pt.push_back(c.evaluate_int(params));
            if (pt.back() != 0) nonzero = true;
        }
        if (!nonzero) continue;
        QVec q(pt.begin(), pt.end());
        return primitive_integer_vector(q);
    }
    throw std::runtime_error("point sampling failed: degenerate samples");
}

// Exact basis of linear forms vanishing at all centers (rows of the kernel).
std::vector<std::vector<Int>> vanishing_linear_forms(const std::vector<std::vector<Int>>& centers,
                                                     std::size_t ncoords) {
    if (centers.empty()) {
        std::vector<std::vector<Int>> id(ncoords, std::vector<Int>(ncoords, Int(0)));
        for (std::size_t i = 0; i < ncoords; ++i) id[i][i] = 1;
        return id;
    }
    QMat m;
    for (const auto& c : centers) {
        QVec row;
        for (const auto& x : c) row.emplace_back(x);
        m.push_back(std::move(row));
    }
    auto kernel = kernel_basis(m);
    std::vector<std::vector<Int>> forms;
    for (const auto& v : kernel) forms.push_back(primitive_integer_vector(v));
    return forms;
}

struct ChainSampler {
    const Variety& v;
    std::uint64_t seed;

    std::vector<std::vector<Int>> draw_centers(int k) const {
        SplitMix64 rng(seed ^ 0x9d2c5680cafef00dULL);
        std::vector<std::vector<Int>> centers;
        int guard = 0;
        while (static_cast<int>(centers.size()) < k) {
            auto c = center_on_variety(v, rng);
            bool duplicate = false;
            for (const auto& prev : centers)
                if (prev == c) duplicate = true;
            if (!duplicate) centers.push_back(std::move(c));
            if (++guard > 64 * (k + 1)) throw std::runtime_error("point sampling failed: duplicates");
        }
        return centers;
    }
};

// dimension of quadrics vanishing on the image after projecting from `centers`
long quadric_dim_for_centers(const Variety& v, const std::vector<std::vector<Int>>& centers,
                             std::uint64_t seed) {
    const std::size_t ncoords = v.ambient_n() + 1;
    if (centers.size() >= ncoords)
        throw std::invalid_argument("projection count exceeds ambient coordinates");
    auto forms = vanishing_linear_forms(centers, ncoords);
    const std::size_t image_coords = ncoords - centers.size();
    if (forms.size() != image_coords)
        throw std::runtime_error("projection centers are linearly dependent; resample");

    // grevlex-ordered quadric monomials in the image coordinates
    const auto monos = monomials_of_degree(image_coords, 2);
    const std::size_t npoints = 2 * monos.size() + 10;
    const std::size_t nparams = v.param_ring()->nvars();

    std::optional<std::size_t> agreed;
    for (unsigned trial = 0; trial < 6; ++trial) {
        // two independent primes and two point batches must agree
        std::size_t ranks[2];
        for (unsigned which = 0; which < 2; ++which) {
            SplitMix64 rng(seed * 0x2545f4914f6cdd1dULL + which + trial * 1447ULL + 1);
            ModPrime prime = pick_prime(seed + 31 * trial, which);
            std::vector<std::vector<std::uint64_t>> rows;
            rows.reserve(npoints);
            for (std::size_t s = 0; s < npoints; ++s) {
                std::vector<Int> params(nparams);
                bool all_zero = true;
                for (auto& x : params) {
                    long t = rng.uniform(-20, 20);
                    x = Int(t);
                    if (t != 0) all_zero = false;
                }
                if (all_zero) {
                    --s;
                    continue;
                }
                std::vector<Int> pt;
                pt.reserve(v.parametrization().size());
                for (const auto& c : v.parametrization()) pt.push_back(c.evaluate_int(params));
                std::vector<std::uint64_t> y(image_coords);
                for (std::size_t i = 0; i < image_coords; ++i) {
                    Int dot(0);
                    for (std::size_t j = 0; j < ncoords; ++j) dot += forms[i][j] * pt[j];
                    y[i] = prime.reduce_int(dot);
                }
                std::vector<std::uint64_t> row(monos.size());
                for (std::size_t mi = 0; mi < monos.size(); ++mi) {
                    std::uint64_t val = 1;
                    for (std::size_t i = 0; i < image_coords; ++i)
                        for (int e = 0; e < monos[mi].exps[i]; ++e) val = prime.mul(val, y[i]);
                    row[mi] = val;
                }
                rows.push_back(std::move(row));
            }
            ranks[which] = rank_mod(rows, prime);
        }
        if (ranks[0] == ranks[1]) {
            agreed = ranks[0];
            break;
        }
        // mismatch triggers new primes
    }
    if (!agreed) throw std::runtime_error("modular ranks failed to stabilize");
    return static_cast<long>(monos.size() - *agreed);
}

}  // namespace

ProjectionChain projection_chain(const Variety& v, int k_max, std::uint64_t seed) {
    if (!v.has_parametrization())
        throw std::invalid_argument("projection requires a parametrization");
    if (!v.irreducible())
        throw std::invalid_argument("random projection centers require an irreducible variety");
    ChainSampler sampler{v, seed};
    auto centers = sampler.draw_centers(k_max);
    ProjectionChain chain;
    chain.label = v.label();
    chain.centers = centers;
    for (int k = 0; k <= k_max; ++k) {
        std::vector<std::vector<Int>> head(centers.begin(), centers.begin() + k);
        chain.quadric_dims.push_back(quadric_dim_for_centers(v, head, seed + k));
    }
    return chain;
}

long quadric_dim_after_projection(const Variety& v, int k, std::uint64_t seed) {
    if (k < 0) throw std::invalid_argument("negative projection count");
    return projection_chain(v, k, seed).quadric_dims.back();
}

int quadratic_persistence(const Variety& v, std::uint64_t seed) {
    if (!v.has_parametrization())
        throw std::invalid_argument("quadratic persistence requires a parametrization");
    if (!v.irreducible())
        throw std::invalid_argument("quadratic persistence restricted to irreducible varieties");
    ChainSampler sampler{v, seed};
    const int k_cap = static_cast<int>(v.ambient_n());
    auto centers = sampler.draw_centers(k_cap);
    for (int k = 0; k <= k_cap; ++k) {
        std::vector<std::vector<Int>> head(centers.begin(), centers.begin() + k);
        if (quadric_dim_for_centers(v, head, seed + k) == 0) return k;
    }
    throw std::runtime_error("quadrics persisted past the ambient bound");
}

PythagorasBounds pythagoras_bounds(const Variety& v, std::uint64_t seed) {
    PythagorasBounds b;
    const int n = static_cast<int>(v.ambient_n());
    b.upper = n + 1;
    b.provenance.push_back("upper n+1: ambient rank bound");

    int lower = 1;
    if (v.irreducible() && v.has_parametrization()) {
        int qp = quadratic_persistence(v, seed);
        lower = std::max(lower, n + 1 - qp);
        b.provenance.push_back("lower n+1-qp: projection to a quadric-free image");
        b.conjectural_py = n + 1 - qp;
    }
    const auto& inv = v.invariants();
    lower = std::max(lower, inv.dim + 1);
    b.provenance.push_back("lower dim+1");
    b.lower = lower;

    if (v.irreducible()) {
        auto cls = classify_minimal_degree(v);
        if (cls.is_minimal_degree) {
            b.upper = inv.dim + 1;
            b.provenance.push_back("upper dim+1: variety of minimal degree");
        }
    } else if (v.label() == "arrangement") {
        // reconstruct the graph from the non-edge ideal
        const std::size_t nv = v.ambient_ring()->nvars();
        Graph g(nv);
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i + 1; j < nv; ++j) g.add_edge(i, j);
        for (const auto& gen : v.ideal().generators()) {
            const auto& m = gen.leading_monomial();
            std::vector<std::size_t> support;
            for (std::size_t i = 0; i < nv; ++i)
                if (m.exps[i] > 0) support.push_back(i);
            if (support.size() == 2) g.edges.erase({support[0], support[1]});
        }
        auto chordal = is_chordal(g);
        if (chordal.chordal) {
            int upper = static_cast<int>(clique_number(g));
            if (!b.upper || upper < *b.upper) b.upper = upper;
            b.provenance.push_back("upper dim+1: chordal arrangement is 2-regular");
        }
        if (g.n <= 16) {
            int tw_bound = treewidth(g) + 1;
            if (!b.upper || tw_bound < *b.upper) b.upper = tw_bound;
            b.provenance.push_back("upper tw+1: chordal cover bound");
        }
    }
    if (b.upper && *b.upper < b.lower) throw std::runtime_error("bound inversion; rules inconsistent");
    return b;
}

}  // namespace sosv
