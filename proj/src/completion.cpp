#include "sosv/completion.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace sosv {

ChordalityResult is_chordal(const Graph& g) {
    ChordalityResult result;
    const std::size_t n = g.n;
    auto adj = g.adjacency();

    // maximum cardinality search (produces a PEO iff chordal)
    std::vector<std::size_t> weight(n, 0);
    std::vector<bool> picked(n, false);
    std::vector<std::size_t> order;  // filled back to front
    order.resize(n);
    for (std::size_t step = n; step-- > 0;) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!picked[v] && (best == n || weight[v] > weight[best])) best = v;
        picked[best] = true;
        order[step] = best;
        for (std::size_t u = 0; u < n; ++u)
            if (!picked[u] && adj[best][u]) ++weight[u];
    }
    result.elimination.order = order;

    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

    // perfect elimination check: later neighbors of each vertex form a clique
    bool perfect = true;
    for (std::size_t i = 0; i < n && perfect; ++i) {
        std::size_t v = order[i];
        std::vector<std::size_t> later;
        for (std::size_t u = 0; u < n; ++u)
            if (adj[v][u] && pos[u] > i) later.push_back(u);
        for (std::size_t a = 0; a < later.size() && perfect; ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!adj[later[a]][later[b]]) {
                    perfect = false;
                    break;
                }
    }
    result.elimination.is_perfect = perfect;
    result.chordal = perfect;
    if (perfect) return result;

    // not chordal: a hole exists; find one as v-x-...-y-v with x,y in N(v)
    // nonadjacent and a shortest x-y path avoiding the rest of N[v]
    for (std::size_t v = 0; v < n; ++v) {
        auto nv = g.neighbors(v);
        for (std::size_t a = 0; a < nv.size(); ++a)
            for (std::size_t b = a + 1; b < nv.size(); ++b) {
                std::size_t x = nv[a], y = nv[b];
                if (adj[x][y]) continue;
                std::vector<bool> banned(n, false);
                banned[v] = true;
                for (std::size_t u = 0; u < n; ++u)
                    if (adj[v][u] && u != x && u != y) banned[u] = true;
                std::vector<long> parent(n, -1);
                std::deque<std::size_t> queue{x};
                std::vector<bool> seen(n, false);
                seen[x] = true;
                while (!queue.empty()) {
                    std::size_t cur = queue.front();
                    queue.pop_front();
                    if (cur == y) break;
                    for (std::size_t u = 0; u < n; ++u) {
                        if (!adj[cur][u] || seen[u] || banned[u]) continue;
                        seen[u] = true;
                        parent[u] = static_cast<long>(cur);
                        queue.push_back(u);
                    }
                }
                if (!seen[y]) continue;
                std::vector<std::size_t> path;
                for (long cur = static_cast<long>(y); cur != -1; cur = parent[cur])
                    path.push_back(static_cast<std::size_t>(cur));
                std::reverse(path.begin(), path.end());
                result.hole = path;  // x .. y, then close through v
                result.hole.push_back(v);
                return result;
            }
    }
    throw std::logic_error("imperfect elimination order but no hole found");
}

int treewidth(const Graph& g) {
    const std::size_t n = g.n;
    if (n > 16) throw std::invalid_argument("treewidth: exact DP limited to 16 vertices");
    if (n == 0) return 0;
    auto adj = g.adjacency();
    std::vector<unsigned> nbr(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u)
            if (adj[v][u]) nbr[v] |= 1u << u;

    const std::size_t total = std::size_t(1) << n;
    // q(S, v): # vertices outside S+{v} reachable from v through S
    auto q_value = [&](unsigned S, std::size_t v) {
        unsigned visited = 1u << v;
        unsigned frontier = 1u << v;
        unsigned reached = 0;
        while (frontier) {
            unsigned next = 0;
            for (std::size_t u = 0; u < n; ++u) {
                if (!(frontier & (1u << u))) continue;
                unsigned cand = nbr[u] & ~visited;
                reached |= cand & ~S;
                next |= cand & S;
                visited |= cand;
            }
            frontier = next;
        }
        return static_cast<int>(__builtin_popcount(reached & ~(1u << v)));
    };

    std::vector<int> f(total, 0);
    for (unsigned S = 1; S < total; ++S) {
        int best = static_cast<int>(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (!(S & (1u << v))) continue;
            unsigned rest = S & ~(1u << v);
            int candidate = std::max(f[rest], q_value(rest, v));
            best = std::min(best, candidate);
        }
        f[S] = best;
    }
    return f[total - 1];
}

GramDimensionReport gram_dimension_bound(const Graph& g) {
    GramDimensionReport r;
    r.tree_width = treewidth(g);
    r.bound = r.tree_width + 1;
    r.clique_number = clique_number(g);
    return r;
}

// ---- partial matrices ----

Rational PartialMatrix::entry(std::size_t i, std::size_t j) const {
    if (i == j) return diagonal[i];
    auto key = std::minmax(i, j);
    auto it = specified.find({key.first, key.second});
    if (it == specified.end()) throw std::out_of_range("entry not specified");
    return it->second;
}

bool PartialMatrix::is_specified(std::size_t i, std::size_t j) const {
    if (i == j) return true;
    return pattern.has_edge(i, j);
}

PartialMatrix PartialMatrix::from_full(const QMat& full, const Graph& pattern) {
    PartialMatrix m;
    m.n = full.size();
    m.pattern = pattern;
    for (std::size_t i = 0; i < m.n; ++i) m.diagonal.push_back(full[i][i]);
    for (const auto& [a, b] : pattern.edges) m.specified[{a, b}] = full[a][b];
    return m;
}

PartialMatrix parse_partial_matrix(std::istream& in) {
    PartialMatrix m;
    long n;
    if (!(in >> n) || n <= 0) throw std::invalid_argument("partial matrix: bad size line");
    m.n = static_cast<std::size_t>(n);
    m.pattern = Graph(m.n);
    m.diagonal.assign(m.n, Rational(0));
    std::vector<bool> diag_seen(m.n, false);
    long i, j;
    std::string value;
    while (in >> i >> j >> value) {
        if (i < 1 || j < 1 || i > n || j > n || i > j)
            throw std::invalid_argument("partial matrix: bad index pair");
        Rational r = rat_from_string(value);
        if (i == j) {
            m.diagonal[static_cast<std::size_t>(i - 1)] = r;
            diag_seen[static_cast<std::size_t>(i - 1)] = true;
        } else {
            m.pattern.add_edge(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
            m.specified[{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)}] = r;
        }
    }
    for (std::size_t k = 0; k < m.n; ++k)
        if (!diag_seen[k]) throw std::invalid_argument("partial matrix: diagonal incomplete");
    return m;
}

std::string format_partial_matrix(const PartialMatrix& m) {
    std::ostringstream os;
    os << m.n << "\n";
    for (std::size_t i = 0; i < m.n; ++i)
        os << (i + 1) << " " << (i + 1) << " " << rat_to_string(m.diagonal[i]) << "\n";
    for (const auto& [key, value] : m.specified)
        os << (key.first + 1) << " " << (key.second + 1) << " " << rat_to_string(value) << "\n";
    return os.str();
}

Graph parse_graph(std::istream& in) {
    long n;
    if (!(in >> n) || n <= 0) throw std::invalid_argument("graph: bad size line");
    Graph g(static_cast<std::size_t>(n));
    long i, j;
    while (in >> i >> j) {
        if (i < 1 || j < 1 || i > n || j > n || i == j)
            throw std::invalid_argument("graph: bad edge line");
        g.add_edge(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    }
    return g;
}

std::string format_graph(const Graph& g) {
    std::ostringstream os;
    os << g.n << "\n";
    for (const auto& [a, b] : g.edges) os << (a + 1) << " " << (b + 1) << "\n";
    return os.str();
}

// ---- completion ----

std::vector<std::vector<std::size_t>> chordal_maximal_cliques(const Graph& g,
                                                              const EliminationOrder& order) {
    const std::size_t n = g.n;
    auto adj = g.adjacency();
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order.order[i]] = i;
    std::vector<std::vector<std::size_t>> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t v = order.order[i];
        std::vector<std::size_t> c{v};
        for (std::size_t u = 0; u < n; ++u)
            if (adj[v][u] && pos[u] > i) c.push_back(u);
        std::sort(c.begin(), c.end());
        candidates.push_back(std::move(c));
    }
    std::vector<std::vector<std::size_t>> maximal;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        bool drop = false;
        for (std::size_t b = 0; b < candidates.size() && !drop; ++b) {
            if (a == b) continue;
            if (!std::includes(candidates[b].begin(), candidates[b].end(), candidates[a].begin(),
                               candidates[a].end()))
                continue;
            if (candidates[a] != candidates[b] || b < a) drop = true;  // subset, or later duplicate
        }
        if (!drop) maximal.push_back(candidates[a]);
    }
    return maximal;
}

namespace {

QMat submatrix(const PartialMatrix& m, const std::vector<std::size_t>& idx) {
    QMat s = qmat_zero(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) s[a][b] = m.entry(idx[a], idx[b]);
    return s;
}

// clique-tree merge completion for chordal patterns with clique-PSD data
std::optional<QMat> chordal_completion(const PartialMatrix& m, const EliminationOrder& order) {
    const std::size_t n = m.n;
    auto cliques = chordal_maximal_cliques(m.pattern, order);

    // full working matrix: unspecified entries start at 0 and are filled
    QMat full = qmat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) full[i][i] = m.diagonal[i];
    for (const auto& [key, value] : m.specified) full[key.first][key.second] = full[key.second][key.first] = value;

    // max-weight spanning tree on clique intersections (Prim)
    const std::size_t k = cliques.size();
    if (k == 0) return full;
    std::vector<bool> in_tree(k, false);
    in_tree[0] = true;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    for (std::size_t added = 1; added < k; ++added) {
        std::size_t best_a = k, best_b = k;
        long best_w = -1;
        for (std::size_t a = 0; a < k; ++a) {
            if (!in_tree[a]) continue;
            for (std::size_t b = 0; b < k; ++b) {
                if (in_tree[b]) continue;
                std::vector<std::size_t> inter;
                std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(),
                                      cliques[b].end(), std::back_inserter(inter));
                if (static_cast<long>(inter.size()) > best_w) {
                    best_w = static_cast<long>(inter.size());
                    best_a = a;
                    best_b = b;
                }
            }
        }
        in_tree[best_b] = true;
        tree_edges.push_back({best_a, best_b});
    }

    // merge along tree edges; each missing entry is the unique unknown of a
    // bordered submatrix {u} + S + {w} and gets the value u^T W^+ v
    std::vector<std::vector<std::size_t>> groups = cliques;
    std::vector<std::size_t> rep(k);
    for (std::size_t i = 0; i < k; ++i) rep[i] = i;
    auto find_rep = [&](std::size_t a) {
        while (rep[a] != a) a = rep[a] = rep[rep[a]];
        return a;
    };
    for (const auto& [ea, eb] : tree_edges) {
        std::size_t a = find_rep(ea), b = find_rep(eb);
        const auto& ca = groups[a];
        const auto& cb = groups[b];
        std::vector<std::size_t> sep;
        std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(sep));
        std::vector<std::size_t> left, right;
        std::set_difference(ca.begin(), ca.end(), sep.begin(), sep.end(), std::back_inserter(left));
        std::set_difference(cb.begin(), cb.end(), sep.begin(), sep.end(), std::back_inserter(right));

        QMat w = qmat_zero(sep.size(), sep.size());
        for (std::size_t x = 0; x < sep.size(); ++x)
            for (std::size_t y = 0; y < sep.size(); ++y) w[x][y] = full[sep[x]][sep[y]];
        for (std::size_t u : left) {
            QVec urow;
            for (std::size_t s : sep) urow.push_back(full[u][s]);
            for (std::size_t v : right) {
                QVec vcol;
                for (std::size_t s : sep) vcol.push_back(full[s][v]);
                Rational value(0);
                if (!sep.empty()) {
                    auto z = solve(w, vcol);
                    if (!z) return std::nullopt;  // clique data was not PSD after all
                    for (std::size_t s = 0; s < sep.size(); ++s) value += urow[s] * (*z)[s];
                }
                full[u][v] = full[v][u] = value;
            }
        }
        // merge groups
        std::vector<std::size_t> merged;
        std::set_union(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(merged));
        groups[a] = merged;
        rep[b] = a;
    }
    return full;
}

}  // namespace

bool verify_dual_witness(const PartialMatrix& m, const DualWitness& w) {
    if (w.y.size() != m.n) return false;
    // support condition: zero off the specified pattern
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j)
            if (!m.pattern.has_edge(i, j) && sgn(w.y[i][j]) != 0) return false;
    if (!is_psd_exact(w.y)) return false;
    Rational inner(0);
    for (std::size_t i = 0; i < m.n; ++i) inner += w.y[i][i] * m.diagonal[i];
    for (const auto& [key, value] : m.specified) inner += w.y[key.first][key.second] * value * 2;
    return sgn(inner) < 0 && inner == w.inner_product;
}

CompletionResult complete_psd(const PartialMatrix& m) {
    CompletionResult result;
    auto chordality = is_chordal(m.pattern);

    // every maximal clique submatrix must be PSD; otherwise that clique
    // refutes completability outright
    auto clique_check = [&](const std::vector<std::vector<std::size_t>>& cliques) -> bool {
        for (const auto& c : cliques) {
            auto check = exact_psd_check(submatrix(m, c));
            if (auto* bad = std::get_if<NotPSDWitness>(&check)) {
                result.status = CompletionStatus::Incompletable;
                result.bad_clique = CliqueWitness{c, *bad};
                return false;
            }
        }
        return true;
    };

    if (chordality.chordal) {
        if (!clique_check(chordal_maximal_cliques(m.pattern, chordality.elimination)))
            return result;
        auto full = chordal_completion(m, chordality.elimination);
        if (full && is_psd_exact(*full)) {
            result.status = CompletionStatus::Completed;
            result.completion = std::move(full);
            return result;
        }
        result.status = CompletionStatus::Inconclusive;
        return result;
    }

    // non-chordal: numeric SDP on the unspecified entries, then exact checks
    const std::size_t n = m.n;
    {
        FeasibilityProblem prob({n});
        BlockVecQ offset = prob.zero_exact();
        for (std::size_t i = 0; i < n; ++i) offset.blocks[0][i][i] = m.diagonal[i];
        for (const auto& [key, value] : m.specified)
            offset.blocks[0][key.first][key.second] = offset.blocks[0][key.second][key.first] = value;
        std::vector<BlockVecQ> dirs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (m.pattern.has_edge(i, j)) continue;
                BlockVecQ d = prob.zero_exact();
                d.blocks[0][i][j] = d.blocks[0][j][i] = 1;
                dirs.push_back(std::move(d));
            }
        prob.set_parametric(offset, dirs);
        auto solved = solve_feasibility(prob);
        if (solved.status == SolveStatus::Feasible) {
            for (const auto& bound : denominator_schedule()) {
                auto exact = rationalize(solved.solution, prob, bound);
                if (!exact) continue;
                if (is_psd_exact(exact->blocks[0])) {
                    result.status = CompletionStatus::Completed;
                    result.completion = exact->blocks[0];
                    return result;
                }
            }
        }
    }

    // completion failed numerically: look for an exact dual witness
    // Y PSD, supported on the pattern, with <Y, M> = -1
    {
        FeasibilityProblem dual({n});
        // parametrize Y by diagonal + pattern entries with the normalization
        // <Y, M> = -1 folded in via one nullspace constraint instead:
        // use constraints: Y_ij = 0 off pattern, <Y, M> = -1
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (m.pattern.has_edge(i, j)) continue;
                BlockVecQ c = dual.zero_exact();
                c.blocks[0][i][j] = c.blocks[0][j][i] = make_rational(Int(1), Int(2));
                dual.add_constraint(std::move(c), Rational(0));
            }
        BlockVecQ norm = dual.zero_exact();
        for (std::size_t i = 0; i < n; ++i) norm.blocks[0][i][i] = m.diagonal[i];
        for (const auto& [key, value] : m.specified)
            norm.blocks[0][key.first][key.second] = norm.blocks[0][key.second][key.first] = value;
        dual.add_constraint(std::move(norm), Rational(-1));
        auto solved = solve_feasibility(dual);
        if (solved.status == SolveStatus::Feasible) {
            for (const auto& bound : denominator_schedule()) {
                auto exact = rationalize(solved.solution, dual, bound);
                if (!exact) continue;
                DualWitness w;
                w.y = exact->blocks[0];
                Rational inner(0);
                for (std::size_t i = 0; i < n; ++i) inner += w.y[i][i] * m.diagonal[i];
                for (const auto& [key, value] : m.specified)
                    inner += w.y[key.first][key.second] * value * 2;
                w.inner_product = inner;
                if (verify_dual_witness(m, w)) {
                    result.status = CompletionStatus::Incompletable;
                    result.dual = std::move(w);
                    return result;
                }
            }
        }
    }
    result.status = CompletionStatus::Inconclusive;
    return result;
}

}  // namespace sosv
