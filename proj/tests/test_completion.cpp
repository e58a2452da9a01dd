#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sosv/completion.hpp"
#include "test_util.hpp"

using namespace sosv;

namespace {

// brute-force chordality oracle: search all vertex subsets for induced cycles
bool has_hole_brute_force(const Graph& g) {
    const std::size_t n = g.n;
    auto adj = g.adjacency();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        if (s.size() < 4) continue;
        // induced subgraph must be a single cycle: all degrees 2 and connected
        bool all_two = true;
        for (std::size_t v : s) {
            int deg = 0;
            for (std::size_t u : s)
                if (u != v && adj[u][v]) ++deg;
            if (deg != 2) {
                all_two = false;
                break;
            }
        }
        if (!all_two) continue;
        std::vector<std::size_t> stack{s[0]};
        std::vector<bool> seen(n, false);
        seen[s[0]] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (std::size_t u : s)
                if (u != v && adj[u][v] && !seen[u]) {
                    seen[u] = true;
                    ++count;
                    stack.push_back(u);
                }
        }
        if (count == s.size()) return true;
    }
    return false;
}

// elimination-order treewidth oracle: try every permutation with fill-in
int treewidth_brute_force(const Graph& g) {
    const std::size_t n = g.n;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    int best = static_cast<int>(n);
    do {
        auto adj = g.adjacency();
        std::vector<bool> gone(n, false);
        int width = 0;
        for (std::size_t v : perm) {
            std::vector<std::size_t> nbrs;
            for (std::size_t u = 0; u < n; ++u)
                if (!gone[u] && u != v && adj[u][v]) nbrs.push_back(u);
            width = std::max(width, static_cast<int>(nbrs.size()));
            for (std::size_t a = 0; a < nbrs.size(); ++a)
                for (std::size_t b = a + 1; b < nbrs.size(); ++b)
                    adj[nbrs[a]][nbrs[b]] = adj[nbrs[b]][nbrs[a]] = true;
            gone[v] = true;
        }
        best = std::min(best, width);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Graph random_graph(SplitMix64& rng, std::size_t n, int density_pct) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform(0, 99) < density_pct) g.add_edge(i, j);
    return g;
}

// chordal graph via construction: attach each vertex to a clique among the
// already placed vertices
Graph random_chordal(SplitMix64& rng, std::size_t n) {
    Graph g(n);
    for (std::size_t v = 1; v < n; ++v) {
        // pick an anchor u < v and join to a clique inside u's earlier closure
        std::size_t anchor = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(v) - 1));
        std::vector<std::size_t> clique{anchor};
        for (std::size_t u = 0; u < v; ++u) {
            if (u == anchor) continue;
            bool joined = true;
            for (std::size_t c : clique)
                if (!g.has_edge(u, c)) {
                    joined = false;
                    break;
                }
            if (joined && rng.uniform(0, 1)) clique.push_back(u);
        }
        for (std::size_t c : clique) g.add_edge(v, c);
    }
    return g;
}

QMat random_psd_q(SplitMix64& rng, std::size_t n) {
    QMat b = qmat_zero(n, n);
    for (auto& row : b)
        for (auto& x : row) x = make_rational(Int(rng.uniform(-3, 3)), Int(rng.uniform(1, 2)));
    return qmat_mul(qmat_transpose(b), b);
}

Graph fig3_graph() {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    return g;
}

bool valid_hole(const Graph& g, const std::vector<std::size_t>& hole) {
    if (hole.size() < 4) return false;
    for (std::size_t i = 0; i < hole.size(); ++i)
        for (std::size_t j = i + 1; j < hole.size(); ++j) {
            bool consecutive = (j == i + 1) || (i == 0 && j == hole.size() - 1);
            if (g.has_edge(hole[i], hole[j]) != consecutive) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("chordality basics") {
    CHECK(is_chordal(fig3_graph()).chordal);
    CHECK(is_chordal(Graph::complete(5)).chordal);
    CHECK(is_chordal(Graph::path(5)).chordal);
    auto c4 = is_chordal(Graph::cycle(4));
    CHECK(!c4.chordal);
    CHECK(c4.hole.size() == 4);
    CHECK(valid_hole(Graph::cycle(4), c4.hole));
}

TEST_CASE("chordality matches the brute-force oracle") {
    SplitMix64 rng(5);
    // all graphs on <= 5 vertices
    for (std::size_t n = 1; n <= 5; ++n) {
        unsigned pairs = static_cast<unsigned>(n * (n - 1) / 2);
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            Graph g(n);
            unsigned bit = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j, ++bit)
                    if (mask & (1u << bit)) g.add_edge(i, j);
            auto result = is_chordal(g);
            CHECK(result.chordal == !has_hole_brute_force(g));
            if (!result.chordal) CHECK(valid_hole(g, result.hole));
        }
    }
    // random samples at n = 6..8
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 6 + static_cast<std::size_t>(rng.uniform(0, 2));
        Graph g = random_graph(rng, n, 40 + static_cast<int>(rng.uniform(0, 30)));
        auto result = is_chordal(g);
        CHECK(result.chordal == !has_hole_brute_force(g));
        if (!result.chordal) CHECK(valid_hole(g, result.hole));
    }
    // constructed chordal graphs stay chordal
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_chordal(rng, 4 + static_cast<std::size_t>(rng.uniform(0, 5)));
        CHECK(is_chordal(g).chordal);
    }
}

TEST_CASE("treewidth exact values") {
    CHECK(treewidth(Graph::cycle(4)) == 2);
    CHECK(treewidth(Graph::path(6)) == 1);
    CHECK(treewidth(Graph::complete(5)) == 4);
    Graph star(5);
    for (std::size_t i = 1; i < 5; ++i) star.add_edge(0, i);
    CHECK(treewidth(star) == 1);
    CHECK(treewidth(Graph(1)) == 0);
    CHECK_THROWS_AS(treewidth(Graph(17)), std::invalid_argument);
}

TEST_CASE("treewidth matches the elimination-order oracle") {
    SplitMix64 rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 4 + static_cast<std::size_t>(rng.uniform(0, 3));
        Graph g = random_graph(rng, n, 50);
        CHECK(treewidth(g) == treewidth_brute_force(g));
    }
}

TEST_CASE("gram dimension bound") {
    auto c4 = gram_dimension_bound(Graph::cycle(4));
    CHECK(c4.tree_width == 2);
    CHECK(c4.bound == 3);

    auto fig3 = gram_dimension_bound(fig3_graph());
    CHECK(fig3.tree_width == 2);
    CHECK(fig3.bound == 3);
    CHECK(fig3.clique_number == 3);

    auto p4 = gram_dimension_bound(Graph::path(4));
    CHECK(p4.bound == 2);
}

TEST_CASE("bound never below the clique number on random graphs") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 5 + static_cast<std::size_t>(rng.uniform(0, 3)), 45);
        auto r = gram_dimension_bound(g);
        CHECK(r.bound >= static_cast<int>(r.clique_number));
    }
}

TEST_CASE("fully specified PSD matrix is returned unchanged") {
    SplitMix64 rng(21);
    QMat q = random_psd_q(rng, 4);
    auto m = PartialMatrix::from_full(q, Graph::complete(4));
    auto result = complete_psd(m);
    REQUIRE(result.status == CompletionStatus::Completed);
    CHECK(*result.completion == q);
}

TEST_CASE("chordal patterns with clique-PSD data complete exactly") {
    SplitMix64 rng(33);
    int done = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0, 5));
        Graph g = random_chordal(rng, n);
        QMat full = random_psd_q(rng, n);
        auto m = PartialMatrix::from_full(full, g);
        auto result = complete_psd(m);
        REQUIRE(result.status == CompletionStatus::Completed);
        const QMat& c = *result.completion;
        CHECK(is_psd_exact(c));
        for (std::size_t i = 0; i < n; ++i) CHECK(c[i][i] == m.diagonal[i]);
        for (const auto& [key, value] : m.specified) {
            CHECK(c[key.first][key.second] == value);
            CHECK(c[key.second][key.first] == value);
        }
        ++done;
    }
    CHECK(done == 40);
}

TEST_CASE("clique violation is returned as a witness") {
    // diagonal 1 with an off-diagonal entry 2 on an edge: that 2x2 clique fails
    Graph g(3);
    g.add_edge(0, 1);
    PartialMatrix m;
    m.n = 3;
    m.pattern = g;
    m.diagonal = {Rational(1), Rational(1), Rational(1)};
    m.specified[{0, 1}] = Rational(2);
    auto result = complete_psd(m);
    REQUIRE(result.status == CompletionStatus::Incompletable);
    REQUIRE(result.bad_clique.has_value());
    CHECK(result.bad_clique->clique.size() == 2);
}

TEST_CASE("C4 instance with cyclic data (1,1,1,-1) is incompletable") {
    PartialMatrix m;
    m.n = 4;
    m.pattern = Graph::cycle(4);
    m.diagonal.assign(4, Rational(1));
    m.specified[{0, 1}] = Rational(1);
    m.specified[{1, 2}] = Rational(1);
    m.specified[{2, 3}] = Rational(1);
    m.specified[{0, 3}] = Rational(-1);

    // exact oracle: PSD forces the two unknowns, then a principal minor fails.
    // minor on (0,1,2) gives -(x-1)^2 >= 0 so x = A02 = 1; minor on (0,1,3)
    // gives -(y+1)^2 >= 0 so y = A13 = -1; then (0,2,3) has determinant -4.
    QMat forced = {{Rational(1), Rational(1), Rational(1), Rational(-1)},
                   {Rational(1), Rational(1), Rational(1), Rational(-1)},
                   {Rational(1), Rational(1), Rational(1), Rational(1)},
                   {Rational(-1), Rational(-1), Rational(1), Rational(1)}};
    CHECK(!is_psd_exact(forced));

    auto result = complete_psd(m);
    REQUIRE(result.status == CompletionStatus::Incompletable);
    REQUIRE(result.dual.has_value());
    CHECK(verify_dual_witness(m, *result.dual));
}

TEST_CASE("non-chordal patterns with completable data complete via the numeric path") {
    SplitMix64 rng(55);
    int completed = 0;
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 4 + static_cast<std::size_t>(rng.uniform(0, 1));
        Graph g = Graph::cycle(n);  // non-chordal pattern
        QMat full = random_psd_q(rng, n);
        // make it strictly feasible: add identity to push off the boundary
        for (std::size_t i = 0; i < n; ++i) full[i][i] += 1;
        auto m = PartialMatrix::from_full(full, g);
        auto result = complete_psd(m);
        if (result.status == CompletionStatus::Completed) {
            ++completed;
            CHECK(is_psd_exact(*result.completion));
            for (const auto& [key, value] : m.specified)
                CHECK((*result.completion)[key.first][key.second] == value);
        }
    }
    CHECK(completed >= 8);  // numeric path may rarely be inconclusive
}

TEST_CASE("mobius cycle data defeats every non-chordal hole") {
    // For an induced cycle of length L: all-ones entries except one -1.
    // Each edge clique is PSD but the chain of equalities forces v0 = -v0.
    for (std::size_t len : {4, 5, 6}) {
        Graph g = Graph::cycle(len);
        PartialMatrix m;
        m.n = len;
        m.pattern = g;
        m.diagonal.assign(len, Rational(1));
        for (std::size_t i = 0; i + 1 < len; ++i) m.specified[{i, i + 1}] = Rational(1);
        m.specified[{0, len - 1}] = Rational(-1);

        // exact dual witness: Y = I - t * signed adjacency with t = 51/100
        QMat y = qmat_zero(len, len);
        Rational t(51, 100);
        for (std::size_t i = 0; i < len; ++i) y[i][i] = 1;
        for (std::size_t i = 0; i + 1 < len; ++i) y[i][i + 1] = y[i + 1][i] = -t;
        y[0][len - 1] = y[len - 1][0] = t;
        DualWitness w;
        w.y = y;
        Rational inner(0);
        for (std::size_t i = 0; i < len; ++i) inner += Rational(1);
        for (const auto& [key, value] : m.specified) inner += y[key.first][key.second] * value * 2;
        w.inner_product = inner;
        CHECK(verify_dual_witness(m, w));
    }
}

TEST_CASE("partial matrix text round trip") {
    PartialMatrix m;
    m.n = 3;
    m.pattern = Graph(3);
    m.pattern.add_edge(0, 2);
    m.diagonal = {Rational(1), Rational(2), make_rational(Int(1), Int(3))};
    m.specified[{0, 2}] = make_rational(Int(-1), Int(2));
    std::string text = format_partial_matrix(m);
    std::istringstream in(text);
    auto back = parse_partial_matrix(in);
    CHECK(back.n == m.n);
    CHECK(back.diagonal == m.diagonal);
    CHECK(back.specified == m.specified);

    std::istringstream bad("2\n1 1 1\n");
    CHECK_THROWS(parse_partial_matrix(bad));  // diagonal incomplete
}

TEST_CASE("graph text round trip") {
    Graph g = fig3_graph();
    std::istringstream in(format_graph(g));
    auto back = parse_graph(in);
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);
}
