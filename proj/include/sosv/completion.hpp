#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sosv/graph.hpp"
#include "sosv/sdp.hpp"

namespace sosv {

struct EliminationOrder {
    std::vector<std::size_t> order;  // maximum-cardinality-search order
    bool is_perfect = false;
};

struct ChordalityResult {
    bool chordal = false;
    EliminationOrder elimination;
    std::vector<std::size_t> hole;  // an induced cycle of length >= 4 when not chordal
};

ChordalityResult is_chordal(const Graph& g);

// Exact tree-width by dynamic programming over vertex subsets; n <= 16.
int treewidth(const Graph& g);

struct GramDimensionReport {
    int bound = 0;      // tw(G) + 1
    int tree_width = 0;
    std::size_t clique_number = 0;  // dim X(G) + 1, the lower bound in the chordal case
};

GramDimensionReport gram_dimension_bound(const Graph& g);

// Partially specified symmetric matrix: diagonal fully given, off-diagonal
// entries given exactly on the pattern edges.
struct PartialMatrix {
    std::size_t n = 0;
    Graph pattern;
    QVec diagonal;
    std::map<std::pair<std::size_t, std::size_t>, Rational> specified;  // keys i < j

    Rational entry(std::size_t i, std::size_t j) const;
    bool is_specified(std::size_t i, std::size_t j) const;
    static PartialMatrix from_full(const QMat& full, const Graph& pattern);
};

// Text format: first line n, then lines "i j num/den" (1-indexed, i <= j).
PartialMatrix parse_partial_matrix(std::istream& in);
std::string format_partial_matrix(const PartialMatrix& m);

// Graph text format: first line n, then "i j" edge lines (1-indexed).
Graph parse_graph(std::istream& in);
std::string format_graph(const Graph& g);

struct CliqueWitness {
    std::vector<std::size_t> clique;
    NotPSDWitness submatrix_witness;
};

// Exact dual refutation: Y is PSD, supported on the specified pattern, and
// <Y, M> < 0, so no PSD completion can exist.
struct DualWitness {
    QMat y;
    Rational inner_product;
};

enum class CompletionStatus { Completed, Incompletable, Inconclusive };

struct CompletionResult {
    CompletionStatus status = CompletionStatus::Inconclusive;
    std::optional<QMat> completion;  // exact PSD completion
    std::optional<CliqueWitness> bad_clique;
    std::optional<DualWitness> dual;
};

CompletionResult complete_psd(const PartialMatrix& m);

// Maximal cliques of a chordal graph, from its perfect elimination order.
std::vector<std::vector<std::size_t>> chordal_maximal_cliques(const Graph& g,
                                                              const EliminationOrder& order);

// Exact verification helper used by tests and the CLI: the exact witness
// inequalities of a DualWitness against the instance.
bool verify_dual_witness(const PartialMatrix& m, const DualWitness& w);

}  // namespace sosv
