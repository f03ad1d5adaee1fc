#pragma once

#include <optional>
#include <vector>

#include "morseward/chain.hpp"
#include "morseward/int_matrix.hpp"

namespace morseward {

/// Discrete vector field on one boundary matrix: pairs (source row a,
/// target column b) with M[a,b] = ±1, sources pairwise distinct, targets
/// pairwise distinct. Indices are 0-based.
struct VectorField {
    std::vector<std::pair<index_t, index_t>> vectors;

    size_t size() const { return vectors.size(); }
    bool empty() const { return vectors.empty(); }
    bool operator==(const VectorField&) const = default;
};

/// Directed relations a -> a' ("a > a'") used to test admissibility: for
/// each vector (a;b) there is an edge to every other row incident to
/// column b. Edges are recorded even toward rows that are not sources.
struct AdmissibilityGraph {
    std::vector<std::vector<index_t>> edges;  // adjacency by row index
};

AdmissibilityGraph admissibility_graph(const IntMatrix& m, const VectorField& v);

/// Bounds, ±1 incidence, and source/target distinctness; lists violations.
DiagnosticReport check_vector_field(const IntMatrix& m, const VectorField& v);

struct AdmissibilityResult {
    bool admissible = true;
    /// A loop a1 > a2 > ... > a1 (row indices, first repeated last) when
    /// inadmissible.
    std::vector<index_t> cycle;
};

/// Tests the relation graph for loops. The field must pass
/// check_vector_field; malformed fields throw std::invalid_argument.
AdmissibilityResult is_admissible(const IntMatrix& m, const VectorField& v);

/// Greedy maximal admissible field: scans rows in increasing index, for each
/// free row scans candidate columns in increasing index, and accepts the
/// first ±1 entry on a free column that keeps the relation graph acyclic.
VectorField max_admissible_dvf(const IntMatrix& m);

/// Per-filtration-block maximal fields, concatenated in block order. Every
/// vector pairs a row and a column of equal filtration index. Requires M to
/// be filtration-monotone (nonzero entries have row filt <= col filt); the
/// blocks may be searched on `threads` workers.
VectorField filtered_max_dvf(const IntMatrix& m,
                             const std::vector<int>& row_filts,
                             const std::vector<int>& col_filts,
                             int threads = 1);

std::string dvf_to_string(const VectorField& v);

}  // namespace morseward
