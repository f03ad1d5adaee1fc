#pragma once

#include "morseward/chain.hpp"
#include "morseward/dvf.hpp"

namespace morseward {

/// Partition of the row/column cells of one boundary matrix induced by a
/// vector field: paired rows are sources, paired columns targets, the rest
/// critical. No cell can be both a source and a target here, the field
/// lives on a single matrix.
struct CellPartition {
    std::vector<index_t> sources;        // row indices, increasing
    std::vector<index_t> targets;        // column indices, increasing
    std::vector<index_t> critical_rows;  // increasing
    std::vector<index_t> critical_cols;  // increasing
};

CellPartition partition_cells(const IntMatrix& m, const VectorField& v);

/// Inverse of the source x target block of M selected by V, computed by the
/// V-path recursion (memoized over sources in admissibility order). Rows are
/// indexed by the targets, columns by the sources, both in increasing index
/// order. Throws on an inadmissible field, naming the offending cycle.
IntMatrix invert_d21(const IntMatrix& m, const VectorField& v);

/// Canonical reduction induced by an admissible vector field on the degree-n
/// boundary matrix of C. The target complex keeps only critical cells in
/// degrees n-1 and n (original ids, filtration indices and labels); the new
/// degree-n differential is d33 - d31 d21^{-1} d23.
Reduction reduce_one_degree(ComplexPtr c, int n, const VectorField& v);

struct MorseStats {
    /// Vectors found per degree (index = degree of the boundary matrix).
    std::vector<index_t> vectors;
    /// Final critical cell counts per degree.
    std::vector<index_t> critical;
    index_t total_vectors() const;
    index_t total_critical() const;
};

struct MorseReduction {
    Reduction reduction;
    MorseStats stats;
    /// Vector fields per degree, kept for diagnostics (CLI --dump-dvf).
    std::vector<VectorField> fields;
};

/// Iterated reduction over all degrees, ignoring the filtration: each step
/// builds a maximal admissible field on the current degree-n boundary
/// matrix and composes the resulting reductions. The filtration is
/// flattened to a single step first (an unrestricted field has no reason to
/// respect it), so both complexes of the result carry filtration index 1
/// everywhere; cell ids and labels are preserved.
MorseReduction reduce_complex(ComplexPtr c);

/// Iterated reduction compatible with the filtration: per-degree fields come
/// from the filtration-block search, every vector pairs cells of equal
/// filtration index, and the composite homotopy has order <= 0, so all
/// persistent homology groups of the target agree with those of the source.
MorseReduction reduce_filtered_complex(ComplexPtr c, int threads = 1);

}  // namespace morseward
