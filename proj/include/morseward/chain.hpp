#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "morseward/int_matrix.hpp"

namespace morseward {

using cell_id = long;

/// Basis element of a chain group. Ids are unique within a complex and are
/// preserved by reductions, so chains can be traced back to the original
/// cells. `filt` lives in [1, steps]; step 0 is the empty subcomplex.
struct Cell {
    cell_id id = -1;
    int dim = 0;
    int filt = 1;
    std::string label;

    bool operator==(const Cell&) const = default;
};

/// Chain with integer coefficients on the cells of one fixed degree.
struct ChainVector {
    int degree = 0;
    std::map<cell_id, Int> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(cell_id id, const Int& v);
    ChainVector& operator+=(const ChainVector& rhs);
    ChainVector operator*(const Int& k) const;
    bool operator==(const ChainVector&) const = default;
};

/// Finite free chain complex with distinguished graded bases, per-cell
/// filtration indices and boundary matrices. Immutable once built; all
/// operations below are pure.
class FilteredComplex {
public:
    FilteredComplex() = default;

    int max_dim() const { return static_cast<int>(bases_.size()) - 1; }
    int steps() const { return steps_; }

    const std::vector<Cell>& basis(int dim) const;
    index_t basis_size(int dim) const;
    index_t total_cells() const;

    /// d_n : C_n -> C_{n-1}; shaped basis_size(n-1) x basis_size(n).
    /// Degrees outside the stored range give empty matrices of the right shape.
    IntMatrix boundary(int dim) const;

    bool has_cell(cell_id id) const { return positions_.count(id) > 0; }
    const Cell& cell(cell_id id) const;
    /// Position of a cell inside its degree's basis.
    index_t position(cell_id id) const;

    ChainVector chain_from_coords(int degree, const std::vector<Int>& coords) const;
    std::vector<Int> coords_from_chain(const ChainVector& chain) const;

    friend class ComplexBuilder;

private:
    int steps_ = 1;
    std::vector<std::vector<Cell>> bases_;
    std::vector<IntMatrix> boundaries_;  // boundaries_[n] = d_n for n >= 1
    std::unordered_map<cell_id, std::pair<int, index_t>> positions_;
};

using ComplexPtr = std::shared_ptr<const FilteredComplex>;

/// Mutable staging area for complexes. Cells keep the ids they are given,
/// so reduced complexes can reuse the originals' identities.
class ComplexBuilder {
public:
    explicit ComplexBuilder(int steps = 1) : steps_(steps) {}

    /// Adds a cell with a fresh id; returns the id.
    cell_id add_cell(int dim, int filt, std::string label = {});
    /// Adds a cell with a caller-chosen id (must be unused).
    void add_cell_with_id(cell_id id, int dim, int filt, std::string label = {});
    void set_incidence(cell_id cell, cell_id face, Int coeff);
    int filt_of(cell_id id) const;

    ComplexPtr build();

private:
    int steps_;
    cell_id next_id_ = 0;
    std::vector<Cell> cells_;
    std::unordered_map<cell_id, size_t> index_;
    std::vector<std::tuple<cell_id, cell_id, Int>> incidences_;
};

struct DiagnosticReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Checks d∘d = 0, filtration monotonicity of every boundary entry, and
/// basis consistency. Reports every violation found.
DiagnosticReport validate_complex(const FilteredComplex& c);

/// Matrix-vector product under d_n. Degree-0 chains map to the empty chain.
ChainVector apply_boundary(const FilteredComplex& c, const ChainVector& x);

ChainVector apply_matrix(const IntMatrix& m, const FilteredComplex& src,
                         const FilteredComplex& dst, int src_degree,
                         int dst_degree, const ChainVector& x);

/// Reduction src ==>> dst: chain morphisms f: src->dst, g: dst->src and a
/// degree +1 homotopy h on src with
///   f g = id,  g f + d h + h d = id,  f h = 0,  h g = 0,  h h = 0.
struct Reduction {
    ComplexPtr src, dst;
    std::vector<IntMatrix> f;  // f[n]: src_n -> dst_n
    std::vector<IntMatrix> g;  // g[n]: dst_n -> src_n
    std::vector<IntMatrix> h;  // h[n]: src_n -> src_{n+1}
    int homotopy_order = 0;

    IntMatrix f_at(int n) const;
    IntMatrix g_at(int n) const;
    IntMatrix h_at(int n) const;

    ChainVector map_f(const ChainVector& x) const;
    ChainVector map_g(const ChainVector& x) const;
};

Reduction identity_reduction(ComplexPtr c);

struct ReductionReport : DiagnosticReport {
    /// Largest filtration shift of a nonzero h entry; nullopt when h = 0.
    std::optional<int> measured_order;
    bool f_filtered = true;
    bool g_filtered = true;
};

/// Checks the five reduction relations, the chain-map property of f and g in
/// every degree, filtration compatibility of f and g, and the homotopy order
/// of h against the declared one.
ReductionReport validate_reduction(const Reduction& rho);

/// (C ==>> D) then (D ==>> E) gives C ==>> E with f = f2 f1, g = g1 g2,
/// h = h1 + g1 h2 f1. Throws if rho1.dst and rho2.src differ.
Reduction compose_reductions(const Reduction& rho1, const Reduction& rho2);

/// Strong chain equivalence: a middle complex reducing onto both sides.
struct Equivalence {
    ComplexPtr mid;
    Reduction left;   // mid ==>> src side
    Reduction right;  // mid ==>> dst side
};

Equivalence as_equivalence(const Reduction& rho);

/// Restriction to cells with filt <= i. Throws if i is out of [0, steps].
ComplexPtr subcomplex_at(const FilteredComplex& c, int i);

struct SortedComplex {
    ComplexPtr complex;
    /// old basis position -> new basis position, per degree
    std::vector<std::vector<index_t>> old_to_new;
};

/// Reorders every basis by nondecreasing filtration index (stable), making
/// boundary matrices block-lower-triangular with respect to the filtration.
SortedComplex sort_by_filtration(const FilteredComplex& c);

/// Line-oriented text form used by golden-file tests.
void write_complex(std::ostream& os, const FilteredComplex& c);
ComplexPtr read_complex(std::istream& is);

std::string chain_to_string(const FilteredComplex& c, const ChainVector& x);

}  // namespace morseward
