#pragma once

#include <optional>
#include <vector>

#include "morseward/int_matrix.hpp"

namespace morseward {

/// Smith decomposition U*A*V = S with U, V unimodular and S diagonal,
/// diagonal entries nonnegative and each dividing the next.
/// The inverse transforms are kept so generator coordinates can be pulled
/// back out of the diagonalized presentation.
struct SNFResult {
    IntMatrix u, s, v;
    IntMatrix u_inv, v_inv;

    /// Number of nonzero diagonal entries.
    index_t rank() const;
    std::vector<Int> diagonal() const;
};

SNFResult smith_normal_form(const IntMatrix& a);

/// Subgroup of Z^ambient_dim spanned by the basis columns. Canonicalized to
/// column Hermite form on construction: basis columns are independent, pivot
/// rows strictly increase, pivots are positive, and entries in a pivot row to
/// the left of the pivot lie in [0, pivot). Structural equality of lattices is
/// equality of canonical bases.
struct Lattice {
    index_t ambient_dim = 0;
    IntMatrix basis;  // ambient_dim x rank

    Lattice() = default;
    Lattice(index_t ambient, IntMatrix canonical_basis)
        : ambient_dim(ambient), basis(std::move(canonical_basis)) {}

    index_t rank() const { return basis.cols(); }
    static Lattice full(index_t ambient) {
        return Lattice(ambient, IntMatrix::identity(ambient));
    }
    static Lattice zero(index_t ambient) { return Lattice(ambient, IntMatrix(ambient, 0)); }

    bool operator==(const Lattice& rhs) const = default;
};

/// Canonical column-Hermite basis of the integer column span of `gens`.
/// Idempotent; zero columns are dropped, the ambient dimension is preserved.
Lattice hermite_basis(const IntMatrix& gens);

/// Basis of { x : A x = 0 } over Z.
Lattice integer_kernel(const IntMatrix& a);

/// Some x with A x = b over Z, or nullopt when no integral solution exists.
/// Throws std::invalid_argument when b has the wrong length.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                              const std::vector<Int>& b);

bool lattice_contains(const Lattice& l, const std::vector<Int>& v);

/// Hermite basis of the span of both lattices' columns together.
Lattice lattice_sum(const Lattice& l1, const Lattice& l2);

/// Canonical basis of L1 ∩ L2. Throws on ambient dimension mismatch.
Lattice lattice_intersection(const Lattice& l1, const Lattice& l2);

/// Finitely generated abelian group in invariant-factor form:
/// Z^rank ⊕ Z_{d1} ⊕ ... with 2 <= d1 | d2 | ... Generators are given in
/// numerator-basis coordinates, free summands first, then torsion summands
/// in factor order.
struct QuotientPresentation {
    index_t rank = 0;
    std::vector<Int> factors;
    IntMatrix generators;  // numerator.rank() x (rank + factors.size())

    bool is_trivial() const { return rank == 0 && factors.empty(); }
    /// |group| for finite groups (rank 0); 0 otherwise.
    Int order() const;
};

/// Presentation of numerator/denominator. Containment of the denominator is
/// verified column by column; violations throw std::invalid_argument.
QuotientPresentation quotient_presentation(const Lattice& numerator,
                                           const Lattice& denominator);

/// Rank of A over Q (characteristic == 0) or over F_p for prime p.
/// Composite characteristics are rejected.
index_t field_rank(const IntMatrix& a, unsigned long characteristic);

/// Kernel basis of A over the given field, returned as integer columns
/// (denominators cleared over Q; representatives in [0,p) over F_p).
IntMatrix field_kernel(const IntMatrix& a, unsigned long characteristic);

}  // namespace morseward
