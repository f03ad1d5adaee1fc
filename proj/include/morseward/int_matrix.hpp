#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace morseward {

/// Arbitrary-precision integer. All matrix entries, chain coefficients and
/// group invariants use this type; nothing in the pipeline may wrap.
using Int = mpz_class;

using index_t = long;

/// Sparse matrix over Z with column-major storage. Absent entries are zero.
/// Empty shapes (0 rows and/or 0 columns) are legal everywhere.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(index_t rows, index_t cols);

    /// Build from dense row-major initializer, e.g. {{1,0},{0,2}}.
    IntMatrix(std::initializer_list<std::initializer_list<long>> dense);

    static IntMatrix identity(index_t n);

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }

    Int get(index_t r, index_t c) const;
    void set(index_t r, index_t c, Int v);
    void add_to(index_t r, index_t c, const Int& v);

    const std::map<index_t, Int>& column(index_t c) const { return cols_data_[c]; }

    index_t nnz() const;
    bool is_zero() const { return nnz() == 0; }
    bool is_diagonal() const;

    IntMatrix transposed() const;

    /// Rows/cols picked (in the given order) from index lists.
    IntMatrix submatrix(const std::vector<index_t>& row_idx,
                        const std::vector<index_t>& col_idx) const;

    /// Result of permuting rows/cols: entry (r,c) moves to (row_to[r], col_to[c]).
    IntMatrix permuted(const std::vector<index_t>& row_to,
                       const std::vector<index_t>& col_to) const;

    std::vector<Int> apply(const std::vector<Int>& x) const;

    void swap_rows(index_t a, index_t b);
    void swap_cols(index_t a, index_t b);
    void negate_row(index_t r);
    void negate_col(index_t c);
    /// row[dst] += k * row[src]
    void add_row_multiple(index_t dst, index_t src, const Int& k);
    /// col[dst] += k * col[src]
    void add_col_multiple(index_t dst, index_t src, const Int& k);

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    bool operator==(const IntMatrix& rhs) const;
    bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }

    /// Max |entry|, 0 for the empty matrix.
    Int max_abs() const;

    std::string to_string() const;

private:
    void check_indices(index_t r, index_t c) const;

    index_t rows_, cols_;
    std::vector<std::map<index_t, Int>> cols_data_;
};

/// Dense working form used by the normal-form algorithms.
using DenseMatrix = std::vector<std::vector<Int>>;

DenseMatrix to_dense(const IntMatrix& m);
IntMatrix from_dense(const DenseMatrix& d, index_t rows, index_t cols);

}  // namespace morseward
