#include "morseward/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace morseward {

IntMatrix::IntMatrix(index_t rows, index_t cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("IntMatrix: negative shape");
    cols_data_.resize(static_cast<size_t>(cols));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> dense) {
    rows_ = static_cast<index_t>(dense.size());
    cols_ = rows_ == 0 ? 0 : static_cast<index_t>(dense.begin()->size());
    cols_data_.resize(static_cast<size_t>(cols_));
    index_t r = 0;
    for (const auto& row : dense) {
        if (static_cast<index_t>(row.size()) != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        index_t c = 0;
        for (long v : row) {
            if (v != 0) cols_data_[c][r] = v;
            ++c;
        }
        ++r;
    }
}

IntMatrix IntMatrix::identity(index_t n) {
    IntMatrix m(n, n);
    for (index_t i = 0; i < n; ++i) m.cols_data_[i][i] = 1;
    return m;
}

void IntMatrix::check_indices(index_t r, index_t c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("IntMatrix: index out of range");
}

Int IntMatrix::get(index_t r, index_t c) const {
    check_indices(r, c);
    const auto& col = cols_data_[c];
    auto it = col.find(r);
    return it == col.end() ? Int(0) : it->second;
}

void IntMatrix::set(index_t r, index_t c, Int v) {
    check_indices(r, c);
    if (v == 0)
        cols_data_[c].erase(r);
    else
        cols_data_[c][r] = std::move(v);
}

void IntMatrix::add_to(index_t r, index_t c, const Int& v) {
    check_indices(r, c);
    if (v == 0) return;
    auto& col = cols_data_[c];
    auto it = col.find(r);
    if (it == col.end()) {
        col.emplace(r, v);
    } else {
        it->second += v;
        if (it->second == 0) col.erase(it);
    }
}

index_t IntMatrix::nnz() const {
    index_t n = 0;
    for (const auto& col : cols_data_) n += static_cast<index_t>(col.size());
    return n;
}

bool IntMatrix::is_diagonal() const {
    for (index_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : cols_data_[c])
            if (r != c) return false;
    return true;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (index_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : cols_data_[c]) t.cols_data_[r][c] = v;
    return t;
}

IntMatrix IntMatrix::submatrix(const std::vector<index_t>& row_idx,
                               const std::vector<index_t>& col_idx) const {
    std::vector<index_t> row_pos(static_cast<size_t>(rows_), -1);
    for (size_t i = 0; i < row_idx.size(); ++i) {
        if (row_idx[i] < 0 || row_idx[i] >= rows_)
            throw std::out_of_range("IntMatrix::submatrix: row index out of range");
        row_pos[static_cast<size_t>(row_idx[i])] = static_cast<index_t>(i);
    }
    IntMatrix out(static_cast<index_t>(row_idx.size()),
                  static_cast<index_t>(col_idx.size()));
    for (size_t j = 0; j < col_idx.size(); ++j) {
        const auto& col = cols_data_[static_cast<size_t>(col_idx[j])];
        for (const auto& [r, v] : col) {
            index_t rp = row_pos[static_cast<size_t>(r)];
            if (rp >= 0) out.cols_data_[j][rp] = v;
        }
    }
    return out;
}

IntMatrix IntMatrix::permuted(const std::vector<index_t>& row_to,
                              const std::vector<index_t>& col_to) const {
    IntMatrix out(rows_, cols_);
    for (index_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : cols_data_[c])
            out.cols_data_[col_to[static_cast<size_t>(c)]]
                          [row_to[static_cast<size_t>(r)]] = v;
    return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (static_cast<index_t>(x.size()) != cols_)
        throw std::invalid_argument("IntMatrix::apply: size mismatch");
    std::vector<Int> y(static_cast<size_t>(rows_), Int(0));
    for (index_t c = 0; c < cols_; ++c) {
        if (x[static_cast<size_t>(c)] == 0) continue;
        for (const auto& [r, v] : cols_data_[c])
            y[static_cast<size_t>(r)] += v * x[static_cast<size_t>(c)];
    }
    return y;
}

void IntMatrix::swap_rows(index_t a, index_t b) {
    if (a == b) return;
    for (auto& col : cols_data_) {
        auto ia = col.find(a), ib = col.find(b);
        bool ha = ia != col.end(), hb = ib != col.end();
        if (!ha && !hb) continue;
        if (ha && hb) {
            std::swap(ia->second, ib->second);
        } else if (ha) {
            col.emplace(b, std::move(ia->second));
            col.erase(a);
        } else {
            col.emplace(a, std::move(ib->second));
            col.erase(b);
        }
    }
}

void IntMatrix::swap_cols(index_t a, index_t b) {
    if (a != b) std::swap(cols_data_[a], cols_data_[b]);
}

void IntMatrix::negate_row(index_t r) {
    for (auto& col : cols_data_) {
        auto it = col.find(r);
        if (it != col.end()) it->second = -it->second;
    }
}

void IntMatrix::negate_col(index_t c) {
    for (auto& [r, v] : cols_data_[c]) v = -v;
}

void IntMatrix::add_row_multiple(index_t dst, index_t src, const Int& k) {
    if (k == 0) return;
    for (auto& col : cols_data_) {
        auto is = col.find(src);
        if (is == col.end()) continue;
        Int delta = k * is->second;
        auto id = col.find(dst);
        if (id == col.end()) {
            col.emplace(dst, std::move(delta));
        } else {
            id->second += delta;
            if (id->second == 0) col.erase(id);
        }
    }
}

void IntMatrix::add_col_multiple(index_t dst, index_t src, const Int& k) {
    if (k == 0) return;
    auto& s = cols_data_[src];
    auto& d = cols_data_[dst];
    for (const auto& [r, v] : s) {
        auto it = d.find(r);
        if (it == d.end()) {
            d.emplace(r, k * v);
        } else {
            it->second += k * v;
            if (it->second == 0) d.erase(it);
        }
    }
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix: product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (index_t j = 0; j < rhs.cols_; ++j) {
        auto& ocol = out.cols_data_[j];
        for (const auto& [k, bv] : rhs.cols_data_[j]) {
            for (const auto& [r, av] : cols_data_[k]) {
                auto it = ocol.find(r);
                if (it == ocol.end()) {
                    ocol.emplace(r, av * bv);
                } else {
                    it->second += av * bv;
                }
            }
        }
        for (auto it = ocol.begin(); it != ocol.end();)
            it = (it->second == 0) ? ocol.erase(it) : std::next(it);
    }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("IntMatrix: sum shape mismatch");
    IntMatrix out = *this;
    for (index_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : rhs.cols_data_[c]) out.add_to(r, c, v);
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("IntMatrix: difference shape mismatch");
    IntMatrix out = *this;
    for (index_t c = 0; c < cols_; ++c)
        for (const auto& [r, v] : rhs.cols_data_[c]) out.add_to(r, c, -v);
    return out;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix out = *this;
    for (auto& col : out.cols_data_)
        for (auto& [r, v] : col) v = -v;
    return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && cols_data_ == rhs.cols_data_;
}

Int IntMatrix::max_abs() const {
    Int m = 0;
    for (const auto& col : cols_data_)
        for (const auto& [r, v] : col)
            if (cmp(abs(v), m) > 0) m = abs(v);
    return m;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (index_t r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (index_t c = 0; c < cols_; ++c) {
            if (c) os << " ";
            os << get(r, c).get_str();
        }
    }
    os << "] (" << rows_ << "x" << cols_ << ")";
    return os.str();
}

DenseMatrix to_dense(const IntMatrix& m) {
    DenseMatrix d(static_cast<size_t>(m.rows()),
                  std::vector<Int>(static_cast<size_t>(m.cols()), Int(0)));
    for (index_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            d[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
    return d;
}

IntMatrix from_dense(const DenseMatrix& d, index_t rows, index_t cols) {
    IntMatrix m(rows, cols);
    for (index_t r = 0; r < rows; ++r)
        for (index_t c = 0; c < cols; ++c) {
            const Int& v = d[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (v != 0) m.set(r, c, v);
        }
    return m;
}

}  // namespace morseward
