#include "morseward/intlinalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

namespace morseward {

namespace {

// Transform bookkeeping for U*A*V = S. Row ops on S update U and U^-1,
// column ops update V and V^-1.
struct Transforms {
    IntMatrix u, u_inv, v, v_inv;

    void swap_rows(index_t a, index_t b) {
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    }
    void negate_row(index_t r) {
        u.negate_row(r);
        u_inv.negate_col(r);
    }
    void add_row_multiple(index_t dst, index_t src, const Int& k) {
        u.add_row_multiple(dst, src, k);
        u_inv.add_col_multiple(src, dst, -k);
    }
    void swap_cols(index_t a, index_t b) {
        v.swap_cols(a, b);
        v_inv.swap_rows(a, b);
    }
    void negate_col(index_t c) {
        v.negate_col(c);
        v_inv.negate_row(c);
    }
    void add_col_multiple(index_t dst, index_t src, const Int& k) {
        v.add_col_multiple(dst, src, k);
        v_inv.add_row_multiple(src, dst, -k);
    }
};

// Minimal-|value| pivot in the trailing submatrix [t.., t..];
// ties resolved by smallest row, then smallest column.
bool find_pivot(const IntMatrix& s, index_t t, index_t& pr, index_t& pc) {
    bool found = false;
    Int best;
    for (index_t c = t; c < s.cols(); ++c) {
        for (const auto& [r, v] : s.column(c)) {
            if (r < t) continue;
            Int a = abs(v);
            if (!found || cmp(a, best) < 0 ||
                (cmp(a, best) == 0 && (r < pr || (r == pr && c < pc)))) {
                found = true;
                best = a;
                pr = r;
                pc = c;
            }
        }
    }
    return found;
}

// Eliminate row t and column t against the pivot at (t,t), re-picking a
// smaller pivot whenever a division leaves a remainder.
void clear_cross(IntMatrix& s, Transforms& tr, index_t t) {
    while (true) {
        index_t pr, pc;
        if (!find_pivot(s, t, pr, pc)) return;
        if (pr != t) {
            s.swap_rows(t, pr);
            tr.swap_rows(t, pr);
        }
        if (pc != t) {
            s.swap_cols(t, pc);
            tr.swap_cols(t, pc);
        }
        Int pivot = s.get(t, t);
        bool clean = true;
        // column t below/above the pivot
        std::vector<std::pair<index_t, Int>> col_entries(s.column(t).begin(),
                                                         s.column(t).end());
        for (const auto& [r, v] : col_entries) {
            if (r == t || r < t) continue;
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(),
                        pivot.get_mpz_t());
            s.add_row_multiple(r, t, -q);
            tr.add_row_multiple(r, t, -q);
            if (rem != 0) clean = false;
        }
        // row t to the right of the pivot
        for (index_t c = t + 1; c < s.cols(); ++c) {
            Int v = s.get(t, c);
            if (v == 0) continue;
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(),
                        pivot.get_mpz_t());
            s.add_col_multiple(c, t, -q);
            tr.add_col_multiple(c, t, -q);
            if (rem != 0) clean = false;
        }
        if (!clean) continue;
        bool cross_zero = true;
        for (const auto& [r, v] : s.column(t))
            if (r > t) cross_zero = false;
        for (index_t c = t + 1; c < s.cols() && cross_zero; ++c)
            if (s.get(t, c) != 0) cross_zero = false;
        if (cross_zero) return;
    }
}

}  // namespace

index_t SNFResult::rank() const {
    index_t r = 0;
    for (index_t i = 0; i < std::min(s.rows(), s.cols()); ++i)
        if (s.get(i, i) != 0) ++r;
    return r;
}

std::vector<Int> SNFResult::diagonal() const {
    std::vector<Int> d;
    for (index_t i = 0; i < std::min(s.rows(), s.cols()); ++i)
        d.push_back(s.get(i, i));
    return d;
}

SNFResult smith_normal_form(const IntMatrix& a) {
    const index_t m = a.rows(), n = a.cols();
    IntMatrix s = a;
    Transforms tr{IntMatrix::identity(m), IntMatrix::identity(m),
                  IntMatrix::identity(n), IntMatrix::identity(n)};

    const index_t mn = std::min(m, n);
    while (true) {
        index_t diag = 0;
        while (diag < mn) {
            index_t pr, pc;
            if (!find_pivot(s, diag, pr, pc)) break;
            clear_cross(s, tr, diag);
            if (s.get(diag, diag) < 0) {
                s.negate_row(diag);
                tr.negate_row(diag);
            }
            ++diag;
        }
        // Enforce the divisibility chain d_i | d_j: on a violation, mix the
        // columns and re-diagonalize (cheap, the matrix stays near-diagonal).
        bool fixed_up = false;
        for (index_t i = 0; i + 1 < diag && !fixed_up; ++i) {
            for (index_t j = i + 1; j < diag && !fixed_up; ++j) {
                if (s.get(j, j) % s.get(i, i) == 0) continue;
                s.add_col_multiple(i, j, 1);
                tr.add_col_multiple(i, j, 1);
                fixed_up = true;
            }
        }
        if (!fixed_up) break;
    }

    return SNFResult{std::move(tr.u), std::move(s), std::move(tr.v),
                     std::move(tr.u_inv), std::move(tr.v_inv)};
}

namespace {

// Row-style Hermite form: pivot columns strictly increase, pivots positive,
// entries above a pivot reduced into [0, pivot).
IntMatrix row_hnf(IntMatrix h) {
    const index_t m = h.rows(), n = h.cols();
    index_t r = 0;
    for (index_t c = 0; c < n && r < m; ++c) {
        while (true) {
            index_t best = -1;
            Int best_abs;
            for (const auto& [row, v] : h.column(c)) {
                if (row < r) continue;
                Int a = abs(v);
                if (best < 0 || cmp(a, best_abs) < 0) {
                    best = row;
                    best_abs = a;
                }
            }
            if (best < 0) break;
            h.swap_rows(r, best);
            Int pivot = h.get(r, c);
            bool clean = true;
            std::vector<std::pair<index_t, Int>> entries(h.column(c).begin(),
                                                         h.column(c).end());
            for (const auto& [row, v] : entries) {
                if (row <= r) continue;
                Int q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(),
                            pivot.get_mpz_t());
                h.add_row_multiple(row, r, -q);
                if (rem != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.get(r, c) != 0) {
            if (h.get(r, c) < 0) h.negate_row(r);
            Int pivot = h.get(r, c);
            std::vector<std::pair<index_t, Int>> above(h.column(c).begin(),
                                                       h.column(c).end());
            for (const auto& [row, v] : above) {
                if (row >= r) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), pivot.get_mpz_t());
                h.add_row_multiple(row, r, -q);
            }
            ++r;
        }
    }
    // rows >= r are entirely zero after the sweep
    std::vector<index_t> keep(static_cast<size_t>(r));
    for (index_t i = 0; i < r; ++i) keep[static_cast<size_t>(i)] = i;
    std::vector<index_t> all_cols(static_cast<size_t>(n));
    for (index_t c = 0; c < n; ++c) all_cols[static_cast<size_t>(c)] = c;
    return h.submatrix(keep, all_cols);
}

}  // namespace

Lattice hermite_basis(const IntMatrix& gens) {
    IntMatrix h = row_hnf(gens.transposed());
    return Lattice(gens.rows(), h.transposed());
}

Lattice integer_kernel(const IntMatrix& a) {
    SNFResult snf = smith_normal_form(a);
    index_t r = snf.rank();
    std::vector<index_t> rows_all(static_cast<size_t>(a.cols()));
    for (index_t i = 0; i < a.cols(); ++i) rows_all[static_cast<size_t>(i)] = i;
    std::vector<index_t> free_cols;
    for (index_t c = r; c < a.cols(); ++c) free_cols.push_back(c);
    IntMatrix gens = snf.v.submatrix(rows_all, free_cols);
    return hermite_basis(gens);
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                              const std::vector<Int>& b) {
    if (static_cast<index_t>(b.size()) != a.rows())
        throw std::invalid_argument("solve_integer: rhs length mismatch");
    SNFResult snf = smith_normal_form(a);
    std::vector<Int> c = snf.u.apply(b);
    std::vector<Int> z(static_cast<size_t>(a.cols()), Int(0));
    const index_t mn = std::min(a.rows(), a.cols());
    for (index_t i = 0; i < a.rows(); ++i) {
        const Int& ci = c[static_cast<size_t>(i)];
        Int d = i < mn ? snf.s.get(i, i) : Int(0);
        if (d == 0) {
            if (ci != 0) return std::nullopt;
        } else {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), ci.get_mpz_t(),
                        d.get_mpz_t());
            if (rem != 0) return std::nullopt;
            z[static_cast<size_t>(i)] = q;
        }
    }
    return snf.v.apply(z);
}

bool lattice_contains(const Lattice& l, const std::vector<Int>& v) {
    return solve_integer(l.basis, v).has_value();
}

namespace {

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows(), a.cols() + b.cols());
    for (index_t c = 0; c < a.cols(); ++c)
        for (const auto& [r, v] : a.column(c)) out.set(r, c, v);
    for (index_t c = 0; c < b.cols(); ++c)
        for (const auto& [r, v] : b.column(c)) out.set(r, a.cols() + c, v);
    return out;
}

}  // namespace

Lattice lattice_sum(const Lattice& l1, const Lattice& l2) {
    if (l1.ambient_dim != l2.ambient_dim)
        throw std::invalid_argument("lattice_sum: ambient dimension mismatch");
    return hermite_basis(hconcat(l1.basis, l2.basis));
}

Lattice lattice_intersection(const Lattice& l1, const Lattice& l2) {
    if (l1.ambient_dim != l2.ambient_dim)
        throw std::invalid_argument(
            "lattice_intersection: ambient dimension mismatch");
    if (l1.rank() == 0 || l2.rank() == 0) return Lattice::zero(l1.ambient_dim);
    IntMatrix m = hconcat(l1.basis, l2.basis);
    Lattice ker = integer_kernel(m);
    // first block of each kernel vector gives coefficients on l1's basis
    std::vector<index_t> top_rows(static_cast<size_t>(l1.rank()));
    for (index_t i = 0; i < l1.rank(); ++i) top_rows[static_cast<size_t>(i)] = i;
    std::vector<index_t> all_cols(static_cast<size_t>(ker.rank()));
    for (index_t c = 0; c < ker.rank(); ++c) all_cols[static_cast<size_t>(c)] = c;
    IntMatrix coeffs = ker.basis.submatrix(top_rows, all_cols);
    return hermite_basis(l1.basis * coeffs);
}

Int QuotientPresentation::order() const {
    if (rank > 0) return 0;
    Int o = 1;
    for (const Int& d : factors) o *= d;
    return o;
}

QuotientPresentation quotient_presentation(const Lattice& numerator,
                                           const Lattice& denominator) {
    if (numerator.ambient_dim != denominator.ambient_dim)
        throw std::invalid_argument(
            "quotient_presentation: ambient dimension mismatch");
    const index_t k = numerator.rank(), d = denominator.rank();
    // express each denominator column in numerator coordinates
    IntMatrix rel(k, d);
    for (index_t j = 0; j < d; ++j) {
        std::vector<Int> col(static_cast<size_t>(denominator.ambient_dim), Int(0));
        for (const auto& [r, v] : denominator.basis.column(j))
            col[static_cast<size_t>(r)] = v;
        auto x = solve_integer(numerator.basis, col);
        if (!x)
            throw std::invalid_argument(
                "quotient_presentation: denominator not contained in numerator");
        for (index_t i = 0; i < k; ++i)
            if ((*x)[static_cast<size_t>(i)] != 0)
                rel.set(i, j, (*x)[static_cast<size_t>(i)]);
    }
    SNFResult snf = smith_normal_form(rel);

    QuotientPresentation out;
    out.rank = k - d;
    std::vector<index_t> gen_cols;
    for (index_t i = d; i < k; ++i) gen_cols.push_back(i);  // free summands
    for (index_t i = 0; i < d; ++i) {
        Int di = snf.s.get(i, i);
        if (di >= 2) {
            out.factors.push_back(di);
            gen_cols.push_back(i);
        }
    }
    std::vector<index_t> all_rows(static_cast<size_t>(k));
    for (index_t i = 0; i < k; ++i) all_rows[static_cast<size_t>(i)] = i;
    out.generators = snf.u_inv.submatrix(all_rows, gen_cols);
    return out;
}

namespace {

void require_field(unsigned long characteristic) {
    if (characteristic == 0) return;
    Int p(static_cast<unsigned long>(characteristic));
    if (characteristic < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw std::invalid_argument("characteristic must be 0 or a prime");
}

// Reduced row echelon over Q or F_p; returns pivot column list.
template <typename Elem, typename Ops>
std::vector<index_t> rref(std::vector<std::vector<Elem>>& m, const Ops& ops) {
    std::vector<index_t> pivots;
    const index_t rows = static_cast<index_t>(m.size());
    const index_t cols = rows == 0 ? 0 : static_cast<index_t>(m[0].size());
    index_t r = 0;
    for (index_t c = 0; c < cols && r < rows; ++c) {
        index_t pr = -1;
        for (index_t i = r; i < rows; ++i)
            if (!ops.is_zero(m[i][c])) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        Elem inv = ops.inverse(m[r][c]);
        for (index_t j = c; j < cols; ++j) m[r][j] = ops.mul(m[r][j], inv);
        for (index_t i = 0; i < rows; ++i) {
            if (i == r || ops.is_zero(m[i][c])) continue;
            Elem f = m[i][c];
            for (index_t j = c; j < cols; ++j)
                m[i][j] = ops.sub(m[i][j], ops.mul(f, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

struct RationalOps {
    using Elem = mpq_class;
    bool is_zero(const Elem& e) const { return e == 0; }
    Elem inverse(const Elem& e) const { return 1 / e; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
};

struct PrimeOps {
    Int p;
    using Elem = Int;
    bool is_zero(const Elem& e) const { return e == 0; }
    Elem inverse(const Elem& e) const {
        Int inv;
        mpz_invert(inv.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return inv;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Int r = a * b;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Int r = a - b;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        return r;
    }
};

template <typename Elem, typename Ops>
std::vector<std::vector<Elem>> load(const IntMatrix& a, const Ops&,
                                    unsigned long p) {
    std::vector<std::vector<Elem>> m(
        static_cast<size_t>(a.rows()),
        std::vector<Elem>(static_cast<size_t>(a.cols()), Elem(0)));
    for (index_t c = 0; c < a.cols(); ++c)
        for (const auto& [r, v] : a.column(c)) {
            Elem e(v);
            if (p != 0) {
                Int red;
                mpz_mod(red.get_mpz_t(), Int(v).get_mpz_t(),
                        Int(static_cast<unsigned long>(p)).get_mpz_t());
                e = Elem(red);
            }
            m[static_cast<size_t>(r)][static_cast<size_t>(c)] = e;
        }
    return m;
}

template <typename Elem, typename Ops>
IntMatrix kernel_from_rref(const std::vector<std::vector<Elem>>& m,
                           const std::vector<index_t>& pivots, index_t cols,
                           const Ops& ops, unsigned long p) {
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (index_t c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<index_t> free_cols;
    for (index_t c = 0; c < cols; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);

    IntMatrix out(cols, static_cast<index_t>(free_cols.size()));
    for (size_t fj = 0; fj < free_cols.size(); ++fj) {
        index_t f = free_cols[fj];
        std::vector<Elem> x(static_cast<size_t>(cols), Elem(0));
        x[static_cast<size_t>(f)] = Elem(1);
        for (size_t i = 0; i < pivots.size(); ++i)
            x[static_cast<size_t>(pivots[i])] =
                ops.sub(Elem(0), m[i][static_cast<size_t>(f)]);
        if constexpr (std::is_same_v<Elem, mpq_class>) {
            // clear denominators
            Int lcm_den = 1;
            for (const auto& q : x) {
                Int den = q.get_den();
                Int g;
                mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
                lcm_den = lcm_den / g * den;
            }
            for (index_t r = 0; r < cols; ++r) {
                const mpq_class& q = x[static_cast<size_t>(r)];
                Int num = q.get_num() * (lcm_den / q.get_den());
                if (num != 0) out.set(r, static_cast<index_t>(fj), num);
            }
        } else {
            (void)p;
            for (index_t r = 0; r < cols; ++r) {
                const Int& v = x[static_cast<size_t>(r)];
                if (v != 0) out.set(r, static_cast<index_t>(fj), v);
            }
        }
    }
    return out;
}

}  // namespace

index_t field_rank(const IntMatrix& a, unsigned long characteristic) {
    require_field(characteristic);
    if (characteristic == 0) {
        RationalOps ops;
        auto m = load<mpq_class>(a, ops, 0);
        return static_cast<index_t>(rref(m, ops).size());
    }
    PrimeOps ops{Int(characteristic)};
    auto m = load<Int>(a, ops, characteristic);
    return static_cast<index_t>(rref(m, ops).size());
}

IntMatrix field_kernel(const IntMatrix& a, unsigned long characteristic) {
    require_field(characteristic);
    if (characteristic == 0) {
        RationalOps ops;
        auto m = load<mpq_class>(a, ops, 0);
        auto pivots = rref(m, ops);
        return kernel_from_rref(m, pivots, a.cols(), ops, 0);
    }
    PrimeOps ops{Int(characteristic)};
    auto m = load<Int>(a, ops, characteristic);
    auto pivots = rref(m, ops);
    return kernel_from_rref(m, pivots, a.cols(), ops, characteristic);
}

}  // namespace morseward
