#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "morseward/intlinalg.hpp"

using namespace morseward;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, index_t rows, index_t cols,
                        int lo, int hi, double density = 0.6) {
    std::uniform_int_distribution<int> val(lo, hi);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    IntMatrix m(rows, cols);
    for (index_t r = 0; r < rows; ++r)
        for (index_t c = 0; c < cols; ++c)
            if (keep(rng) < density) m.set(r, c, val(rng));
    return m;
}

// Fraction-free determinant, used as an independent oracle for |det U| = 1.
Int bareiss_det(const IntMatrix& a) {
    REQUIRE(a.rows() == a.cols());
    index_t n = a.rows();
    if (n == 0) return 1;
    DenseMatrix m = to_dense(a);
    Int sign = 1, prev = 1;
    for (index_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            index_t swap_row = -1;
            for (index_t i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (index_t i = k + 1; i < n; ++i)
            for (index_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<Int> vec(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("smith normal form: fixed examples") {
    SUBCASE("1x1 zero matrix is a fixed point") {
        auto snf = smith_normal_form(IntMatrix{{0}});
        CHECK(snf.s == IntMatrix{{0}});
        CHECK(snf.u == IntMatrix{{1}});
        CHECK(snf.v == IntMatrix{{1}});
    }
    SUBCASE("already diagonal") {
        auto snf = smith_normal_form(IntMatrix{{2}});
        CHECK(snf.s == IntMatrix{{2}});
    }
    SUBCASE("unimodular 2x2 reduces to identity") {
        // hand row-reduction: [[-1,0],[-2,1]] ~ [[1,0],[0,1]]
        IntMatrix a{{-1, 0}, {-2, 1}};
        auto snf = smith_normal_form(a);
        CHECK(snf.s == IntMatrix::identity(2));
        CHECK(snf.u * a * snf.v == snf.s);
    }
    SUBCASE("empty shapes") {
        auto snf = smith_normal_form(IntMatrix(0, 3));
        CHECK(snf.s.rows() == 0);
        CHECK(snf.s.cols() == 3);
        CHECK(snf.v == IntMatrix::identity(3));
        auto snf2 = smith_normal_form(IntMatrix(2, 0));
        CHECK(snf2.u == IntMatrix::identity(2));
    }
}

TEST_CASE("smith normal form: random matrices satisfy the contract") {
    std::mt19937_64 rng(20260810);
    for (int trial = 0; trial < 200; ++trial) {
        index_t rows = static_cast<index_t>(rng() % 9);
        index_t cols = static_cast<index_t>(rng() % 9);
        IntMatrix a = random_matrix(rng, rows, cols, -5, 5);
        auto snf = smith_normal_form(a);

        REQUIRE(snf.u * a * snf.v == snf.s);
        REQUIRE(snf.s.is_diagonal());
        REQUIRE(snf.u * snf.u_inv == IntMatrix::identity(rows));
        REQUIRE(snf.v * snf.v_inv == IntMatrix::identity(cols));
        auto diag = snf.diagonal();
        for (size_t i = 0; i + 1 < diag.size(); ++i) {
            REQUIRE(diag[i] >= 0);
            if (diag[i] != 0) REQUIRE(diag[i + 1] % diag[i] == 0);
            if (diag[i] == 0) REQUIRE(diag[i + 1] == 0);
        }
        REQUIRE(abs(bareiss_det(snf.u)) == 1);
        REQUIRE(abs(bareiss_det(snf.v)) == 1);
    }
}

TEST_CASE("hermite basis: fixed examples") {
    SUBCASE("dependent generators collapse to canonical pair") {
        // enumeration oracle on [0,2)^2: the lattice spanned by
        // (2,0),(0,2),(1,1) has index 2, residues {(0,0),(1,0)} say;
        // the canonical basis is {(1,1),(0,2)}.
        IntMatrix gens(2, 3);
        gens.set(0, 0, 2);
        gens.set(1, 1, 2);
        gens.set(0, 2, 1);
        gens.set(1, 2, 1);
        Lattice l = hermite_basis(gens);
        IntMatrix expect(2, 2);
        expect.set(0, 0, 1);
        expect.set(1, 0, 1);
        expect.set(1, 1, 2);
        CHECK(l.basis == expect);
        // oracle: membership of every lattice point in [0,4)^2 matches
        // brute-force reachability
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y) {
                bool brute = (x + y) % 2 == 0;  // spanned sublattice is even-sum
                CHECK(lattice_contains(l, vec({x, y})) == brute);
            }
    }
    SUBCASE("identity columns") {
        Lattice l = hermite_basis(IntMatrix::identity(3));
        CHECK(l.basis == IntMatrix::identity(3));
    }
    SUBCASE("zero columns give empty basis, ambient preserved") {
        Lattice l = hermite_basis(IntMatrix(4, 2));
        CHECK(l.ambient_dim == 4);
        CHECK(l.rank() == 0);
    }
}

TEST_CASE("hermite basis: idempotent and span-preserving") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        index_t n = 1 + static_cast<index_t>(rng() % 5);
        index_t k = static_cast<index_t>(rng() % 6);
        IntMatrix gens = random_matrix(rng, n, k, -4, 4);
        Lattice l = hermite_basis(gens);
        CHECK(hermite_basis(l.basis) == l);
        for (index_t c = 0; c < k; ++c) {
            std::vector<Int> col(static_cast<size_t>(n), Int(0));
            for (const auto& [r, v] : gens.column(c)) col[static_cast<size_t>(r)] = v;
            CHECK(lattice_contains(l, col));
        }
    }
}

TEST_CASE("integer kernel: fixed examples") {
    SUBCASE("sum map") {
        Lattice k = integer_kernel(IntMatrix{{1, 1}});
        REQUIRE(k.rank() == 1);
        CHECK(lattice_contains(k, vec({1, -1})));
        CHECK_FALSE(lattice_contains(k, vec({1, 0})));
    }
    SUBCASE("identity has empty kernel") {
        CHECK(integer_kernel(IntMatrix::identity(3)).rank() == 0);
    }
    SUBCASE("[[2,4]] brute force over [-4,4]^2") {
        IntMatrix a{{2, 4}};
        Lattice k = integer_kernel(a);
        REQUIRE(k.rank() == 1);
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y) {
                bool in_kernel = 2 * x + 4 * y == 0;
                CHECK(lattice_contains(k, vec({x, y})) == in_kernel);
            }
    }
}

TEST_CASE("integer kernel: A * basis column = 0 on random matrices") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        index_t rows = static_cast<index_t>(rng() % 6);
        index_t cols = static_cast<index_t>(rng() % 7);
        IntMatrix a = random_matrix(rng, rows, cols, -3, 3);
        Lattice k = integer_kernel(a);
        CHECK((a * k.basis).is_zero());
        // any small kernel vector lies in the span
        if (cols >= 1 && cols <= 3) {
            std::vector<Int> x(static_cast<size_t>(cols), Int(0));
            std::function<void(size_t)> walk = [&](size_t pos) {
                if (pos == x.size()) {
                    bool is_ker = true;
                    auto y = a.apply(x);
                    for (const auto& v : y) is_ker = is_ker && v == 0;
                    if (is_ker) CHECK(lattice_contains(k, x));
                    return;
                }
                for (long v = -2; v <= 2; ++v) {
                    x[pos] = v;
                    walk(pos + 1);
                }
            };
            walk(0);
        }
    }
}

TEST_CASE("solve_integer: fixed examples") {
    CHECK(*solve_integer(IntMatrix{{2}}, vec({4})) == vec({2}));
    CHECK_FALSE(solve_integer(IntMatrix{{2}}, vec({3})).has_value());
    auto x = solve_integer(IntMatrix{{1, 0}, {-2, 1}}, vec({1, 0}));
    REQUIRE(x.has_value());
    CHECK(*x == vec({1, 2}));
    CHECK_THROWS_AS((void)solve_integer(IntMatrix{{1, 0}}, vec({1, 2})),
                    std::invalid_argument);
}

TEST_CASE("lattice intersection") {
    SUBCASE("idempotence") {
        IntMatrix g(2, 2);
        g.set(0, 0, 2);
        g.set(1, 1, 3);
        Lattice l = hermite_basis(g);
        CHECK(lattice_intersection(l, l) == l);
    }
    SUBCASE("2Z x Z meets Z x 2Z in 2Z x 2Z") {
        IntMatrix a(2, 2), b(2, 2);
        a.set(0, 0, 2);
        a.set(1, 1, 1);
        b.set(0, 0, 1);
        b.set(1, 1, 2);
        Lattice meet = lattice_intersection(hermite_basis(a), hermite_basis(b));
        // enumeration oracle over representatives in [0,2)^2 scaled out
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y)
                CHECK(lattice_contains(meet, vec({x, y})) ==
                      (x % 2 == 0 && y % 2 == 0));
    }
    SUBCASE("full lattice is the identity element") {
        IntMatrix g(3, 2);
        g.set(0, 0, 2);
        g.set(2, 1, 5);
        Lattice l = hermite_basis(g);
        CHECK(lattice_intersection(l, Lattice::full(3)) == l);
    }
    SUBCASE("ambient mismatch throws") {
        CHECK_THROWS_AS((void)lattice_intersection(Lattice::full(2), Lattice::full(3)),
                        std::invalid_argument);
    }
}

TEST_CASE("lattice intersection: containment and commutativity on randoms") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 80; ++trial) {
        index_t n = 1 + static_cast<index_t>(rng() % 4);
        Lattice l1 = hermite_basis(random_matrix(rng, n, static_cast<index_t>(rng() % 5), -3, 3));
        Lattice l2 = hermite_basis(random_matrix(rng, n, static_cast<index_t>(rng() % 5), -3, 3));
        Lattice meet = lattice_intersection(l1, l2);
        CHECK(meet == lattice_intersection(l2, l1));
        for (index_t c = 0; c < meet.rank(); ++c) {
            std::vector<Int> col(static_cast<size_t>(n), Int(0));
            for (const auto& [r, v] : meet.basis.column(c))
                col[static_cast<size_t>(r)] = v;
            CHECK(lattice_contains(l1, col));
            CHECK(lattice_contains(l2, col));
        }
    }
}

TEST_CASE("quotient presentation: fixed examples") {
    SUBCASE("Z / 2Z") {
        IntMatrix two(1, 1);
        two.set(0, 0, 2);
        auto q = quotient_presentation(Lattice::full(1), hermite_basis(two));
        CHECK(q.rank == 0);
        REQUIRE(q.factors.size() == 1);
        CHECK(q.factors[0] == 2);
        CHECK(q.order() == 2);
    }
    SUBCASE("Z^2 / 0") {
        auto q = quotient_presentation(Lattice::full(2), Lattice::zero(2));
        CHECK(q.rank == 2);
        CHECK(q.factors.empty());
    }
    SUBCASE("Z^2 / span{(2,0),(0,4)}") {
        IntMatrix d(2, 2);
        d.set(0, 0, 2);
        d.set(1, 1, 4);
        auto q = quotient_presentation(Lattice::full(2), hermite_basis(d));
        CHECK(q.rank == 0);
        REQUIRE(q.factors.size() == 2);
        CHECK(q.factors[0] == 2);
        CHECK(q.factors[1] == 4);
        CHECK(q.order() == 8);  // finite group enumeration: 8 elements
    }
    SUBCASE("containment violation throws") {
        IntMatrix odd(1, 1);
        odd.set(0, 0, 1);
        IntMatrix two(1, 1);
        two.set(0, 0, 2);
        CHECK_THROWS_AS(
            (void)quotient_presentation(hermite_basis(two), hermite_basis(odd)),
            std::invalid_argument);
    }
}

TEST_CASE("quotient presentation: group order equals |det| ratio") {
    std::mt19937_64 rng(4242);
    int done = 0;
    while (done < 60) {
        index_t n = 1 + static_cast<index_t>(rng() % 4);
        IntMatrix num_g = random_matrix(rng, n, n, -3, 3);
        Int dn = bareiss_det(num_g);
        if (dn == 0) continue;
        IntMatrix mult = random_matrix(rng, n, n, -2, 2);
        Int dm = bareiss_det(mult);
        if (dm == 0) continue;
        Lattice num = hermite_basis(num_g);
        Lattice den = hermite_basis(num_g * mult);
        auto q = quotient_presentation(num, den);
        CHECK(q.rank == 0);
        CHECK(q.order() == abs(dm));
        ++done;
    }
}

TEST_CASE("field rank and kernel") {
    IntMatrix a{{2, 4}, {1, 2}};
    CHECK(field_rank(a, 0) == 1);
    CHECK(field_rank(a, 2) == 1);  // reduces to [[0,0],[1,0]]
    CHECK(field_rank(IntMatrix{{2}}, 2) == 0);
    CHECK(field_rank(IntMatrix{{2}}, 0) == 1);
    CHECK_THROWS_AS((void)field_rank(a, 4), std::invalid_argument);

    // kernel over F_2 sees more than the integer kernel
    IntMatrix two{{2}};
    CHECK(integer_kernel(two).rank() == 0);
    CHECK(field_kernel(two, 2).cols() == 1);
    CHECK(field_kernel(two, 0).cols() == 0);

    // kernel columns really are kernel vectors
    IntMatrix k0 = field_kernel(a, 0);
    CHECK((a * k0).is_zero());
    CHECK(k0.cols() == 1);
}
