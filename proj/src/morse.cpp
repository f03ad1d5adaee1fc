#include "morseward/morse.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace morseward {

CellPartition partition_cells(const IntMatrix& m, const VectorField& v) {
    std::vector<bool> src(static_cast<size_t>(m.rows()), false);
    std::vector<bool> tgt(static_cast<size_t>(m.cols()), false);
    for (const auto& [a, b] : v.vectors) {
        src[static_cast<size_t>(a)] = true;
        tgt[static_cast<size_t>(b)] = true;
    }
    CellPartition p;
    for (index_t r = 0; r < m.rows(); ++r)
        (src[static_cast<size_t>(r)] ? p.sources : p.critical_rows).push_back(r);
    for (index_t c = 0; c < m.cols(); ++c)
        (tgt[static_cast<size_t>(c)] ? p.targets : p.critical_cols).push_back(c);
    return p;
}

namespace {

std::string cycle_text(const std::vector<index_t>& cycle) {
    std::ostringstream os;
    for (size_t i = 0; i < cycle.size(); ++i) {
        if (i) os << " > ";
        os << cycle[i];
    }
    return os.str();
}

}  // namespace

IntMatrix invert_d21(const IntMatrix& m, const VectorField& v) {
    AdmissibilityResult adm = is_admissible(m, v);
    if (!adm.admissible)
        throw std::invalid_argument("invert_d21: inadmissible field, cycle " +
                                    cycle_text(adm.cycle));

    CellPartition part = partition_cells(m, v);
    const size_t k = part.sources.size();
    std::vector<index_t> source_pos(static_cast<size_t>(m.rows()), -1);
    for (size_t i = 0; i < k; ++i)
        source_pos[static_cast<size_t>(part.sources[i])] = static_cast<index_t>(i);
    std::vector<index_t> target_pos(static_cast<size_t>(m.cols()), -1);
    for (size_t i = 0; i < part.targets.size(); ++i)
        target_pos[static_cast<size_t>(part.targets[i])] = static_cast<index_t>(i);
    std::vector<index_t> pair_of(static_cast<size_t>(m.rows()), -1);
    for (const auto& [a, b] : v.vectors) pair_of[static_cast<size_t>(a)] = b;

    // columns[i]: chain of targets representing d21^{-1}(source_i),
    // computed by the V-path recursion with memoization
    std::vector<std::map<index_t, Int>> columns(k);
    std::vector<char> state(k, 0);  // 0 = todo, 1 = in progress, 2 = done

    std::vector<index_t> stack;
    for (size_t root = 0; root < k; ++root) {
        if (state[root] == 2) continue;
        stack.push_back(static_cast<index_t>(root));
        while (!stack.empty()) {
            index_t s = stack.back();
            index_t row = part.sources[static_cast<size_t>(s)];
            index_t tau = pair_of[static_cast<size_t>(row)];
            if (state[static_cast<size_t>(s)] == 0) {
                state[static_cast<size_t>(s)] = 1;
                bool ready = true;
                for (const auto& [r, val] : m.column(tau)) {
                    index_t sp = source_pos[static_cast<size_t>(r)];
                    if (r == row || sp < 0) continue;
                    if (state[static_cast<size_t>(sp)] == 0) {
                        stack.push_back(sp);
                        ready = false;
                    } else if (state[static_cast<size_t>(sp)] == 1) {
                        throw std::logic_error("invert_d21: cycle slipped past guard");
                    }
                }
                if (!ready) continue;
            }
            if (state[static_cast<size_t>(s)] == 2) {
                stack.pop_back();
                continue;
            }
            // all prerequisites done: assemble the column
            Int eps = m.get(row, tau);
            std::map<index_t, Int> acc;
            acc.emplace(target_pos[static_cast<size_t>(tau)], Int(1));
            for (const auto& [r, val] : m.column(tau)) {
                index_t sp = source_pos[static_cast<size_t>(r)];
                if (r == row || sp < 0) continue;
                for (const auto& [t, coeff] : columns[static_cast<size_t>(sp)]) {
                    auto it = acc.find(t);
                    Int delta = -val * coeff;
                    if (it == acc.end()) {
                        acc.emplace(t, std::move(delta));
                    } else {
                        it->second += delta;
                        if (it->second == 0) acc.erase(it);
                    }
                }
            }
            if (eps == -1)
                for (auto& [t, coeff] : acc) coeff = -coeff;
            columns[static_cast<size_t>(s)] = std::move(acc);
            state[static_cast<size_t>(s)] = 2;
            stack.pop_back();
        }
    }

    IntMatrix out(static_cast<index_t>(part.targets.size()),
                  static_cast<index_t>(k));
    for (size_t s = 0; s < k; ++s)
        for (const auto& [t, coeff] : columns[s])
            out.set(t, static_cast<index_t>(s), coeff);
    return out;
}

Reduction reduce_one_degree(ComplexPtr c, int n, const VectorField& v) {
    if (n < 1 || n > c->max_dim())
        throw std::invalid_argument("reduce_one_degree: degree out of range");
    const IntMatrix dn = c->boundary(n);
    IntMatrix d21inv = invert_d21(dn, v);  // also validates admissibility
    CellPartition part = partition_cells(dn, v);

    const IntMatrix d23 = dn.submatrix(part.sources, part.critical_cols);
    const IntMatrix d31 = dn.submatrix(part.critical_rows, part.targets);
    const IntMatrix d33 = dn.submatrix(part.critical_rows, part.critical_cols);
    const IntMatrix correction = d21inv * d23;  // targets x critical cols
    const IntMatrix d_prime = d33 - d31 * correction;

    // --- target complex: critical cells keep id, filtration and label
    ComplexBuilder b(c->steps());
    const auto& basis_lo = c->basis(n - 1);
    const auto& basis_hi = c->basis(n);
    for (int k = 0; k <= c->max_dim(); ++k) {
        if (k == n - 1) {
            for (index_t r : part.critical_rows) {
                const Cell& cell = basis_lo[static_cast<size_t>(r)];
                b.add_cell_with_id(cell.id, cell.dim, cell.filt, cell.label);
            }
        } else if (k == n) {
            for (index_t cc : part.critical_cols) {
                const Cell& cell = basis_hi[static_cast<size_t>(cc)];
                b.add_cell_with_id(cell.id, cell.dim, cell.filt, cell.label);
            }
        } else {
            for (const Cell& cell : c->basis(k))
                b.add_cell_with_id(cell.id, cell.dim, cell.filt, cell.label);
        }
    }
    for (int k = 1; k <= c->max_dim(); ++k) {
        if (k == n - 1) {
            // drop source columns
            const IntMatrix d = c->boundary(k);
            for (index_t col : part.critical_rows) {
                const Cell& tau = basis_lo[static_cast<size_t>(col)];
                for (const auto& [row, val] : d.column(col))
                    b.set_incidence(tau.id, c->basis(k - 1)[static_cast<size_t>(row)].id, val);
            }
        } else if (k == n) {
            for (index_t j = 0; j < d_prime.cols(); ++j) {
                const Cell& tau =
                    basis_hi[static_cast<size_t>(part.critical_cols[static_cast<size_t>(j)])];
                for (const auto& [i, val] : d_prime.column(j))
                    b.set_incidence(
                        tau.id,
                        basis_lo[static_cast<size_t>(part.critical_rows[static_cast<size_t>(i)])].id,
                        val);
            }
        } else if (k == n + 1) {
            // drop target rows
            const IntMatrix d = c->boundary(k);
            std::vector<index_t> keep_pos(static_cast<size_t>(dn.cols()), -1);
            for (size_t i = 0; i < part.critical_cols.size(); ++i)
                keep_pos[static_cast<size_t>(part.critical_cols[i])] =
                    static_cast<index_t>(i);
            for (index_t col = 0; col < d.cols(); ++col) {
                const Cell& omega = c->basis(k)[static_cast<size_t>(col)];
                for (const auto& [row, val] : d.column(col))
                    if (keep_pos[static_cast<size_t>(row)] >= 0)
                        b.set_incidence(omega.id, basis_hi[static_cast<size_t>(row)].id,
                                        val);
            }
        } else {
            const IntMatrix d = c->boundary(k);
            for (index_t col = 0; col < d.cols(); ++col) {
                const Cell& tau = c->basis(k)[static_cast<size_t>(col)];
                for (const auto& [row, val] : d.column(col))
                    b.set_incidence(tau.id, c->basis(k - 1)[static_cast<size_t>(row)].id,
                                    val);
            }
        }
    }

    Reduction rho;
    rho.src = c;
    rho.dst = b.build();

    const IntMatrix q = d31 * d21inv;  // critical rows x sources
    for (int k = 0; k <= c->max_dim(); ++k) {
        IntMatrix f(rho.dst->basis_size(k), c->basis_size(k));
        IntMatrix g(c->basis_size(k), rho.dst->basis_size(k));
        IntMatrix h(c->basis_size(k + 1), c->basis_size(k));
        if (k == n - 1) {
            for (size_t i = 0; i < part.critical_rows.size(); ++i)
                f.set(static_cast<index_t>(i), part.critical_rows[i], 1);
            for (size_t j = 0; j < part.sources.size(); ++j)
                for (const auto& [i, val] : q.column(static_cast<index_t>(j)))
                    f.set(i, part.sources[j], -val);
            for (size_t i = 0; i < part.critical_rows.size(); ++i)
                g.set(part.critical_rows[i], static_cast<index_t>(i), 1);
            // h maps sources into their d21^{-1} chains of targets
            for (size_t j = 0; j < part.sources.size(); ++j)
                for (const auto& [t, val] : d21inv.column(static_cast<index_t>(j)))
                    h.set(part.targets[static_cast<size_t>(t)], part.sources[j], val);
        } else if (k == n) {
            for (size_t j = 0; j < part.critical_cols.size(); ++j)
                f.set(static_cast<index_t>(j), part.critical_cols[j], 1);
            for (size_t j = 0; j < part.critical_cols.size(); ++j) {
                g.set(part.critical_cols[j], static_cast<index_t>(j), 1);
                for (const auto& [t, val] : correction.column(static_cast<index_t>(j)))
                    g.set(part.targets[static_cast<size_t>(t)],
                          static_cast<index_t>(j), -val);
            }
        } else {
            f = IntMatrix::identity(c->basis_size(k));
            g = IntMatrix::identity(c->basis_size(k));
        }
        rho.f.push_back(std::move(f));
        rho.g.push_back(std::move(g));
        rho.h.push_back(std::move(h));
    }

    int order = 0;
    for (size_t j = 0; j < part.sources.size(); ++j) {
        int src_filt = basis_lo[static_cast<size_t>(part.sources[j])].filt;
        for (const auto& [t, val] : d21inv.column(static_cast<index_t>(j))) {
            int tgt_filt =
                basis_hi[static_cast<size_t>(part.targets[static_cast<size_t>(t)])].filt;
            order = std::max(order, tgt_filt - src_filt);
        }
    }
    rho.homotopy_order = order;
    return rho;
}

index_t MorseStats::total_vectors() const {
    return std::accumulate(vectors.begin(), vectors.end(), index_t(0));
}

index_t MorseStats::total_critical() const {
    return std::accumulate(critical.begin(), critical.end(), index_t(0));
}

namespace {

ComplexPtr flatten_filtration(const FilteredComplex& c) {
    ComplexBuilder b(1);
    for (int n = 0; n <= c.max_dim(); ++n)
        for (const Cell& cell : c.basis(n))
            b.add_cell_with_id(cell.id, cell.dim, 1, cell.label);
    for (int n = 1; n <= c.max_dim(); ++n) {
        const IntMatrix d = c.boundary(n);
        for (index_t col = 0; col < d.cols(); ++col) {
            const Cell& tau = c.basis(n)[static_cast<size_t>(col)];
            for (const auto& [row, v] : d.column(col))
                b.set_incidence(tau.id, c.basis(n - 1)[static_cast<size_t>(row)].id, v);
        }
    }
    return b.build();
}

MorseReduction iterate_reductions(ComplexPtr start, bool filtered, int threads) {
    MorseReduction out;
    ComplexPtr current = start;
    Reduction acc = identity_reduction(current);
    int top = start->max_dim();
    out.stats.vectors.assign(static_cast<size_t>(top + 1), 0);
    for (int n = 1; n <= top; ++n) {
        IntMatrix m = current->boundary(n);
        VectorField v;
        if (filtered) {
            std::vector<int> row_filts, col_filts;
            for (const Cell& cell : current->basis(n - 1))
                row_filts.push_back(cell.filt);
            for (const Cell& cell : current->basis(n))
                col_filts.push_back(cell.filt);
            v = filtered_max_dvf(m, row_filts, col_filts, threads);
        } else {
            v = max_admissible_dvf(m);
        }
        out.stats.vectors[static_cast<size_t>(n)] =
            static_cast<index_t>(v.size());
        out.fields.push_back(v);
        if (v.empty()) continue;
        Reduction step = reduce_one_degree(current, n, v);
        acc = compose_reductions(acc, step);
        current = acc.dst;
    }
    out.stats.critical.assign(static_cast<size_t>(top + 1), 0);
    for (int n = 0; n <= top; ++n)
        out.stats.critical[static_cast<size_t>(n)] = current->basis_size(n);
    out.reduction = std::move(acc);
    return out;
}

}  // namespace

MorseReduction reduce_complex(ComplexPtr c) {
    ComplexPtr start = c->steps() == 1 ? c : flatten_filtration(*c);
    return iterate_reductions(start, /*filtered=*/false, 1);
}

MorseReduction reduce_filtered_complex(ComplexPtr c, int threads) {
    return iterate_reductions(c, /*filtered=*/true, threads);
}

}  // namespace morseward
