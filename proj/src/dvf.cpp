#include "morseward/dvf.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace morseward {

AdmissibilityGraph admissibility_graph(const IntMatrix& m, const VectorField& v) {
    AdmissibilityGraph g;
    g.edges.resize(static_cast<size_t>(m.rows()));
    for (const auto& [a, b] : v.vectors)
        for (const auto& [r, val] : m.column(b))
            if (r != a) g.edges[static_cast<size_t>(a)].push_back(r);
    return g;
}

DiagnosticReport check_vector_field(const IntMatrix& m, const VectorField& v) {
    DiagnosticReport rep;
    std::vector<bool> row_used(static_cast<size_t>(m.rows()), false);
    std::vector<bool> col_used(static_cast<size_t>(m.cols()), false);
    for (const auto& [a, b] : v.vectors) {
        if (a < 0 || a >= m.rows() || b < 0 || b >= m.cols()) {
            rep.violations.push_back("vector (" + std::to_string(a) + ";" +
                                     std::to_string(b) + ") out of bounds");
            continue;
        }
        Int e = m.get(a, b);
        if (e != 1 && e != -1)
            rep.violations.push_back("entry M[" + std::to_string(a) + "," +
                                     std::to_string(b) + "] = " + e.get_str() +
                                     " is not a regular incidence");
        if (row_used[static_cast<size_t>(a)])
            rep.violations.push_back("source " + std::to_string(a) + " used twice");
        if (col_used[static_cast<size_t>(b)])
            rep.violations.push_back("target " + std::to_string(b) + " used twice");
        row_used[static_cast<size_t>(a)] = true;
        col_used[static_cast<size_t>(b)] = true;
    }
    return rep;
}

namespace {

// Iterative DFS cycle search; fills `cycle` with a loop a1 > ... > a1.
bool find_cycle(const std::vector<std::vector<index_t>>& edges,
                std::vector<index_t>& cycle) {
    const size_t n = edges.size();
    // 0 = white, 1 = on stack, 2 = done
    std::vector<char> color(n, 0);
    std::vector<index_t> parent(n, -1);
    for (size_t s = 0; s < n; ++s) {
        if (color[s] != 0) continue;
        std::vector<std::pair<index_t, size_t>> stack;
        stack.emplace_back(static_cast<index_t>(s), 0);
        color[s] = 1;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < edges[static_cast<size_t>(node)].size()) {
                index_t to = edges[static_cast<size_t>(node)][next++];
                if (color[static_cast<size_t>(to)] == 0) {
                    color[static_cast<size_t>(to)] = 1;
                    parent[static_cast<size_t>(to)] = node;
                    stack.emplace_back(to, 0);
                } else if (color[static_cast<size_t>(to)] == 1) {
                    // unwind node -> ... -> to
                    cycle.clear();
                    cycle.push_back(to);
                    for (index_t cur = node; cur != to;
                         cur = parent[static_cast<size_t>(cur)])
                        cycle.push_back(cur);
                    cycle.push_back(to);
                    std::reverse(cycle.begin(), cycle.end());
                    return true;
                }
            } else {
                color[static_cast<size_t>(node)] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

AdmissibilityResult is_admissible(const IntMatrix& m, const VectorField& v) {
    DiagnosticReport check = check_vector_field(m, v);
    if (!check.ok())
        throw std::invalid_argument("is_admissible: malformed vector field: " +
                                    check.summary());
    AdmissibilityGraph g = admissibility_graph(m, v);
    AdmissibilityResult out;
    out.admissible = !find_cycle(g.edges, out.cycle);
    return out;
}

VectorField max_admissible_dvf(const IntMatrix& m) {
    const index_t rows = m.rows(), cols = m.cols();
    // row -> incident columns in increasing index
    std::vector<std::vector<index_t>> row_cols(static_cast<size_t>(rows));
    for (index_t c = 0; c < cols; ++c)
        for (const auto& [r, val] : m.column(c))
            row_cols[static_cast<size_t>(r)].push_back(c);

    std::vector<std::vector<index_t>> edges(static_cast<size_t>(rows));
    std::vector<bool> col_used(static_cast<size_t>(cols), false);
    std::vector<int> mark(static_cast<size_t>(rows), 0);
    int stamp = 0;

    // is `target` reachable from `from` along the current relation graph?
    auto reaches = [&](index_t from, index_t target) {
        ++stamp;
        std::vector<index_t> stack{from};
        mark[static_cast<size_t>(from)] = stamp;
        while (!stack.empty()) {
            index_t cur = stack.back();
            stack.pop_back();
            if (cur == target) return true;
            for (index_t to : edges[static_cast<size_t>(cur)]) {
                if (mark[static_cast<size_t>(to)] == stamp) continue;
                mark[static_cast<size_t>(to)] = stamp;
                stack.push_back(to);
            }
        }
        return false;
    };

    VectorField out;
    for (index_t a = 0; a < rows; ++a) {
        for (index_t b : row_cols[static_cast<size_t>(a)]) {
            if (col_used[static_cast<size_t>(b)]) continue;
            Int e = m.get(a, b);
            if (e != 1 && e != -1) continue;
            bool loops = false;
            for (const auto& [r, val] : m.column(b)) {
                if (r == a) continue;
                if (reaches(r, a)) {
                    loops = true;
                    break;
                }
            }
            if (loops) continue;
            // accept (a;b); record relations toward every face of b,
            // including rows that are not sources yet
            for (const auto& [r, val] : m.column(b))
                if (r != a) edges[static_cast<size_t>(a)].push_back(r);
            col_used[static_cast<size_t>(b)] = true;
            out.vectors.emplace_back(a, b);
            break;  // row a is a source now
        }
    }
    return out;
}

VectorField filtered_max_dvf(const IntMatrix& m, const std::vector<int>& row_filts,
                             const std::vector<int>& col_filts, int threads) {
    if (static_cast<index_t>(row_filts.size()) != m.rows() ||
        static_cast<index_t>(col_filts.size()) != m.cols())
        throw std::invalid_argument("filtered_max_dvf: filtration size mismatch");
    for (index_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            if (row_filts[static_cast<size_t>(r)] > col_filts[static_cast<size_t>(c)])
                throw std::invalid_argument(
                    "filtered_max_dvf: matrix is not filtration-monotone");

    std::map<int, std::pair<std::vector<index_t>, std::vector<index_t>>> blocks;
    for (index_t r = 0; r < m.rows(); ++r)
        blocks[row_filts[static_cast<size_t>(r)]].first.push_back(r);
    for (index_t c = 0; c < m.cols(); ++c)
        blocks[col_filts[static_cast<size_t>(c)]].second.push_back(c);

    std::vector<const std::pair<std::vector<index_t>, std::vector<index_t>>*> work;
    for (const auto& [filt, block] : blocks) work.push_back(&block);
    std::vector<VectorField> results(work.size());

    auto run_block = [&](size_t i) {
        const auto& [rows_in, cols_in] = *work[i];
        if (rows_in.empty() || cols_in.empty()) return;
        IntMatrix sub = m.submatrix(rows_in, cols_in);
        VectorField local = max_admissible_dvf(sub);
        for (const auto& [a, b] : local.vectors)
            results[i].vectors.emplace_back(rows_in[static_cast<size_t>(a)],
                                            cols_in[static_cast<size_t>(b)]);
    };

    if (threads <= 1 || work.size() <= 1) {
        for (size_t i = 0; i < work.size(); ++i) run_block(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        int nthreads = std::min<int>(threads, static_cast<int>(work.size()));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < work.size();
                     i = next.fetch_add(1))
                    run_block(i);
            });
        for (auto& t : pool) t.join();
    }

    VectorField out;
    for (const auto& r : results)
        out.vectors.insert(out.vectors.end(), r.vectors.begin(), r.vectors.end());
    return out;
}

std::string dvf_to_string(const VectorField& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.vectors.size(); ++i) {
        if (i) os << " ";
        os << "(" << v.vectors[i].first << ";" << v.vectors[i].second << ")";
    }
    return os.str();
}

}  // namespace morseward
