#include "morseward/chain.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace morseward {

void ChainVector::add(cell_id id, const Int& v) {
    if (v == 0) return;
    auto it = coeffs.find(id);
    if (it == coeffs.end()) {
        coeffs.emplace(id, v);
    } else {
        it->second += v;
        if (it->second == 0) coeffs.erase(it);
    }
}

ChainVector& ChainVector::operator+=(const ChainVector& rhs) {
    for (const auto& [id, v] : rhs.coeffs) add(id, v);
    return *this;
}

ChainVector ChainVector::operator*(const Int& k) const {
    ChainVector out;
    out.degree = degree;
    if (k == 0) return out;
    for (const auto& [id, v] : coeffs) out.coeffs.emplace(id, v * k);
    return out;
}

static const std::vector<Cell> kEmptyBasis;

const std::vector<Cell>& FilteredComplex::basis(int dim) const {
    if (dim < 0 || dim > max_dim()) return kEmptyBasis;
    return bases_[static_cast<size_t>(dim)];
}

index_t FilteredComplex::basis_size(int dim) const {
    return static_cast<index_t>(basis(dim).size());
}

index_t FilteredComplex::total_cells() const {
    index_t n = 0;
    for (const auto& b : bases_) n += static_cast<index_t>(b.size());
    return n;
}

IntMatrix FilteredComplex::boundary(int dim) const {
    if (dim >= 1 && dim <= max_dim()) return boundaries_[static_cast<size_t>(dim)];
    return IntMatrix(basis_size(dim - 1), basis_size(dim));
}

const Cell& FilteredComplex::cell(cell_id id) const {
    auto it = positions_.find(id);
    if (it == positions_.end())
        throw std::out_of_range("FilteredComplex::cell: unknown id");
    return bases_[static_cast<size_t>(it->second.first)]
                 [static_cast<size_t>(it->second.second)];
}

index_t FilteredComplex::position(cell_id id) const {
    auto it = positions_.find(id);
    if (it == positions_.end())
        throw std::out_of_range("FilteredComplex::position: unknown id");
    return it->second.second;
}

ChainVector FilteredComplex::chain_from_coords(int degree,
                                               const std::vector<Int>& coords) const {
    if (static_cast<index_t>(coords.size()) != basis_size(degree))
        throw std::invalid_argument("chain_from_coords: length mismatch");
    ChainVector out;
    out.degree = degree;
    const auto& b = basis(degree);
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) out.coeffs.emplace(b[i].id, coords[i]);
    return out;
}

std::vector<Int> FilteredComplex::coords_from_chain(const ChainVector& chain) const {
    std::vector<Int> coords(static_cast<size_t>(basis_size(chain.degree)), Int(0));
    for (const auto& [id, v] : chain.coeffs) {
        const Cell& c = cell(id);
        if (c.dim != chain.degree)
            throw std::invalid_argument("coords_from_chain: degree mismatch");
        coords[static_cast<size_t>(position(id))] = v;
    }
    return coords;
}

cell_id ComplexBuilder::add_cell(int dim, int filt, std::string label) {
    cell_id id = next_id_++;
    add_cell_with_id(id, dim, filt, std::move(label));
    return id;
}

void ComplexBuilder::add_cell_with_id(cell_id id, int dim, int filt,
                                      std::string label) {
    if (index_.count(id)) throw std::invalid_argument("ComplexBuilder: duplicate id");
    if (dim < 0) throw std::invalid_argument("ComplexBuilder: negative dimension");
    next_id_ = std::max(next_id_, id + 1);
    index_.emplace(id, cells_.size());
    cells_.push_back(Cell{id, dim, filt, std::move(label)});
}

void ComplexBuilder::set_incidence(cell_id cell, cell_id face, Int coeff) {
    incidences_.emplace_back(cell, face, std::move(coeff));
}

int ComplexBuilder::filt_of(cell_id id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("ComplexBuilder: unknown id");
    return cells_[it->second].filt;
}

ComplexPtr ComplexBuilder::build() {
    auto out = std::make_shared<FilteredComplex>();
    out->steps_ = steps_;
    int max_dim = -1;
    for (const auto& c : cells_) max_dim = std::max(max_dim, c.dim);
    out->bases_.resize(static_cast<size_t>(max_dim + 1));
    for (const auto& c : cells_) {
        auto& b = out->bases_[static_cast<size_t>(c.dim)];
        out->positions_.emplace(c.id,
                                std::make_pair(c.dim, static_cast<index_t>(b.size())));
        b.push_back(c);
    }
    out->boundaries_.resize(static_cast<size_t>(max_dim + 1));
    for (int n = 1; n <= max_dim; ++n)
        out->boundaries_[static_cast<size_t>(n)] =
            IntMatrix(out->basis_size(n - 1), out->basis_size(n));
    for (const auto& [cell, face, coeff] : incidences_) {
        auto ci = index_.find(cell);
        auto fi = index_.find(face);
        if (ci == index_.end() || fi == index_.end())
            throw std::invalid_argument("ComplexBuilder: incidence on unknown cell");
        const Cell& cc = cells_[ci->second];
        const Cell& fc = cells_[fi->second];
        if (fc.dim != cc.dim - 1)
            throw std::invalid_argument("ComplexBuilder: incidence must drop degree by 1");
        out->boundaries_[static_cast<size_t>(cc.dim)].add_to(
            out->positions_[face].second, out->positions_[cell].second, coeff);
    }
    return out;
}

std::string DiagnosticReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    os << violations.size() << " violation(s):";
    for (const auto& v : violations) os << "\n  - " << v;
    return os.str();
}

DiagnosticReport validate_complex(const FilteredComplex& c) {
    DiagnosticReport rep;
    for (int n = 0; n <= c.max_dim(); ++n) {
        for (index_t i = 0; i < c.basis_size(n); ++i) {
            const Cell& cell = c.basis(n)[static_cast<size_t>(i)];
            if (cell.dim != n)
                rep.violations.push_back("cell " + std::to_string(cell.id) +
                                         " stored under wrong degree");
            if (cell.filt < 1 || cell.filt > c.steps())
                rep.violations.push_back("cell " + std::to_string(cell.id) +
                                         " filtration index " +
                                         std::to_string(cell.filt) +
                                         " outside [1," + std::to_string(c.steps()) + "]");
        }
    }
    for (int n = 1; n <= c.max_dim(); ++n) {
        const IntMatrix d = c.boundary(n);
        for (index_t col = 0; col < d.cols(); ++col) {
            const Cell& tau = c.basis(n)[static_cast<size_t>(col)];
            for (const auto& [row, v] : d.column(col)) {
                const Cell& sigma = c.basis(n - 1)[static_cast<size_t>(row)];
                if (sigma.filt > tau.filt)
                    rep.violations.push_back(
                        "boundary d_" + std::to_string(n) + " entry (" +
                        sigma.label + "," + tau.label +
                        ") breaks filtration monotonicity");
            }
        }
    }
    for (int n = 2; n <= c.max_dim(); ++n) {
        IntMatrix dd = c.boundary(n - 1) * c.boundary(n);
        if (!dd.is_zero()) {
            for (index_t col = 0; col < dd.cols(); ++col)
                if (!dd.column(col).empty()) {
                    rep.violations.push_back(
                        "d_" + std::to_string(n - 1) + " ∘ d_" + std::to_string(n) +
                        " != 0 on column of cell " +
                        c.basis(n)[static_cast<size_t>(col)].label);
                }
        }
    }
    return rep;
}

ChainVector apply_boundary(const FilteredComplex& c, const ChainVector& x) {
    ChainVector out;
    out.degree = x.degree - 1;
    if (x.degree <= 0) return out;
    const IntMatrix d = c.boundary(x.degree);
    for (const auto& [id, v] : x.coeffs) {
        index_t col = c.position(id);
        for (const auto& [row, coeff] : d.column(col))
            out.add(c.basis(x.degree - 1)[static_cast<size_t>(row)].id, coeff * v);
    }
    return out;
}

ChainVector apply_matrix(const IntMatrix& m, const FilteredComplex& src,
                         const FilteredComplex& dst, int src_degree,
                         int dst_degree, const ChainVector& x) {
    if (x.degree != src_degree)
        throw std::invalid_argument("apply_matrix: degree mismatch");
    ChainVector out;
    out.degree = dst_degree;
    for (const auto& [id, v] : x.coeffs) {
        index_t col = src.position(id);
        for (const auto& [row, coeff] : m.column(col))
            out.add(dst.basis(dst_degree)[static_cast<size_t>(row)].id, coeff * v);
    }
    return out;
}

IntMatrix Reduction::f_at(int n) const {
    if (n >= 0 && n < static_cast<int>(f.size())) return f[static_cast<size_t>(n)];
    return IntMatrix(dst->basis_size(n), src->basis_size(n));
}

IntMatrix Reduction::g_at(int n) const {
    if (n >= 0 && n < static_cast<int>(g.size())) return g[static_cast<size_t>(n)];
    return IntMatrix(src->basis_size(n), dst->basis_size(n));
}

IntMatrix Reduction::h_at(int n) const {
    if (n >= 0 && n < static_cast<int>(h.size())) return h[static_cast<size_t>(n)];
    return IntMatrix(src->basis_size(n + 1), src->basis_size(n));
}

ChainVector Reduction::map_f(const ChainVector& x) const {
    return apply_matrix(f_at(x.degree), *src, *dst, x.degree, x.degree, x);
}

ChainVector Reduction::map_g(const ChainVector& x) const {
    return apply_matrix(g_at(x.degree), *dst, *src, x.degree, x.degree, x);
}

Reduction identity_reduction(ComplexPtr c) {
    Reduction rho;
    rho.src = c;
    rho.dst = c;
    int top = c->max_dim();
    for (int n = 0; n <= top; ++n) {
        rho.f.push_back(IntMatrix::identity(c->basis_size(n)));
        rho.g.push_back(IntMatrix::identity(c->basis_size(n)));
        rho.h.push_back(IntMatrix(c->basis_size(n + 1), c->basis_size(n)));
    }
    rho.homotopy_order = 0;
    return rho;
}

namespace {

void check_equal(ReductionReport& rep, const IntMatrix& got,
                 const IntMatrix& want, const std::string& what, int n) {
    if (got != want)
        rep.violations.push_back(what + " fails in degree " + std::to_string(n));
}

bool matrix_filtered(const IntMatrix& m, const FilteredComplex& row_cx,
                     const FilteredComplex& col_cx, int row_deg, int col_deg,
                     int shift) {
    for (index_t c = 0; c < m.cols(); ++c) {
        int cf = col_cx.basis(col_deg)[static_cast<size_t>(c)].filt;
        for (const auto& [r, v] : m.column(c)) {
            int rf = row_cx.basis(row_deg)[static_cast<size_t>(r)].filt;
            if (rf > cf + shift) return false;
        }
    }
    return true;
}

}  // namespace

ReductionReport validate_reduction(const Reduction& rho) {
    ReductionReport rep;
    const FilteredComplex& src = *rho.src;
    const FilteredComplex& dst = *rho.dst;
    int top = std::max(src.max_dim(), dst.max_dim());

    for (int n = 0; n <= top + 1; ++n) {
        IntMatrix f = rho.f_at(n), g = rho.g_at(n), h = rho.h_at(n);
        IntMatrix ds = src.boundary(n), dd = dst.boundary(n);

        check_equal(rep, f * g, IntMatrix::identity(dst.basis_size(n)),
                    "relation (1) f g = id", n);
        IntMatrix lhs2 = g * f + src.boundary(n + 1) * h + rho.h_at(n - 1) * ds;
        check_equal(rep, lhs2, IntMatrix::identity(src.basis_size(n)),
                    "relation (2) g f + d h + h d = id", n);
        check_equal(rep, rho.f_at(n + 1) * h,
                    IntMatrix(dst.basis_size(n + 1), src.basis_size(n)),
                    "relation (3) f h = 0", n);
        check_equal(rep, h * g, IntMatrix(src.basis_size(n + 1), dst.basis_size(n)),
                    "relation (4) h g = 0", n);
        check_equal(rep, rho.h_at(n + 1) * h,
                    IntMatrix(src.basis_size(n + 2), src.basis_size(n)),
                    "relation (5) h h = 0", n);
        if (n >= 1) {
            check_equal(rep, rho.f_at(n - 1) * ds, dd * f, "f chain-map", n);
            check_equal(rep, ds * g, rho.g_at(n - 1) * dd, "g chain-map", n);
        }
        if (!matrix_filtered(f, dst, src, n, n, 0)) rep.f_filtered = false;
        if (!matrix_filtered(g, src, dst, n, n, 0)) rep.g_filtered = false;
    }

    // measured homotopy order: max filt(target) - filt(source) over h entries
    std::optional<int> order;
    for (int n = 0; n <= top; ++n) {
        IntMatrix h = rho.h_at(n);
        for (index_t c = 0; c < h.cols(); ++c) {
            int cf = src.basis(n)[static_cast<size_t>(c)].filt;
            for (const auto& [r, v] : h.column(c)) {
                int rf = src.basis(n + 1)[static_cast<size_t>(r)].filt;
                int shift = rf - cf;
                if (!order || shift > *order) order = shift;
            }
        }
    }
    rep.measured_order = order;
    if (order && *order > rho.homotopy_order)
        rep.violations.push_back(
            "measured homotopy order " + std::to_string(*order) +
            " exceeds declared " + std::to_string(rho.homotopy_order));
    return rep;
}

Reduction compose_reductions(const Reduction& rho1, const Reduction& rho2) {
    if (rho1.dst != rho2.src)
        throw std::invalid_argument("compose_reductions: middle complex mismatch");
    Reduction out;
    out.src = rho1.src;
    out.dst = rho2.dst;
    int top = std::max(out.src->max_dim(), rho1.dst->max_dim());
    for (int n = 0; n <= top; ++n) {
        out.f.push_back(rho2.f_at(n) * rho1.f_at(n));
        out.g.push_back(rho1.g_at(n) * rho2.g_at(n));
        out.h.push_back(rho1.h_at(n) +
                        rho1.g_at(n + 1) * rho2.h_at(n) * rho1.f_at(n));
    }
    out.homotopy_order = std::max(rho1.homotopy_order, rho2.homotopy_order);
    return out;
}

Equivalence as_equivalence(const Reduction& rho) {
    return Equivalence{rho.src, identity_reduction(rho.src), rho};
}

ComplexPtr subcomplex_at(const FilteredComplex& c, int i) {
    if (i < 0 || i > c.steps())
        throw std::out_of_range("subcomplex_at: index outside [0, steps]");
    ComplexBuilder b(c.steps());
    for (int n = 0; n <= c.max_dim(); ++n)
        for (const Cell& cell : c.basis(n))
            if (cell.filt <= i) b.add_cell_with_id(cell.id, cell.dim, cell.filt, cell.label);
    for (int n = 1; n <= c.max_dim(); ++n) {
        const IntMatrix d = c.boundary(n);
        for (index_t col = 0; col < d.cols(); ++col) {
            const Cell& tau = c.basis(n)[static_cast<size_t>(col)];
            if (tau.filt > i) continue;
            for (const auto& [row, v] : d.column(col))
                b.set_incidence(tau.id, c.basis(n - 1)[static_cast<size_t>(row)].id, v);
        }
    }
    return b.build();
}

SortedComplex sort_by_filtration(const FilteredComplex& c) {
    SortedComplex out;
    ComplexBuilder b(c.steps());
    out.old_to_new.resize(static_cast<size_t>(c.max_dim() + 1));
    for (int n = 0; n <= c.max_dim(); ++n) {
        const auto& basis = c.basis(n);
        std::vector<index_t> order(basis.size());
        std::iota(order.begin(), order.end(), index_t(0));
        std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t b2) {
            return basis[static_cast<size_t>(a)].filt <
                   basis[static_cast<size_t>(b2)].filt;
        });
        auto& perm = out.old_to_new[static_cast<size_t>(n)];
        perm.assign(basis.size(), 0);
        for (size_t pos = 0; pos < order.size(); ++pos) {
            const Cell& cell = basis[static_cast<size_t>(order[pos])];
            b.add_cell_with_id(cell.id, cell.dim, cell.filt, cell.label);
            perm[static_cast<size_t>(order[pos])] = static_cast<index_t>(pos);
        }
    }
    for (int n = 1; n <= c.max_dim(); ++n) {
        const IntMatrix d = c.boundary(n);
        for (index_t col = 0; col < d.cols(); ++col) {
            const Cell& tau = c.basis(n)[static_cast<size_t>(col)];
            for (const auto& [row, v] : d.column(col))
                b.set_incidence(tau.id, c.basis(n - 1)[static_cast<size_t>(row)].id, v);
        }
    }
    out.complex = b.build();
    return out;
}

void write_complex(std::ostream& os, const FilteredComplex& c) {
    os << "complex " << c.max_dim() << " " << c.steps() << "\n";
    for (int n = 0; n <= c.max_dim(); ++n)
        for (const Cell& cell : c.basis(n))
            os << "cell " << cell.id << " " << cell.dim << " " << cell.filt << " "
               << (cell.label.empty() ? "-" : cell.label) << "\n";
    for (int n = 1; n <= c.max_dim(); ++n) {
        const IntMatrix d = c.boundary(n);
        for (index_t col = 0; col < d.cols(); ++col) {
            const Cell& tau = c.basis(n)[static_cast<size_t>(col)];
            for (const auto& [row, v] : d.column(col))
                os << "bnd " << tau.id << " "
                   << c.basis(n - 1)[static_cast<size_t>(row)].id << " "
                   << v.get_str() << "\n";
        }
    }
}

ComplexPtr read_complex(std::istream& is) {
    std::string tag;
    int max_dim = 0, steps = 1;
    if (!(is >> tag >> max_dim >> steps) || tag != "complex")
        throw std::runtime_error("read_complex: bad header");
    ComplexBuilder b(steps);
    while (is >> tag) {
        if (tag == "cell") {
            cell_id id;
            int dim, filt;
            std::string label;
            if (!(is >> id >> dim >> filt >> label))
                throw std::runtime_error("read_complex: bad cell line");
            b.add_cell_with_id(id, dim, filt, label == "-" ? "" : label);
        } else if (tag == "bnd") {
            cell_id cell, face;
            std::string coeff;
            if (!(is >> cell >> face >> coeff))
                throw std::runtime_error("read_complex: bad boundary line");
            b.set_incidence(cell, face, Int(coeff));
        } else {
            throw std::runtime_error("read_complex: unknown tag '" + tag + "'");
        }
    }
    return b.build();
}

std::string chain_to_string(const FilteredComplex& c, const ChainVector& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, v] : x.coeffs) {
        if (!first) os << " ";
        if (v > 0 && !first) os << "+";
        if (v == -1)
            os << "-";
        else if (v != 1)
            os << v.get_str() << "*";
        os << c.cell(id).label;
        first = false;
    }
    return os.str();
}

}  // namespace morseward
