#include "scarlab/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "scarlab/errors.hpp"
#include "scarlab/simd/kernels.hpp"

namespace scarlab {

void SparseReal::apply(const cplx* x, cplx* y) const {
    std::fill(y, y + n, cplx{0.0, 0.0});
    simd::active_ops().csr_apply_rc(rowptr.data(), cols.data(), vals.data(), 0, n, x, y);
}

void SparseReal::apply(const CVec& x, CVec& y) const {
    if (x.size() != n) throw ValidationError("operator/state dimension mismatch");
    y.resize(n);
    apply(x.data(), y.data());
}

CVec SparseReal::operator*(const CVec& x) const {
    CVec y;
    apply(x, y);
    return y;
}

void SparseReal::apply(const RVec& x, RVec& y) const {
    if (x.size() != n) throw ValidationError("operator/state dimension mismatch");
    y.setZero(n);
    for (int64_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) acc += vals[k] * x[cols[k]];
        y[r] = acc;
    }
}

RVec SparseReal::operator*(const RVec& x) const {
    RVec y;
    apply(x, y);
    return y;
}

Eigen::MatrixXd SparseReal::to_dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int64_t r = 0; r < n; ++r)
        for (int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) m(r, cols[k]) += vals[k];
    return m;
}

void SparseCplx::apply(const cplx* x, cplx* y) const {
    std::fill(y, y + n, cplx{0.0, 0.0});
    simd::active_ops().csr_apply_cc(rowptr.data(), cols.data(), vals.data(), 0, n, x, y);
}

void SparseCplx::apply(const CVec& x, CVec& y) const {
    if (x.size() != n) throw ValidationError("operator/state dimension mismatch");
    y.resize(n);
    apply(x.data(), y.data());
}

CVec SparseCplx::operator*(const CVec& x) const {
    CVec y;
    apply(x, y);
    return y;
}

Eigen::MatrixXcd SparseCplx::to_dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int64_t r = 0; r < n; ++r)
        for (int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) m(r, cols[k]) += vals[k];
    return m;
}

namespace {

struct Triplet {
    int64_t row;
    int32_t col;
    double val;
};

SparseReal from_rows(int64_t n, std::vector<std::vector<std::pair<int32_t, double>>>& rows) {
    SparseReal m;
    m.n = n;
    m.rowptr.assign(n + 1, 0);
    int64_t nnz = 0;
    for (int64_t r = 0; r < n; ++r) {
        auto& row = rows[r];
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // merge duplicate columns
        size_t w = 0;
        for (size_t i = 0; i < row.size(); ++i) {
            if (w > 0 && row[w - 1].first == row[i].first)
                row[w - 1].second += row[i].second;
            else
                row[w++] = row[i];
        }
        row.resize(w);
        nnz += static_cast<int64_t>(w);
        m.rowptr[r + 1] = nnz;
    }
    m.cols.reserve(nnz);
    m.vals.reserve(nnz);
    for (auto& row : rows)
        for (auto& [c, v] : row) {
            m.cols.push_back(c);
            m.vals.push_back(v);
        }
    return m;
}

}  // namespace

SparseReal transpose(const SparseReal& a) {
    SparseReal t;
    t.n = a.n;
    t.rowptr.assign(a.n + 1, 0);
    for (int32_t c : a.cols) t.rowptr[c + 1]++;
    for (int64_t r = 0; r < a.n; ++r) t.rowptr[r + 1] += t.rowptr[r];
    t.cols.resize(a.nnz());
    t.vals.resize(a.nnz());
    std::vector<int64_t> next(t.rowptr.begin(), t.rowptr.end() - 1);
    for (int64_t r = 0; r < a.n; ++r) {
        for (int64_t k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k) {
            const int64_t pos = next[a.cols[k]]++;
            t.cols[pos] = static_cast<int32_t>(r);
            t.vals[pos] = a.vals[k];
        }
    }
    return t;
}

SparseReal add(const SparseReal& a, const SparseReal& b, double ca, double cb) {
    if (a.n != b.n) throw ValidationError("operator dimension mismatch in add");
    SparseReal m;
    m.n = a.n;
    m.rowptr.assign(a.n + 1, 0);
    for (int64_t r = 0; r < a.n; ++r) {
        int64_t ia = a.rowptr[r], ib = b.rowptr[r];
        std::vector<std::pair<int32_t, double>> row;
        while (ia < a.rowptr[r + 1] || ib < b.rowptr[r + 1]) {
            int32_t canext = ia < a.rowptr[r + 1] ? a.cols[ia] : INT32_MAX;
            int32_t cbnext = ib < b.rowptr[r + 1] ? b.cols[ib] : INT32_MAX;
            if (canext < cbnext)
                row.emplace_back(canext, ca * a.vals[ia++]);
            else if (cbnext < canext)
                row.emplace_back(cbnext, cb * b.vals[ib++]);
            else
                row.emplace_back(canext, ca * a.vals[ia++] + cb * b.vals[ib++]);
        }
        for (auto& [c, v] : row) {
            m.cols.push_back(c);
            m.vals.push_back(v);
        }
        m.rowptr[r + 1] = static_cast<int64_t>(m.cols.size());
    }
    return m;
}

SparseReal scale(const SparseReal& a, double c) {
    SparseReal m = a;
    for (double& v : m.vals) v *= c;
    return m;
}

SparseReal matmul(const SparseReal& a, const SparseReal& b, double drop_tol) {
    if (a.n != b.n) throw ValidationError("operator dimension mismatch in matmul");
    SparseReal m;
    m.n = a.n;
    m.rowptr.assign(a.n + 1, 0);
    std::vector<double> acc(a.n, 0.0);
    std::vector<int32_t> touched;
    for (int64_t r = 0; r < a.n; ++r) {
        touched.clear();
        for (int64_t k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k) {
            const double av = a.vals[k];
            const int32_t mid = a.cols[k];
            for (int64_t j = b.rowptr[mid]; j < b.rowptr[mid + 1]; ++j) {
                const int32_t c = b.cols[j];
                if (acc[c] == 0.0) touched.push_back(c);
                acc[c] += av * b.vals[j];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int32_t c : touched) {
            if (std::abs(acc[c]) > drop_tol) {
                m.cols.push_back(c);
                m.vals.push_back(acc[c]);
            }
            acc[c] = 0.0;
        }
        m.rowptr[r + 1] = static_cast<int64_t>(m.cols.size());
    }
    return m;
}

double max_abs_diff(const SparseReal& a, const SparseReal& b) {
    const SparseReal d = add(a, b, 1.0, -1.0);
    double mx = 0.0;
    for (double v : d.vals) mx = std::max(mx, std::abs(v));
    return mx;
}

bool is_symmetric(const SparseReal& a, double tol) {
    return max_abs_diff(a, transpose(a)) <= tol;
}

int64_t SparseOperator::dim() const {
    return std::visit([](const auto& m) { return m.n; }, op);
}

void SparseOperator::apply(const CVec& x, CVec& y) const {
    std::visit([&](const auto& m) { m.apply(x, y); }, op);
}

cplx SparseOperator::expectation(const CVec& psi) const {
    CVec y;
    apply(psi, y);
    return simd::active_ops().dotc(psi.data(), y.data(), psi.size());
}

CVec unit_state(const ConstrainedBasis& basis, uint64_t config) {
    const int64_t idx = basis.index_of(config);
    if (idx < 0) throw ValidationError("configuration violates the blockade constraint");
    CVec v = CVec::Zero(basis.dim());
    v[idx] = 1.0;
    return v;
}

std::vector<double> uniform_freq(const SiteGraph& graph, double value) {
    return std::vector<double>(graph.n_sites, value);
}

std::vector<double> class_freq(const SiteGraph& graph, double corner, double edge,
                               double bulk) {
    std::vector<double> f(graph.n_sites, bulk);
    for (int s = 0; s < graph.n_sites; ++s) {
        if (graph.site_class[s] == SiteClass::corner) f[s] = corner;
        if (graph.site_class[s] == SiteClass::edge) f[s] = edge;
    }
    return f;
}

std::vector<double> sublattice_freq(const SiteGraph& graph, double freq_a, double freq_b) {
    std::vector<double> f(graph.n_sites);
    for (int s = 0; s < graph.n_sites; ++s)
        f[s] = graph.sublattice[s] == Sublattice::A ? freq_a : freq_b;
    return f;
}

namespace {

// Precomputed masks for the diagonal deformation dressing of one site's flip.
struct SiteDressing {
    std::vector<uint64_t> singles_a;  // weight a
    std::vector<uint64_t> singles_2a; // weight 2a (square diagonal groups)
    std::vector<uint64_t> groups_b;   // weight b, all-ground products
};

std::vector<SiteDressing> precompute_dressing(const SiteGraph& graph) {
    if (graph.kind == LatticeKind::decorated_honeycomb)
        throw ValidationError("deformation is not supported on the decorated lattice");
    std::vector<SiteDressing> all(graph.n_sites);
    for (int s = 0; s < graph.n_sites; ++s) {
        const DeformationTargets t = neighbor_rotations(graph, s);
        SiteDressing& d = all[s];
        auto mask_of = [](const ProjectorGroup& g) {
            uint64_t m = 0;
            for (int site : g.sites) m |= uint64_t{1} << site;
            return m;
        };
        // Groups broken by an open boundary are dropped entirely.
        for (const auto& g : t.axial)
            if (g.complete) d.singles_a.push_back(mask_of(g));
        for (const auto& g : t.diagonal)
            if (g.complete) d.singles_2a.push_back(mask_of(g));
        for (const auto& g : t.triples)
            if (g.complete) d.groups_b.push_back(mask_of(g));
    }
    return all;
}

double dressing_value(const SiteDressing& d, uint64_t config, const Deformation& def) {
    double v = 0.0;
    for (uint64_t m : d.singles_a)
        if ((config & m) == 0) v += def.a;
    for (uint64_t m : d.singles_2a)
        if ((config & m) == 0) v += 2.0 * def.a;
    for (uint64_t m : d.groups_b)
        if ((config & m) == 0) v += def.b;
    return v;
}

enum class FlipFilter { all, plus };

// Row-wise assembly: for row configuration d, every admissible single flip r
// contributes an entry to the column of the flipped configuration. With
// FlipFilter::plus only flips moving away from the A-vacuum are kept
// (lowering an A site or raising a B site, seen from the column state).
SparseReal assemble(const ConstrainedBasis& basis, const ModelSpec& spec,
                    FlipFilter filter, bool bare_deformation) {
    const SiteGraph& g = basis.graph;
    if (static_cast<int>(spec.freq.size()) != g.n_sites)
        throw ValidationError("frequency array size does not match lattice");
    std::vector<SiteDressing> dressing;
    if (spec.deform) dressing = precompute_dressing(g);
    if (bare_deformation && !spec.deform)
        throw ValidationError("deformation coefficients missing");

    const int64_t dim = basis.dim();
    std::vector<std::vector<std::pair<int32_t, double>>> rows(dim);
    for (int64_t i = 0; i < dim; ++i) {
        const uint64_t d = basis.configs[i];
        auto& row = rows[i];
        for (int r = 0; r < g.n_sites; ++r) {
            const uint64_t bit = uint64_t{1} << r;
            uint64_t other;
            if (d & bit) {
                // row state excited at r: column state is the lowered one;
                // from the column's view this flip raises r.
                if (filter == FlipFilter::plus && g.sublattice[r] != Sublattice::B)
                    continue;
                other = d & ~bit;
            } else {
                if ((d & g.neighbor_mask[r]) != 0) continue;
                if (filter == FlipFilter::plus && g.sublattice[r] != Sublattice::A)
                    continue;
                other = d | bit;
            }
            const int64_t j = basis.index_of(other);
            if (j < 0) throw NumericalError("flip left the constrained space");
            double val;
            if (bare_deformation) {
                val = dressing_value(dressing[r], d, *spec.deform);
            } else {
                val = spec.freq[r];
                if (spec.deform) val *= 1.0 + dressing_value(dressing[r], d, *spec.deform);
            }
            if (val != 0.0) row.emplace_back(static_cast<int32_t>(j), val);
        }
    }
    return from_rows(dim, rows);
}

}  // namespace

SparseReal build_model(const ConstrainedBasis& basis, const ModelSpec& spec) {
    return assemble(basis, spec, FlipFilter::all, false);
}

SparseReal build_pxp(const ConstrainedBasis& basis, const std::vector<double>& freq) {
    return assemble(basis, ModelSpec{freq, std::nullopt}, FlipFilter::all, false);
}

SparseReal build_deformation(const ConstrainedBasis& basis, const Deformation& d) {
    ModelSpec spec{uniform_freq(basis.graph), d};
    return assemble(basis, spec, FlipFilter::all, true);
}

SplitPM split_pm(const ConstrainedBasis& basis, const ModelSpec& spec) {
    SplitPM s;
    s.plus = assemble(basis, spec, FlipFilter::plus, false);
    s.minus = transpose(s.plus);
    return s;
}

SparseReal build_domain_wall(const ConstrainedBasis& basis) {
    const SiteGraph& g = basis.graph;
    const int64_t dim = basis.dim();
    SparseReal m;
    m.n = dim;
    m.rowptr.resize(dim + 1);
    m.cols.resize(dim);
    m.vals.resize(dim);
    for (int64_t i = 0; i < dim; ++i) {
        const uint64_t c = basis.configs[i];
        double sum = 0.0;
        for (int r = 0; r < g.n_sites; ++r) {
            if (c & (uint64_t{1} << r)) continue;
            const int deg = static_cast<int>(g.adjacency[r].size());
            sum += deg - std::popcount(c & g.neighbor_mask[r]);
        }
        m.rowptr[i] = i;
        m.cols[i] = static_cast<int32_t>(i);
        m.vals[i] = sum / g.n_sites;
    }
    m.rowptr[dim] = dim;
    return m;
}

SparseOperator build_local_observable(const ConstrainedBasis& basis, int site,
                                      LocalKind kind) {
    const SiteGraph& g = basis.graph;
    if (site < 0 || site >= g.n_sites) throw ValidationError("site index out of range");
    const int64_t dim = basis.dim();
    const uint64_t bit = uint64_t{1} << site;

    if (kind == LocalKind::density) {
        SparseReal m;
        m.n = dim;
        m.rowptr.assign(dim + 1, 0);
        for (int64_t i = 0; i < dim; ++i) {
            if (basis.configs[i] & bit) {
                m.cols.push_back(static_cast<int32_t>(i));
                m.vals.push_back(1.0);
            }
            m.rowptr[i + 1] = static_cast<int64_t>(m.cols.size());
        }
        return SparseOperator{std::move(m)};
    }

    // Dressed sigma-y: the raising part carries -i on the excited row.
    SparseCplx m;
    m.n = dim;
    m.rowptr.assign(dim + 1, 0);
    for (int64_t i = 0; i < dim; ++i) {
        const uint64_t d = basis.configs[i];
        if (d & bit) {
            const int64_t j = basis.index_of(d & ~bit);
            m.cols.push_back(static_cast<int32_t>(j));
            m.vals.push_back(cplx{0.0, -1.0});
        } else if ((d & g.neighbor_mask[site]) == 0) {
            const int64_t j = basis.index_of(d | bit);
            m.cols.push_back(static_cast<int32_t>(j));
            m.vals.push_back(cplx{0.0, 1.0});
        }
        m.rowptr[i + 1] = static_cast<int64_t>(m.cols.size());
    }
    return SparseOperator{std::move(m)};
}

SparseOperator build_sublattice_sigma_y(const ConstrainedBasis& basis, Sublattice s) {
    const SiteGraph& g = basis.graph;
    const int n_sub = g.n_sublattice(s);
    if (n_sub == 0) throw ValidationError("empty sublattice");
    const double w = 1.0 / n_sub;
    const int64_t dim = basis.dim();

    SparseCplx m;
    m.n = dim;
    m.rowptr.assign(dim + 1, 0);
    std::vector<std::pair<int32_t, cplx>> row;
    for (int64_t i = 0; i < dim; ++i) {
        const uint64_t d = basis.configs[i];
        row.clear();
        for (int site = 0; site < g.n_sites; ++site) {
            if (g.sublattice[site] != s) continue;
            const uint64_t bit = uint64_t{1} << site;
            if (d & bit) {
                row.emplace_back(static_cast<int32_t>(basis.index_of(d & ~bit)),
                                 cplx{0.0, -w});
            } else if ((d & g.neighbor_mask[site]) == 0) {
                row.emplace_back(static_cast<int32_t>(basis.index_of(d | bit)),
                                 cplx{0.0, w});
            }
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [c, v] : row) {
            m.cols.push_back(c);
            m.vals.push_back(v);
        }
        m.rowptr[i + 1] = static_cast<int64_t>(m.cols.size());
    }
    return SparseOperator{std::move(m)};
}

CasimirOps build_casimir(const SparseReal& hp, const SparseReal& hm, int n_sites,
                         double revival_period) {
    if (hp.n != hm.n) throw ValidationError("generator dimension mismatch");
    if (revival_period <= 0.0) throw ValidationError("revival period must be positive");
    const double s = revival_period / (2.0 * std::numbers::pi);
    const SparseReal hps = scale(hp, s);
    const SparseReal hms = scale(hm, s);
    const SparseReal pm = matmul(hps, hms);
    const SparseReal mp = matmul(hms, hps);
    CasimirOps out;
    out.hz = add(pm, mp, 1.0, -1.0);
    const double spin = n_sites / 2.0;
    const SparseReal anti = add(pm, mp, 2.0, 2.0);
    out.c = add(anti, matmul(out.hz, out.hz), 1.0 / (spin * (spin + 1.0)),
                4.0 / (spin * (spin + 1.0)));
    return out;
}

}  // namespace scarlab
