#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "scarlab/basis.hpp"

namespace scarlab {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

struct SparseReal {
    int64_t n = 0;
    std::vector<int64_t> rowptr;
    std::vector<int32_t> cols;
    std::vector<double> vals;

    int64_t nnz() const { return static_cast<int64_t>(vals.size()); }
    void apply(const cplx* x, cplx* y) const;  // y = A x
    void apply(const CVec& x, CVec& y) const;
    CVec operator*(const CVec& x) const;
    void apply(const RVec& x, RVec& y) const;
    RVec operator*(const RVec& x) const;
    Eigen::MatrixXd to_dense() const;
};

struct SparseCplx {
    int64_t n = 0;
    std::vector<int64_t> rowptr;
    std::vector<int32_t> cols;
    std::vector<cplx> vals;

    int64_t nnz() const { return static_cast<int64_t>(vals.size()); }
    void apply(const cplx* x, cplx* y) const;
    void apply(const CVec& x, CVec& y) const;
    CVec operator*(const CVec& x) const;
    Eigen::MatrixXcd to_dense() const;
};

SparseReal transpose(const SparseReal& a);
SparseReal add(const SparseReal& a, const SparseReal& b, double ca = 1.0, double cb = 1.0);
SparseReal matmul(const SparseReal& a, const SparseReal& b, double drop_tol = 0.0);
SparseReal scale(const SparseReal& a, double c);
double max_abs_diff(const SparseReal& a, const SparseReal& b);
bool is_symmetric(const SparseReal& a, double tol = 0.0);

// Observable wrapper: real-valued operators keep real storage, only the
// dressed sigma-y needs complex entries.
struct SparseOperator {
    std::variant<SparseReal, SparseCplx> op;

    int64_t dim() const;
    void apply(const CVec& x, CVec& y) const;
    cplx expectation(const CVec& psi) const;
};

struct Deformation {
    double a = 0.0;
    double b = 0.0;
};

struct ModelSpec {
    std::vector<double> freq;  // per-site flip frequency
    std::optional<Deformation> deform;
};

// Basis unit vector for one configuration; rejects configurations outside
// the constrained space.
CVec unit_state(const ConstrainedBasis& basis, uint64_t config);

std::vector<double> uniform_freq(const SiteGraph& graph, double value = 1.0);
std::vector<double> class_freq(const SiteGraph& graph, double corner, double edge,
                               double bulk = 1.0);
std::vector<double> sublattice_freq(const SiteGraph& graph, double freq_a, double freq_b);

// H = sum_r freq[r] * sx~_r * (1 + v_r) where sx~_r is the spin flip dressed
// by ground-state projectors on the neighbours and v_r the optional diagonal
// deformation dressing.
SparseReal build_model(const ConstrainedBasis& basis, const ModelSpec& spec);
SparseReal build_pxp(const ConstrainedBasis& basis, const std::vector<double>& freq);

// The bare deformation operator V = sum_r sx~_r * v_r (no frequency factor).
SparseReal build_deformation(const ConstrainedBasis& basis, const Deformation& d);

// H+ collects the flips that move away from the A-vacuum (lower an A site,
// raise a B site); H- is its transpose. H+ + H- == build_model(spec).
struct SplitPM {
    SparseReal plus;
    SparseReal minus;
};
SplitPM split_pm(const ConstrainedBasis& basis, const ModelSpec& spec);

// Diagonal domain-wall density: (1/n_sites) sum_r P_r sum_{r' adj r} P_r'.
SparseReal build_domain_wall(const ConstrainedBasis& basis);

enum class LocalKind { density, sigma_y };
SparseOperator build_local_observable(const ConstrainedBasis& basis, int site,
                                      LocalKind kind);

// Mean dressed sigma-y over one sublattice: (1/|X|) sum_{r in X} sy~_r.
SparseOperator build_sublattice_sigma_y(const ConstrainedBasis& basis, Sublattice s);

// Casimir operator of the approximate su(2) algebra spanned by H+/H- after
// rescaling both by T/(2*pi), so a revival period T maps onto a 2*pi spin
// precession. C equals the identity for exact spin-(N/2) generators.
struct CasimirOps {
    SparseReal hz;  // [H+, H-] after rescaling
    SparseReal c;
};
CasimirOps build_casimir(const SparseReal& hp, const SparseReal& hm, int n_sites,
                         double revival_period);

}  // namespace scarlab
