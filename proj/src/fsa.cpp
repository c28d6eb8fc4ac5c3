#include "scarlab/fsa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "scarlab/errors.hpp"

namespace scarlab {

namespace {

int64_t vacuum_index(const ConstrainedBasis& basis, Sublattice s) {
    const int64_t idx = basis.index_of(maximally_excited(basis.graph, s));
    if (idx < 0) throw ValidationError("maximally excited state is not in the constrained space");
    return idx;
}

struct Chain {
    std::vector<RVec> vectors;     // normalized, steps + 1 entries
    std::vector<double> prenorms;  // cumulative ||gen^n vac||
};

Chain run_chain(const SparseReal& gen, int64_t start, int steps, const char* side) {
    Chain out;
    RVec v = RVec::Zero(gen.n);
    v[start] = 1.0;
    out.vectors.push_back(std::move(v));
    out.prenorms.push_back(1.0);
    for (int n = 1; n <= steps; ++n) {
        RVec w = gen * out.vectors.back();
        const double nrm = w.norm();
        if (!(nrm > 1e-12)) {
            char msg[96];
            std::snprintf(msg, sizeof(msg), "%s chain norm vanished at step %d", side, n);
            throw NumericalError(msg);
        }
        out.prenorms.push_back(out.prenorms.back() * nrm);
        out.vectors.push_back(w / nrm);
    }
    return out;
}

// Shared ladder assembly; `mid` is the stitch shell (= number of A sites).
FsaBasis assemble_fsa(const SparseReal& hp, const SparseReal& hm,
                      const ConstrainedBasis& basis, int mid) {
    const int n = basis.graph.n_sites;
    if (hp.n != basis.dim() || hm.n != basis.dim())
        throw ValidationError("ladder operators do not match the basis dimension");

    const Chain a = run_chain(hp, vacuum_index(basis, Sublattice::A), mid, "A");
    const Chain b = run_chain(hm, vacuum_index(basis, Sublattice::B), n - mid, "B");

    FsaBasis out;
    out.vectors.resize(basis.dim(), n + 1);
    out.labels.assign(n + 1, ChainSource::middle);
    for (int k = 0; k < mid; ++k) {
        out.vectors.col(k) = a.vectors[k];
        out.labels[k] = ChainSource::a_side;
    }
    for (int m = 0; m < n - mid; ++m) {
        out.vectors.col(n - m) = b.vectors[m];
        out.labels[n - m] = ChainSource::b_side;
    }
    // Middle shell: raw sum of the two final chain applications, then
    // normalize. Both halves live in the same Hamming shell, so the stitch
    // stays exactly orthogonal to every pure chain vector.
    RVec stitch = a.vectors[mid] * (a.prenorms[mid] / a.prenorms[mid - 1]) +
                  b.vectors[n - mid] * (b.prenorms[n - mid] / b.prenorms[n - mid - 1]);
    const double nrm = stitch.norm();
    if (!(nrm > 1e-12)) throw NumericalError("middle stitch vector vanished");
    out.vectors.col(mid) = stitch / nrm;

    out.prenorms_a = a.prenorms;
    out.prenorms_b = b.prenorms;
    return out;
}

double parabolic_vertex(double x0, double h, double fm, double f0, double fp) {
    const double denom = fm - 2.0 * f0 + fp;
    if (!(std::abs(denom) > 1e-300)) return x0;
    const double shift = 0.5 * h * (fm - fp) / denom;
    return x0 + std::clamp(shift, -h, h);
}

}  // namespace

FsaBasis build_fsa_symmetric(const SparseReal& hp, const SparseReal& hm,
                             const ConstrainedBasis& basis) {
    const auto& g = basis.graph;
    const int na = g.n_sublattice(Sublattice::A);
    const int nb = g.n_sublattice(Sublattice::B);
    if (na != nb)
        throw ValidationError("symmetric FSA needs equal sublattices; use the decorated builder");
    return assemble_fsa(hp, hm, basis, na);
}

FsaBasis build_fsa_decorated(const SparseReal& hp, const SparseReal& hm,
                             const ConstrainedBasis& basis) {
    const auto& g = basis.graph;
    if (g.n_sites % 5 != 0)
        throw ValidationError("decorated FSA expects a site count divisible by 5");
    const int na = g.n_sublattice(Sublattice::A);
    if (na * 5 != g.n_sites * 3)
        throw ValidationError("decorated FSA expects a 3:2 sublattice split");
    return assemble_fsa(hp, hm, basis, na);
}

VariancePair subspace_variance(const SparseReal& h, const FsaBasis& fsa) {
    const auto& v = fsa.vectors;
    if (h.n != v.rows()) throw ValidationError("operator does not match the subspace basis");
    Eigen::MatrixXd w(v.rows(), v.cols());
    RVec tmp(v.rows());
    for (int64_t k = 0; k < v.cols(); ++k) {
        RVec col = v.col(k);
        h.apply(col, tmp);
        w.col(k) = tmp;
    }
    const Eigen::MatrixXd g = v.transpose() * w;
    VariancePair out;
    out.leakage = (w - v * g).squaredNorm();
    const double tr_qh = g.trace();
    out.literal = w.squaredNorm() - tr_qh * tr_qh;
    return out;
}

SubspaceDiagnostics projected_spectrum(const SparseReal& h, const FsaBasis& fsa,
                                       const SpectrumResult* full) {
    const auto& v = fsa.vectors;
    if (h.n != v.rows()) throw ValidationError("operator does not match the subspace basis");

    SubspaceDiagnostics out;
    Eigen::MatrixXd w(v.rows(), v.cols());
    RVec tmp(v.rows());
    for (int64_t k = 0; k < v.cols(); ++k) {
        RVec col = v.col(k);
        h.apply(col, tmp);
        w.col(k) = tmp;
    }
    Eigen::MatrixXd g = v.transpose() * w;
    out.variance.leakage = (w - v * g).squaredNorm();
    const double tr_qh = g.trace();
    out.variance.literal = w.squaredNorm() - tr_qh * tr_qh;
    out.projected_h = 0.5 * (g + g.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(out.projected_h);
    if (solver.info() != Eigen::Success)
        throw NumericalError("projected Hamiltonian diagonalization failed");
    out.mode_energies = solver.eigenvalues();
    out.modes = solver.eigenvectors();

    SpectrumResult local;
    if (full == nullptr) {
        local = full_diagonalize(h);
        full = &local;
    }
    const Eigen::MatrixXd approx = v * out.modes;             // dim x (N+1)
    const Eigen::MatrixXd cross = full->vectors.transpose() * approx;
    out.mode_overlaps.resize(cross.cols());
    for (int64_t k = 0; k < cross.cols(); ++k)
        out.mode_overlaps[k] = cross.col(k).cwiseAbs2().maxCoeff();
    return out;
}

FrequencyCriteria frequency_criteria(const SiteGraph& graph) {
    FrequencyCriteria out;
    for (int r = 0; r < graph.n_sites; ++r) {
        const int deg = static_cast<int>(graph.adjacency[r].size());
        const bool is_a = graph.sublattice[r] == Sublattice::A;
        int& c = is_a ? out.c_a : out.c_b;
        int& count = is_a ? out.n_a : out.n_b;
        if (count == 0) {
            c = deg;
        } else if (c != deg) {
            throw ValidationError("sublattice connectivity is not uniform");
        }
        ++count;
    }
    if (out.n_a == 0 || out.n_b == 0) throw ValidationError("lattice is not bipartite-labeled");
    out.omega_s = std::sqrt(static_cast<double>(out.n_b) / out.n_a);
    out.omega_general = std::sqrt(static_cast<double>(out.c_a) / out.c_b);
    return out;
}

VariancePair deformation_leakage(const ConstrainedBasis& basis, double a, double b) {
    ModelSpec spec{uniform_freq(basis.graph), Deformation{a, b}};
    const SplitPM pm = split_pm(basis, spec);
    const SparseReal h = build_model(basis, spec);
    const FsaBasis fsa = build_fsa_symmetric(pm.plus, pm.minus, basis);
    return subspace_variance(h, fsa);
}

VariancePair decorated_leakage(const ConstrainedBasis& basis, double omega) {
    ModelSpec spec{sublattice_freq(basis.graph, omega, 1.0), std::nullopt};
    const SplitPM pm = split_pm(basis, spec);
    const SparseReal h = build_model(basis, spec);
    const FsaBasis fsa = build_fsa_decorated(pm.plus, pm.minus, basis);
    return subspace_variance(h, fsa);
}

Scan2D scan_deformation(const ConstrainedBasis& basis, const std::vector<double>& grid_a,
                        const std::vector<double>& grid_b) {
    if (grid_a.empty() || grid_b.empty()) throw ValidationError("empty deformation scan grid");
    Scan2D out;
    out.grid_a = grid_a;
    out.grid_b = grid_b;
    const int64_t na = static_cast<int64_t>(grid_a.size());
    const int64_t nb = static_cast<int64_t>(grid_b.size());
    out.leakage.resize(na, nb);
    out.literal.resize(na, nb);
    for (int64_t i = 0; i < na; ++i) {
        for (int64_t j = 0; j < nb; ++j) {
            const VariancePair v = deformation_leakage(basis, grid_a[i], grid_b[j]);
            out.leakage(i, j) = v.leakage;
            out.literal(i, j) = v.literal;
        }
    }
    out.leakage.minCoeff(&out.argmin_ia, &out.argmin_ib);
    out.min_value = out.leakage(out.argmin_ia, out.argmin_ib);
    out.argmin_a = grid_a[out.argmin_ia];
    out.argmin_b = grid_b[out.argmin_ib];
    const int64_t ia = out.argmin_ia;
    const int64_t ib = out.argmin_ib;
    if (ia > 0 && ia + 1 < na)
        out.argmin_a = parabolic_vertex(grid_a[ia], grid_a[ia + 1] - grid_a[ia],
                                        out.leakage(ia - 1, ib), out.leakage(ia, ib),
                                        out.leakage(ia + 1, ib));
    if (ib > 0 && ib + 1 < nb)
        out.argmin_b = parabolic_vertex(grid_b[ib], grid_b[ib + 1] - grid_b[ib],
                                        out.leakage(ia, ib - 1), out.leakage(ia, ib),
                                        out.leakage(ia, ib + 1));
    return out;
}

Scan1D scan_decorated_frequency(const ConstrainedBasis& basis,
                                const std::vector<double>& omegas) {
    if (omegas.empty()) throw ValidationError("empty frequency scan grid");
    Scan1D out;
    out.grid = omegas;
    out.leakage.reserve(omegas.size());
    out.literal.reserve(omegas.size());
    for (double omega : omegas) {
        const VariancePair v = decorated_leakage(basis, omega);
        out.leakage.push_back(v.leakage);
        out.literal.push_back(v.literal);
    }
    const auto it = std::min_element(out.leakage.begin(), out.leakage.end());
    out.argmin_index = it - out.leakage.begin();
    out.min_value = *it;
    out.argmin = omegas[out.argmin_index];
    const int64_t i = out.argmin_index;
    if (i > 0 && i + 1 < static_cast<int64_t>(omegas.size()))
        out.argmin = parabolic_vertex(omegas[i], omegas[i + 1] - omegas[i],
                                      out.leakage[i - 1], out.leakage[i], out.leakage[i + 1]);
    return out;
}

TimeSeries su2_reference_fidelity(int n_sites, const std::vector<double>& times) {
    TimeSeries out;
    out.times = times;
    out.values.reserve(times.size());
    for (double t : times) {
        const double c = std::cos(0.5 * t);
        out.values.push_back(std::pow(c * c, n_sites));
    }
    return out;
}

SpinGenerators spin_generators(int n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0)
        throw ValidationError("spin generators need an even, positive site count");
    const int dim = n_sites + 1;
    const double s = 0.5 * n_sites;
    SpinGenerators out;
    out.sp.n = dim;
    out.sp.rowptr.assign(dim + 1, 0);
    // <k+1|S+|k>/2 with m = k - s. The half puts sp + sm equal to Sx, whose
    // integer-spaced spectrum makes the quench from the highest weight
    // 2*pi-periodic, the reference convention used everywhere here.
    for (int k = 0; k + 1 < dim; ++k) {
        const double m = k - s;
        out.sp.rowptr[k + 2] = 1;
        out.sp.cols.push_back(k);
        out.sp.vals.push_back(0.5 * std::sqrt(s * (s + 1.0) - m * (m + 1.0)));
    }
    for (int k = 1; k <= dim; ++k) out.sp.rowptr[k] += out.sp.rowptr[k - 1];
    out.sm = transpose(out.sp);
    return out;
}

TimeSeries casimir_dynamics(const SparseReal& h, const SparseReal& casimir,
                            const CVec& psi0, double t_max, double dt,
                            const EvolveOptions& opts) {
    return observable_series(h, psi0, SparseOperator{casimir}, t_max, dt, opts);
}

}  // namespace scarlab
