// intertwine.hpp — intertwiners T_{S,chi} psi = S^{-1}(psi (x) chi), their
// adjoints, spectral transfer, Gram checks, kernel probing, and the
// non-hypoellipticity witness.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "weylext/extension.hpp"
#include "weylext/grid.hpp"
#include "weylext/metaplectic.hpp"
#include "weylext/numerics.hpp"
#include "weylext/wigner.hpp"

namespace weylext {

// unitary Fourier transform sampled back on the position nodes:
// chi_hat(y_i) = (2pi)^{-1/2} sum_k e^{-i y_i z_k} chi(z_k) dx
inline StateVector fourier_hat_on_nodes(const StateVector& chi) {
    if (chi.grid.dim() != 1) throw std::invalid_argument("fourier_hat_on_nodes: 1D input required");
    const Axis& ax = chi.grid.axis(0);
    Vec out = Vec::Zero(ax.n);
    for (int i = 0; i < ax.n; ++i) {
        cplx acc = 0;
        for (int k = 0; k < ax.n; ++k)
            acc += chi.values[k] * std::exp(cplx(0.0, -ax.node(i) * ax.node(k)));
        out[i] = acc * ax.dx() / std::sqrt(2.0 * std::numbers::pi);
    }
    return StateVector(chi.grid, std::move(out));
}

// T_{S,chi} psi = S^{-1}(psi (x) chi), applied matrix-free through the
// quadrature metaplectic (generating form of s^{-1}, Maslov 0, forward via
// the dual form). The identity extension reduces to the plain tensor map.
struct Intertwiner {
    ExtensionSpec spec;
    StateVector chi;
    Grid x_grid, product;
    QuadraticFormW w_inverse, w_forward;  // unused for the identity extension
    bool trivial{false};

    StateVector apply(const StateVector& psi) const {
        if (!(psi.grid == x_grid)) throw std::invalid_argument("Intertwiner::apply: grid mismatch");
        const StateVector t = tensor(psi, chi);
        if (trivial) return t;
        return StateVector(product, metaplectic_apply(w_inverse, product, product, t.values));
    }

    // T* Phi(x) = sum_y conj(chi(y)) (S Phi)(x, y) dy
    StateVector adjoint_apply(const StateVector& Phi) const {
        if (!(Phi.grid == product)) throw std::invalid_argument("Intertwiner::adjoint_apply: grid mismatch");
        const Vec SPhi = trivial ? Phi.values : metaplectic_apply(w_forward, product, product, Phi.values);
        const long nx = x_grid.size(), ny = chi.grid.size();
        Vec out = Vec::Zero(nx);
        for (long i = 0; i < nx; ++i) {
            cplx acc = 0;
            for (long j = 0; j < ny; ++j) acc += std::conj(chi.values[j]) * SPhi[i * ny + j];
            out[i] = acc * chi.grid.cell();
        }
        return StateVector(x_grid, std::move(out));
    }

    // dense (nx*ny) x nx matrix of the map, for small grids
    OperatorMatrix to_matrix() const {
        const long nx = x_grid.size(), ny = chi.grid.size();
        Mat tens = Mat::Zero(nx * ny, nx);
        for (long i = 0; i < nx; ++i) tens.block(i * ny, i, ny, 1) = chi.values;
        if (trivial) return OperatorMatrix(x_grid, product, std::move(tens));
        const OperatorMatrix Si = build_metaplectic(w_inverse, product, product);
        return OperatorMatrix(x_grid, product, Mat(Si.m * tens));
    }
};

inline Intertwiner build_intertwiner(const ExtensionSpec& spec, const StateVector& chi,
                                     const Grid& x_grid) {
    if (weighted_norm(chi) < 1e-14)
        throw std::invalid_argument("build_intertwiner: chi must be nonzero");
    if (chi.grid.dim() != spec.k)
        throw std::invalid_argument("build_intertwiner: chi dimension must equal k");
    Intertwiner t;
    t.spec = spec;
    t.chi = chi;
    t.x_grid = x_grid;
    t.product = x_grid.product(chi.grid);
    t.trivial = spec.is_identity();
    if (!t.trivial) {
        t.w_inverse = w_from_symplectic(spec.s.inverse(), 0);
        t.w_forward = w_dual(t.w_inverse);
    }
    return t;
}

// max |Gram - I| over the family {T_{S,chi_l} phi_j}
inline double gram_check(const ExtensionSpec& spec, const std::vector<StateVector>& phis,
                         const std::vector<StateVector>& chis, const Grid& x_grid) {
    std::vector<StateVector> fam;
    for (const auto& chi : chis) {
        const Intertwiner T = build_intertwiner(spec, chi, x_grid);
        for (const auto& phi : phis) fam.push_back(T.apply(phi));
    }
    const size_t d = fam.size();
    double dev = 0;
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) {
            const cplx g = weighted_inner(fam[a], fam[b]);
            dev = std::max(dev, std::abs(g - (a == b ? cplx(1.0) : cplx(0.0))));
        }
    return dev;
}

struct TransferredPair {
    double lambda{0};
    int j{0}, l{0};
    StateVector Phi;
    double residual{0};  // ||A~ Phi - lambda Phi|| / ||Phi||
};

// carry eigenpairs (lambda_j, phi_j) of A to the extension through every chi;
// residuals are measured against the supplied extended operator
inline std::vector<TransferredPair> transfer_eigenpairs(
    const std::vector<std::pair<double, StateVector>>& a_pairs,
    const ExtensionSpec& spec, const std::vector<StateVector>& chis,
    const Grid& x_grid, const OperatorMatrix& a_ext) {
    std::vector<TransferredPair> out;
    for (size_t l = 0; l < chis.size(); ++l) {
        const Intertwiner T = build_intertwiner(spec, chis[l], x_grid);
        for (size_t j = 0; j < a_pairs.size(); ++j) {
            StateVector Phi = T.apply(a_pairs[j].second);
            const double lam = a_pairs[j].first;
            const double nrm = weighted_norm(Phi);
            StateVector r = a_ext.apply(Phi);
            r.values -= lam * Phi.values;
            out.push_back(TransferredPair{lam, static_cast<int>(j), static_cast<int>(l), std::move(Phi),
                                          weighted_norm(r) / nrm});
        }
    }
    return out;
}

// closed-form Landau intertwiner
// T phi(x,y) = -i sqrt(pi/2) W(phi, conj(chi_hat))(x/2, y/2)
inline StateVector landau_intertwiner_closed(const StateVector& phi, const StateVector& chi) {
    if (phi.grid.dim() != 1 || !(phi.grid == chi.grid))
        throw std::invalid_argument("landau_intertwiner_closed: matching 1D grids required");
    StateVector ch = fourier_hat_on_nodes(chi);
    ch.values = ch.values.conjugate();
    const Mat W = cross_wigner_scaled_points(phi, ch, 0.5, 0.5);
    const int n = phi.grid.axis(0).n;
    Vec out(static_cast<long>(n) * n);
    const cplx pref = cplx(0.0, -1.0) * std::sqrt(std::numbers::pi / 2.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<long>(i) * n + j] = pref * W(i, j);
    return StateVector(phi.grid.product(chi.grid), std::move(out));
}

// closed-form Bopp intertwiner, n = 1:
// T phi = (2pi)^{1/2} i^{-1} W(phi, conj(chi_hat))(x, y)
inline StateVector bopp_intertwiner_closed(const StateVector& phi, const StateVector& chi) {
    if (phi.grid.dim() != 1 || !(phi.grid == chi.grid))
        throw std::invalid_argument("bopp_intertwiner_closed: matching 1D grids required");
    StateVector ch = fourier_hat_on_nodes(chi);
    ch.values = ch.values.conjugate();
    const Mat W = cross_wigner_scaled_points(phi, ch, 1.0, 1.0);
    const int n = phi.grid.axis(0).n;
    Vec out(static_cast<long>(n) * n);
    const cplx pref = std::sqrt(2.0 * std::numbers::pi) / cplx(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<long>(i) * n + j] = pref * W(i, j);
    return StateVector(phi.grid.product(chi.grid), std::move(out));
}

struct KernelProbe {
    double sigma_min_a{0};
    double sigma_min_ext{0};
    bool a_trivial_kernel{false};    // sigma_min above threshold
    bool ext_trivial_kernel{false};
    bool consistent{false};
};

// Lemma-style kernel coherence: Ker A~ = {0} iff Ker A = {0}, probed through
// smallest singular values with threshold rel_threshold * ||.||_2-estimate
inline KernelProbe kernel_probe(const OperatorMatrix& A, const OperatorMatrix& Aext,
                                double rel_threshold = 1e-6) {
    KernelProbe p;
    p.sigma_min_a = smallest_singular_value(A.m);
    p.sigma_min_ext = smallest_singular_value(Aext.m);
    const double na = A.m.norm() / std::sqrt(static_cast<double>(A.m.cols()));
    const double ne = Aext.m.norm() / std::sqrt(static_cast<double>(Aext.m.cols()));
    p.a_trivial_kernel = p.sigma_min_a > rel_threshold * na;
    p.ext_trivial_kernel = p.sigma_min_ext > rel_threshold * ne;
    p.consistent = (p.a_trivial_kernel == p.ext_trivial_kernel);
    return p;
}

struct WitnessReport {
    double residual_ratio{0};   // ||A~ Phi|| / ||Phi||
    double outer_mass_ratio{0}; // mass of Phi in the outer 25% of the domain
    bool non_decaying{false};   // outer mass >= 0.1
    bool annihilated{false};    // residual below the requested tolerance
    StateVector Phi;
};

// outer-mass ratio: fraction of |Phi|^2 carried by nodes with some coordinate
// beyond 75% of its axis half-width
inline double outer_mass_ratio(const StateVector& Phi) {
    double outer = 0, total = 0;
    for (long i = 0; i < Phi.grid.size(); ++i) {
        const double w = std::norm(Phi.values[i]);
        total += w;
        const Eigen::VectorXd x = Phi.grid.node(i);
        for (int a = 0; a < Phi.grid.dim(); ++a)
            if (std::abs(x[a]) >= 0.75 * Phi.grid.axis(a).half_width) {
                outer += w;
                break;
            }
    }
    return total > 0 ? outer / total : 0.0;
}

// Prop-16-style witness: a kernel vector of A tensored with a non-decaying
// chi profile is annihilated by the extension yet fails to decay
inline WitnessReport nonhypoellipticity_witness(const OperatorMatrix& A,
                                                const ExtensionSpec& spec,
                                                const StateVector& chi_profile,
                                                const OperatorMatrix& a_ext,
                                                double residual_tol = 1e-5,
                                                double kernel_threshold = 1e-6) {
    const EighResult eg = eigh(A, 1e-6);
    const long tot = A.in_grid.size();
    long kmin = 0;
    for (long i = 0; i < tot; ++i)
        if (std::abs(eg.eigenvalues[i]) < std::abs(eg.eigenvalues[kmin])) kmin = i;
    const double scale = std::max(std::abs(eg.eigenvalues[0]), std::abs(eg.eigenvalues[tot - 1]));
    if (std::abs(eg.eigenvalues[kmin]) > kernel_threshold * scale)
        throw std::domain_error("nonhypoellipticity_witness: A has no numerical kernel vector");
    const StateVector phi0(A.in_grid, eg.eigenvectors.col(kmin) / std::sqrt(A.in_grid.cell()));

    const Intertwiner T = build_intertwiner(spec, chi_profile, A.in_grid);
    WitnessReport rep;
    rep.Phi = T.apply(phi0);
    const double nrm = weighted_norm(rep.Phi);
    StateVector r = a_ext.apply(rep.Phi);
    rep.residual_ratio = weighted_norm(r) / nrm;
    rep.outer_mass_ratio = outer_mass_ratio(rep.Phi);
    rep.non_decaying = rep.outer_mass_ratio >= 0.1;
    rep.annihilated = rep.residual_ratio <= residual_tol;
    return rep;
}

// ---- spectrum reporting ----

struct SpectrumCluster {
    double value{0};      // mean of members
    int multiplicity{0};
    double lo{0}, hi{0};
    double max_residual{0};
};

struct SpectrumReport {
    std::vector<SpectrumCluster> clusters;
    std::string route;  // "direct" or "intertwined"
    double cluster_radius{0};
};

// greedy gap clustering of ascending eigenvalues: a new cluster opens when the
// next value exceeds the current anchor by more than `radius`
inline std::vector<SpectrumCluster> cluster_eigenvalues(const Eigen::VectorXd& evals,
                                                        double radius) {
    std::vector<SpectrumCluster> out;
    long i = 0;
    while (i < evals.size()) {
        SpectrumCluster c;
        const double anchor = evals[i];
        c.lo = anchor;
        double sum = 0;
        while (i < evals.size() && evals[i] - anchor <= radius) {
            sum += evals[i];
            c.hi = evals[i];
            ++c.multiplicity;
            ++i;
        }
        c.value = sum / c.multiplicity;
        out.push_back(c);
    }
    return out;
}

}  // namespace weylext
