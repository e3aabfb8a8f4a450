// metaplectic.hpp — quadratic-phase Fourier integral operators
// S_{W,m} f(x) = (1/2pi i)^{d/2} i^m sqrt|det L| int e^{iW(x,x')} f(x') dx'
// built by plain quadrature on truncated grids. Accuracy is claimed against
// rapidly decaying inputs (Hermite/Gaussian class), never in operator norm.

#pragma once

#include <Eigen/Dense>

#include <numbers>

#include "weylext/grid.hpp"
#include "weylext/numerics.hpp"
#include "weylext/symplectic.hpp"

namespace weylext {

inline OperatorMatrix build_metaplectic(const QuadraticFormW& w, const Grid& in_grid,
                                        const Grid& out_grid) {
    const int d = w.n;
    if (in_grid.dim() != d || out_grid.dim() != d)
        throw std::invalid_argument("build_metaplectic: grid dimension must match W");
    // (1/2pi i)^{d/2} = (2pi)^{-d/2} e^{-i pi d/4}, principal branch
    const cplx pref = std::pow(2.0 * std::numbers::pi, -0.5 * d) *
                      std::exp(cplx(0.0, -std::numbers::pi * d / 4.0)) *
                      std::pow(cplx(0.0, 1.0), w.maslov) *
                      std::sqrt(std::abs(w.L.determinant()));
    const long rows = out_grid.size(), cols = in_grid.size();

    // cache node vectors and the quadratic pieces
    std::vector<Eigen::VectorXd> xo(static_cast<size_t>(rows)), xi(static_cast<size_t>(cols));
    Eigen::VectorXd px(rows), qx(cols);
    std::vector<Eigen::VectorXd> lx(static_cast<size_t>(rows));
    for (long i = 0; i < rows; ++i) {
        xo[static_cast<size_t>(i)] = out_grid.node(i);
        px[i] = 0.5 * xo[static_cast<size_t>(i)].dot(w.P * xo[static_cast<size_t>(i)]);
        lx[static_cast<size_t>(i)] = w.L * xo[static_cast<size_t>(i)];
    }
    for (long j = 0; j < cols; ++j) {
        xi[static_cast<size_t>(j)] = in_grid.node(j);
        qx[j] = 0.5 * xi[static_cast<size_t>(j)].dot(w.Q * xi[static_cast<size_t>(j)]);
    }

    Mat M(rows, cols);
    const double weight = in_grid.cell();
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            const double phase = px[i] - lx[static_cast<size_t>(i)].dot(xi[static_cast<size_t>(j)]) + qx[j];
            M(i, j) = pref * std::exp(cplx(0.0, phase)) * weight;
        }
    return OperatorMatrix(in_grid, out_grid, std::move(M));
}

// S_{W,m}^{-1} = S_{W*,m*} through the dual form; exact inverse at the
// operator level, near-inverse at the quadrature level on decaying inputs
inline OperatorMatrix inverse_metaplectic(const QuadraticFormW& w, const Grid& in_grid,
                                          const Grid& out_grid) {
    return build_metaplectic(w_dual(w), in_grid, out_grid);
}

// matrix-free row sweep of the same quadrature, for grids where the dense
// matrix would not fit
inline Vec metaplectic_apply(const QuadraticFormW& w, const Grid& in_grid, const Grid& out_grid,
                             const Vec& v) {
    const int d = w.n;
    if (in_grid.dim() != d || out_grid.dim() != d || v.size() != in_grid.size())
        throw std::invalid_argument("metaplectic_apply: dimension mismatch");
    const cplx pref = std::pow(2.0 * std::numbers::pi, -0.5 * d) *
                      std::exp(cplx(0.0, -std::numbers::pi * d / 4.0)) *
                      std::pow(cplx(0.0, 1.0), w.maslov) *
                      std::sqrt(std::abs(w.L.determinant())) * in_grid.cell();
    const long rows = out_grid.size(), cols = in_grid.size();
    std::vector<Eigen::VectorXd> xi(static_cast<size_t>(cols));
    Eigen::VectorXd qx(cols);
    for (long j = 0; j < cols; ++j) {
        xi[static_cast<size_t>(j)] = in_grid.node(j);
        qx[j] = 0.5 * xi[static_cast<size_t>(j)].dot(w.Q * xi[static_cast<size_t>(j)]);
    }
    Vec out(rows);
    for (long i = 0; i < rows; ++i) {
        const Eigen::VectorXd x = out_grid.node(i);
        const double px = 0.5 * x.dot(w.P * x);
        const Eigen::VectorXd lx = w.L * x;
        cplx acc = 0;
        for (long j = 0; j < cols; ++j)
            acc += std::exp(cplx(0.0, px - lx.dot(xi[static_cast<size_t>(j)]) + qx[j])) * v[j];
        out[i] = pref * acc;
    }
    return out;
}

// quadrature matrices for S^{-1} (built from the generating form of s^{-1}
// with Maslov index 0, following the closed-form conventions) and the
// phase-consistent forward S = (S^{-1})^{-1} via the dual form
struct MetaplecticPair {
    OperatorMatrix inverse;  // ~ S^{-1}
    OperatorMatrix forward;  // ~ S
};

inline MetaplecticPair metaplectic_pair(const SymplecticMatrix& s, const Grid& grid) {
    const QuadraticFormW wi = w_from_symplectic(s.inverse(), 0);
    return MetaplecticPair{build_metaplectic(wi, grid, grid),
                           build_metaplectic(w_dual(wi), grid, grid)};
}

}  // namespace weylext
