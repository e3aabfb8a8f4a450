// numerics.hpp — dense operator container, Hermitian eigendecomposition and SVD
// backed by LAPACK, plus the unitary polar factor.

#pragma once

#include <lapacke.h>

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

#include "weylext/grid.hpp"

namespace weylext {

// Dense matrix representing an operator between grid node spaces. Rows index
// out-grid nodes, columns in-grid nodes. quadrature_absorbed records whether
// the column quadrature weight dx^d is folded in, so (M psi)_i approximates
// (A psi)(x_i) by plain matrix-vector product.
struct OperatorMatrix {
    Grid in_grid;
    Grid out_grid;
    Mat m;
    bool quadrature_absorbed{true};

    OperatorMatrix() = default;
    OperatorMatrix(Grid in, Grid out, Mat entries, bool absorbed = true)
        : in_grid(std::move(in)), out_grid(std::move(out)), m(std::move(entries)),
          quadrature_absorbed(absorbed) {
        if (m.rows() != out_grid.size() || m.cols() != in_grid.size())
            throw std::invalid_argument("OperatorMatrix: shape does not match grids");
    }

    static OperatorMatrix identity(const Grid& g) {
        return OperatorMatrix(g, g, Mat::Identity(g.size(), g.size()));
    }

    StateVector apply(const StateVector& psi) const {
        if (psi.grid != in_grid) throw std::invalid_argument("OperatorMatrix::apply: grid mismatch");
        return StateVector(out_grid, m * psi.values);
    }

    OperatorMatrix adjoint() const {
        return OperatorMatrix(out_grid, in_grid, m.adjoint());
    }
};

struct EighResult {
    Eigen::VectorXd eigenvalues;   // ascending
    Mat eigenvectors;              // orthonormal columns
    double hermiticity_defect{0};  // ||M - M^dag||_F / ||M||_F before symmetrization
};

// Hermitian eigendecomposition. The input is symmetrized as (M + M^dag)/2 and
// the relative defect is reported; a defect above `hermiticity_tol` is a
// contract violation.
inline EighResult eigh(const Mat& M, double hermiticity_tol = 1e-8) {
    if (M.rows() != M.cols()) throw std::invalid_argument("eigh: matrix must be square");
    const double nrm = M.norm();
    const double defect = nrm > 0 ? (M - M.adjoint()).norm() / (2.0 * nrm) : 0.0;
    if (defect > hermiticity_tol)
        throw std::runtime_error("eigh: hermiticity defect " + std::to_string(defect) +
                                 " exceeds tolerance " + std::to_string(hermiticity_tol));

    const lapack_int n = static_cast<lapack_int>(M.rows());
    Mat A = 0.5 * (M + M.adjoint());
    Eigen::VectorXd w(n);
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(A.data()), n, w.data());
    if (info != 0) throw std::runtime_error("eigh: LAPACK zheevd failed, info=" + std::to_string(info));
    return EighResult{std::move(w), std::move(A), defect};
}

inline EighResult eigh(const OperatorMatrix& M, double hermiticity_tol = 1e-8) {
    if (M.in_grid != M.out_grid) throw std::invalid_argument("eigh: operator must be an endomorphism");
    return eigh(M.m, hermiticity_tol);
}

struct SvdResult {
    Mat u;
    Eigen::VectorXd sigma;  // descending
    Mat vh;
};

inline SvdResult svd(const Mat& M) {
    const lapack_int rows = static_cast<lapack_int>(M.rows());
    const lapack_int cols = static_cast<lapack_int>(M.cols());
    Mat A = M;
    const lapack_int k = std::min(rows, cols);
    SvdResult r;
    r.u.resize(rows, k);
    r.vh.resize(k, cols);
    r.sigma.resize(k);
    const lapack_int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, 'S', rows, cols,
        reinterpret_cast<lapack_complex_double*>(A.data()), rows, r.sigma.data(),
        reinterpret_cast<lapack_complex_double*>(r.u.data()), rows,
        reinterpret_cast<lapack_complex_double*>(r.vh.data()), k);
    if (info != 0) throw std::runtime_error("svd: LAPACK zgesdd failed, info=" + std::to_string(info));
    return r;
}

inline double smallest_singular_value(const Mat& M) {
    const SvdResult r = svd(M);
    return r.sigma[r.sigma.size() - 1];
}

// Unitary polar factor U of M = U H. For near-unitary M this is the closest
// unitary matrix; directions where M is rank-deficient are completed by the
// SVD frames.
inline Mat unitary_polar_factor(const Mat& M) {
    const SvdResult r = svd(M);
    return r.u * r.vh;
}

}  // namespace weylext
