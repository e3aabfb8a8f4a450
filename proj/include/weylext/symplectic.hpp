// symplectic.hpp — symplectic matrices over R^{2m} in (positions; momenta)
// block ordering, free generating quadratic forms W(x,x') and their duals.
//
// W(x,x') = 1/2 Px.x - (Lx).x' + 1/2 Qx'.x' with P,Q symmetric and det L != 0
// generates s = [[L^{-1}Q, L^{-1}], [P L^{-1} Q - L^T, P L^{-1}]] through
// xi = d_x W, xi' = -d_{x'} W.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

#include "weylext/grid.hpp"

namespace weylext {

struct NotFreeError : std::domain_error {
    using std::domain_error::domain_error;
};

inline RMat symplectic_form(int m) {
    RMat J = RMat::Zero(2 * m, 2 * m);
    J.topRightCorner(m, m) = RMat::Identity(m, m);
    J.bottomLeftCorner(m, m) = -RMat::Identity(m, m);
    return J;
}

inline bool is_symplectic(const RMat& S, double tol = 1e-10) {
    if (S.rows() != S.cols()) throw std::invalid_argument("is_symplectic: square matrix required");
    if (S.rows() % 2 != 0) throw std::invalid_argument("is_symplectic: even size required");
    const int m = static_cast<int>(S.rows()) / 2;
    const RMat J = symplectic_form(m);
    return (S.transpose() * J * S - J).cwiseAbs().maxCoeff() <= tol;
}

struct SymplecticMatrix {
    int half_dim{0};
    RMat s;

    SymplecticMatrix() = default;
    SymplecticMatrix(RMat m, double tol = 1e-10) : half_dim(static_cast<int>(m.rows()) / 2), s(std::move(m)) {
        if (!is_symplectic(s, tol))
            throw std::invalid_argument("SymplecticMatrix: S^T J S != J beyond tolerance");
    }

    // exact inverse -J S^T J, no linear solve needed
    SymplecticMatrix inverse() const {
        const RMat J = symplectic_form(half_dim);
        return SymplecticMatrix(RMat(-J * s.transpose() * J));
    }

    static SymplecticMatrix identity(int half_dim) {
        return SymplecticMatrix(RMat::Identity(2 * half_dim, 2 * half_dim));
    }
};

struct QuadraticFormW {
    int n{0};
    RMat P, L, Q;  // P,Q symmetric, det L != 0
    int maslov{0};

    QuadraticFormW() = default;
    QuadraticFormW(RMat P_, RMat L_, RMat Q_, int m = 0)
        : n(static_cast<int>(P_.rows())), P(std::move(P_)), L(std::move(L_)), Q(std::move(Q_)), maslov(m) {
        if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
            (Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("QuadraticFormW: P and Q must be symmetric");
        if (std::abs(L.determinant()) <= 1e-10)
            throw NotFreeError("QuadraticFormW: det L vanishes");
    }

    double value(const Eigen::VectorXd& x, const Eigen::VectorXd& xp) const {
        return 0.5 * x.dot(P * x) - (L * x).dot(xp) + 0.5 * xp.dot(Q * xp);
    }
};

// generating form of a free symplectic matrix: P = D B^{-1}, L = B^{-1}, Q = B^{-1} A
inline QuadraticFormW w_from_symplectic(const SymplecticMatrix& sm, int maslov = 0) {
    const int n = sm.half_dim;
    const RMat A = sm.s.topLeftCorner(n, n);
    const RMat B = sm.s.topRightCorner(n, n);
    const RMat C = sm.s.bottomLeftCorner(n, n);
    const RMat D = sm.s.bottomRightCorner(n, n);
    const double free_tol = 1e-10 * std::pow(sm.s.norm(), n);
    if (std::abs(B.determinant()) <= free_tol)
        throw NotFreeError("w_from_symplectic: upper-right block is singular (no free generating form)");
    const RMat Bi = B.inverse();
    RMat P = D * Bi, Q = Bi * A;
    P = RMat(0.5 * (P + P.transpose().eval()));  // clean roundoff asymmetry
    Q = RMat(0.5 * (Q + Q.transpose().eval()));
    (void)C;
    return QuadraticFormW(P, Bi, Q, maslov);
}

// inverse of the block map, for round-trip checks
inline SymplecticMatrix symplectic_from_w(const QuadraticFormW& w) {
    const int n = w.n;
    const RMat Li = w.L.inverse();
    RMat s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = Li * w.Q;
    s.topRightCorner(n, n) = Li;
    s.bottomLeftCorner(n, n) = w.P * Li * w.Q - w.L.transpose();
    s.bottomRightCorner(n, n) = w.P * Li;
    return SymplecticMatrix(std::move(s), 1e-8);
}

// dual form of W*(x,x') = -W(x',x): (P*, L*, Q*, m*) = (-Q, -L^T, -P, n - m).
// S_{W*,m*} is the inverse (= adjoint) of S_{W,m}.
inline QuadraticFormW w_dual(const QuadraticFormW& w) {
    return QuadraticFormW(-w.Q, -w.L.transpose(), -w.P, w.n - w.maslov);
}

// sigma_{n+k} = sigma_n (+) sigma_k: act as s_n on (x,xi) and s_k on (y,eta)
// in the (x,y;xi,eta) ordering
inline SymplecticMatrix embed_direct_sum(const SymplecticMatrix& sn, const SymplecticMatrix& sk) {
    const int n = sn.half_dim, k = sk.half_dim, d = n + k;
    RMat s = RMat::Zero(2 * d, 2 * d);
    auto block = [&](const RMat& src, int src_n, int row_half, int col_half, int dst_row, int dst_col) {
        s.block(dst_row, dst_col, src_n, src_n) =
            src.block(row_half * src_n, col_half * src_n, src_n, src_n);
    };
    for (int rh = 0; rh < 2; ++rh)
        for (int ch = 0; ch < 2; ++ch) {
            block(sn.s, n, rh, ch, rh * d, ch * d);
            block(sk.s, k, rh, ch, rh * d + n, ch * d + n);
        }
    return SymplecticMatrix(std::move(s));
}

}  // namespace weylext
