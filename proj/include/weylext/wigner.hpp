// wigner.hpp — cross-Wigner transforms, Moyal star products, Bopp operators.
//
// W(psi,phi)(x,xi) = (1/2pi)^d sum_y e^{-i xi y} psi(x + y/2) conj(phi(x - y/2)) dx^d
// with half-step values by band-limited interpolation. The phase-grid variant
// restricts offsets to the dual grid's resolvable range (consistent with the
// quantize/dequantize pair); the free-point evaluator used by the closed-form
// intertwiners integrates the full offset range.

#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <stdexcept>
#include <vector>

#include "weylext/fourier.hpp"
#include "weylext/grid.hpp"
#include "weylext/numerics.hpp"
#include "weylext/symplectic.hpp"
#include "weylext/weyl.hpp"

namespace weylext {

// cross-Wigner transform on the dual-paired phase grid
inline SampledSymbol cross_wigner(const StateVector& psi, const StateVector& phi) {
    if (psi.grid != phi.grid) throw std::invalid_argument("cross_wigner: grid mismatch");
    const int d = psi.grid.dim();
    if (d != 1 && d != 2) throw std::invalid_argument("cross_wigner: supported dimensions are 1 and 2");
    const double pref = std::pow(2.0 * std::numbers::pi, -d) * psi.grid.cell();

    if (d == 1) {
        const Axis& ax = psi.grid.axis(0);
        const int n = ax.n;
        const Vec pu = upsample2(psi.values);
        const Vec fu = upsample2(phi.values);
        Vec out(static_cast<long>(n) * n);
        for (int m = 0; m < n; ++m)
            for (int l = 0; l < n; ++l) {
                const double xi = ax.dual_node(l);
                cplx acc = 0;
                for (int r = -n / 2; r <= n / 2; ++r) {
                    const int ip = 2 * m + r, im = 2 * m - r;
                    if (ip < 0 || ip >= 2 * n || im < 0 || im >= 2 * n) continue;
                    const double w = (std::abs(r) == n / 2) ? 0.5 : 1.0;
                    acc += w * pu[ip] * std::conj(fu[im]) * std::exp(cplx(0.0, -xi * r * ax.dx()));
                }
                out[static_cast<long>(m) * n + l] = pref * acc;
            }
        return SampledSymbol(psi.grid.phase_grid(), std::move(out));
    }

    // d == 2: separable offset transforms per midpoint
    const Axis& a1 = psi.grid.axis(0);
    const Axis& a2 = psi.grid.axis(1);
    const int n1 = a1.n, n2 = a2.n;
    // upsample both axes of the states
    auto up2d = [&](const Vec& v) {
        Vec u = detail::upsample_position_axis(psi.grid, v, 0, {n1, n2});
        return detail::upsample_position_axis(psi.grid, u, 1, {2 * n1, n2});
    };
    const Vec pu = up2d(psi.values);
    const Vec fu = up2d(phi.values);
    auto at = [&](const Vec& u, int p1, int p2) -> cplx {
        if (p1 < 0 || p1 >= 2 * n1 || p2 < 0 || p2 >= 2 * n2) return 0.0;
        return u[static_cast<long>(p1) * 2 * n2 + p2];
    };
    Vec out(psi.grid.phase_grid().size());
    Mat prod(n1, n2), t1(n1, n2);
    for (int m1 = 0; m1 < n1; ++m1)
        for (int m2 = 0; m2 < n2; ++m2) {
            for (int r1 = -n1 / 2; r1 < n1 / 2; ++r1)
                for (int r2 = -n2 / 2; r2 < n2 / 2; ++r2)
                    prod(r1 + n1 / 2, r2 + n2 / 2) =
                        at(pu, 2 * m1 + r1, 2 * m2 + r2) * std::conj(at(fu, 2 * m1 - r1, 2 * m2 - r2));
            // transform offset axis 1 then axis 2
            for (int l1 = 0; l1 < n1; ++l1)
                for (int r2 = 0; r2 < n2; ++r2) {
                    cplx acc = 0;
                    for (int r1 = 0; r1 < n1; ++r1)
                        acc += prod(r1, r2) * std::exp(cplx(0.0, -a1.dual_node(l1) * (r1 - n1 / 2) * a1.dx()));
                    t1(l1, r2) = acc;
                }
            for (int l1 = 0; l1 < n1; ++l1)
                for (int l2 = 0; l2 < n2; ++l2) {
                    cplx acc = 0;
                    for (int r2 = 0; r2 < n2; ++r2)
                        acc += t1(l1, r2) * std::exp(cplx(0.0, -a2.dual_node(l2) * (r2 - n2 / 2) * a2.dx()));
                    const long idx = ((static_cast<long>(m1) * n2 + m2) * n1 + l1) * n2 + l2;
                    out[idx] = pref * acc;
                }
        }
    return SampledSymbol(psi.grid.phase_grid(), std::move(out));
}

// cross-Wigner integral of 1D states evaluated at arbitrary points
// (x, xi) = (x_scale * x_i, xi_scale * x_j); full offset range, tails clipped
inline Mat cross_wigner_scaled_points(const StateVector& psi, const StateVector& phi,
                                      double x_scale, double xi_scale) {
    if (psi.grid != phi.grid || psi.grid.dim() != 1)
        throw std::invalid_argument("cross_wigner_scaled_points: matching 1D grids required");
    const Axis& ax = psi.grid.axis(0);
    const int n = ax.n;
    const Vec pu = upsample2(psi.values);
    const Vec fu = upsample2(phi.values);
    const double pref = ax.dx() / (2.0 * std::numbers::pi);
    Mat out(n, n);
    // x = x_scale * x_i lies on the dx*x_scale lattice; for x_scale in {1, 1/2}
    // the interpolation points x +- r dx/2 live on the upsampled lattice
    for (int i = 0; i < n; ++i) {
        const double x = x_scale * ax.node(i);
        // index of x on the half-step lattice u_p = -L + p dx/2
        const double pf = (x + ax.half_width) / (0.5 * ax.dx());
        const int pc = static_cast<int>(std::lround(pf));
        if (std::abs(pf - pc) > 1e-9)
            throw std::invalid_argument("cross_wigner_scaled_points: x_scale must map nodes onto the half-step lattice");
        for (int j = 0; j < n; ++j) {
            const double xi = xi_scale * ax.node(j);
            cplx acc = 0;
            for (int r = -n; r < n; ++r) {
                const int ip = pc + r, im = pc - r;
                if (ip < 0 || ip >= 2 * n || im < 0 || im >= 2 * n) continue;
                acc += pu[ip] * std::conj(fu[im]) * std::exp(cplx(0.0, -xi * r * ax.dx()));
            }
            out(i, j) = pref * acc;
        }
    }
    return out;
}

// Moyal star product via the operator route: a * b = symbol of Op(a) Op(b)
inline SampledSymbol moyal_star(const SampledSymbol& a, const SampledSymbol& b) {
    if (!(a.phase_grid == b.phase_grid)) throw std::invalid_argument("moyal_star: phase grid mismatch");
    const OperatorMatrix A = quantize(a);
    const OperatorMatrix B = quantize(b);
    OperatorMatrix C(A.in_grid, A.out_grid, A.m * B.m);
    return dequantize(C);
}

// quadratic left factor built exactly, then the same operator route
inline SampledSymbol moyal_star(const QuadraticSymbol& a, const SampledSymbol& b) {
    const OperatorMatrix A = quantize_quadratic(a, b.position_grid());
    const OperatorMatrix B = quantize(b);
    OperatorMatrix C(A.in_grid, A.out_grid, A.m * B.m);
    return dequantize(C);
}

// Bopp symbol a_B(x,y;xi,eta) = a(x - eta/2, y + xi/2) over R^{4n}
inline SymbolFn bopp_symbol(const SymbolFn& a, int n) {
    return [a, n](const Eigen::VectorXd& zeta) {
        // zeta = (x, y; xi, eta), each block of length n
        Eigen::VectorXd z(2 * n);
        z.head(n) = zeta.segment(0, n) - 0.5 * zeta.segment(3 * n, n);
        z.tail(n) = zeta.segment(n, n) + 0.5 * zeta.segment(2 * n, n);
        return a(z);
    };
}

inline QuadraticSymbol bopp_symbol(const QuadraticSymbol& a) {
    const int n = a.base_dim();
    RMat T = RMat::Zero(2 * n, 4 * n);
    T.block(0, 0, n, n) = RMat::Identity(n, n);
    T.block(0, 3 * n, n, n) = -0.5 * RMat::Identity(n, n);
    T.block(n, n, n, n) = RMat::Identity(n, n);
    T.block(n, 2 * n, n, n) = 0.5 * RMat::Identity(n, n);
    RMat M = T.transpose() * a.M * T;
    M = RMat(0.5 * (M + M.transpose().eval()));
    return QuadraticSymbol(M, T.transpose() * a.v, a.c);
}

// the symplectomorphism of the Bopp extension, s_B in Sp(4n, R)
inline SymplecticMatrix bopp_symplectic(int n) {
    RMat D = RMat::Zero(2 * n, 2 * n);
    D.topRightCorner(n, n) = RMat::Identity(n, n);
    D.bottomLeftCorner(n, n) = RMat::Identity(n, n);
    RMat s(4 * n, 4 * n);
    s.topLeftCorner(2 * n, 2 * n) = RMat::Identity(2 * n, 2 * n);
    s.topRightCorner(2 * n, 2 * n) = -0.5 * D;
    s.bottomLeftCorner(2 * n, 2 * n) = D;
    s.bottomRightCorner(2 * n, 2 * n) = 0.5 * RMat::Identity(2 * n, 2 * n);
    return SymplecticMatrix(std::move(s));
}

// Bopp operator a* acting on L^2(R^{2n}), (x,y) as positions
inline OperatorMatrix bopp_operator(const QuadraticSymbol& a, const Grid& grid) {
    if (grid.dim() != 2 * a.base_dim())
        throw std::invalid_argument("bopp_operator: grid must cover R^{2n}");
    return quantize_quadratic(bopp_symbol(a), grid);
}

inline OperatorMatrix bopp_operator(const SymbolFn& a, int n, const Grid& grid) {
    if (grid.dim() != 2 * n) throw std::invalid_argument("bopp_operator: grid must cover R^{2n}");
    return quantize(sample_symbol(bopp_symbol(a, n), grid));
}

}  // namespace weylext
