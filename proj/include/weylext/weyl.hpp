// weyl.hpp — Weyl symbol <-> Schwartz kernel <-> operator matrix conversions
// on truncated grids, plus the exact quantizer for quadratic symbols.
//
// Kernel formula: K(x,y) = (1/2pi)^d int e^{i xi (x-y)} a((x+y)/2, xi) d xi,
// discretized with the symbol's frequency axes as the quadrature nodes and
// midpoints filled in by band-limited interpolation. Kernel offsets |x-y|
// beyond the frequency grid's resolvable half-range alias and are zeroed.
//
// The inverse reads anti-diagonal kernel slices at integer and half-integer
// midpoints (even/odd offset parities), whose step-2dx quadratures determine
// a(x, xi) and its half-band alias partner a(x, xi + pi/dx); the pair is
// unfolded per x-Fourier mode. This makes dequantize(quantize(a)) exact for
// decaying symbols up to boundary truncation.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

#include "weylext/fourier.hpp"
#include "weylext/grid.hpp"
#include "weylext/numerics.hpp"

namespace weylext {

struct SampledSymbol {
    Grid phase_grid;  // position axes followed by their dual axes
    Vec values;       // row-major, position indices slowest

    SampledSymbol() = default;
    SampledSymbol(Grid g, Vec v) : phase_grid(std::move(g)), values(std::move(v)) {
        if (phase_grid.dim() % 2 != 0)
            throw std::invalid_argument("SampledSymbol: phase grid dimension must be even");
        if (values.size() != phase_grid.size())
            throw std::invalid_argument("SampledSymbol: value count does not match grid");
        const int d = phase_grid.dim() / 2;
        for (int a = 0; a < d; ++a)
            if (!(phase_grid.axis(d + a) == phase_grid.axis(a).dual()))
                throw std::invalid_argument("SampledSymbol: frequency axes are not dual to position axes");
    }

    int base_dim() const { return phase_grid.dim() / 2; }

    Grid position_grid() const {
        std::vector<Axis> ax(phase_grid.axes().begin(), phase_grid.axes().begin() + base_dim());
        return Grid(std::move(ax));
    }
};

// closed-form symbol over R^{2m}, evaluable at arbitrary phase points
using SymbolFn = std::function<cplx(const Eigen::VectorXd&)>;

inline SampledSymbol sample_symbol(const SymbolFn& fn, const Grid& position_grid) {
    const Grid pg = position_grid.phase_grid();
    Vec v(pg.size());
    for (long i = 0; i < pg.size(); ++i) v[i] = fn(pg.node(i));
    return SampledSymbol(pg, std::move(v));
}

// a(z) = 1/2 z.Mz + v.z + c on R^{2m}, z = (x_1..x_m, xi_1..xi_m)
struct QuadraticSymbol {
    RMat M;
    Eigen::VectorXd v;
    double c{0};

    QuadraticSymbol() = default;
    QuadraticSymbol(RMat M_, Eigen::VectorXd v_, double c_ = 0.0)
        : M(std::move(M_)), v(std::move(v_)), c(c_) {
        if (M.rows() != M.cols() || M.rows() != v.size() || M.rows() % 2 != 0)
            throw std::invalid_argument("QuadraticSymbol: inconsistent sizes");
        if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("QuadraticSymbol: M must be symmetric");
    }

    int base_dim() const { return static_cast<int>(M.rows()) / 2; }

    double value(const Eigen::VectorXd& z) const { return 0.5 * z.dot(M * z) + v.dot(z) + c; }

    SymbolFn fn() const {
        return [q = *this](const Eigen::VectorXd& z) { return cplx(q.value(z), 0.0); };
    }
};

namespace detail {

// per-axis phase table ph(l, r+n) = exp(i xi_l r dx), r = -n..n
inline Mat phase_table(const Axis& ax) {
    const int n = ax.n;
    Mat ph(n, 2 * n + 1);
    for (int l = 0; l < n; ++l)
        for (int r = -n; r <= n; ++r)
            ph(l, r + n) = std::exp(cplx(0.0, ax.dual_node(l) * r * ax.dx()));
    return ph;
}

// upsample the symbol along one position axis (axis index < base_dim)
inline Vec upsample_position_axis(const Grid& pg, const Vec& vals, int axis,
                                  const std::vector<int>& shape_override = {}) {
    std::vector<int> shape;
    if (shape_override.empty())
        for (const auto& a : pg.axes()) shape.push_back(a.n);
    else
        shape = shape_override;
    const int n = shape[static_cast<size_t>(axis)];
    long stride = 1;
    for (size_t a = static_cast<size_t>(axis) + 1; a < shape.size(); ++a) stride *= shape[a];
    long outer = 1;
    for (size_t a = 0; a < static_cast<size_t>(axis); ++a) outer *= shape[a];

    Vec out(outer * 2 * n * stride);
    Vec slice(n);
    for (long o = 0; o < outer; ++o)
        for (long s = 0; s < stride; ++s) {
            for (int i = 0; i < n; ++i) slice[i] = vals[(o * n + i) * stride + s];
            const Vec up = upsample2(slice);
            for (int p = 0; p < 2 * n; ++p) out[(o * 2 * n + p) * stride + s] = up[p];
        }
    return out;
}

}  // namespace detail

// K(x_i, x_j) on the node-pair lattice; quadrature_absorbed = false
inline OperatorMatrix symbol_to_kernel(const SampledSymbol& a) {
    const int d = a.base_dim();
    if (d != 1 && d != 2)
        throw std::invalid_argument("symbol_to_kernel: supported base dimensions are 1 and 2");
    const Grid pos = a.position_grid();

    if (d == 1) {
        const Axis& ax = pos.axis(0);
        const int n = ax.n;
        const Vec A = detail::upsample_position_axis(a.phase_grid, a.values, 0);  // [2n, n]
        const Mat ph = detail::phase_table(ax);
        const double w = ax.dxi() / (2.0 * std::numbers::pi);
        Mat K = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (std::abs(i - j) > n / 2) continue;  // beyond resolvable offset range
                cplx acc = 0;
                const long base = static_cast<long>(i + j) * n;
                for (int l = 0; l < n; ++l) acc += A[base + l] * ph(l, (i - j) + n);
                K(i, j) = w * acc;
            }
        return OperatorMatrix(pos, pos, std::move(K), false);
    }

    // d == 2: contract axis 1 phases inside the (i1,j1) loop
    const Axis& a1 = pos.axis(0);
    const Axis& a2 = pos.axis(1);
    const int n1 = a1.n, n2 = a2.n;
    Vec A = detail::upsample_position_axis(a.phase_grid, a.values, 0);
    A = detail::upsample_position_axis(a.phase_grid, A, 1, {2 * n1, n2, n1, n2});
    // A is now [2n1, 2n2, n1(l1), n2(l2)]
    const Mat ph1 = detail::phase_table(a1);
    const Mat ph2 = detail::phase_table(a2);
    const double w = a1.dxi() * a2.dxi() / std::pow(2.0 * std::numbers::pi, 2);
    const long tot = pos.size();
    Mat K = Mat::Zero(tot, tot);
    Mat C(2 * n2, n2);  // C(p2, l2) for the current (i1, j1)
    for (int i1 = 0; i1 < n1; ++i1)
        for (int j1 = 0; j1 < n1; ++j1) {
            if (std::abs(i1 - j1) > n1 / 2) continue;
            const long p1 = i1 + j1;
            for (int p2 = 0; p2 < 2 * n2; ++p2)
                for (int l2 = 0; l2 < n2; ++l2) {
                    cplx acc = 0;
                    const long base = ((p1 * 2 * n2 + p2) * n1) * n2 + l2;
                    for (int l1 = 0; l1 < n1; ++l1) acc += A[base + static_cast<long>(l1) * n2] * ph1(l1, (i1 - j1) + n1);
                    C(p2, l2) = acc;
                }
            for (int i2 = 0; i2 < n2; ++i2)
                for (int j2 = 0; j2 < n2; ++j2) {
                    if (std::abs(i2 - j2) > n2 / 2) continue;
                    cplx acc = 0;
                    for (int l2 = 0; l2 < n2; ++l2) acc += C(i2 + j2, l2) * ph2(l2, (i2 - j2) + n2);
                    K(static_cast<long>(i1) * n2 + i2, static_cast<long>(j1) * n2 + j2) = w * acc;
                }
        }
    return OperatorMatrix(pos, pos, std::move(K), false);
}

// Op^w(a) as a matrix with quadrature absorbed: M = K * dx^d
inline OperatorMatrix quantize(const SampledSymbol& a) {
    OperatorMatrix K = symbol_to_kernel(a);
    K.m *= K.in_grid.cell();
    K.quadrature_absorbed = true;
    return K;
}

inline OperatorMatrix quantize(const SymbolFn& fn, const Grid& position_grid) {
    return quantize(sample_symbol(fn, position_grid));
}

// Weyl symbol of a 1D-grid operator via the parity-unfolded inverse transform
inline SampledSymbol dequantize(const OperatorMatrix& M) {
    if (M.in_grid != M.out_grid) throw std::invalid_argument("dequantize: endomorphism required");
    if (M.in_grid.dim() != 1) throw std::invalid_argument("dequantize: only 1D grids are supported");
    const Axis& ax = M.in_grid.axis(0);
    const int n = ax.n;
    const double dx = ax.dx();
    Mat K = M.m;
    if (M.quadrature_absorbed) K /= dx;

    // even-parity slices at integer midpoints, odd-parity at half midpoints;
    // offsets run over one residue system, with the even channel's boundary
    // offset r = +-n/2 split at half weight to keep the stencil symmetric
    Mat E = Mat::Zero(n, n), O = Mat::Zero(n, n);  // [m, l]
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
            const double xi = ax.dual_node(l);
            cplx acce = 0, acco = 0;
            for (int s = -n / 4; s <= n / 4; ++s) {
                const double we = (std::abs(s) == n / 4) ? 0.5 : 1.0;
                if (m + s >= 0 && m + s < n && m - s >= 0 && m - s < n)
                    acce += we * K(m + s, m - s) * std::exp(cplx(0.0, -xi * 2.0 * s * dx));
                if (s < n / 4 && m + 1 + s >= 0 && m + 1 + s < n && m - s >= 0 && m - s < n)
                    acco += K(m + 1 + s, m - s) * std::exp(cplx(0.0, -xi * (2.0 * s + 1.0) * dx));
            }
            E(m, l) = 2.0 * dx * acce;
            O(m, l) = 2.0 * dx * acco;
        }

    // x-Fourier unfold of the half-band alias pair
    Mat Eh = Mat::Zero(n, n), Oh = Mat::Zero(n, n);  // [kappa index, l]
    for (int k = 0; k < n; ++k) {
        const double kap = k - n / 2.0;  // signed mode
        for (int m = 0; m < n; ++m) {
            const cplx ph = std::exp(cplx(0.0, -2.0 * std::numbers::pi * kap * m / n));
            for (int l = 0; l < n; ++l) {
                Eh(k, l) += ph * E(m, l);
                Oh(k, l) += ph * O(m, l);
            }
        }
    }
    Mat Bh = Mat::Zero(n, n);  // [kappa index, l] spectrum of a(., xi_l) over x
    for (int k = 0; k < n; ++k) {
        const double kap = k - n / 2.0;
        const cplx half_shift = std::exp(cplx(0.0, -std::numbers::pi * kap / n));
        for (int l = 0; l < n / 2; ++l) {
            if (k == 0) {  // unpaired Nyquist x-mode: half samples carry no information
                Bh(k, l) = 0.5 * Eh(k, l);
                Bh(k, l + n / 2) = 0.5 * Eh(k, l);
            } else {
                Bh(k, l) = 0.5 * (Eh(k, l) + half_shift * Oh(k, l));
                Bh(k, l + n / 2) = 0.5 * (Eh(k, l) - half_shift * Oh(k, l));
            }
        }
    }
    Vec out(static_cast<long>(n) * n);
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
            cplx acc = 0;
            for (int k = 0; k < n; ++k) {
                const double kap = k - n / 2.0;
                acc += Bh(k, l) * std::exp(cplx(0.0, 2.0 * std::numbers::pi * kap * m / n));
            }
            out[static_cast<long>(m) * n + l] = acc / static_cast<double>(n);
        }
    return SampledSymbol(M.in_grid.phase_grid(), std::move(out));
}

namespace detail {

// spectral momentum operator on one axis, exactly Hermitian:
// P(i,j) = (1/n) sum_l xi_l exp(i xi_l (x_i - x_j))
inline Mat momentum_1d(const Axis& ax) {
    const int n = ax.n;
    Mat P(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc = 0;
            for (int l = 0; l < n; ++l) {
                const double xi = ax.dual_node(l);
                acc += xi * std::exp(cplx(0.0, xi * (ax.node(i) - ax.node(j))));
            }
            P(i, j) = acc / static_cast<double>(n);
        }
    return P;
}

// kron chain of per-axis 1D factors, x-major ordering
inline Mat kron_chain(const std::vector<Mat>& factors) {
    Mat out = factors[0];
    for (size_t a = 1; a < factors.size(); ++a) {
        const Mat& f = factors[a];
        Mat next(out.rows() * f.rows(), out.cols() * f.cols());
        for (long i = 0; i < out.rows(); ++i)
            for (long j = 0; j < out.cols(); ++j)
                next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
        out = std::move(next);
    }
    return out;
}

}  // namespace detail

// kron-term decomposition of the quadratic quantization: the operator is a
// short sum of per-axis factor products, which keeps assembly at O(size^2)
// writes and enables matrix-free application on large product grids
struct QuadraticKronTerm {
    cplx coefficient{1.0};
    std::vector<Mat> factors;  // one per axis
};

inline std::vector<QuadraticKronTerm> quantize_quadratic_terms(const QuadraticSymbol& q,
                                                               const Grid& grid) {
    const int d = grid.dim();
    if (q.base_dim() != d)
        throw std::invalid_argument("quantize_quadratic: symbol/grid dimension mismatch");

    std::vector<Mat> P1(static_cast<size_t>(d));
    for (int a = 0; a < d; ++a) P1[static_cast<size_t>(a)] = detail::momentum_1d(grid.axis(a));
    auto eye = [&](int a) { return Mat(Mat::Identity(grid.axis(a).n, grid.axis(a).n)); };
    auto diag_x = [&](int a) {
        Mat D = Mat::Zero(grid.axis(a).n, grid.axis(a).n);
        for (int i = 0; i < grid.axis(a).n; ++i) D(i, i) = grid.axis(a).node(i);
        return D;
    };
    auto factor_of = [&](int t, int axis) -> Mat {
        if (t < d) return axis == t ? diag_x(axis) : eye(axis);
        return axis == t - d ? P1[static_cast<size_t>(axis)] : eye(axis);
    };

    std::vector<QuadraticKronTerm> terms;
    if (q.c != 0.0) {
        QuadraticKronTerm t{q.c, {}};
        for (int a = 0; a < d; ++a) t.factors.push_back(eye(a));
        terms.push_back(std::move(t));
    }
    for (int t = 0; t < 2 * d; ++t) {
        if (q.v[t] == 0.0) continue;
        QuadraticKronTerm term{q.v[t], {}};
        for (int a = 0; a < d; ++a) term.factors.push_back(factor_of(t, a));
        terms.push_back(std::move(term));
    }
    for (int t = 0; t < 2 * d; ++t)
        for (int u = 0; u < 2 * d; ++u) {
            if (q.M(t, u) == 0.0) continue;
            const int at = t % d, au = u % d;
            QuadraticKronTerm term{0.5 * q.M(t, u), {}};
            if (at == au) {
                const Mat ft = factor_of(t, at), fu = factor_of(u, au);
                const Mat sym = 0.5 * (ft * fu + fu * ft);
                for (int a = 0; a < d; ++a) term.factors.push_back(a == at ? sym : eye(a));
            } else {
                for (int a = 0; a < d; ++a) {
                    if (a == at) term.factors.push_back(factor_of(t, a));
                    else if (a == au) term.factors.push_back(factor_of(u, a));
                    else term.factors.push_back(eye(a));
                }
            }
            terms.push_back(std::move(term));
        }
    return terms;
}

// matrix-free application of the kron-term sum, for grids too large to
// materialize; dims 1 and 2
inline Vec apply_quadratic_terms(const std::vector<QuadraticKronTerm>& terms, const Grid& grid,
                                 const Vec& v) {
    const int d = grid.dim();
    if (d == 1) {
        Vec out = Vec::Zero(v.size());
        for (const auto& t : terms) out += t.coefficient * (t.factors[0] * v);
        return out;
    }
    if (d != 2) throw std::invalid_argument("apply_quadratic_terms: dims 1 and 2 only");
    const int n1 = grid.axis(0).n, n2 = grid.axis(1).n;
    const Eigen::Map<const Mat> V(v.data(), n2, n1);  // column-major: column = axis-0 index
    Vec out = Vec::Zero(v.size());
    Eigen::Map<Mat> O(out.data(), n2, n1);
    for (const auto& t : terms)
        O += t.coefficient * (t.factors[1] * V * t.factors[0].transpose());
    return out;
}

// exact Weyl quantization of a degree <= 2 polynomial symbol: monomials map
// by full symmetrization, x_a xi_b -> (X_a P_b + P_b X_a)/2, with X diagonal
// in the nodes and P spectral (diagonal in the dft basis)
inline OperatorMatrix quantize_quadratic(const QuadraticSymbol& q, const Grid& grid) {
    const long tot = grid.size();
    Mat H = Mat::Zero(tot, tot);
    for (const auto& t : quantize_quadratic_terms(q, grid))
        H += t.coefficient * detail::kron_chain(t.factors);
    return OperatorMatrix(grid, grid, std::move(H));
}

}  // namespace weylext
