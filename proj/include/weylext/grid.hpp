// grid.hpp — uniform truncated grids on R^d, quadrature inner products, state vectors.
//
// Conventions used throughout the library (hbar = 1):
//   axis nodes      x_i  = -L + i*dx,          dx  = 2L/N,  i = 0..N-1,  N even
//   dual-axis nodes xi_l = (l - N/2)*dxi,      dxi = 2*pi/(N*dx)
//   inner(u, v) = sum_i u_i conj(v_i) * dx^d   (linear in the first argument)
// Multi-axis arrays are stored row-major with axis 0 slowest ("x-major").

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylext {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

struct Axis {
    double half_width{0.0};  // L
    int n{0};                // N, even

    double dx() const { return 2.0 * half_width / n; }
    double dxi() const { return std::numbers::pi / half_width; }  // 2*pi/(N*dx)
    double node(int i) const { return -half_width + dx() * i; }
    double dual_node(int l) const { return (l - n / 2) * dxi(); }

    // the frequency axis, itself a uniform axis with nodes (l - N/2)*dxi
    Axis dual() const { return Axis{n / 2 * dxi(), n}; }

    bool operator==(const Axis&) const = default;
};

class Grid {
public:
    Grid() = default;

    Grid(double half_width, int n, int dim = 1)
        : axes_(static_cast<size_t>(dim), Axis{half_width, n}) {
        validate();
    }

    explicit Grid(std::vector<Axis> axes) : axes_(std::move(axes)) { validate(); }

    int dim() const { return static_cast<int>(axes_.size()); }
    const Axis& axis(int a) const { return axes_.at(static_cast<size_t>(a)); }
    const std::vector<Axis>& axes() const { return axes_; }

    long size() const {
        long s = 1;
        for (const auto& a : axes_) s *= a.n;
        return s;
    }

    // product of axis spacings, the quadrature weight dx^d
    double cell() const {
        double w = 1.0;
        for (const auto& a : axes_) w *= a.dx();
        return w;
    }

    // node coordinates of the flat index (axis 0 slowest)
    Eigen::VectorXd node(long flat) const {
        Eigen::VectorXd x(dim());
        for (int a = dim() - 1; a >= 0; --a) {
            const int n = axes_[static_cast<size_t>(a)].n;
            x[a] = axes_[static_cast<size_t>(a)].node(static_cast<int>(flat % n));
            flat /= n;
        }
        return x;
    }

    // direct product, this grid's axes first
    Grid product(const Grid& other) const {
        std::vector<Axis> ax = axes_;
        ax.insert(ax.end(), other.axes_.begin(), other.axes_.end());
        return Grid(std::move(ax));
    }

    // phase-space companion: position axes followed by their dual axes
    Grid phase_grid() const {
        std::vector<Axis> ax = axes_;
        for (const auto& a : axes_) ax.push_back(a.dual());
        return Grid(std::move(ax));
    }

    bool operator==(const Grid&) const = default;

private:
    void validate() const {
        if (axes_.empty()) throw std::invalid_argument("Grid: needs at least one axis");
        for (const auto& a : axes_) {
            if (a.half_width <= 0.0) throw std::invalid_argument("Grid: half_width must be positive");
            if (a.n <= 0 || a.n % 2 != 0) throw std::invalid_argument("Grid: points_per_axis must be even and positive");
        }
    }

    std::vector<Axis> axes_;
};

struct StateVector {
    Grid grid;
    Vec values;

    StateVector() = default;
    StateVector(Grid g, Vec v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid.size())
            throw std::invalid_argument("StateVector: value count does not match grid");
    }
};

// (u|v) = sum u conj(v) dx^d, linear in the first argument
inline cplx weighted_inner(const StateVector& u, const StateVector& v) {
    if (u.grid != v.grid) throw std::invalid_argument("weighted_inner: grid mismatch");
    return v.values.dot(u.values) * u.grid.cell();  // Eigen dot conjugates its callee
}

inline double weighted_norm(const StateVector& u) {
    return std::sqrt(std::abs(weighted_inner(u, u)));
}

inline double weighted_norm(const Grid& g, const Vec& v) {
    return v.norm() * std::sqrt(g.cell());
}

// tensor product in x-major ordering: (u (x) v)[i*Nv + j] = u_i v_j
inline StateVector tensor(const StateVector& u, const StateVector& v) {
    Vec out(u.values.size() * v.values.size());
    for (long i = 0; i < u.values.size(); ++i)
        out.segment(i * v.values.size(), v.values.size()) = u.values[i] * v.values;
    return StateVector(u.grid.product(v.grid), std::move(out));
}

}  // namespace weylext
