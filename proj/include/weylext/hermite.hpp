// hermite.hpp — normalized Hermite functions, the reference eigenbasis of the
// 1D harmonic oscillator: h_0 = pi^{-1/4} exp(-x^2/2),
// h_{j+1} = sqrt(2/(j+1)) x h_j - sqrt(j/(j+1)) h_{j-1}.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "weylext/grid.hpp"

namespace weylext {

inline double hermite_value(int j, double x) {
    double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (j == 0) return h0;
    double h1 = std::sqrt(2.0) * x * h0;
    for (int k = 1; k < j; ++k) {
        const double h2 = std::sqrt(2.0 / (k + 1)) * x * h1 - std::sqrt(k / (k + 1.0)) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// h_0..h_nmax sampled on a 1D grid. The grid must contain the tails: the value
// of h_nmax at +/-L has to fall below tail_tol or the truncation would leak
// into every quadrature built on top of the basis.
inline std::vector<StateVector> hermite_oracle(int nmax, const Grid& grid,
                                               double tail_tol = 1e-8) {
    if (nmax < 0) throw std::invalid_argument("hermite_oracle: nmax must be >= 0");
    if (grid.dim() != 1) throw std::invalid_argument("hermite_oracle: 1D grid required");
    const double L = grid.axis(0).half_width;
    const double tail = std::max(std::abs(hermite_value(nmax, -L)), std::abs(hermite_value(nmax, L)));
    if (tail > tail_tol)
        throw std::domain_error("hermite_oracle: insufficient domain, |h_n(L)| = " +
                                std::to_string(tail));

    const int n = grid.axis(0).n;
    std::vector<Vec> h(static_cast<size_t>(nmax) + 1, Vec(n));
    for (int i = 0; i < n; ++i) {
        const double x = grid.axis(0).node(i);
        h[0][i] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
        if (nmax >= 1) h[1][i] = std::sqrt(2.0) * x * h[0][i];
        for (int j = 1; j < nmax; ++j)
            h[j + 1][i] = std::sqrt(2.0 / (j + 1)) * x * h[j][i] - std::sqrt(j / (j + 1.0)) * h[j - 1][i];
    }
    std::vector<StateVector> out;
    out.reserve(h.size());
    for (auto& v : h) out.emplace_back(grid, std::move(v));
    return out;
}

}  // namespace weylext
