// fourier.hpp — discrete Fourier transform between a grid axis and its dual,
// and band-limited (trigonometric) 2x upsampling with the split-Nyquist rule.
//
// dft kernel convention: F[f](xi_l) = sum_i exp(-i*sign*xi_l*x_i) f(x_i) dx.
// Prefactors of specific integral formulas are carried by the callers.

#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <stdexcept>

#include "weylext/grid.hpp"

namespace weylext {

// dense transform along one axis of a (possibly multi-axis) row-major array
inline Vec dft_axis(const Grid& g, const Vec& f, int axis, int sign) {
    const Axis& ax = g.axis(axis);
    const int n = ax.n;
    Mat ph(n, n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            ph(l, i) = std::exp(cplx(0.0, -sign * ax.dual_node(l) * ax.node(i))) * ax.dx();

    long stride = 1;
    for (int a = axis + 1; a < g.dim(); ++a) stride *= g.axis(a).n;
    const long outer = g.size() / (stride * n);

    Vec out(f.size());
    Vec slice(n), tslice(n);
    for (long o = 0; o < outer; ++o)
        for (long s = 0; s < stride; ++s) {
            const long base = o * stride * n + s;
            for (int i = 0; i < n; ++i) slice[i] = f[base + i * stride];
            tslice = ph * slice;
            for (int l = 0; l < n; ++l) out[base + l * stride] = tslice[l];
        }
    return out;
}

// F[f](xi) on the dual grid; sign=+1 gives the e^{-i xi x} kernel
inline StateVector dft(const StateVector& f, int sign) {
    std::vector<Axis> dual_axes;
    for (const auto& a : f.grid.axes()) dual_axes.push_back(a.dual());
    Vec v = f.values;
    for (int a = 0; a < f.grid.dim(); ++a) v = dft_axis(f.grid, v, a, sign);
    return StateVector(Grid(std::move(dual_axes)), std::move(v));
}

// round-trip inverse of dft(.,+1): dft(dft(f,+1),-1)/(2 pi)^d = f exactly
inline StateVector dft_inverse(const StateVector& F) {
    StateVector f = dft(F, -1);
    f.values /= std::pow(2.0 * std::numbers::pi, F.grid.dim());
    return f;
}

// trigonometric interpolation of n samples onto the 2n half-step lattice
// u_p = -L + p*dx/2; exact on band-limited data, Nyquist mode split evenly.
inline Vec upsample2(const Vec& f) {
    const int n = static_cast<int>(f.size());
    if (n % 2 != 0) throw std::invalid_argument("upsample2: even length required");
    // forward DFT in index space
    Vec F(n);
    for (int k = 0; k < n; ++k) {
        cplx acc = 0;
        for (int m = 0; m < n; ++m)
            acc += f[m] * std::exp(cplx(0.0, -2.0 * std::numbers::pi * k * m / n));
        F[k] = acc;
    }
    // zero-padded inverse on 2n points, Nyquist split
    Vec out = Vec::Zero(2 * n);
    for (int p = 0; p < 2 * n; ++p) {
        cplx acc = 0;
        const double t = 0.5 * p;  // fractional index
        for (int k = 0; k < n / 2; ++k)
            acc += F[k] * std::exp(cplx(0.0, 2.0 * std::numbers::pi * k * t / n));
        for (int k = n / 2 + 1; k < n; ++k)
            acc += F[k] * std::exp(cplx(0.0, 2.0 * std::numbers::pi * (k - n) * t / n));
        acc += F[n / 2] * std::cos(std::numbers::pi * t);
        out[p] = acc / static_cast<double>(n);
    }
    return out;
}

}  // namespace weylext
