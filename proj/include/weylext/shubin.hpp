// shubin.hpp — sampled diagnostics for the symbol estimates
//   C0 |z|^{m0} <= |a(z)| <= C1 |z|^{m1}   for |z| >= R0
//   |d^alpha a(z)| <= C_alpha |a(z)| |z|^{-rho |alpha|}
// Everything here is sampled evidence on spheres, never certification.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "weylext/weyl.hpp"

namespace weylext {

// deterministic quasi-uniform sphere points: Richtmyer (additive-recurrence)
// sequence in the unit cube pushed through Box-Muller and normalized
inline std::vector<Eigen::VectorXd> sphere_samples(int dim, int count, unsigned seed = 0) {
    static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    const int pairs = (dim + 1) / 2;
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd g(2 * pairs);
        for (int p = 0; p < pairs; ++p) {
            const double a1 = std::sqrt(primes[(2 * p) % 12]);
            const double a2 = std::sqrt(primes[(2 * p + 1) % 12]);
            double u1 = std::fmod((i + 1 + seed) * a1, 1.0);
            double u2 = std::fmod((i + 1 + seed) * a2, 1.0);
            u1 = std::max(u1, 1e-12);
            g[2 * p] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            g[2 * p + 1] = std::sqrt(-2.0 * std::log(u1)) * std::sin(2.0 * std::numbers::pi * u2);
        }
        Eigen::VectorXd v = g.head(dim);
        const double n = v.norm();
        if (n < 1e-12) continue;
        out.push_back(v / n);
    }
    return out;
}

struct RadiusEnvelope {
    double radius{0};
    double min_abs{0};       // sphere minimum of |a|
    double max_abs{0};
    double lower_ratio{0};   // min|a| / R^{m0}
    double upper_ratio{0};   // max|a| / R^{m1}
};

struct GrowthReport {
    double c0_est{0};
    double c1_est{0};
    bool lower_bound_violated{false};
    std::vector<RadiusEnvelope> per_radius;
};

// sample |a| on spheres |z| = R; extra unit directions in `witness_dirs`
// (e.g. an analytically known vanishing subspace) are always included
inline GrowthReport growth_envelope(const SymbolFn& a, int dim, double m0, double m1,
                                    const std::vector<double>& radii, int n_samples = 1024,
                                    const std::vector<Eigen::VectorXd>& witness_dirs = {},
                                    unsigned seed = 0) {
    if (radii.empty()) throw std::invalid_argument("growth_envelope: radii must be nonempty");
    for (size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1]) throw std::invalid_argument("growth_envelope: radii must increase");

    std::vector<Eigen::VectorXd> dirs = sphere_samples(dim, n_samples, seed);
    for (const auto& w : witness_dirs) dirs.push_back(w.normalized());

    GrowthReport rep;
    rep.c0_est = std::numeric_limits<double>::infinity();
    rep.c1_est = 0;
    for (const double R : radii) {
        RadiusEnvelope env;
        env.radius = R;
        env.min_abs = std::numeric_limits<double>::infinity();
        env.max_abs = 0;
        for (const auto& d : dirs) {
            const double v = std::abs(a(R * d));
            env.min_abs = std::min(env.min_abs, v);
            env.max_abs = std::max(env.max_abs, v);
        }
        env.lower_ratio = env.min_abs / std::pow(R, m0);
        env.upper_ratio = env.max_abs / std::pow(R, m1);
        rep.c0_est = std::min(rep.c0_est, env.lower_ratio);
        rep.c1_est = std::max(rep.c1_est, env.upper_ratio);
        rep.per_radius.push_back(env);
    }
    rep.lower_bound_violated = rep.c0_est < 1e-8;
    return rep;
}

struct DerivativeRatioReport {
    double worst_order1{0};   // sup |d a| R^{rho} / |a|
    double worst_order2{0};   // sup |d^2 a| R^{2 rho} / |a|
    bool unbounded{false};    // |a| below 1e-12 at a sample with nonzero derivative
};

inline DerivativeRatioReport derivative_ratio(const SymbolFn& a, int dim, double rho,
                                              const std::vector<double>& radii,
                                              int n_samples = 256,
                                              const std::vector<Eigen::VectorXd>& witness_dirs = {},
                                              unsigned seed = 0) {
    std::vector<Eigen::VectorXd> dirs = sphere_samples(dim, n_samples, seed);
    for (const auto& w : witness_dirs) dirs.push_back(w.normalized());
    DerivativeRatioReport rep;
    for (const double R : radii) {
        const double h = 1e-4 * R;
        for (const auto& d : dirs) {
            const Eigen::VectorXd z = R * d;
            const double az = std::abs(a(z));
            auto shift = [&](int i, double s) {
                Eigen::VectorXd zz = z;
                zz[i] += s;
                return zz;
            };
            for (int i = 0; i < dim; ++i) {
                const double d1 = std::abs(a(shift(i, h)) - a(shift(i, -h))) / (2 * h);
                if (az < 1e-12) {
                    const double d2d =
                        std::abs(a(shift(i, h)) - 2.0 * a(z) + a(shift(i, -h))) / (h * h);
                    if (d1 > 1e-9 || d2d > 1e-9) rep.unbounded = true;
                    continue;
                }
                rep.worst_order1 = std::max(rep.worst_order1, d1 * std::pow(R, rho) / az);
                for (int j = i; j < dim; ++j) {
                    double d2;
                    if (i == j) {
                        d2 = std::abs(a(shift(i, h)) - 2.0 * a(z) + a(shift(i, -h))) / (h * h);
                    } else {
                        auto shift2 = [&](double si, double sj) {
                            Eigen::VectorXd zz = z;
                            zz[i] += si;
                            zz[j] += sj;
                            return a(zz);
                        };
                        d2 = std::abs(shift2(h, h) - shift2(h, -h) - shift2(-h, h) + shift2(-h, -h)) /
                             (4 * h * h);
                    }
                    rep.worst_order2 = std::max(rep.worst_order2, d2 * std::pow(R, 2 * rho) / az);
                }
            }
        }
    }
    return rep;
}

struct ShubinParams {
    double rho{1.0};
    double m0{2.0};
    double m1{2.0};
    std::vector<double> radii{5.0, 7.5, 10.0, 15.0};
    int n_samples{1024};
    unsigned seed{0};
};

struct ShubinReport {
    bool passes{false};
    GrowthReport growth;
    DerivativeRatioReport derivatives;
};

inline ShubinReport classify(const SymbolFn& a, int dim, const ShubinParams& p,
                             const std::vector<Eigen::VectorXd>& witness_dirs = {}) {
    ShubinReport rep;
    rep.growth = growth_envelope(a, dim, p.m0, p.m1, p.radii, p.n_samples, witness_dirs, p.seed);
    rep.derivatives = derivative_ratio(a, dim, p.rho, p.radii, std::max(64, p.n_samples / 4),
                                       witness_dirs, p.seed);
    rep.passes = !rep.growth.lower_bound_violated && !rep.derivatives.unbounded &&
                 std::isfinite(rep.growth.c1_est);
    return rep;
}

}  // namespace weylext
