// Metaplectic operators as quadratic-phase quadratures: Fourier reduction,
// inverses through the dual form, near-unitarity and symplectic covariance.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylext/extension.hpp"
#include "weylext/hermite.hpp"
#include "weylext/metaplectic.hpp"
#include "weylext/weyl.hpp"

using namespace weylext;

namespace {

QuadraticFormW fourier_w() {
    return QuadraticFormW(RMat::Zero(1, 1), RMat::Identity(1, 1), RMat::Zero(1, 1), 0);
}

SymplecticMatrix landau_s() {
    RMat D(2, 2);
    D << 0, 1, 1, 0;
    RMat s(4, 4);
    s.topLeftCorner(2, 2) = 0.5 * RMat::Identity(2, 2);
    s.topRightCorner(2, 2) = -D;
    s.bottomLeftCorner(2, 2) = 0.5 * D;
    s.bottomRightCorner(2, 2) = RMat::Identity(2, 2);
    return SymplecticMatrix(std::move(s));
}

SymplecticMatrix random_free_1d(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 0.4);
    const double P = nd(rng), Q = nd(rng);
    const double L = std::exp(0.3 * nd(rng) / 0.4);
    return symplectic_from_w(QuadraticFormW((RMat(1, 1) << P).finished(),
                                            (RMat(1, 1) << L).finished(),
                                            (RMat(1, 1) << Q).finished(), 0));
}

}  // namespace

TEST_CASE("Fourier-type W acts as the scaled dft: S h_j = e^{-i pi/4} (-i)^j h_j") {
    Grid g(8.0, 64);
    const auto h = hermite_oracle(5, g);
    const OperatorMatrix S = build_metaplectic(fourier_w(), g, g);
    for (int j = 0; j <= 4; ++j) {
        const cplx phase = std::exp(cplx(0.0, -std::numbers::pi / 4.0)) *
                           std::pow(cplx(0.0, -1.0), j);
        const Vec expect = phase * h[j].values;
        CHECK(((S.m * h[j].values) - expect).cwiseAbs().maxCoeff() <= 1e-8);
    }
    // zero in, zero out
    CHECK((S.m * Vec::Zero(g.size())).norm() == 0.0);
}

TEST_CASE("Landau S^{-1} equals the explicit two-variable quadrature") {
    Grid g2(7.0, 32, 2);
    const auto h = hermite_oracle(1, Grid(7.0, 32), 1e-6);
    const QuadraticFormW w = w_from_symplectic(landau_s().inverse());
    const OperatorMatrix Si = build_metaplectic(w, g2, g2);
    const StateVector in = tensor(h[0], h[0]);
    const Vec got = Si.m * in.values;

    // literal (1/2 pi i) * sum e^{i W(x,y;x',y')} Psi(x',y') dx' dy' with
    // W = -(y x' + x y') + x' y' + x y / 2
    const Axis ax = g2.axis(0);
    const int n = ax.n;
    Vec lit(g2.size());
    const cplx pref = 1.0 / (2.0 * std::numbers::pi * cplx(0.0, 1.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = ax.node(i), y = ax.node(j);
            cplx acc = 0;
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) {
                    const double xp = ax.node(ip), yp = ax.node(jp);
                    const double W = -(y * xp + x * yp) + xp * yp + 0.5 * x * y;
                    acc += std::exp(cplx(0.0, W)) * in.values[static_cast<long>(ip) * n + jp];
                }
            lit[static_cast<long>(i) * n + j] = pref * acc * ax.dx() * ax.dx();
        }
    CHECK((got - lit).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("dual form inverts: Fourier pair and Landau pair on Hermite inputs") {
    Grid g(8.0, 64);
    const auto h = hermite_oracle(3, g);
    const OperatorMatrix S = build_metaplectic(fourier_w(), g, g);
    const OperatorMatrix Si = inverse_metaplectic(fourier_w(), g, g);
    for (int j = 0; j <= 2; ++j)
        CHECK((Si.m * (S.m * h[j].values) - h[j].values).cwiseAbs().maxCoeff() <= 1e-8);

    // dual-of-dual rebuild gives the original matrix exactly (same W data)
    const OperatorMatrix S2 = build_metaplectic(w_dual(w_dual(fourier_w())), g, g);
    CHECK((S2.m - S.m).cwiseAbs().maxCoeff() == 0.0);

    Grid g2(7.0, 40, 2);
    const auto h1 = hermite_oracle(2, Grid(7.0, 40), 1e-6);
    const MetaplecticPair mp = metaplectic_pair(landau_s(), g2);
    const Vec v = tensor(h1[0], h1[1]).values;
    CHECK((mp.inverse.m * (mp.forward.m * v) - v).norm() * std::sqrt(g2.cell()) <= 1e-6);
}

TEST_CASE("near-unitarity on the Hermite product class") {
    Grid g2(8.5, 64, 2);
    const auto h = hermite_oracle(4, Grid(8.5, 64));
    const QuadraticFormW wi = w_from_symplectic(landau_s().inverse());
    for (int j = 0; j <= 4; ++j)
        for (int l = 0; l <= 4; ++l) {
            const StateVector v = tensor(h[j], h[l]);
            const double nv = weighted_norm(v);
            const double ns = weighted_norm(StateVector(g2, metaplectic_apply(wi, g2, g2, v.values)));
            CHECK(std::abs(ns - nv) <= 1e-6);
        }
}

TEST_CASE("unitarity defect of the full matrix on a self-dual grid") {
    // dx = dxi requires N = 2 L^2 / pi; the e^{-i x x'} kernel then matches the
    // unitary dft up to boundary phases and the matrix is near-unitary
    const double L = std::sqrt(32.0 * std::numbers::pi / 2.0);
    Grid g(L, 32);
    const OperatorMatrix S = build_metaplectic(fourier_w(), g, g);
    const Mat D = S.m.adjoint() * S.m - Mat::Identity(g.size(), g.size());
    CHECK(D.cwiseAbs().maxCoeff() <= 1e-2);
}

TEST_CASE("symplectic covariance: quantize(a o s) = S^{-1} quantize(a) S on the test class") {
    Grid g(8.0, 64);
    const auto h = hermite_oracle(5, g);
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        const SymplecticMatrix s = random_free_1d(rng);
        RMat Sig = RMat::Identity(2, 2) * std::exp(0.2 * nd(rng));
        Eigen::VectorXd z0(2);
        z0 << 0.3 * nd(rng), 0.3 * nd(rng);
        auto gauss = [Sig, z0](const Eigen::VectorXd& z) {
            const Eigen::VectorXd d = z - z0;
            return cplx(std::exp(-0.5 * d.dot(Sig * d)), 0.0);
        };
        const RMat ss = s.s;
        auto gauss_s = [gauss, ss](const Eigen::VectorXd& z) { return gauss(ss * z); };

        const OperatorMatrix A = quantize(sample_symbol(gauss, g));
        const OperatorMatrix As = quantize(sample_symbol(gauss_s, g));
        const QuadraticFormW w = w_from_symplectic(s);
        const OperatorMatrix S = build_metaplectic(w, g, g);
        const OperatorMatrix Si = inverse_metaplectic(w, g, g);
        for (int j = 0; j <= 4; ++j) {
            const Vec lhs = As.m * h[j].values;
            const Vec rhs = Si.m * (A.m * (S.m * h[j].values));
            CHECK((lhs - rhs).norm() / h[j].values.norm() <= 1e-5);
        }
    }
}
