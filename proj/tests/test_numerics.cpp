// Grid, quadrature inner products, dft, Hermite oracle and eigh.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "weylext/fourier.hpp"
#include "weylext/grid.hpp"
#include "weylext/hermite.hpp"
#include "weylext/numerics.hpp"

using namespace weylext;

namespace {
Grid default_grid() { return Grid(8.0, 64); }
}  // namespace

TEST_CASE("grid invariants") {
    Grid g = default_grid();
    CHECK(g.axis(0).dx() == doctest::Approx(0.25));
    // dual frequency spacing reproduces the node count on the frequency axis
    CHECK(g.axis(0).dual().n == 64);
    CHECK(g.axis(0).dual_node(32) == doctest::Approx(0.0));
    CHECK_THROWS_AS(Grid(8.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(Grid(-1.0, 64), std::invalid_argument);
}

TEST_CASE("weighted_inner on normalized Gaussian, zero vector and Hermite pair") {
    Grid g = default_grid();
    const auto h = hermite_oracle(3, g);
    // normalized Gaussian = h_0: closed-form integral of |h_0|^2 is 1
    CHECK(std::abs(weighted_inner(h[0], h[0]) - 1.0) < 1e-12);

    StateVector zero(g, Vec::Zero(g.size()));
    CHECK(std::abs(weighted_inner(zero, h[0])) == 0.0);

    // distinct Hermite functions are orthogonal
    CHECK(std::abs(weighted_inner(h[0], h[1])) <= 1e-10);
    CHECK(std::abs(weighted_inner(h[1], h[3])) <= 1e-10);

    Grid g2(8.0, 32);
    StateVector other(g2, Vec::Zero(g2.size()));
    CHECK_THROWS_AS(weighted_inner(h[0], other), std::invalid_argument);
}

TEST_CASE("dft of centered Gaussian matches the analytic pair") {
    Grid g = default_grid();
    Vec f(g.size());
    for (long i = 0; i < g.size(); ++i) {
        const double x = g.node(i)[0];
        f[i] = std::exp(-0.5 * x * x);
    }
    const StateVector F = dft(StateVector(g, f), +1);
    for (long l = 0; l < F.grid.size(); ++l) {
        const double xi = F.grid.node(l)[0];
        const double expect = std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * xi * xi);
        CHECK(std::abs(F.values[l] - expect) < 1e-8);
    }
}

TEST_CASE("dft of zero is zero; round trip inverts") {
    Grid g = default_grid();
    const StateVector z = dft(StateVector(g, Vec::Zero(g.size())), +1);
    CHECK(z.values.norm() == 0.0);

    // random band-limited f: finite combination of low Hermite modes
    const auto h = hermite_oracle(5, g);
    Vec f = 0.3 * h[0].values + cplx(0.2, 0.7) * h[3].values - 0.9 * h[5].values;
    const StateVector back = dft_inverse(dft(StateVector(g, f), +1));
    CHECK((back.values - f).norm() / f.norm() <= 1e-10);
}

TEST_CASE("Parseval: dual-grid norm of dft(f) = sqrt(2 pi) ||f||") {
    Grid g = default_grid();
    const auto h = hermite_oracle(4, g);
    Vec f = h[2].values + cplx(0, 1) * h[4].values;
    const StateVector F = dft(StateVector(g, f), +1);
    const double lhs = weighted_norm(F);
    const double rhs = std::sqrt(2.0 * std::numbers::pi) * weighted_norm(StateVector(g, f));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
}

TEST_CASE("hermite oracle: values, orthonormality, ladder identity") {
    Grid g = default_grid();
    const auto h = hermite_oracle(6, g);
    // h_0(0) = pi^{-1/4}; x = 0 is node 32
    CHECK(h[0].values[32].real() == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-12));
    CHECK(std::abs(weighted_inner(h[2], h[2]) - 1.0) <= 1e-10);
    CHECK(std::abs(weighted_inner(h[1], h[3])) <= 1e-10);

    // X h_j = sqrt(j/2) h_{j-1} + sqrt((j+1)/2) h_{j+1} pointwise on the grid
    for (int j = 1; j <= 5; ++j) {
        double dev = 0;
        for (long i = 0; i < g.size(); ++i) {
            const double x = g.node(i)[0];
            const cplx lhs = x * h[j].values[i];
            const cplx rhs = std::sqrt(j / 2.0) * h[j - 1].values[i] +
                             std::sqrt((j + 1) / 2.0) * h[j + 1].values[i];
            dev = std::max(dev, std::abs(lhs - rhs));
        }
        CHECK(dev <= 1e-9);
    }
}

TEST_CASE("hermite oracle rejects insufficient domains") {
    CHECK_THROWS_AS(hermite_oracle(12, Grid(8.0, 64)), std::domain_error);
    CHECK_THROWS_AS(hermite_oracle(6, Grid(5.0, 64)), std::domain_error);
    CHECK_THROWS_AS(hermite_oracle(2, Grid(8.0, 64, 2)), std::invalid_argument);
}

TEST_CASE("eigh: identity and diagonal cases") {
    const EighResult idr = eigh(Mat(Mat::Identity(5, 5)));
    for (int i = 0; i < 5; ++i) CHECK(idr.eigenvalues[i] == doctest::Approx(1.0));
    CHECK((idr.eigenvectors.adjoint() * idr.eigenvectors - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-10);

    Mat d = Mat::Zero(3, 3);
    d(0, 0) = 3;
    d(1, 1) = 1;
    d(2, 2) = 2;
    const EighResult dr = eigh(d);
    CHECK(dr.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(dr.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(dr.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("eigh: 20x20 ladder oscillator matrix has odd-integer spectrum") {
    const Mat H = oracles::oscillator_matrix(20);
    const EighResult r = eigh(H);
    for (int j = 0; j < 20; ++j) CHECK(std::abs(r.eigenvalues[j] - (2 * j + 1)) <= 1e-10);
    // eigenvector orthonormality
    CHECK((r.eigenvectors.adjoint() * r.eigenvectors - Mat::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-10);
    // residual M V = V diag(lambda)
    const Mat R = 0.5 * (H + H.adjoint()) * r.eigenvectors -
                  r.eigenvectors * r.eigenvalues.asDiagonal().toDenseMatrix().cast<cplx>();
    CHECK(R.norm() <= 1e-9 * H.norm());
}

TEST_CASE("eigh rejects non-square and non-Hermitian inputs") {
    CHECK_THROWS_AS(eigh(Mat(Mat::Zero(3, 4))), std::invalid_argument);
    Mat bad = Mat::Zero(4, 4);
    bad(0, 1) = 1.0;  // strongly non-Hermitian
    CHECK_THROWS_AS(eigh(bad), std::runtime_error);
}

TEST_CASE("upsample2 reproduces band-limited values at half steps") {
    Grid g = default_grid();
    const auto h = hermite_oracle(4, g);
    const Vec up = upsample2(h[3].values);
    const Axis& ax = g.axis(0);
    double dev = 0;
    for (int p = 0; p < 2 * ax.n; ++p) {
        const double x = -ax.half_width + 0.5 * ax.dx() * p;
        dev = std::max(dev, std::abs(up[p] - hermite_value(3, x)));
    }
    CHECK(dev <= 1e-10);
}
