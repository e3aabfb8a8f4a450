// Cross-Wigner transforms, Moyal star products and Bopp symbols/operators.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weylext/hermite.hpp"
#include "weylext/numerics.hpp"
#include "weylext/wigner.hpp"

using namespace weylext;

namespace {
Grid g64() { return Grid(8.0, 64); }
Grid gstar() { return Grid(12.0, 96); }  // star products want a wider box: kernel
                                         // offsets only resolve up to |x - y| = L

QuadraticSymbol h0_symbol() {
    RMat M(2, 2);
    M << 2, 0, 0, 2;
    return QuadraticSymbol(M, Eigen::VectorXd::Zero(2), 0.0);
}
}  // namespace

TEST_CASE("Wigner transform of the ground state is the Gaussian (1/pi) e^{-(x^2+xi^2)}") {
    Grid g = g64();
    const auto h = hermite_oracle(2, g);
    const SampledSymbol W = cross_wigner(h[0], h[0]);
    double dev = 0;
    for (long i = 0; i < W.phase_grid.size(); ++i) {
        const Eigen::VectorXd z = W.phase_grid.node(i);
        dev = std::max(dev, std::abs(W.values[i] - oracles::wigner_h0(z[0], z[1])));
    }
    CHECK(dev <= 1e-7);
}

TEST_CASE("Wigner of the zero vector vanishes; sesquilinearity is exact") {
    Grid g = g64();
    const auto h = hermite_oracle(2, g);
    const StateVector zero(g, Vec::Zero(g.size()));
    CHECK(cross_wigner(zero, h[0]).values.norm() == 0.0);

    const cplx alpha(0.7, -1.2);
    StateVector ah = h[1];
    ah.values *= alpha;
    const SampledSymbol Wl = cross_wigner(ah, h[0]);
    const SampledSymbol Wr = cross_wigner(h[1], ah);
    const SampledSymbol W = cross_wigner(h[1], h[0]);
    const SampledSymbol Wd = cross_wigner(h[1], h[1]);
    CHECK((Wl.values - alpha * W.values).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((Wr.values - std::conj(alpha) * Wd.values).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("marginal and normalization identities") {
    Grid g = g64();
    const auto h = hermite_oracle(3, g);
    Vec psi = 0.8 * h[0].values + cplx(0.1, 0.55) * h[3].values;
    const StateVector s(g, psi);
    const SampledSymbol W = cross_wigner(s, s);
    const int n = g.axis(0).n;
    const double dxi = g.axis(0).dual().dx();
    for (int m = 0; m < n; ++m) {
        cplx marg = 0;
        for (int l = 0; l < n; ++l) marg += W.values[static_cast<long>(m) * n + l];
        marg *= dxi;
        CHECK(std::abs(marg - std::norm(psi[m])) <= 1e-8);
    }
    const cplx total = W.values.sum() * W.phase_grid.cell();
    CHECK(std::abs(total - weighted_inner(s, s)) <= 1e-8);
}

TEST_CASE("identity symbol is a left star unit") {
    Grid g = gstar();
    const Grid pg = g.phase_grid();
    Vec bvals(pg.size());
    for (long i = 0; i < pg.size(); ++i) {
        const Eigen::VectorXd z = pg.node(i);
        bvals[i] = std::exp(-z.squaredNorm()) * (1.0 + 0.3 * z[0]);
    }
    const SampledSymbol b(pg, bvals);
    const SampledSymbol one(pg, Vec::Ones(pg.size()));
    const SampledSymbol ob = moyal_star(one, b);
    CHECK((ob.values - b.values).norm() / b.values.norm() <= 1e-9);
}

TEST_CASE("star-genvalue equation: h0 * W(h_j, h_l) = (2j+1) W(h_j, h_l)") {
    Grid g = gstar();
    const auto h = hermite_oracle(4, g, 1e-6);
    const QuadraticSymbol h0 = h0_symbol();
    for (int j = 0; j <= 3; ++j)
        for (int l = 0; l <= 3; ++l) {
            const SampledSymbol W = cross_wigner(h[j], h[l]);
            const SampledSymbol s = moyal_star(h0, W);
            const double err = (s.values - (2.0 * j + 1.0) * W.values).norm() / W.values.norm();
            CHECK(err <= 1e-6);
        }
}

TEST_CASE("commutator of x and xi under star agrees with [X, P] = iI") {
    Grid g = gstar();
    // operator oracle first: <h_0 | [X, P] | h_0> = i
    const auto h = hermite_oracle(2, g, 1e-6);
    QuadraticSymbol xs(RMat::Zero(2, 2), (Eigen::VectorXd(2) << 1, 0).finished(), 0.0);
    QuadraticSymbol ks(RMat::Zero(2, 2), (Eigen::VectorXd(2) << 0, 1).finished(), 0.0);
    const Mat X = quantize_quadratic(xs, g).m;
    const Mat P = quantize_quadratic(ks, g).m;
    const Mat C = X * P - P * X;
    const cplx me = weighted_inner(StateVector(g, C * h[0].values), h[0]);
    CHECK(std::abs(me - cplx(0.0, 1.0)) <= 1e-10);

    // class action: [X, P] h_j = i h_j on the resolved Hermite states
    for (int j = 0; j <= 1; ++j) {
        const Vec r = C * h[j].values - cplx(0.0, 1.0) * h[j].values;
        CHECK(weighted_norm(StateVector(g, r)) <= 1e-6);
    }

    // symbol route: pair the star-commutator symbol against the ground-state
    // Wigner weight; by the weak form this is ([X,P] h_0 | h_0) = i. The raw
    // symbol itself rings near the frequency band edge (sawtooth truncation),
    // the pairing is insensitive to it.
    const SampledSymbol c = dequantize(OperatorMatrix(g, g, C));
    const SampledSymbol W00 = cross_wigner(h[0], h[0]);
    cplx paired = 0;
    for (long i = 0; i < c.values.size(); ++i) paired += c.values[i] * W00.values[i];
    paired *= c.phase_grid.cell();
    CHECK(std::abs(paired - cplx(0.0, 1.0)) <= 1e-8);
}

TEST_CASE("star products associate along the operator route") {
    Grid g = gstar();
    const Grid pg = g.phase_grid();
    auto gauss = [&](double cx, double ck, double w) {
        Vec v(pg.size());
        for (long i = 0; i < pg.size(); ++i) {
            const Eigen::VectorXd z = pg.node(i);
            v[i] = std::exp(-w * ((z[0] - cx) * (z[0] - cx) + (z[1] - ck) * (z[1] - ck)));
        }
        return SampledSymbol(pg, std::move(v));
    };
    const SampledSymbol a = gauss(0.4, -0.2, 0.9), b = gauss(-0.3, 0.5, 1.1), c = gauss(0.0, 0.0, 0.7);
    const SampledSymbol lhs = moyal_star(moyal_star(a, b), c);
    const SampledSymbol rhs = moyal_star(a, moyal_star(b, c));
    CHECK((lhs.values - rhs.values).norm() / lhs.values.norm() <= 1e-8);
}

TEST_CASE("star against the direct twisted-product quadrature oracle") {
    Grid g = g64();
    auto fa = [](double x, double k) { return cplx(std::exp(-(x * x + k * k)), 0.0); };
    auto fb = [](double x, double k) {
        return cplx(std::exp(-0.8 * (x * x + k * k)) * (1.0 + 0.2 * x), 0.0);
    };
    const SampledSymbol a = sample_symbol([&](const Eigen::VectorXd& z) { return fa(z[0], z[1]); }, g);
    const SampledSymbol b = sample_symbol([&](const Eigen::VectorXd& z) { return fb(z[0], z[1]); }, g);
    const SampledSymbol s = moyal_star(a, b);
    // compare at a few interior phase points on a coarse oracle quadrature
    const int n = g.axis(0).n;
    for (const auto& [im, il] : std::vector<std::pair<int, int>>{{32, 32}, {34, 30}, {30, 35}}) {
        const double x = g.axis(0).node(im);
        const double xi = g.axis(0).dual_node(il);
        const cplx oracle = oracles::twisted_product_quadrature(fa, fb, x, xi, 7.0, 24);
        CHECK(std::abs(s.values[static_cast<long>(im) * n + il] - oracle) <= 1e-4);
    }
}

TEST_CASE("Bopp symbol: constants, the oscillator, and agreement with extend_symbol") {
    auto one = [](const Eigen::VectorXd&) { return cplx(1.0, 0.0); };
    const SymbolFn b1 = bopp_symbol(one, 1);
    Eigen::VectorXd zeta(4);
    zeta << 0.3, -1.2, 0.7, 2.0;
    CHECK(std::abs(b1(zeta) - cplx(1.0, 0.0)) == 0.0);

    // a = h0: a_B = (x - eta/2)^2 + (y + xi/2)^2
    const QuadraticSymbol h0 = h0_symbol();
    const QuadraticSymbol hb = bopp_symbol(h0);
    auto expect = [](const Eigen::VectorXd& z) {
        const double u = z[0] - 0.5 * z[3], v = z[1] + 0.5 * z[2];
        return u * u + v * v;
    };
    CHECK(hb.value(zeta) == doctest::Approx(expect(zeta)).epsilon(1e-14));

    // pointwise agreement with the extension route through s_B at random points
    const SymplecticMatrix sB = bopp_symplectic(1);
    CHECK(is_symplectic(sB.s, 1e-12));
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0.0, 2.0);
    const SymbolFn af = h0.fn();
    const SymbolFn via_s = [&]() {
        // extend through s_B: a((pi s_B) zeta)
        RMat pi = RMat::Zero(2, 4);
        pi(0, 0) = 1;
        pi(1, 2) = 1;
        const RMat ps = pi * sB.s;
        return SymbolFn([af, ps](const Eigen::VectorXd& z) { return af(ps * z); });
    }();
    const SymbolFn direct = bopp_symbol(af, 1);
    for (int t = 0; t < 10000; ++t) {
        Eigen::VectorXd z(4);
        for (int i = 0; i < 4; ++i) z[i] = nd(rng);
        CHECK(std::abs(direct(z) - via_s(z)) <= 1e-12);
    }
}

TEST_CASE("Bopp operator: identity symbol and hermiticity for a real Gaussian") {
    Grid g2(6.0, 16, 2);
    auto one = [](const Eigen::VectorXd&) { return cplx(1.0, 0.0); };
    const OperatorMatrix B1 = bopp_operator(one, 1, g2);
    CHECK((B1.m - Mat::Identity(B1.m.rows(), B1.m.cols())).cwiseAbs().maxCoeff() <= 1e-9);

    auto ga = [](const Eigen::VectorXd& z) { return cplx(std::exp(-0.5 * z.squaredNorm()), 0.0); };
    const OperatorMatrix B = bopp_operator(ga, 1, g2);
    CHECK((B.m - B.m.adjoint()).cwiseAbs().maxCoeff() <= 1e-9);
}
