// extension.hpp — symplectic dimensional extensions: E_s on symbols,
// the tensor route and the conjugation route on operators, and the weak form.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>

#include "weylext/grid.hpp"
#include "weylext/metaplectic.hpp"
#include "weylext/numerics.hpp"
#include "weylext/symplectic.hpp"
#include "weylext/weyl.hpp"
#include "weylext/wigner.hpp"

namespace weylext {

struct ExtensionSpec {
    int n{0};  // base dimension
    int k{0};  // added dimension
    SymplecticMatrix s;  // element of Sp(2(n+k), R)

    ExtensionSpec() = default;
    ExtensionSpec(int n_, int k_, SymplecticMatrix s_) : n(n_), k(k_), s(std::move(s_)) {
        if (s.half_dim != n + k)
            throw std::invalid_argument("ExtensionSpec: s must act on R^{2(n+k)}");
    }

    bool is_identity() const {
        return (s.s - RMat::Identity(s.s.rows(), s.s.cols())).cwiseAbs().maxCoeff() < 1e-14;
    }

    // projection picking (x', xi') = first n positions and momenta of s * zeta
    RMat base_projection() const {
        const int d = n + k;
        RMat pi = RMat::Zero(2 * n, 2 * d);
        pi.block(0, 0, n, n) = RMat::Identity(n, n);
        pi.block(n, d, n, n) = RMat::Identity(n, n);
        return pi * s.s;
    }
};

// extended symbol (a (x) 1_{2k}) o s as a closed form
inline SymbolFn extend_symbol(const SymbolFn& a, const ExtensionSpec& spec) {
    const RMat ps = spec.base_projection();
    return [a, ps](const Eigen::VectorXd& zeta) { return a(ps * zeta); };
}

// exact coefficient transport for quadratic symbols
inline QuadraticSymbol extend_symbol(const QuadraticSymbol& a, const ExtensionSpec& spec) {
    if (a.base_dim() != spec.n)
        throw std::invalid_argument("extend_symbol: symbol dimension does not match spec");
    const RMat ps = spec.base_projection();
    RMat M = ps.transpose() * a.M * ps;
    M = RMat(0.5 * (M + M.transpose().eval()));
    return QuadraticSymbol(M, ps.transpose() * a.v, a.c);
}

// A (x) I over the y-grid, row/column index ordered (x-index, y-index)
inline OperatorMatrix extend_operator_tensor(const OperatorMatrix& A, const Grid& y_grid) {
    const long ny = y_grid.size();
    const long nin = A.in_grid.size(), nout = A.out_grid.size();
    Mat out = Mat::Zero(nout * ny, nin * ny);
    for (long i = 0; i < nout; ++i)
        for (long j = 0; j < nin; ++j) {
            if (A.m(i, j) == cplx(0.0, 0.0)) continue;
            out.block(i * ny, j * ny, ny, ny) = A.m(i, j) * Mat::Identity(ny, ny);
        }
    return OperatorMatrix(A.in_grid.product(y_grid), A.out_grid.product(y_grid), std::move(out),
                          A.quadrature_absorbed);
}

// Conjugation frame for E_s[A] = S^{-1} (A (x) I) S. The unitary is the polar
// factor of the quadrature metaplectic matrix: the raw quadrature is only
// near-unitary on decaying states, and a non-unitary conjugation would break
// the exact homomorphism/adjoint/inverse identities that characterize E_s.
// The polar factor agrees with the quadrature matrix on the Hermite class to
// quadrature accuracy, which the intertwiner tests check independently.
// Building the frame costs one SVD; reuse it across extensions.
struct ExtensionFrame {
    ExtensionSpec spec;
    Grid x_grid, y_grid, product;
    Mat unitary;  // ~ S; empty for the identity extension
};

inline ExtensionFrame make_extension_frame(const ExtensionSpec& spec, const Grid& x_grid,
                                           const Grid& y_grid) {
    if (x_grid.dim() != spec.n || y_grid.dim() != spec.k)
        throw std::invalid_argument("make_extension_frame: grid/spec dimension mismatch");
    ExtensionFrame f{spec, x_grid, y_grid, x_grid.product(y_grid), Mat()};
    if (!spec.is_identity()) {
        const MetaplecticPair mp = metaplectic_pair(spec.s, f.product);
        f.unitary = unitary_polar_factor(mp.forward.m);
    }
    return f;
}

inline OperatorMatrix extend_operator(const OperatorMatrix& A, const ExtensionFrame& frame) {
    if (A.in_grid != A.out_grid) throw std::invalid_argument("extend_operator: endomorphism required");
    if (!(A.in_grid == frame.x_grid)) throw std::invalid_argument("extend_operator: grid mismatch");
    OperatorMatrix tens = extend_operator_tensor(A, frame.y_grid);
    if (frame.spec.is_identity()) return tens;
    Mat conj = frame.unitary.adjoint() * tens.m * frame.unitary;
    return OperatorMatrix(tens.in_grid, tens.out_grid, std::move(conj));
}

inline OperatorMatrix extend_operator(const OperatorMatrix& A, const ExtensionSpec& spec,
                                      const Grid& y_grid) {
    return extend_operator(A, make_extension_frame(spec, A.in_grid, y_grid));
}

// weak form <A~ Psi, conj(Phi)> = <a~, W(Psi,Phi)> as a phase-space
// quadrature of the extended symbol against the cross-Wigner transform
inline cplx weak_form_eval(const SymbolFn& a, const StateVector& Psi, const StateVector& Phi,
                           const ExtensionSpec& spec) {
    if (Psi.grid != Phi.grid) throw std::invalid_argument("weak_form_eval: grid mismatch");
    const SymbolFn atil = extend_symbol(a, spec);
    const SampledSymbol W = cross_wigner(Psi, Phi);
    cplx acc = 0;
    for (long i = 0; i < W.phase_grid.size(); ++i)
        acc += atil(W.phase_grid.node(i)) * W.values[i];
    return acc * W.phase_grid.cell();
}

}  // namespace weylext
