#pragma once

#include "dosc/spectrum.hpp"

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace dosc {

// Uniform grid x_i = i h, i = 1..n, h = x_max/n.  The first point sits one
// spacing away from the x = 0 singularity of the 1/x term.
struct Grid {
    int n = 0;
    double x_max = 0.0;
    double h = 0.0;
    std::vector<double> x;

    static Grid uniform(int n, double x_max);  // requires n >= 64, x_max > 0
};

struct GridFunction {
    Grid grid;
    std::vector<std::complex<double>> values;
};

GridFunction sample(const Grid& g, const std::function<std::complex<double>(double)>& f);

/// Analytic eigenfunction in the oscillator variable,
/// Phi_n(x) = x^k e^{-x/2} L_n^{2k-1}(x)  (unnormalized).
GridFunction eigenfunction_phi(const Grid& g, double k, int n);

// Context for the su(1,1) generators.  ell_term is the full 1/x coefficient
// (centrifugal/4 - 3/16); it equals k(k-1) identically, which is asserted at
// construction -- this ties the operator to the representation index.
struct OperatorContext {
    double k = 0.0;
    double ell_term = 0.0;
    SymmetryLimit limit = SymmetryLimit::Spin;

    static OperatorContext from_params(const ModelParams& mp, SymmetryLimit limit);
    static OperatorContext from_bargmann(double k, SymmetryLimit limit);
};

/// B3 = -x d^2/dx^2 + ell_term / x + x/4, second-order central differences,
/// one-sided second-order stencils at the endpoints.
GridFunction apply_B3(const OperatorContext& ctx, const GridFunction& f);

/// T± = ∓ x d/dx + x/2 - B3.
GridFunction apply_Tplus(const OperatorContext& ctx, const GridFunction& f);
GridFunction apply_Tminus(const OperatorContext& ctx, const GridFunction& f);

/// L2(dx) norm, excluding `edge` rows at each end (one-sided stencil rows
/// pollute the convergence order).
double l2_norm(const GridFunction& f, int edge = 4);

// Relative L2 defects of the algebra relations, as a pair
//   ( ||([B3,T+] - T+) f|| / ||T+ f||,  ||([T-,T+] - 2 B3) f|| / ||2 B3 f|| ).
// Direct operator computation gives [B3,T±] = ±T± (consistent with T+
// raising the B3 eigenvalue and T- annihilating the lowest weight); only
// with these signs can the defects vanish.
std::pair<double, double> commutator_defect(const OperatorContext& ctx, const GridFunction& f);

/// Relative L2 defect of (-T+ T- + B3(B3 - 1) - k(k-1)) f.  The Casimir is a
/// multiple of the identity as an operator identity, so any smooth f that is
/// negligible near the grid edges qualifies, not only eigenfunctions.
double casimir_defect(const OperatorContext& ctx, const GridFunction& f);

/// <f, B3 f> / <f, f> in plain L2(dx).
double b3_expectation(const OperatorContext& ctx, const GridFunction& f);

/// Squared proportionality constant of T+ Phi_n against Phi_{n+1}, estimated
/// by projection in the L2(dx/x) inner product (where the representation is
/// unitary).  Exact value (n+1)(n+2k).
double raising_constant_sq(const OperatorContext& ctx, const Grid& g, int n);

} // namespace dosc
