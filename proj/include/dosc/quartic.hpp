#pragma once

#include <array>
#include <complex>
#include <stdexcept>

namespace dosc {

/// Depressed quartic  e^4 + p e^2 + q e + r = 0  (no cubic term by construction).
struct QuarticCoefficients {
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
};

/// Four roots ordered by descending real part, ties broken by descending
/// imaginary part.  For real coefficients non-real roots come in conjugate
/// pairs, and the Vieta identities hold (see max_vieta_residual).
struct RootSet {
    std::array<std::complex<double>, 4> roots{};
};

/// ferrari_roots: resolvent root too small to split the quartic (the branch
/// divides by sqrt(resolvent_pi)).  Callers fall back to oracle_roots.
struct DegenerateResolvent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// oracle_roots: Newton polishing failed to reach the residual target inside
/// the iteration budget; reports the offending coefficients.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::complex<double> quartic_eval(const QuarticCoefficients& c, std::complex<double> z);

/// |quartic(z)| / max(1, |z|^4)
double quartic_residual(const QuarticCoefficients& c, std::complex<double> z);

// Largest real root of the resolvent cubic
//
//     t^3 + p t^2 + (p^2/4 - r) t - q^2/8 = 0.
//
// This root is traditionally written "pi"; it is named resolvent_pi in this
// code base to keep it apart from the circle constant.  For q != 0 the cubic
// is negative at t = 0, so the largest real root is strictly positive; for
// q == 0 zero is a root, so the result is always >= 0.  The casus
// irreducibilis (negative Cardano discriminant) is handled with the
// trigonometric three-real-root form instead of complex radicals.
double resolvent_cubic_root(const QuarticCoefficients& c);

/// Ferrari's method: resolvent cubic, then two quadratics, Newton-polished
/// (radical formulas lose about half the digits near multiple roots).
/// q == 0 dispatches to the biquadratic path.  Throws DegenerateResolvent
/// when q != 0 but resolvent_pi <= 1e-14.
RootSet ferrari_roots(const QuarticCoefficients& c);

/// Independent oracle: companion-matrix eigenvalues polished by Newton steps
/// to residual < 1e-10 * max(1, |z|^4).  Throws NoConvergence.
RootSet oracle_roots(const QuarticCoefficients& c);

/// q == 0 case:  e = ±sqrt(-a ± sqrt(a^2 - r)),  a = p/2, complex values when
/// negative under a radical.
RootSet biquadratic_roots(double p, double r);

/// ferrari_roots with automatic oracle fallback on DegenerateResolvent.
RootSet solve_quartic(const QuarticCoefficients& c, bool* used_fallback = nullptr);

/// Worst violation of sum = 0, sum-of-pairs = p, sum-of-triples = -q,
/// product = r, each relative to max(1, |coefficient|).
double max_vieta_residual(const QuarticCoefficients& c, const RootSet& roots);

/// Max per-root distance after minimal-distance assignment (24 permutations).
double root_matching_distance(const RootSet& a, const RootSet& b);

} // namespace dosc
