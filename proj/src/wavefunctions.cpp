#include "dosc/wavefunctions.hpp"

#include "dosc/laguerre.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dosc {

namespace {

// Composite Simpson of f over [lo, hi] with n (even) intervals.
template <class F>
double simpson(F&& f, double lo, double hi, int n) {
    if (n % 2 != 0) ++n;
    const double h = (hi - lo) / n;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) acc += f(lo + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    return acc * h / 3.0;
}

} // namespace

RadialState make_radial_state(const ModelParams& mp, SymmetryLimit limit,
                              const SpectrumSolution& solution, int physical_slot) {
    if (physical_slot < 0 || physical_slot >= static_cast<int>(solution.physical.size()))
        throw std::out_of_range("make_radial_state: physical_slot out of range");
    const RootAssessment& ra = solution.accepted_at(physical_slot);
    const DerivedQuantities d = derive(mp, limit);
    const double eps = ra.root.real();
    const auto delta = d.delta(eps);
    if (!delta || !(*delta > 0.0))
        throw std::domain_error("make_radial_state: delta(eps) not positive for accepted root");
    return RadialState{mp, limit, eps, d.k, *delta, 1.0};
}

double r1_shape(double k, double delta, int n, double r) {
    if (r <= 0.0) return 0.0;  // r^{2k-1/2} -> 0 for k > 1/4
    const double x = delta * r * r;
    return std::pow(std::sqrt(delta) * r, 2.0 * k - 0.5) * std::exp(-0.5 * x) *
           laguerre(n, 2.0 * k - 1.0, x);
}

double eval_R1(const RadialState& st, double r) {
    return st.norm * r1_shape(st.k, st.delta, st.params.n, r);
}

double eval_R2(const RadialState& st, double r) {
    if (std::abs(1.0 + st.eps) < 1e-12)
        throw DegenerateEnergy("eval_R2: 1 + eps vanishes (formula pole)");
    if (r <= 0.0) return 0.0;
    const ModelParams& mp = st.params;
    const double x = st.delta * r * r;
    const double a2 = mp.alpha * mp.alpha;
    const double c2 = -st.delta + mp.mu * a2 * mp.lambda + mp.w;
    const double c0 = 2.0 * st.k - 0.5 + mp.A + mp.lambda;
    const double lower = mp.n >= 1 ? laguerre(mp.n - 1, 2.0 * st.k, x) : 0.0;  // L_{-1} == 0
    const double bracket =
        -2.0 * st.delta * r * r * lower + (c2 * r * r + c0) * laguerre(mp.n, 2.0 * st.k - 1.0, x);
    return st.norm * mp.alpha / ((1.0 + st.eps) * r) *
           std::pow(std::sqrt(st.delta) * r, 2.0 * st.k - 0.5) * std::exp(-0.5 * x) * bracket;
}

double normalize(RadialState& st, double r_max, int n_quad) {
    if (!(r_max > 0.0) || n_quad < 2)
        throw std::invalid_argument("normalize: need r_max > 0 and n_quad >= 2");
    auto density = [&](double r) {
        const double v = r1_shape(st.k, st.delta, st.params.n, r);
        return v * v;
    };
    const double mass = simpson(density, 0.0, r_max, n_quad);
    const double tail = simpson(density, r_max, 2.0 * r_max, n_quad);
    if (!(mass > 0.0) || tail > 1e-12 * (mass + tail)) {
        std::ostringstream msg;
        msg << "normalize: tail mass " << tail << " beyond r_max = " << r_max
            << " exceeds 1e-12 of the total (increase r_max)";
        throw TailNotConverged(msg.str());
    }
    st.norm = 1.0 / std::sqrt(mass);
    return st.norm;
}

double eigenstate_norm_constant(double k, double delta, int n) {
    // integral of r1_shape^2 dr = Gamma(n+2k) / (2 sqrt(delta) n!)
    const double log_ratio = std::lgamma(n + 1.0) - std::lgamma(n + 2.0 * k);
    return std::sqrt(2.0 * std::sqrt(delta)) * std::exp(0.5 * log_ratio);
}

} // namespace dosc
