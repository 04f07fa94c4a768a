#include "dosc/grid_ops.hpp"

#include "dosc/laguerre.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dosc {

namespace {

using cd = std::complex<double>;

// Second-order first derivative: central stencil, one-sided at the ends.
std::vector<cd> d1(const std::vector<cd>& f, double h) {
    const std::size_t n = f.size();
    std::vector<cd> g(n);
    for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    g[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return g;
}

// Second-order second derivative.
std::vector<cd> d2(const std::vector<cd>& f, double h) {
    const std::size_t n = f.size();
    const double h2 = h * h;
    std::vector<cd> g(n);
    for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    g[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    g[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return g;
}

GridFunction lift(const GridFunction& like, std::vector<cd> values) {
    return GridFunction{like.grid, std::move(values)};
}

} // namespace

Grid Grid::uniform(int n, double x_max) {
    if (n < 64) throw std::invalid_argument("Grid::uniform: n must be >= 64");
    if (!(x_max > 0.0)) throw std::invalid_argument("Grid::uniform: x_max must be > 0");
    Grid g;
    g.n = n;
    g.x_max = x_max;
    g.h = x_max / n;
    g.x.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.x[static_cast<std::size_t>(i)] = g.h * (i + 1);
    return g;
}

GridFunction sample(const Grid& g, const std::function<cd(double)>& f) {
    GridFunction out{g, {}};
    out.values.resize(g.x.size());
    for (std::size_t i = 0; i < g.x.size(); ++i) out.values[i] = f(g.x[i]);
    return out;
}

GridFunction eigenfunction_phi(const Grid& g, double k, int n) {
    GridFunction out{g, {}};
    out.values.resize(g.x.size());
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double x = g.x[i];
        out.values[i] = std::pow(x, k) * std::exp(-0.5 * x) * laguerre(n, 2.0 * k - 1.0, x);
    }
    return out;
}

OperatorContext OperatorContext::from_params(const ModelParams& mp, SymmetryLimit limit) {
    OperatorContext ctx;
    ctx.limit = limit;
    ctx.k = bargmann_index(mp, limit);
    ctx.ell_term = centrifugal_coefficient(mp, limit) / 4.0 - 3.0 / 16.0;
    const double kk1 = ctx.k * (ctx.k - 1.0);
    if (std::abs(ctx.ell_term - kk1) > 1e-12 * std::max(1.0, std::abs(kk1)))
        throw std::logic_error("OperatorContext: ell_term inconsistent with k(k-1)");
    return ctx;
}

OperatorContext OperatorContext::from_bargmann(double k, SymmetryLimit limit) {
    if (!(k > 0.5)) throw std::invalid_argument("OperatorContext: k must exceed 1/2");
    return OperatorContext{k, k * (k - 1.0), limit};
}

GridFunction apply_B3(const OperatorContext& ctx, const GridFunction& f) {
    const auto ddf = d2(f.values, f.grid.h);
    std::vector<cd> out(f.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double x = f.grid.x[i];
        out[i] = -x * ddf[i] + (ctx.ell_term / x + 0.25 * x) * f.values[i];
    }
    return lift(f, std::move(out));
}

namespace {

GridFunction apply_ladder(const OperatorContext& ctx, const GridFunction& f, double sign) {
    // T± = ∓ x d/dx + x/2 - B3
    const auto df = d1(f.values, f.grid.h);
    const auto b3f = apply_B3(ctx, f);
    std::vector<cd> out(f.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double x = f.grid.x[i];
        out[i] = sign * x * df[i] + 0.5 * x * f.values[i] - b3f.values[i];
    }
    return lift(f, std::move(out));
}

} // namespace

GridFunction apply_Tplus(const OperatorContext& ctx, const GridFunction& f) {
    return apply_ladder(ctx, f, -1.0);
}

GridFunction apply_Tminus(const OperatorContext& ctx, const GridFunction& f) {
    return apply_ladder(ctx, f, +1.0);
}

double l2_norm(const GridFunction& f, int edge) {
    const std::size_t n = f.values.size();
    const auto e = static_cast<std::size_t>(edge);
    assert(n > 2 * e);
    double acc = 0.0;
    for (std::size_t i = e; i < n - e; ++i) acc += std::norm(f.values[i]);
    return std::sqrt(acc * f.grid.h);
}

std::pair<double, double> commutator_defect(const OperatorContext& ctx, const GridFunction& f) {
    const double fn = l2_norm(f);
    if (fn == 0.0) return {0.0, 0.0};

    const auto tp = apply_Tplus(ctx, f);
    const auto tm = apply_Tminus(ctx, f);
    const auto b3 = apply_B3(ctx, f);

    // ([B3, T+] - T+) f
    const auto b3tp = apply_B3(ctx, tp);
    const auto tpb3 = apply_Tplus(ctx, b3);
    GridFunction c1{f.grid, std::vector<cd>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i)
        c1.values[i] = b3tp.values[i] - tpb3.values[i] - tp.values[i];

    // ([T-, T+] - 2 B3) f
    const auto tmtp = apply_Tminus(ctx, tp);
    const auto tptm = apply_Tplus(ctx, tm);
    GridFunction c2{f.grid, std::vector<cd>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i)
        c2.values[i] = tmtp.values[i] - tptm.values[i] - 2.0 * b3.values[i];

    const double tp_norm = l2_norm(tp);
    const double b3_norm = l2_norm(b3);
    return {l2_norm(c1) / (tp_norm > 0.0 ? tp_norm : fn),
            l2_norm(c2) / (b3_norm > 0.0 ? 2.0 * b3_norm : fn)};
}

double casimir_defect(const OperatorContext& ctx, const GridFunction& f) {
    const double fn = l2_norm(f);
    if (fn == 0.0) return 0.0;
    const auto tm = apply_Tminus(ctx, f);
    const auto tptm = apply_Tplus(ctx, tm);
    const auto b3 = apply_B3(ctx, f);
    const auto b3b3 = apply_B3(ctx, b3);
    const double kk1 = ctx.k * (ctx.k - 1.0);
    GridFunction c{f.grid, std::vector<cd>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i)
        c.values[i] = -tptm.values[i] + b3b3.values[i] - b3.values[i] - kk1 * f.values[i];
    return l2_norm(c) / fn;
}

double b3_expectation(const OperatorContext& ctx, const GridFunction& f) {
    const auto b3 = apply_B3(ctx, f);
    cd num = 0.0;
    double den = 0.0;
    for (std::size_t i = 4; i + 4 < f.values.size(); ++i) {
        num += std::conj(f.values[i]) * b3.values[i];
        den += std::norm(f.values[i]);
    }
    return num.real() / den;
}

double raising_constant_sq(const OperatorContext& ctx, const Grid& g, int n) {
    const auto phi_n = eigenfunction_phi(g, ctx.k, n);
    const auto phi_n1 = eigenfunction_phi(g, ctx.k, n + 1);
    const auto tp = apply_Tplus(ctx, phi_n);

    // T+ Phi_n is proportional to Phi_{n+1} pointwise, so the projection
    // ratio below recovers the constant on any window; the window skips the
    // left-edge region, where the 1/x weight amplifies the stencil error.
    auto windowed_dot = [&](const std::vector<cd>& a, const std::vector<cd>& b) {
        cd acc = 0.0;
        for (std::size_t i = 8; i + 8 < a.size(); ++i) {
            if (g.x[i] < 2.0) continue;
            acc += std::conj(a[i]) * b[i] * (g.h / g.x[i]);
        }
        return acc;
    };
    const cd c_pointwise = windowed_dot(phi_n1.values, tp.values) /
                           windowed_dot(phi_n1.values, phi_n1.values);

    // Normalized matrix element: rescale by the L2(dx/x) norms, where the
    // representation is unitary; full-domain trapezoid (the integrand is
    // smooth and vanishes like x^{2k-1} at the origin).
    auto wnorm2 = [&](const std::vector<cd>& a) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i]) * (g.h / g.x[i]);
        return acc;
    };
    return std::norm(c_pointwise) * wnorm2(phi_n1.values) / wnorm2(phi_n.values);
}

} // namespace dosc
