#include "dosc/quartic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dosc {

namespace {

using cd = std::complex<double>;

// e^4 + p e^2 + q e + r and its derivative, Horner form.
cd eval(const QuarticCoefficients& c, cd z) {
    return ((z * z + c.p) * z + c.q) * z + c.r;
}

cd eval_deriv(const QuarticCoefficients& c, cd z) {
    return (4.0 * z * z + 2.0 * c.p) * z + c.q;
}

// A few Newton steps, keeping the best iterate by scaled residual.  Radical
// formulas lose about half the digits near multiple roots; Newton restores
// them when the root is simple and stalls harmlessly otherwise.
cd polish(const QuarticCoefficients& c, cd z, int max_steps) {
    cd best = z;
    double best_res = quartic_residual(c, z);
    for (int i = 0; i < max_steps; ++i) {
        const cd df = eval_deriv(c, z);
        if (std::abs(df) < 1e-300) break;
        z -= eval(c, z) / df;
        const double res = quartic_residual(c, z);
        if (res < best_res) {
            best = z;
            best_res = res;
        }
        if (best_res == 0.0) break;
    }
    return best;
}

void sort_roots(std::array<cd, 4>& roots) {
    std::sort(roots.begin(), roots.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

RootSet finish(const QuarticCoefficients& c, std::array<cd, 4> roots, int polish_steps) {
    for (auto& z : roots) z = polish(c, z, polish_steps);
    sort_roots(roots);
    return RootSet{roots};
}

// Roots of z^2 + b z + c0 with real b, c0; conjugate pair when the
// discriminant is negative, cancellation-free split otherwise.
std::pair<cd, cd> real_quadratic_roots(double b, double c0) {
    const double disc = b * b - 4.0 * c0;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(s, b));
        if (q == 0.0) return {cd(0.0, 0.0), cd(-b, 0.0)};
        return {cd(q, 0.0), cd(c0 / q, 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {cd(-0.5 * b, im), cd(-0.5 * b, -im)};
}

} // namespace

std::complex<double> quartic_eval(const QuarticCoefficients& c, std::complex<double> z) {
    return eval(c, z);
}

double quartic_residual(const QuarticCoefficients& c, std::complex<double> z) {
    const double scale = std::max(1.0, std::pow(std::abs(z), 4));
    return std::abs(eval(c, z)) / scale;
}

double resolvent_cubic_root(const QuarticCoefficients& c) {
    // t^3 + p t^2 + (p^2/4 - r) t - q^2/8 = 0; depressed by t = y - p/3:
    // y^3 + p1 y + q1 = 0 with
    const double p1 = -c.r - c.p * c.p / 12.0;
    const double q1 = c.r * c.p / 3.0 - c.q * c.q / 8.0 - c.p * c.p * c.p / 108.0;
    const double disc = 0.25 * q1 * q1 + p1 * p1 * p1 / 27.0;

    double root;
    if (disc >= 0.0) {
        // One real root; pick the cbrt branch that avoids cancellation and
        // recover the partner from the product A*B = -p1/3.
        const double s = std::sqrt(disc);
        const double w = -0.5 * q1;
        const double a = std::cbrt(w >= 0.0 ? w + s : w - s);
        root = (a == 0.0 ? 0.0 : a - p1 / (3.0 * a)) - c.p / 3.0;
    } else {
        // Casus irreducibilis: three real roots; the j = 0 trigonometric root
        // is the largest.
        const double m = std::sqrt(-p1 / 3.0);
        const double arg = std::clamp(3.0 * q1 / (2.0 * p1 * m), -1.0, 1.0);
        const double theta = std::acos(arg);
        root = 2.0 * m * std::cos(theta / 3.0) - c.p / 3.0;
    }

    // For q != 0 the cubic is negative at t = 0, so the largest real root is
    // positive; roundoff can still leave a tiny negative value behind.
    if (c.q == 0.0 && root < 0.0) root = 0.0;
    return root;
}

RootSet biquadratic_roots(double p, double r) {
    // e^2 = z with z^2 + p z + r = 0; a = p/2 in the source notation.
    auto [z1, z2] = real_quadratic_roots(p, r);
    std::array<cd, 4> roots{};
    const cd s1 = std::sqrt(z1);
    const cd s2 = std::sqrt(z2);
    roots[0] = s1;
    roots[1] = -s1;
    roots[2] = s2;
    roots[3] = -s2;
    return finish(QuarticCoefficients{p, 0.0, r}, roots, 5);
}

RootSet ferrari_roots(const QuarticCoefficients& c) {
    if (c.q == 0.0) return biquadratic_roots(c.p, c.r);

    const double pi_res = resolvent_cubic_root(c);
    if (pi_res <= 1e-14) {
        std::ostringstream msg;
        msg << "ferrari_roots: resolvent root " << pi_res << " <= 1e-14 with q = " << c.q
            << " (division by sqrt(resolvent) ill-conditioned)";
        throw DegenerateResolvent(msg.str());
    }

    // (e^2 + p/2 + pi)^2 = (beta e + gamma)^2 with beta = sqrt(2 pi),
    // gamma = -q / (2 beta); taking both signs of the square root gives two
    // real-coefficient quadratics.
    const double beta = std::sqrt(2.0 * pi_res);
    const double gamma = -c.q / (2.0 * beta);
    const double alpha0 = 0.5 * c.p + pi_res;

    auto [r1, r2] = real_quadratic_roots(-beta, alpha0 - gamma);
    auto [r3, r4] = real_quadratic_roots(beta, alpha0 + gamma);
    return finish(c, {r1, r2, r3, r4}, 5);
}

RootSet oracle_roots(const QuarticCoefficients& c) {
    // Companion matrix of the monic quartic; eigenvalues seed Newton.
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(1, 0) = 1.0;
    m(2, 1) = 1.0;
    m(3, 2) = 1.0;
    m(0, 3) = -c.r;
    m(1, 3) = -c.q;
    m(2, 3) = -c.p;
    m(3, 3) = 0.0;
    const Eigen::EigenSolver<Eigen::Matrix4d> es(m, /*computeEigenvectors=*/false);

    std::array<cd, 4> roots{};
    int iterations = 0;
    for (int i = 0; i < 4; ++i) {
        cd z = es.eigenvalues()(i);
        cd best = z;
        double best_res = quartic_residual(c, z);
        const double target = 1e-10;
        while (best_res > target) {
            if (++iterations > 500) {
                std::ostringstream msg;
                msg << "oracle_roots: no convergence after 500 iterations for (p,q,r) = (" << c.p
                    << ", " << c.q << ", " << c.r << "), residual " << best_res;
                throw NoConvergence(msg.str());
            }
            const cd df = eval_deriv(c, z);
            if (std::abs(df) < 1e-300) break;
            z -= eval(c, z) / df;
            const double res = quartic_residual(c, z);
            if (res >= best_res) break;  // stalled (multiple root); keep best
            best = z;
            best_res = res;
        }
        roots[i] = best;
    }
    sort_roots(roots);
    return RootSet{roots};
}

RootSet solve_quartic(const QuarticCoefficients& c, bool* used_fallback) {
    if (used_fallback) *used_fallback = false;
    try {
        return ferrari_roots(c);
    } catch (const DegenerateResolvent&) {
        if (used_fallback) *used_fallback = true;
        return oracle_roots(c);
    }
}

double max_vieta_residual(const QuarticCoefficients& c, const RootSet& rs) {
    const auto& z = rs.roots;
    const cd e1 = z[0] + z[1] + z[2] + z[3];
    const cd e2 = z[0] * z[1] + z[0] * z[2] + z[0] * z[3] + z[1] * z[2] + z[1] * z[3] + z[2] * z[3];
    const cd e3 = z[0] * z[1] * z[2] + z[0] * z[1] * z[3] + z[0] * z[2] * z[3] + z[1] * z[2] * z[3];
    const cd e4 = z[0] * z[1] * z[2] * z[3];
    double worst = std::abs(e1);  // cubic coefficient is 0 by construction
    worst = std::max(worst, std::abs(e2 - c.p) / std::max(1.0, std::abs(c.p)));
    worst = std::max(worst, std::abs(e3 + c.q) / std::max(1.0, std::abs(c.q)));
    worst = std::max(worst, std::abs(e4 - c.r) / std::max(1.0, std::abs(c.r)));
    return worst;
}

double root_matching_distance(const RootSet& a, const RootSet& b) {
    std::array<int, 4> perm{0, 1, 2, 3};
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(a.roots[i] - b.roots[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace dosc
