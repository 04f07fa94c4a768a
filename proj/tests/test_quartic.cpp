#include "dosc/quartic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

using namespace dosc;
using cd = std::complex<double>;

namespace {

// residual of the resolvent cubic t^3 + p t^2 + (p^2/4 - r) t - q^2/8 at t
double resolvent_residual(const QuarticCoefficients& c, double t) {
    return ((t + c.p) * t + (0.25 * c.p * c.p - c.r)) * t - c.q * c.q / 8.0;
}

bool contains_root(const RootSet& rs, cd target, double tol) {
    return std::any_of(rs.roots.begin(), rs.roots.end(),
                       [&](const cd& z) { return std::abs(z - target) < tol; });
}

} // namespace

TEST_CASE("resolvent cubic: all-zero quartic gives pi = 0") {
    CHECK(resolvent_cubic_root({0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("resolvent cubic root solves the cubic and reproduces factored roots") {
    // e^4 - 5 e^2 + 4 = (e^2-1)(e^2-4): Ferrari from the resolvent root must
    // reproduce {±1, ±2}.
    const QuarticCoefficients c{-5.0, 0.0, 4.0};
    const double pi_res = resolvent_cubic_root(c);
    CHECK(pi_res >= 0.0);
    CHECK(std::abs(resolvent_residual(c, pi_res)) < 1e-9);
    const RootSet rs = ferrari_roots(c);
    for (const double target : {2.0, 1.0, -1.0, -2.0})
        CHECK(contains_root(rs, cd(target, 0.0), 1e-12));
}

TEST_CASE("resolvent cubic: random coefficients satisfy the cubic to 1e-9") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const QuarticCoefficients c{dist(rng), dist(rng), dist(rng)};
        const double pi_res = resolvent_cubic_root(c);
        // scale-relative: cubic coefficients reach ~10^2 here
        CHECK(std::abs(resolvent_residual(c, pi_res)) <
              1e-9 * std::max(1.0, std::pow(std::abs(pi_res), 3)) * 100.0);
        if (c.q != 0.0) CHECK(pi_res > 0.0);
    }
}

TEST_CASE("ferrari: biquadratic factorization {2,1,-1,-2} in order") {
    const RootSet rs = ferrari_roots({-5.0, 0.0, 4.0});
    CHECK(rs.roots[0] == cd(2.0, 0.0));
    CHECK(rs.roots[1] == cd(1.0, 0.0));
    CHECK(rs.roots[2] == cd(-1.0, 0.0));
    CHECK(rs.roots[3] == cd(-2.0, 0.0));
}

TEST_CASE("ferrari: e^4 = 1 gives the fourth roots of unity") {
    const RootSet rs = ferrari_roots({0.0, 0.0, -1.0});
    CHECK(contains_root(rs, cd(1.0, 0.0), 1e-12));
    CHECK(contains_root(rs, cd(-1.0, 0.0), 1e-12));
    CHECK(contains_root(rs, cd(0.0, 1.0), 1e-12));
    CHECK(contains_root(rs, cd(0.0, -1.0), 1e-12));
    // ordering: descending real part, ties by descending imaginary part
    CHECK(rs.roots[0].real() == 1.0);
    CHECK(rs.roots[1].imag() > rs.roots[2].imag());
}

TEST_CASE("ferrari vs oracle on random triples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const QuarticCoefficients c{dist(rng), dist(rng), dist(rng)};
        const RootSet f = solve_quartic(c);
        const RootSet o = oracle_roots(c);
        CHECK(root_matching_distance(f, o) < 1e-9);
        for (const auto& z : f.roots) CHECK(quartic_residual(c, z) < 1e-8);
    }
}

TEST_CASE("oracle: simple and degenerate cases") {
    const RootSet simple = oracle_roots({-5.0, 0.0, 4.0});
    for (const double target : {2.0, 1.0, -1.0, -2.0})
        CHECK(contains_root(simple, cd(target, 0.0), 1e-10));

    // quadruple root at 0: root accuracy is limited by the eps^(1/4)
    // conditioning of a 4-fold root, but the residual contract still holds
    const RootSet zero = oracle_roots({0.0, 0.0, 0.0});
    for (const auto& z : zero.roots) {
        CHECK(std::abs(z) < 1e-3);
        CHECK(quartic_residual({0.0, 0.0, 0.0}, z) < 1e-10);
    }

    const QuarticCoefficients c111{1.0, 1.0, 1.0};
    for (const auto& z : oracle_roots(c111).roots) CHECK(quartic_residual(c111, z) < 1e-10);
}

TEST_CASE("biquadratic: spec cases") {
    const RootSet rs = biquadratic_roots(-5.0, 4.0);
    CHECK(rs.roots[0] == cd(2.0, 0.0));
    CHECK(rs.roots[3] == cd(-2.0, 0.0));

    // (e^2+1)^2 = 0: double pair at ±i
    const RootSet dbl = biquadratic_roots(2.0, 1.0);
    CHECK(std::abs(dbl.roots[0] - cd(0.0, 1.0)) < 1e-7);
    CHECK(std::abs(dbl.roots[1] - cd(0.0, 1.0)) < 1e-7);
    CHECK(std::abs(dbl.roots[2] - cd(0.0, -1.0)) < 1e-7);
    CHECK(std::abs(dbl.roots[3] - cd(0.0, -1.0)) < 1e-7);
}

TEST_CASE("property: biquadratic equals ferrari at q = 0") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 300; ++i) {
        const double p = dist(rng), r = dist(rng);
        CHECK(root_matching_distance(biquadratic_roots(p, r), ferrari_roots({p, 0.0, r})) <
              1e-9);
    }
}

TEST_CASE("property: Vieta identities and conjugate symmetry") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const QuarticCoefficients c{dist(rng), dist(rng), dist(rng)};
        const RootSet rs = solve_quartic(c);
        CHECK(max_vieta_residual(c, rs) < 1e-9);

        RootSet conj = rs;
        for (auto& z : conj.roots) z = std::conj(z);
        CHECK(root_matching_distance(rs, conj) < 1e-9);
    }
}

TEST_CASE("degenerate resolvent: tiny pi with q != 0 falls back to the oracle") {
    // p = 0, r = -1, tiny q: resolvent root ~ q^2/8, far below 1e-14
    const QuarticCoefficients c{0.0, 1e-8, -1.0};
    CHECK_THROWS_AS((void)ferrari_roots(c), DegenerateResolvent);
    bool used_fallback = false;
    const RootSet rs = solve_quartic(c, &used_fallback);
    CHECK(used_fallback);
    for (const auto& z : rs.roots) CHECK(quartic_residual(c, z) < 1e-10);
}
