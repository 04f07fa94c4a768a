#include "dosc/laguerre.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dosc {

double laguerre(int n, double a, double x) {
    assert(n >= 0);
    if (n == 0) return 1.0;
    double lm2 = 1.0;          // L_0
    double lm1 = 1.0 + a - x;  // L_1
    for (int k = 2; k <= n; ++k) {
        const double lk = ((2.0 * k - 1.0 + a - x) * lm1 - (k - 1.0 + a) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
    }
    return lm1;
}

std::vector<double> laguerre_sequence(int n_max, double a, double x) {
    assert(n_max >= 0);
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    out[0] = 1.0;
    if (n_max >= 1) out[1] = 1.0 + a - x;
    for (int k = 2; k <= n_max; ++k)
        out[k] = ((2.0 * k - 1.0 + a - x) * out[k - 1] - (k - 1.0 + a) * out[k - 2]) / k;
    return out;
}

std::complex<double> generating_sum_truncated(double a, std::complex<double> y, double x,
                                              int n_max) {
    // Accumulate y^n L_n while running the recurrence upward.
    std::complex<double> sum = 1.0;  // n = 0 term
    if (n_max == 0) return sum;
    double lm2 = 1.0;
    double lm1 = 1.0 + a - x;
    std::complex<double> yn = y;
    sum += yn * lm1;
    for (int k = 2; k <= n_max; ++k) {
        const double lk = ((2.0 * k - 1.0 + a - x) * lm1 - (k - 1.0 + a) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
        yn *= y;
        sum += yn * lk;
    }
    return sum;
}

std::complex<double> generating_closed(double a, std::complex<double> y, double x) {
    if (std::abs(y) >= 1.0)
        throw std::domain_error("generating_closed: |y| >= 1 is outside the disc of convergence");
    const std::complex<double> one_minus_y = 1.0 - y;
    return std::exp(-x * y / one_minus_y) * std::pow(one_minus_y, -(a + 1.0));
}

} // namespace dosc
