#pragma once

#include <complex>
#include <vector>

namespace dosc {

// Generalized Laguerre polynomial L_n^a(x) by the three-term recurrence
//
//     k L_k^a = (2k - 1 + a - x) L_{k-1}^a - (k - 1 + a) L_{k-2}^a,
//     L_0^a = 1,  L_1^a = 1 + a - x.
//
// The recurrence is the production path; the explicit alternating sum
// cancels catastrophically for moderate n and x.  Real (non-integer) a is
// supported: the physical superscripts 2k-1 are generically non-integer.
double laguerre(int n, double a, double x);

/// L_0^a(x) .. L_nmax^a(x) in one upward pass.
std::vector<double> laguerre_sequence(int n_max, double a, double x);

/// Truncated generating function  sum_{n=0}^{n_max} y^n L_n^a(x),  |y| < 1.
std::complex<double> generating_sum_truncated(double a, std::complex<double> y,
                                              double x, int n_max);

/// Closed form  exp(-x y / (1-y)) / (1-y)^{a+1}.
/// Throws std::domain_error when |y| >= 1.
std::complex<double> generating_closed(double a, std::complex<double> y, double x);

} // namespace dosc
