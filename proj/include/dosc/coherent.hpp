#pragma once

#include "dosc/wavefunctions.hpp"

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace dosc {

struct TruncationNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Perelomov coherent state built on a solved radial problem.  xi is the
// series coordinate of the expansion (|xi| < 1 strictly); tau accumulates
// fictitious time conjugate to B3; hbar is kept symbolic (default 1).
// alpha/c2/c0 carry the lower-component constants of the closed forms (see
// eval_R2).  All n-levels share the frozen (k, delta, eps) of the state the
// parameters were built from -- the algebra lives at fixed energy.
struct CoherentParams {
    double k = 1.0;
    std::complex<double> xi;
    double delta = 1.0;
    double eps = 0.0;
    double tau = 0.0;
    double hbar = 1.0;
    double alpha = 1.0;
    double c2 = 0.0;
    double c0 = 0.0;

    std::complex<double> xi_t() const;          // xi e^{-i tau/hbar}
    std::complex<double> global_phase() const;  // e^{-i k tau/hbar}
};

/// Validates |xi| < 1 and delta > 0 (std::domain_error otherwise).
CoherentParams coherent_from_state(const RadialState& st, std::complex<double> xi);

/// c_n = (1-|xi|^2)^k sqrt(Gamma(n+2k)/(n! Gamma(2k))) xi^n,  n = 0..n_max.
/// Sum of |c_n|^2 is <= 1 and tends to 1 as n_max grows.
std::vector<std::complex<double>> perelomov_coefficients(double k, std::complex<double> xi,
                                                         int n_max);
std::vector<std::complex<double>> perelomov_expansion(const CoherentParams& p, int n_max);

// Closed-form radial coherent states, normalized so that they equal the
// series over the L2(dr)-normalized eigenfunctions term by term:
//
//   R1(r,xi) = sqrt(2/Gamma(2k)) [delta (1-|xi|^2)]^k (1-xi)^{-2k}
//              r^{2k-1/2} exp( (delta r^2/2) (xi+1)/(xi-1) )
//
//   R2(r,xi) = alpha/(1+eps) * sqrt(2/Gamma(2k)) [delta (1-|xi|^2)]^k (1-xi)^{-2k}
//              r^{2k-3/2} exp(...) [ -2 delta r^2 xi/(1-xi) + c2 r^2 + c0 ]
//
// The -2 delta term of R2 carries r^2 xi/(1-xi): with the L_{-1} == 0
// convention the L^{2k} sum is the shifted generating function
// sum_{n>=1} xi^n L_{n-1}^{2k} = xi/(1-xi)^{2k+1} e^{-x xi/(1-xi)}, whence
// the extra xi/(1-xi).  Throws std::domain_error at xi = 1; R2 additionally
// throws DegenerateEnergy when |1+eps| < 1e-12.
std::complex<double> coherent_R1_closed(const CoherentParams& p, double r);
std::complex<double> coherent_R2_closed(const CoherentParams& p, double r);

/// Truncated series  sum_{n<=n_max} c_n N_n R^{1,2}_n(r)  over the
/// L2(dr)-normalized eigenfunctions at frozen (k, delta, eps): the
/// independent oracle for the closed forms.
std::complex<double> coherent_R1_series(const CoherentParams& p, double r, int n_max);
std::complex<double> coherent_R2_series(const CoherentParams& p, double r, int n_max);

/// Batched series evaluation (one Laguerre recurrence pass per r).
std::vector<std::complex<double>> coherent_series_profile(const CoherentParams& p,
                                                          const std::vector<double>& r,
                                                          int n_max, bool lower_component);

/// Fictitious-time evolution under U(tau) = e^{-i B3 tau/hbar}: accumulates
/// tau; the rotated coordinate xi e^{-i tau/hbar} and the global phase
/// e^{-i k tau/hbar} are exposed by xi_t()/global_phase().  Composition in
/// tau is exact; |xi_t| stays |xi| to machine precision.
CoherentParams evolve(const CoherentParams& p, double dtau);

// Conventions for the evolved closed forms.  Unitary is the default: phase
// e^{-i k tau/hbar} and every xi occurrence rotated to xi e^{-i tau/hbar},
// which is what U(tau) = e^{-i B3 tau/hbar} gives and what the matrix oracle
// reproduces.  Mirror keeps the unevolved xi in the prefactor, rotates the
// exponent with the opposite sense e^{+i tau/hbar}, and carries the fixed
// compact phase e^{-i k}: mirror-image dynamics, kept for comparison.
enum class TimeConvention { Unitary, Mirror };

std::complex<double> evolved_R1(const CoherentParams& p, double r,
                                TimeConvention conv = TimeConvention::Unitary);
std::complex<double> evolved_R2(const CoherentParams& p, double r,
                                TimeConvention conv = TimeConvention::Unitary);

// dim-dimensional positive-discrete-series matrices with index k:
//   K3 = diag(k+n),  (K+)_{n+1,n} = sqrt((n+1)(n+2k)),  K- = K+^T.
// [K3,K±] = ±K± and [K-,K+] = 2 K3 hold exactly up to the truncation row.
struct TruncatedRep {
    int dim = 0;
    double k = 0.0;
    Eigen::MatrixXcd Kplus, Kminus, K3;

    static TruncatedRep build(double k, int dim);
};

/// Scaled-and-squared matrix exponential (Taylor core, ||A/2^s|| <= 1/2).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

struct DisplacementOracle {
    Eigen::VectorXcd expm_column;   // exp(xi K+ - conj(xi) K-) e0
    Eigen::VectorXcd disentangled;  // e^{zeta K+} e^{eta K3} e^{-conj(zeta) K-} e0
    Eigen::VectorXcd series;        // Perelomov coefficients at zeta(xi)
    double max_pairwise_diff = 0.0;
    // Distance between the exponential column and the series evaluated
    // directly at the displacement argument xi (instead of at zeta):
    // quantifies the zeta-vs-xi convention mismatch rather than silently
    // reinterpreting one as the other.
    double xi_argument_series_gap = 0.0;
};

// Displacement operator D(xi) = exp(xi K+ - conj(xi) K-) applied to |k,0>,
// three ways: the matrix exponential, the disentangled normal-order product
// with zeta = (xi/|xi|) tanh|xi| and eta = ln(1 - |zeta|^2), and the
// Perelomov series at zeta.  The three columns agree to rounding; the
// truncation tail is checked by doubling the dimension (cheap product form)
// and must be < 1e-10, else TruncationNotConverged.
DisplacementOracle matrix_displacement_oracle(const TruncatedRep& rep, std::complex<double> xi);

} // namespace dosc
