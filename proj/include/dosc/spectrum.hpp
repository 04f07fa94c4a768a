#pragma once

#include "dosc/quartic.hpp"

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dosc {

enum class SymmetryLimit { Spin, Pseudospin };

const char* to_string(SymmetryLimit limit);

// Physical inputs of one bound-state problem, in units where c = 1/alpha and
// eps = E/c^2.  The scalar potential is U = mu r^2 and the tensor potential
// w r + A/r.  `l` holds the orbital number l in the spin limit and l-bar in
// the pseudospin limit (the caller supplies the mapping lambda(lambda+1) =
// l(l+1) resp. lambda(lambda-1) = lbar(lbar+1); nothing here enforces it).
struct ModelParams {
    double alpha = 1.0;   // fine-structure constant, > 0
    double mu = 0.0;      // quadratic potential strength
    double w = 0.0;       // linear tensor coefficient (omega)
    double A = 0.0;       // 1/r tensor coefficient
    double lambda = 0.0;  // spin-orbit quantum number
    double l = 0.0;       // orbital number l (spin) or l-bar (pseudospin), >= 0
    int n = 0;            // radial quantum number, >= 0
};

struct NegativeRadicand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoPhysicalRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerator of the 1/r^2 term of the reduced radial equation:
//   spin:        l(l+1) + A(2 lambda + A + 1)
//   pseudospin:  l(l+1) + A(2 lambda + A - 1)
// The pseudospin sign follows the reduced operator; it is the one for which
// ell_term == k(k-1) holds (the grid-operator module asserts exactly that,
// tying the index to the Casimir).
double centrifugal_coefficient(const ModelParams& mp, SymmetryLimit limit);

/// Bargmann index k = 1/2 + sqrt(1 + 4*centrifugal)/4.  The + branch gives
/// k > 1/2 (normalizable positive discrete series).  Throws NegativeRadicand.
double bargmann_index(const ModelParams& mp, SymmetryLimit limit);

/// The discarded - branch, exposed read-only for diagnostics.
double bargmann_index_negative_branch(const ModelParams& mp, SymmetryLimit limit);

// sigma = sqrt((l+1/2)^2 + A(2 lambda + A + 1))/2; the spin Bargmann index is
// k = 1/2 + sigma exactly.
double sigma_spin(const ModelParams& mp);
// Pseudospin analogue with A(2 lambda + A - 1), the Casimir-consistent sign,
// so that kbar = 1/2 + varrho holds exactly.
double varrho_pseudospin(const ModelParams& mp);

// Frequencies and representation index of one symmetry limit.  delta depends
// on the energy:  delta(eps) = sqrt(beta1^2 + 2 mu (1 + eps)) with
//   spin:        beta1 = w + alpha^2 lambda mu,   beta = beta1 (1 - 2 lambda - 2A)
//   pseudospin:  beta1 = w - alpha^2 lambda mu,
//                beta  = w(1 + 2 lambda + 2A) - lambda alpha^2 mu (1 + 2 lambda + 2A)
struct DerivedQuantities {
    SymmetryLimit limit;
    double beta1 = 0.0;
    double beta = 0.0;
    double k = 0.0;
    double mu = 0.0;
    double alpha = 1.0;
    bool degenerate_delta = false;  // delta(eps) == 0 identically (mu = 0, beta1 = 0)

    double delta_radicand(double eps) const { return beta1 * beta1 + 2.0 * mu * (1.0 + eps); }
    /// nullopt when the radicand is negative (complex delta).
    std::optional<double> delta(double eps) const;
};

DerivedQuantities derived_spin(const ModelParams& mp);
DerivedQuantities derived_pseudospin(const ModelParams& mp);
DerivedQuantities derive(const ModelParams& mp, SymmetryLimit limit);

// Sign of the 2 mu term in the pseudospin constant c.  Squaring
// k+n = (eps^2-1)/(4 delta alpha^2) - beta/(4 delta) yields
// c = +2 mu + (w - alpha^2 lambda mu)^2 (PlusTwoMu, the production choice);
// the MinusTwoMu variant is kept so the implicit-equation residual can
// arbitrate between the two sign conventions at runtime
// (see pseudospin_c_diagnostic).
enum class PseudospinCVariant { PlusTwoMu, MinusTwoMu };

// Quartic coefficients obtained by algebraically squaring the implicit
// relation: a = -1 ± beta alpha^2 (+ spin, - pseudospin), b = 4 alpha^2 (k+n),
// c = beta1^2 + 2 mu; then p = 2a, q = -2 mu b^2, r = a^2 - b^2 c.
QuarticCoefficients quartic_coefficients(const ModelParams& mp, SymmetryLimit limit,
                                         PseudospinCVariant variant = PseudospinCVariant::PlusTwoMu);

// LHS - RHS of the unsquared implicit equation at eps:
//   spin:        (k+n) - [beta/(4 delta) + (eps^2-1)/(4 delta alpha^2)]
//   pseudospin:  (k+n) - [(eps^2-1)/(4 delta alpha^2) - beta/(4 delta)]
// Returns +infinity when delta(eps) is complex or zero (rejection sentinel,
// not an exception).
double residual(const ModelParams& mp, SymmetryLimit limit, double eps);

// Degenerate-delta form of the same relation, multiplied through by 4 delta:
//   spin:        4 delta (k+n) - beta - (eps^2-1)/alpha^2
//   pseudospin:  4 delta (k+n) + beta - (eps^2-1)/alpha^2
// Well defined at delta == 0; used to classify roots of the free-particle
// limit where delta vanishes identically.
double residual_delta_scaled(const ModelParams& mp, SymmetryLimit limit, double eps);

enum class BranchLabel { Particle, Antiparticle };

const char* to_string(BranchLabel label);

struct RootAssessment {
    std::complex<double> root;
    double quartic_residual = 0.0;
    double implicit_residual = std::numeric_limits<double>::infinity();
    bool accepted = false;
    BranchLabel branch = BranchLabel::Particle;  // meaningful when accepted
    std::string rejection;                       // empty when accepted
};

struct SpectrumSolution {
    QuarticCoefficients coefficients;
    RootSet roots;
    std::array<RootAssessment, 4> assessment{};
    std::vector<int> physical;  // indices into roots/assessment, acceptance order
    bool used_oracle_fallback = false;
    bool degenerate_delta = false;

    const RootAssessment& accepted_at(int physical_slot) const;
};

/// Full pipeline; `physical` may come back empty (no exception).
SpectrumSolution try_solve_spectrum(const ModelParams& mp, SymmetryLimit limit,
                                    PseudospinCVariant variant = PseudospinCVariant::PlusTwoMu);

/// As try_solve_spectrum, but throws NoPhysicalRoot (message carries all four
/// residuals) when every root is rejected.
SpectrumSolution solve_spectrum(const ModelParams& mp, SymmetryLimit limit,
                                PseudospinCVariant variant = PseudospinCVariant::PlusTwoMu);

/// Flat-space closed form  eps = sqrt(1 + 2 w alpha^2 (2n + lambda + l + 1)).
/// Intended for mu = 0, A = 0; warns on stderr otherwise.
/// Throws NegativeRadicand.
double flat_spectrum(const ModelParams& mp);

struct PseudospinCDiagnostic {
    bool plus_two_mu_accepts = false;
    bool minus_two_mu_accepts = false;
    double best_abs_residual_plus = std::numeric_limits<double>::infinity();
    double best_abs_residual_minus = std::numeric_limits<double>::infinity();
};

/// Solves with both c variants and reports which one produces roots that
/// satisfy the unsquared equation.
PseudospinCDiagnostic pseudospin_c_diagnostic(const ModelParams& mp);

} // namespace dosc
