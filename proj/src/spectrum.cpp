#include "dosc/spectrum.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace dosc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAcceptTol = 1e-8;  // 100x the polished root accuracy

bool root_is_real(const std::complex<double>& z) {
    return std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z.real()));
}

} // namespace

const char* to_string(SymmetryLimit limit) {
    return limit == SymmetryLimit::Spin ? "spin" : "pseudospin";
}

const char* to_string(BranchLabel label) {
    return label == BranchLabel::Particle ? "particle" : "antiparticle";
}

double centrifugal_coefficient(const ModelParams& mp, SymmetryLimit limit) {
    const double sign = limit == SymmetryLimit::Spin ? 1.0 : -1.0;
    return mp.l * (mp.l + 1.0) + mp.A * (2.0 * mp.lambda + mp.A + sign);
}

double bargmann_index(const ModelParams& mp, SymmetryLimit limit) {
    const double rad = 1.0 + 4.0 * centrifugal_coefficient(mp, limit);
    if (rad < 0.0) {
        std::ostringstream msg;
        msg << "bargmann_index: radicand " << rad << " < 0 (unphysical parameter combination)";
        throw NegativeRadicand(msg.str());
    }
    return 0.5 + std::sqrt(rad) / 4.0;
}

double bargmann_index_negative_branch(const ModelParams& mp, SymmetryLimit limit) {
    const double rad = 1.0 + 4.0 * centrifugal_coefficient(mp, limit);
    if (rad < 0.0) throw NegativeRadicand("bargmann_index_negative_branch: radicand < 0");
    return 0.5 - std::sqrt(rad) / 4.0;
}

double sigma_spin(const ModelParams& mp) {
    const double t = (mp.l + 0.5) * (mp.l + 0.5) + mp.A * (2.0 * mp.lambda + mp.A + 1.0);
    if (t < 0.0) throw NegativeRadicand("sigma_spin: radicand < 0");
    return 0.5 * std::sqrt(t);
}

double varrho_pseudospin(const ModelParams& mp) {
    const double t = (mp.l + 0.5) * (mp.l + 0.5) + mp.A * (2.0 * mp.lambda + mp.A - 1.0);
    if (t < 0.0) throw NegativeRadicand("varrho_pseudospin: radicand < 0");
    return 0.5 * std::sqrt(t);
}

std::optional<double> DerivedQuantities::delta(double eps) const {
    const double rad = delta_radicand(eps);
    if (rad < 0.0) return std::nullopt;
    return std::sqrt(rad);
}

DerivedQuantities derived_spin(const ModelParams& mp) {
    DerivedQuantities d;
    d.limit = SymmetryLimit::Spin;
    d.beta1 = mp.w + mp.alpha * mp.alpha * mp.lambda * mp.mu;
    d.beta = d.beta1 * (1.0 - 2.0 * mp.lambda - 2.0 * mp.A);
    d.k = bargmann_index(mp, SymmetryLimit::Spin);
    d.mu = mp.mu;
    d.alpha = mp.alpha;
    d.degenerate_delta = (mp.mu == 0.0 && d.beta1 == 0.0);
    return d;
}

DerivedQuantities derived_pseudospin(const ModelParams& mp) {
    DerivedQuantities d;
    d.limit = SymmetryLimit::Pseudospin;
    const double a2 = mp.alpha * mp.alpha;
    d.beta1 = mp.w - a2 * mp.lambda * mp.mu;
    d.beta = mp.w + 2.0 * mp.lambda * mp.w + 2.0 * mp.w * mp.A - mp.lambda * a2 * mp.mu -
             2.0 * mp.lambda * mp.lambda * a2 * mp.mu - 2.0 * mp.lambda * a2 * mp.mu * mp.A;
    d.k = bargmann_index(mp, SymmetryLimit::Pseudospin);
    d.mu = mp.mu;
    d.alpha = mp.alpha;
    d.degenerate_delta = (mp.mu == 0.0 && d.beta1 == 0.0);
    return d;
}

DerivedQuantities derive(const ModelParams& mp, SymmetryLimit limit) {
    return limit == SymmetryLimit::Spin ? derived_spin(mp) : derived_pseudospin(mp);
}

QuarticCoefficients quartic_coefficients(const ModelParams& mp, SymmetryLimit limit,
                                         PseudospinCVariant variant) {
    const DerivedQuantities d = derive(mp, limit);
    const double a2 = mp.alpha * mp.alpha;
    const double a = limit == SymmetryLimit::Spin ? -1.0 + d.beta * a2 : -1.0 - d.beta * a2;
    const double b = 4.0 * a2 * (d.k + mp.n);
    double c = d.beta1 * d.beta1 + 2.0 * mp.mu;
    if (limit == SymmetryLimit::Pseudospin && variant == PseudospinCVariant::MinusTwoMu)
        c = d.beta1 * d.beta1 - 2.0 * mp.mu;
    return QuarticCoefficients{2.0 * a, -2.0 * mp.mu * b * b, a * a - b * b * c};
}

double residual(const ModelParams& mp, SymmetryLimit limit, double eps) {
    const DerivedQuantities d = derive(mp, limit);
    const auto delta = d.delta(eps);
    if (!delta || *delta == 0.0) return kInf;
    const double a2 = mp.alpha * mp.alpha;
    const double energy_term = (eps * eps - 1.0) / (4.0 * *delta * a2);
    const double beta_term = d.beta / (4.0 * *delta);
    const double rhs =
        limit == SymmetryLimit::Spin ? beta_term + energy_term : energy_term - beta_term;
    return (d.k + mp.n) - rhs;
}

double residual_delta_scaled(const ModelParams& mp, SymmetryLimit limit, double eps) {
    const DerivedQuantities d = derive(mp, limit);
    const auto delta = d.delta(eps);
    if (!delta) return kInf;
    const double a2 = mp.alpha * mp.alpha;
    const double sign = limit == SymmetryLimit::Spin ? -1.0 : 1.0;
    return 4.0 * *delta * (d.k + mp.n) + sign * d.beta - (eps * eps - 1.0) / a2;
}

const RootAssessment& SpectrumSolution::accepted_at(int physical_slot) const {
    return assessment[static_cast<std::size_t>(physical.at(static_cast<std::size_t>(physical_slot)))];
}

SpectrumSolution try_solve_spectrum(const ModelParams& mp, SymmetryLimit limit,
                                    PseudospinCVariant variant) {
    SpectrumSolution sol;
    const DerivedQuantities d = derive(mp, limit);
    sol.coefficients = quartic_coefficients(mp, limit, variant);
    sol.roots = solve_quartic(sol.coefficients, &sol.used_oracle_fallback);
    sol.degenerate_delta = d.degenerate_delta;

    // A multiple quartic root is one energy; keep the physical list duplicate-free.
    auto duplicate_of_accepted = [&](double eps) {
        for (const int idx : sol.physical) {
            const double other = sol.assessment[static_cast<std::size_t>(idx)].root.real();
            if (std::abs(eps - other) <= 1e-8 * std::max(1.0, std::abs(eps))) return true;
        }
        return false;
    };

    for (int i = 0; i < 4; ++i) {
        RootAssessment& ra = sol.assessment[static_cast<std::size_t>(i)];
        ra.root = sol.roots.roots[static_cast<std::size_t>(i)];
        ra.quartic_residual = quartic_residual(sol.coefficients, ra.root);
        if (!root_is_real(ra.root)) {
            ra.rejection = "complex root";
            continue;
        }
        const double eps = ra.root.real();
        if (d.degenerate_delta) {
            // Free-particle-like limit: the implicit equation degenerates to
            // -(eps^2 - 1)/alpha^2 = 0.  Classify with the delta-scaled form
            // instead of dividing by delta == 0.
            ra.implicit_residual = residual_delta_scaled(mp, limit, eps);
            if (std::abs(ra.implicit_residual) >= kAcceptTol) {
                ra.rejection = "delta degenerate (== 0 identically); scaled residual too large";
            } else if (duplicate_of_accepted(eps)) {
                ra.rejection = "duplicate of an accepted root (quartic multiplicity)";
            } else {
                ra.accepted = true;
                ra.branch = eps >= 0.0 ? BranchLabel::Particle : BranchLabel::Antiparticle;
                sol.physical.push_back(i);
            }
            continue;
        }
        ra.implicit_residual = residual(mp, limit, eps);
        if (std::isinf(ra.implicit_residual)) {
            ra.rejection = d.delta_radicand(eps) < 0.0 ? "delta(eps) complex (radicand < 0)"
                                                       : "delta(eps) = 0 at this root";
            continue;
        }
        if (std::abs(ra.implicit_residual) >= kAcceptTol) {
            ra.rejection = "implicit-equation residual above tolerance (squaring artifact)";
            continue;
        }
        if (duplicate_of_accepted(eps)) {
            ra.rejection = "duplicate of an accepted root (quartic multiplicity)";
            continue;
        }
        ra.accepted = true;
        ra.branch = eps >= 0.0 ? BranchLabel::Particle : BranchLabel::Antiparticle;
        sol.physical.push_back(i);
    }
    return sol;
}

SpectrumSolution solve_spectrum(const ModelParams& mp, SymmetryLimit limit,
                                PseudospinCVariant variant) {
    SpectrumSolution sol = try_solve_spectrum(mp, limit, variant);
    if (sol.physical.empty()) {
        std::ostringstream msg;
        msg << "solve_spectrum: all four roots rejected (" << to_string(limit) << "); residuals:";
        for (const auto& ra : sol.assessment)
            msg << " [root " << ra.root.real() << (ra.root.imag() < 0 ? "-" : "+")
                << std::abs(ra.root.imag()) << "i: "
                << (ra.rejection.empty() ? "ok" : ra.rejection) << ", residual "
                << ra.implicit_residual << "]";
        throw NoPhysicalRoot(msg.str());
    }
    return sol;
}

double flat_spectrum(const ModelParams& mp) {
    if (mp.mu != 0.0 || mp.A != 0.0)
        std::cerr << "warning: flat_spectrum is the mu = 0, A = 0 closed form; called with mu = "
                  << mp.mu << ", A = " << mp.A << "\n";
    const double rad =
        1.0 + 2.0 * mp.w * mp.alpha * mp.alpha * (2.0 * mp.n + mp.lambda + mp.l + 1.0);
    if (rad < 0.0) {
        std::ostringstream msg;
        msg << "flat_spectrum: radicand " << rad << " < 0";
        throw NegativeRadicand(msg.str());
    }
    return std::sqrt(rad);
}

PseudospinCDiagnostic pseudospin_c_diagnostic(const ModelParams& mp) {
    PseudospinCDiagnostic diag;
    for (const auto variant : {PseudospinCVariant::PlusTwoMu, PseudospinCVariant::MinusTwoMu}) {
        const SpectrumSolution sol =
            try_solve_spectrum(mp, SymmetryLimit::Pseudospin, variant);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& ra : sol.assessment)
            if (root_is_real(ra.root)) best = std::min(best, std::abs(ra.implicit_residual));
        if (variant == PseudospinCVariant::PlusTwoMu) {
            diag.plus_two_mu_accepts = !sol.physical.empty();
            diag.best_abs_residual_plus = best;
        } else {
            diag.minus_two_mu_accepts = !sol.physical.empty();
            diag.best_abs_residual_minus = best;
        }
    }
    return diag;
}

} // namespace dosc
