#include "dosc/checks.hpp"

#include "dosc/coherent.hpp"
#include "dosc/grid_ops.hpp"
#include "dosc/laguerre.hpp"
#include "dosc/quartic.hpp"
#include "dosc/spectrum.hpp"
#include "dosc/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dosc::checks {

namespace {

using cd = std::complex<double>;

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

double bound_for(const CheckOptions& opt, const std::string& id, double fallback) {
    const auto it = opt.tol_override.find(id);
    return it == opt.tol_override.end() ? fallback : it->second;
}

int positive_slot(const SpectrumSolution& sol) {
    for (int s = 0; s < static_cast<int>(sol.physical.size()); ++s)
        if (sol.accepted_at(s).root.real() > 0.0) return s;
    throw NoPhysicalRoot("no accepted positive root");
}

// --- criterion 1 -----------------------------------------------------------

CheckResult check_flat_regression(const CheckOptions& opt) {
    CheckResult res{"flat_regression",
                    "flat-space positive root vs closed form over the (alpha,w,lambda,l,n) grid",
                    0.0, bound_for(opt, "flat_regression", 1e-10), false, ""};
    int tuples = 0;
    for (const double alpha : {0.01, 0.1, 0.5, 1.0})
        for (const double w : {0.5, 1.0, 2.0})
            for (const double lambda : {0.0, 1.0, 2.0})
                for (const double l : {0.0, 1.0, 2.0})
                    for (int n = 0; n <= 4; ++n) {
                        const ModelParams mp{alpha, 0.0, w, 0.0, lambda, l, n};
                        const double ref = flat_spectrum(mp);
                        const auto sol = solve_spectrum(mp, SymmetryLimit::Spin);
                        const double eps = sol.accepted_at(positive_slot(sol)).root.real();
                        res.measured = std::max(res.measured, std::abs(eps - ref));
                        ++tuples;
                    }
    res.pass = res.measured < res.bound;
    res.detail = "tuples=" + std::to_string(tuples);
    return res;
}

// --- criterion 2 -----------------------------------------------------------

CheckResult check_quartic_oracle(const CheckOptions& opt) {
    CheckResult res{"quartic_oracle",
                    "Ferrari (with fallback) vs companion-matrix oracle, 10000 random triples",
                    0.0, bound_for(opt, "quartic_oracle", 1e-9), false, ""};
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    int fallbacks = 0;
    for (int i = 0; i < 10000; ++i) {
        const QuarticCoefficients c{dist(rng), dist(rng), dist(rng)};
        bool used_fallback = false;
        const RootSet ferrari = solve_quartic(c, &used_fallback);
        fallbacks += used_fallback ? 1 : 0;
        const RootSet oracle = oracle_roots(c);
        res.measured = std::max(res.measured, root_matching_distance(ferrari, oracle));
        res.measured = std::max(res.measured, max_vieta_residual(c, ferrari));
        res.measured = std::max(res.measured, max_vieta_residual(c, oracle));
    }
    res.pass = res.measured < res.bound;
    res.detail = "oracle_fallbacks=" + std::to_string(fallbacks);
    return res;
}

// --- criterion 3 -----------------------------------------------------------

struct CurvedTuple {
    ModelParams mp;
    SymmetryLimit limit;
};

std::vector<CurvedTuple> curved_tuples() {
    std::vector<CurvedTuple> out;
    const std::pair<double, double> spin_pairs[] = {{1.0, 1.0}, {2.0, 2.0}};
    const std::pair<double, double> pseudo_pairs[] = {{2.0, 1.0}, {3.0, 2.0}};
    for (const double alpha : {0.5, 1.0})
        for (const double mu : {0.01, 0.1})
            for (const double w : {0.5, 1.0})
                for (const double A : {0.05, 0.2})
                    for (const int n : {0, 2}) {
                        for (const auto& [lambda, l] : spin_pairs)
                            out.push_back({ModelParams{alpha, mu, w, A, lambda, l, n},
                                           SymmetryLimit::Spin});
                        for (const auto& [lambda, l] : pseudo_pairs)
                            out.push_back({ModelParams{alpha, mu, w, A, lambda, l, n},
                                           SymmetryLimit::Pseudospin});
                    }
    return out;
}

CheckResult check_curved_residuals(const CheckOptions& opt) {
    CheckResult res{"curved_residuals",
                    "implicit-equation residual of accepted roots, curved cases (mu,A != 0)",
                    0.0, bound_for(opt, "curved_residuals", 1e-8), false, ""};
    const auto tuples = curved_tuples();
    int accepted_total = 0;
    int plus_ok = 0, minus_ok = 0, pseudo_total = 0, neither = 0;
    bool every_tuple_has_root = true;
    for (const auto& t : tuples) {
        const auto sol = try_solve_spectrum(t.mp, t.limit);
        if (sol.physical.empty()) every_tuple_has_root = false;
        for (const int idx : sol.physical) {
            res.measured = std::max(
                res.measured, std::abs(sol.assessment[static_cast<std::size_t>(idx)].implicit_residual));
            ++accepted_total;
        }
        if (t.limit == SymmetryLimit::Pseudospin) {
            ++pseudo_total;
            const auto diag = pseudospin_c_diagnostic(t.mp);
            plus_ok += diag.plus_two_mu_accepts ? 1 : 0;
            minus_ok += diag.minus_two_mu_accepts ? 1 : 0;
            neither += (!diag.plus_two_mu_accepts && !diag.minus_two_mu_accepts) ? 1 : 0;
        }
    }
    res.pass = res.measured < res.bound && every_tuple_has_root && neither == 0;
    std::ostringstream d;
    d << "tuples=" << tuples.size() << " accepted_roots=" << accepted_total
      << "; pseudospin c-variant: +2mu accepts " << plus_ok << "/" << pseudo_total
      << ", -2mu accepts " << minus_ok << "/" << pseudo_total;
    if (neither > 0) d << "; NEITHER variant accepts on " << neither << " tuples";
    res.detail = d.str();
    return res;
}

// --- criterion 4 -----------------------------------------------------------

CheckResult check_su11_closure(const CheckOptions& opt) {
    CheckResult res{"su11_closure",
                    "commutator and Casimir defects at N, shrinking ~4x under grid doubling",
                    0.0, bound_for(opt, "su11_closure", 1e-3), false, ""};
    const OperatorContext ctxs[] = {
        OperatorContext::from_params(ModelParams{1.0, 0.0, 1.0, 0.1, 1.0, 1.0, 0},
                                     SymmetryLimit::Spin),
        OperatorContext::from_params(ModelParams{1.0, 0.0, 1.0, 0.1, 2.0, 1.0, 0},
                                     SymmetryLimit::Pseudospin),
    };
    const std::function<cd(double)> fs[] = {
        [](double x) { return cd(std::exp(-std::pow((x - 20.0) / 6.0, 2)), 0.0); },
        [](double x) { return cd(std::exp(-std::pow((x - 24.0) / 5.5, 2)), 0.0); },
        [](double x) { return cd(x / 20.0 * std::exp(-std::pow((x - 18.0) / 5.0, 2)), 0.0); },
    };
    double ratio_lo = std::numeric_limits<double>::infinity();
    double ratio_hi = 0.0;
    for (const auto& ctx : ctxs) {
        for (const auto& f : fs) {
            std::array<std::array<double, 3>, 3> defects{};  // level x {comm1, comm2, casimir}
            for (int level = 0; level < 3; ++level) {
                const int n = opt.grid_n >> 1 << level;  // N/2, N, 2N
                const Grid g = Grid::uniform(n, opt.grid_xmax);
                const GridFunction gf = sample(g, f);
                const auto [c1, c2] = commutator_defect(ctx, gf);
                defects[static_cast<std::size_t>(level)] = {c1, c2, casimir_defect(ctx, gf)};
            }
            for (int j = 0; j < 3; ++j) {
                res.measured = std::max(res.measured, defects[1][static_cast<std::size_t>(j)]);
                for (int level = 0; level < 2; ++level) {
                    const double ratio = defects[static_cast<std::size_t>(level)][static_cast<std::size_t>(j)] /
                                         defects[static_cast<std::size_t>(level) + 1][static_cast<std::size_t>(j)];
                    ratio_lo = std::min(ratio_lo, ratio);
                    ratio_hi = std::max(ratio_hi, ratio);
                }
            }
        }
    }
    const bool ratios_ok = ratio_lo >= 3.8 && ratio_hi <= 4.2;
    res.pass = res.measured < res.bound && ratios_ok;
    res.detail = "doubling ratios in [" + fmt3(ratio_lo) + ", " + fmt3(ratio_hi) +
                 "] (required [3.8, 4.2]); contexts=spin,pseudospin; test functions=3";
    return res;
}

// --- criterion 5 -----------------------------------------------------------

CheckResult check_eigenvalue_ladder(const CheckOptions& opt) {
    CheckResult res{"eigenvalue_ladder",
                    "<B3> on analytic eigenfunctions vs k+n; T- annihilation of n=0", 0.0,
                    bound_for(opt, "eigenvalue_ladder", 5e-3), false, ""};
    const OperatorContext ctxs[] = {
        OperatorContext::from_params(ModelParams{1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0},
                                     SymmetryLimit::Spin),
        OperatorContext::from_params(ModelParams{1.0, 0.0, 1.0, 0.1, 2.0, 1.0, 0},
                                     SymmetryLimit::Pseudospin),
    };
    double annihilation = 0.0;
    for (const auto& ctx : ctxs) {
        for (int n = 0; n <= 5; ++n) {
            const Grid g = Grid::uniform(opt.grid_n, opt.grid_xmax + 8.0 * n);
            const GridFunction phi = eigenfunction_phi(g, ctx.k, n);
            res.measured =
                std::max(res.measured, std::abs(b3_expectation(ctx, phi) - (ctx.k + n)));
        }
        const Grid g = Grid::uniform(opt.grid_n, opt.grid_xmax);
        const GridFunction phi0 = eigenfunction_phi(g, ctx.k, 0);
        const GridFunction tm = apply_Tminus(ctx, phi0);
        annihilation = std::max(annihilation, l2_norm(tm) / l2_norm(phi0));
    }
    res.pass = res.measured < res.bound && annihilation < 1e-3;
    res.detail = "T- annihilation defect " + fmt3(annihilation) + " (bound 1.000e-03)";
    return res;
}

// --- criterion 6 -----------------------------------------------------------

// Solved states whose Bargmann index hits the target k exactly; A != 0 for
// the largest k so the tensor-coefficient path is exercised too.
RadialState reference_state(double k_target, SymmetryLimit limit) {
    ModelParams mp;
    mp.alpha = 0.5;
    mp.mu = 0.05;
    mp.w = 1.0;
    mp.n = 0;
    if (k_target == 2.5) {
        mp.l = 3.0;
        mp.A = 0.5;
        mp.lambda = limit == SymmetryLimit::Spin ? 3.0 : 4.0;
    } else {
        mp.l = 2.0 * k_target - 1.5;  // A = 0: k = 1/2 + (2l+1)/4
        mp.A = 0.0;
        mp.lambda = limit == SymmetryLimit::Spin ? mp.l : mp.l + 1.0;
    }
    const auto sol = solve_spectrum(mp, limit);
    return make_radial_state(mp, limit, sol, positive_slot(sol));
}

CheckResult check_coherent_series(const CheckOptions& opt) {
    CheckResult res{"coherent_series",
                    "closed-form coherent states vs truncated eigenfunction series", 0.0,
                    bound_for(opt, "coherent_series", 1e-8), false, ""};
    std::string worst_case;
    CoherentParams worst_params{};
    std::vector<double> worst_grid;
    bool worst_lower = false;
    for (const auto limit : {SymmetryLimit::Spin, SymmetryLimit::Pseudospin}) {
        for (const double k_target : {0.75, 1.25, 2.5}) {
            const RadialState st = reference_state(k_target, limit);
            std::vector<double> r(160);
            const double r_max = std::sqrt(40.0 / st.delta);
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] = r_max * static_cast<double>(j + 1) / static_cast<double>(r.size());
            for (const double mag : {0.3, 0.6, 0.9}) {
                for (int ph = 0; ph < 8; ++ph) {
                    const cd xi = std::polar(mag, 2.0 * M_PI * ph / 8.0);
                    const CoherentParams p = coherent_from_state(st, xi);
                    for (const bool lower : {false, true}) {
                        const auto series =
                            coherent_series_profile(p, r, opt.coherent_nmax, lower);
                        double sup_closed = 0.0, sup_dev = 0.0;
                        for (std::size_t j = 0; j < r.size(); ++j) {
                            const cd closed = lower ? coherent_R2_closed(p, r[j])
                                                    : coherent_R1_closed(p, r[j]);
                            sup_closed = std::max(sup_closed, std::abs(closed));
                            sup_dev = std::max(sup_dev, std::abs(closed - series[j]));
                        }
                        const double dev = sup_dev / sup_closed;
                        if (dev > res.measured) {
                            res.measured = dev;
                            std::ostringstream w;
                            w << "worst: " << to_string(limit) << " k=" << k_target
                              << " |xi|=" << mag << " phase=" << ph << "/8 "
                              << (lower ? "R2" : "R1");
                            worst_case = w.str();
                            worst_params = p;
                            worst_grid = r;
                            worst_lower = lower;
                        }
                    }
                }
            }
        }
    }
    res.pass = res.measured < res.bound;
    res.detail = worst_case + "; n_max=" + std::to_string(opt.coherent_nmax);
    if (!res.pass && !worst_grid.empty()) {
        // Separate truncation from formula error: re-evaluate the worst
        // configuration with a deeper series and report the converged gap.
        const int deep = opt.coherent_nmax + 100;
        const auto series = coherent_series_profile(worst_params, worst_grid, deep, worst_lower);
        double sup_closed = 0.0, sup_dev = 0.0;
        for (std::size_t j = 0; j < worst_grid.size(); ++j) {
            const cd closed = worst_lower ? coherent_R2_closed(worst_params, worst_grid[j])
                                          : coherent_R1_closed(worst_params, worst_grid[j]);
            sup_closed = std::max(sup_closed, std::abs(closed));
            sup_dev = std::max(sup_dev, std::abs(closed - series[j]));
        }
        res.detail += "; same configuration at n_max=" + std::to_string(deep) + ": " +
                      fmt3(sup_dev / sup_closed) + " (deviation is series truncation)";
    }
    return res;
}

// --- criterion 7 -----------------------------------------------------------

CheckResult check_displacement_oracle(const CheckOptions& opt) {
    CheckResult res{"displacement_oracle",
                    "series / matrix-exponential / disentangled product pairwise agreement", 0.0,
                    bound_for(opt, "displacement_oracle", 1e-9), false, ""};
    const TruncatedRep rep = TruncatedRep::build(1.25, opt.rep_dim);
    const cd xis[] = {cd(0.8, 0.0), cd(-0.8, 0.0), cd(0.56, 0.56), cd(0.0, 0.3),
                      cd(-0.17, -0.21)};
    double worst_xi_argument_gap = 0.0;
    for (const cd xi : xis) {
        const auto oracle = matrix_displacement_oracle(rep, xi);
        res.measured = std::max(res.measured, oracle.max_pairwise_diff);
        worst_xi_argument_gap = std::max(worst_xi_argument_gap, oracle.xi_argument_series_gap);
    }
    res.pass = res.measured < res.bound;
    res.detail = "dim=" + std::to_string(opt.rep_dim) +
                 "; zeta-vs-xi convention gap (series at xi vs exp(xi K+ - xi* K-)): " +
                 fmt3(worst_xi_argument_gap);
    return res;
}

// --- criterion 8 -----------------------------------------------------------

CheckResult check_time_evolution(const CheckOptions& opt) {
    CheckResult res{"time_evolution",
                    "evolved closed form vs e^{-i K3 tau/hbar} matrix-oracle evolution", 0.0,
                    bound_for(opt, "time_evolution", 1e-7), false, ""};
    const RadialState st = reference_state(1.25, SymmetryLimit::Spin);
    const cd xi(0.4, 0.3);
    const CoherentParams base = coherent_from_state(st, xi);

    // Composition law and tau = 0 identity must be exact.
    const CoherentParams two_step = evolve(evolve(base, 0.7), 2.1);
    const CoherentParams one_step = evolve(base, 0.7 + 2.1);
    const bool composition_exact =
        two_step.tau == one_step.tau && two_step.xi_t() == one_step.xi_t();
    bool tau0_identity = true;
    for (const double r : {0.4, 1.1, 2.3})
        tau0_identity = tau0_identity && evolved_R1(base, r) == coherent_R1_closed(base, r);

    // |xi(tau)| stays |xi| to machine precision.
    double mag_drift = 0.0;
    for (int j = 0; j <= 40; ++j) {
        const CoherentParams p = evolve(base, 0.37 * j);
        mag_drift = std::max(mag_drift, std::abs(std::abs(p.xi_t()) - std::abs(xi)));
    }

    // Matrix-oracle evolution: displace so the series coordinate is xi, apply
    // the (diagonal, hence exact) exponential of -i K3 tau/hbar, expand over
    // the eigenfunctions, and compare with the evolved closed forms.
    const TruncatedRep rep = TruncatedRep::build(st.k, opt.rep_dim);
    const double mag = std::abs(xi);
    const cd alpha_disp = (xi / mag) * std::atanh(mag);
    const auto oracle = matrix_displacement_oracle(rep, alpha_disp);
    std::vector<double> r(120);
    const double r_max = std::sqrt(40.0 / st.delta);
    for (std::size_t j = 0; j < r.size(); ++j)
        r[j] = r_max * static_cast<double>(j + 1) / static_cast<double>(r.size());
    // Normalized basis functions at frozen (k, delta, eps): upper component is
    // N_n R1_n; the lower component uses the same bracket as eval_R2.
    auto r2_basis = [&](int n, double rr) {
        const double x = st.delta * rr * rr;
        const double lower_l = n >= 1 ? laguerre(n - 1, 2.0 * st.k, x) : 0.0;
        const double bracket = -2.0 * st.delta * rr * rr * lower_l +
                               (base.c2 * rr * rr + base.c0) * laguerre(n, 2.0 * st.k - 1.0, x);
        return st.params.alpha / ((1.0 + st.eps) * rr) *
               std::pow(std::sqrt(st.delta) * rr, 2.0 * st.k - 0.5) * std::exp(-0.5 * x) * bracket;
    };
    for (const double tau : {0.9, 3.7}) {
        Eigen::VectorXcd evolved = oracle.expm_column;
        for (int n = 0; n < rep.dim; ++n)
            evolved(n) *= std::exp(cd(0.0, -(st.k + n) * tau / base.hbar));
        const CoherentParams p = evolve(base, tau);
        for (const bool lower : {false, true}) {
            double sup_closed = 0.0, sup_dev = 0.0;
            for (std::size_t j = 0; j < r.size(); ++j) {
                cd f_oracle = 0.0;
                for (int n = 0; n < rep.dim; ++n) {
                    const double basis =
                        eigenstate_norm_constant(st.k, st.delta, n) *
                        (lower ? r2_basis(n, r[j]) : r1_shape(st.k, st.delta, n, r[j]));
                    f_oracle += evolved(n) * basis;
                }
                const cd f_closed = lower ? evolved_R2(p, r[j]) : evolved_R1(p, r[j]);
                sup_closed = std::max(sup_closed, std::abs(f_closed));
                sup_dev = std::max(sup_dev, std::abs(f_closed - f_oracle));
            }
            res.measured = std::max(res.measured, sup_dev / sup_closed);
        }
    }

    res.pass = res.measured < res.bound && composition_exact && tau0_identity && mag_drift < 1e-14;
    res.detail = std::string("composition ") + (composition_exact ? "exact" : "BROKEN") +
                 "; tau=0 identity " + (tau0_identity ? "exact" : "BROKEN") +
                 "; |xi(tau)| drift " + fmt3(mag_drift);
    return res;
}

// --- criterion 9 -----------------------------------------------------------

CheckResult check_normalization(const CheckOptions& opt) {
    CheckResult res{"normalization",
                    "quadrature normalization vs closed-form Gamma-integral constant", 0.0,
                    bound_for(opt, "normalization", 1e-8), false, ""};
    RadialState st = reference_state(1.25, SymmetryLimit::Spin);
    const double r_max = std::sqrt(80.0 / st.delta);
    const double n1 = normalize(st, r_max, 4096);
    const double n_closed = eigenstate_norm_constant(st.k, st.delta, st.params.n);
    res.measured = std::abs(n1 - n_closed) / n_closed;
    RadialState st2 = st;
    const double n2 = normalize(st2, r_max, 8192);
    const double stability = std::abs(n2 - n1) / n1;
    res.pass = res.measured < res.bound && stability < 1e-9;
    res.detail = "quadrature-refinement stability " + fmt3(stability) + " (bound 1.000e-09)";
    return res;
}

using CheckFn = CheckResult (*)(const CheckOptions&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"flat_regression", check_flat_regression},
        {"quartic_oracle", check_quartic_oracle},
        {"curved_residuals", check_curved_residuals},
        {"su11_closure", check_su11_closure},
        {"eigenvalue_ladder", check_eigenvalue_ladder},
        {"coherent_series", check_coherent_series},
        {"displacement_oracle", check_displacement_oracle},
        {"time_evolution", check_time_evolution},
        {"normalization", check_normalization},
    };
    return reg;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

CheckResult run_check(const std::string& id, const CheckOptions& opt) {
    for (const auto& [name, fn] : registry())
        if (name == id) return fn(opt);
    throw std::invalid_argument("run_check: unknown check id '" + id + "'");
}

std::vector<CheckResult> run_suite(const std::vector<std::string>& ids, const CheckOptions& opt) {
    std::vector<CheckResult> out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(run_check(id, opt));
    return out;
}

std::string render_report(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %-20s measured %.3e  bound %.3e\n",
                      r.pass ? "PASS" : "FAIL", r.id.c_str(), r.measured, r.bound);
        os << line;
        os << "       " << r.summary << "\n";
        if (!r.detail.empty()) os << "       " << r.detail << "\n";
    }
    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    os << passed << "/" << results.size() << " checks passed\n";
    return os.str();
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace dosc::checks
