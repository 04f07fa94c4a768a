// Command-line front end: spectra and sweeps, wavefunction and coherent-state
// profiles, verification suites.  Outputs are deterministic byte-for-byte:
// fixed 17-significant-digit float formatting, fixed row order, no timestamps.
//
// Exit codes: 0 success, 1 numerical failure (error record written to the
// output), 2 validation/usage failure.

#include "dosc/checks.hpp"
#include "dosc/coherent.hpp"
#include "dosc/spectrum.hpp"
#include "dosc/table_io.hpp"
#include "dosc/version.hpp"
#include "dosc/wavefunctions.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using dosc::io::fmt_g17;
using dosc::io::JsonValue;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// shared option plumbing

struct ParamSpecs {
    std::string alpha = "1";
    std::string mu = "0";
    std::string w = "1";
    std::string A = "0";
    std::string lambda = "0";
    std::string l = "0";
    std::string n = "0";
    std::string limit = "spin";
};

void add_param_options(CLI::App* cmd, ParamSpecs& ps, bool ranges) {
    const char* hint = ranges ? " (value, comma list, lo:hi, or lo:hi:count)" : "";
    cmd->add_option("--alpha", ps.alpha, std::string("fine-structure constant, > 0") + hint);
    cmd->add_option("--mu", ps.mu, std::string("quadratic potential strength") + hint);
    cmd->add_option("--w", ps.w, std::string("linear tensor coefficient") + hint);
    cmd->add_option("--A", ps.A, std::string("1/r tensor coefficient") + hint);
    cmd->add_option("--lambda", ps.lambda, std::string("spin-orbit quantum number") + hint);
    cmd->add_option("--l", ps.l, std::string("orbital number (l or l-bar)") + hint);
    cmd->add_option("--n", ps.n,
                    std::string("radial quantum number") + (ranges ? " (value, list, or lo:hi)" : ""));
    cmd->add_option("--limit", ps.limit, "symmetry limit: spin | pseudospin");
}

dosc::SymmetryLimit parse_limit(const std::string& s) {
    if (s == "spin") return dosc::SymmetryLimit::Spin;
    if (s == "pseudospin") return dosc::SymmetryLimit::Pseudospin;
    throw UsageError("--limit must be 'spin' or 'pseudospin', got '" + s + "'");
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("cannot parse number '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("trailing junk in number '" + s + "'");
    if (!std::isfinite(v)) throw UsageError("number '" + s + "' is not finite");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// "v" | "a,b,c" | "lo:hi" (step 1, inclusive) | "lo:hi:count" (inclusive linspace)
std::vector<double> parse_real_range(const std::string& spec) {
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        std::vector<double> out;
        if (parts.size() == 2) {
            const double lo = parse_double(parts[0]);
            const double hi = parse_double(parts[1]);
            for (double v = lo; v <= hi + 1e-12; v += 1.0) out.push_back(v);
            return out;
        }
        if (parts.size() != 3)
            throw UsageError("range '" + spec + "' must be lo:hi or lo:hi:count");
        const double lo = parse_double(parts[0]);
        const double hi = parse_double(parts[1]);
        const long count = std::lround(parse_double(parts[2]));
        if (count < 0 || count > 1000000)
            throw UsageError("range count must be in [0, 1e6] in '" + spec + "'");
        out.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                                     static_cast<double>(count - 1));
        return out;
    }
    std::vector<double> out;
    for (const auto& tok : split(spec, ',')) out.push_back(parse_double(tok));
    return out;
}

// "v" | "a,b,c" | "lo:hi" (step 1, inclusive)
std::vector<int> parse_int_range(const std::string& spec) {
    std::vector<int> out;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 2) throw UsageError("integer range '" + spec + "' must be lo:hi");
        const int lo = static_cast<int>(parse_double(parts[0]));
        const int hi = static_cast<int>(parse_double(parts[1]));
        for (int v = lo; v <= hi; ++v) out.push_back(v);  // hi < lo: empty range
        return out;
    }
    for (const auto& tok : split(spec, ',')) {
        const double v = parse_double(tok);
        if (v != std::floor(v)) throw UsageError("n must be an integer, got '" + tok + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

dosc::ModelParams single_params(const ParamSpecs& ps) {
    auto one = [](const std::string& spec, const char* name) {
        const auto vals = parse_real_range(spec);
        if (vals.size() != 1)
            throw UsageError(std::string("--") + name + " must be a single value here");
        return vals[0];
    };
    dosc::ModelParams mp;
    mp.alpha = one(ps.alpha, "alpha");
    mp.mu = one(ps.mu, "mu");
    mp.w = one(ps.w, "w");
    mp.A = one(ps.A, "A");
    mp.lambda = one(ps.lambda, "lambda");
    mp.l = one(ps.l, "l");
    const auto ns = parse_int_range(ps.n);
    if (ns.size() != 1) throw UsageError("--n must be a single value here");
    mp.n = ns[0];
    if (!(mp.alpha > 0.0)) throw UsageError("--alpha must be > 0");
    if (mp.n < 0) throw UsageError("--n must be >= 0");
    if (mp.l < 0.0) throw UsageError("--l must be >= 0");
    return mp;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    f << content;
}

JsonValue meta_json(const std::string& command, const std::vector<std::pair<std::string, std::string>>& echo) {
    JsonValue meta = JsonValue::object();
    meta.set("tool", JsonValue::str(dosc::kToolName));
    meta.set("version", JsonValue::str(dosc::kVersion));
    meta.set("command", JsonValue::str(command));
    JsonValue cfg = JsonValue::object();
    for (const auto& [k, v] : echo) cfg.set(k, JsonValue::str(v));
    meta.set("config", std::move(cfg));
    return meta;
}

std::string error_payload(const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& echo,
                          const std::string& format, const std::string& message) {
    if (format == "csv") {
        std::ostringstream os;
        os << "# " << dosc::kToolName << " " << dosc::kVersion << " " << command << "\n";
        os << "# error: " << message << "\n";
        return os.str();
    }
    JsonValue root = JsonValue::object();
    root.set("meta", meta_json(command, echo));
    root.set("error", JsonValue::str(message));
    return root.dump();
}

// ---------------------------------------------------------------------------
// spectrum / sweep payloads

const char* kSweepColumns =
    "alpha,mu,w,A,lambda,l,n,limit,p,q,r,"
    "root0_re,root0_im,root0_residual,root1_re,root1_im,root1_residual,"
    "root2_re,root2_im,root2_residual,root3_re,root3_im,root3_residual,"
    "accepted_eps,branches,status";

std::string residual_field(double v) { return std::isfinite(v) ? fmt_g17(v) : "inf"; }

dosc::io::CsvRow solution_row(const dosc::ModelParams& mp, dosc::SymmetryLimit limit,
                              const dosc::SpectrumSolution* sol, const std::string& status) {
    dosc::io::CsvRow row{fmt_g17(mp.alpha), fmt_g17(mp.mu),     fmt_g17(mp.w),
                         fmt_g17(mp.A),     fmt_g17(mp.lambda), fmt_g17(mp.l),
                         std::to_string(mp.n), dosc::to_string(limit)};
    if (sol) {
        row.push_back(fmt_g17(sol->coefficients.p));
        row.push_back(fmt_g17(sol->coefficients.q));
        row.push_back(fmt_g17(sol->coefficients.r));
        for (const auto& ra : sol->assessment) {
            row.push_back(fmt_g17(ra.root.real()));
            row.push_back(fmt_g17(ra.root.imag()));
            row.push_back(residual_field(ra.implicit_residual));
        }
        std::string eps, branches;
        for (std::size_t s = 0; s < sol->physical.size(); ++s) {
            if (s) {
                eps += ';';
                branches += ';';
            }
            const auto& ra = sol->accepted_at(static_cast<int>(s));
            eps += fmt_g17(ra.root.real());
            branches += dosc::to_string(ra.branch);
        }
        row.push_back(eps);
        row.push_back(branches);
    } else {
        for (int i = 0; i < 17; ++i) row.push_back("");
    }
    row.push_back(status);
    return row;
}

JsonValue solution_json(const dosc::ModelParams& mp, dosc::SymmetryLimit limit,
                        const dosc::SpectrumSolution& sol) {
    JsonValue out = JsonValue::object();
    JsonValue params = JsonValue::object();
    params.set("alpha", JsonValue::num(mp.alpha));
    params.set("mu", JsonValue::num(mp.mu));
    params.set("w", JsonValue::num(mp.w));
    params.set("A", JsonValue::num(mp.A));
    params.set("lambda", JsonValue::num(mp.lambda));
    params.set("l", JsonValue::num(mp.l));
    params.set("n", JsonValue::integer(mp.n));
    out.set("params", std::move(params));
    out.set("limit", JsonValue::str(dosc::to_string(limit)));

    const auto d = dosc::derive(mp, limit);
    JsonValue derived = JsonValue::object();
    derived.set("k", JsonValue::num(d.k));
    derived.set("beta1", JsonValue::num(d.beta1));
    derived.set("beta", JsonValue::num(d.beta));
    out.set("derived", std::move(derived));

    JsonValue coef = JsonValue::object();
    coef.set("p", JsonValue::num(sol.coefficients.p));
    coef.set("q", JsonValue::num(sol.coefficients.q));
    coef.set("r", JsonValue::num(sol.coefficients.r));
    out.set("coefficients", std::move(coef));

    JsonValue roots = JsonValue::array();
    for (const auto& ra : sol.assessment) {
        JsonValue jr = JsonValue::object();
        jr.set("re", JsonValue::num(ra.root.real()));
        jr.set("im", JsonValue::num(ra.root.imag()));
        jr.set("quartic_residual", JsonValue::num(ra.quartic_residual));
        if (std::isfinite(ra.implicit_residual))
            jr.set("implicit_residual", JsonValue::num(ra.implicit_residual));
        jr.set("accepted", JsonValue::boolean(ra.accepted));
        if (ra.accepted) jr.set("branch", JsonValue::str(dosc::to_string(ra.branch)));
        else jr.set("rejection", JsonValue::str(ra.rejection));
        roots.push(std::move(jr));
    }
    out.set("roots", std::move(roots));

    JsonValue accepted = JsonValue::array();
    for (std::size_t s = 0; s < sol.physical.size(); ++s) {
        const auto& ra = sol.accepted_at(static_cast<int>(s));
        JsonValue ja = JsonValue::object();
        ja.set("index", JsonValue::integer(sol.physical[s]));
        ja.set("eps", JsonValue::num(ra.root.real()));
        ja.set("branch", JsonValue::str(dosc::to_string(ra.branch)));
        if (const auto delta = d.delta(ra.root.real()); delta)
            ja.set("delta", JsonValue::num(*delta));
        accepted.push(std::move(ja));
    }
    out.set("accepted", std::move(accepted));
    out.set("used_oracle_fallback", JsonValue::boolean(sol.used_oracle_fallback));
    return out;
}

// ---------------------------------------------------------------------------
// subcommand drivers

struct CommonOut {
    std::string format = "json";
    std::string output;  // empty or "-" means stdout
};

void add_out_options(CLI::App* cmd, CommonOut& out, const char* default_format) {
    out.format = default_format;
    cmd->add_option("--format", out.format, "output format: csv | json");
    cmd->add_option("--output,-o", out.output, "output path ('-' for stdout)");
}

void check_format(const CommonOut& out) {
    if (out.format != "csv" && out.format != "json")
        throw UsageError("--format must be 'csv' or 'json'");
}

int run_spectrum(const ParamSpecs& ps, const CommonOut& out) {
    check_format(out);
    const auto limit = parse_limit(ps.limit);
    const auto mp = single_params(ps);
    const std::vector<std::pair<std::string, std::string>> echo = {
        {"alpha", ps.alpha}, {"mu", ps.mu},       {"w", ps.w},
        {"A", ps.A},         {"lambda", ps.lambda}, {"l", ps.l},
        {"n", ps.n},         {"limit", ps.limit},  {"format", out.format}};
    dosc::SpectrumSolution sol;
    try {
        sol = dosc::solve_spectrum(mp, limit);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        write_output(out.output, error_payload("spectrum", echo, out.format, e.what()));
        return 1;
    }
    if (out.format == "csv") {
        std::ostringstream os;
        dosc::io::write_csv(os,
                            {std::string(dosc::kToolName) + " " + dosc::kVersion + " spectrum",
                             std::string("columns: ") + kSweepColumns},
                            split(kSweepColumns, ','), {solution_row(mp, limit, &sol, "ok")});
        write_output(out.output, os.str());
    } else {
        JsonValue root = JsonValue::object();
        root.set("meta", meta_json("spectrum", echo));
        root.set("solution", solution_json(mp, limit, sol));
        write_output(out.output, root.dump());
    }
    return 0;
}

int run_sweep(const ParamSpecs& ps, const CommonOut& out) {
    check_format(out);
    const auto limit = parse_limit(ps.limit);
    const auto alphas = parse_real_range(ps.alpha);
    const auto mus = parse_real_range(ps.mu);
    const auto ws = parse_real_range(ps.w);
    const auto As = parse_real_range(ps.A);
    const auto lambdas = parse_real_range(ps.lambda);
    const auto ls = parse_real_range(ps.l);
    const auto ns = parse_int_range(ps.n);

    const double total = static_cast<double>(alphas.size()) * static_cast<double>(mus.size()) *
                         static_cast<double>(ws.size()) * static_cast<double>(As.size()) *
                         static_cast<double>(lambdas.size()) * static_cast<double>(ls.size()) *
                         static_cast<double>(ns.size());
    if (total > 1e6) throw UsageError("sweep would produce more than 1e6 rows");

    const std::vector<std::pair<std::string, std::string>> echo = {
        {"alpha", ps.alpha}, {"mu", ps.mu},        {"w", ps.w},
        {"A", ps.A},         {"lambda", ps.lambda}, {"l", ps.l},
        {"n", ps.n},         {"limit", ps.limit},   {"format", out.format}};

    std::vector<dosc::io::CsvRow> rows;
    JsonValue jrows = JsonValue::array();
    for (const double alpha : alphas)
        for (const double mu : mus)
            for (const double w : ws)
                for (const double A : As)
                    for (const double lambda : lambdas)
                        for (const double l : ls)
                            for (const int n : ns) {
                                const dosc::ModelParams mp{alpha, mu, w, A, lambda, l, n};
                                std::string status = "ok";
                                dosc::SpectrumSolution sol;
                                bool have = true;
                                try {
                                    sol = dosc::try_solve_spectrum(mp, limit);
                                    if (sol.physical.empty()) status = "no_physical_root";
                                } catch (const std::exception& e) {
                                    have = false;
                                    status = std::string("error: ") + e.what();
                                }
                                if (out.format == "csv") {
                                    rows.push_back(
                                        solution_row(mp, limit, have ? &sol : nullptr, status));
                                } else {
                                    JsonValue jr = JsonValue::object();
                                    if (have) {
                                        jr = solution_json(mp, limit, sol);
                                        jr.set("status", JsonValue::str(status));
                                    } else {
                                        jr.set("error", JsonValue::str(status));
                                    }
                                    jrows.push(std::move(jr));
                                }
                            }
    if (out.format == "csv") {
        std::ostringstream os;
        dosc::io::write_csv(os,
                            {std::string(dosc::kToolName) + " " + dosc::kVersion + " sweep",
                             std::string("columns: ") + kSweepColumns},
                            split(kSweepColumns, ','), rows);
        write_output(out.output, os.str());
    } else {
        JsonValue root = JsonValue::object();
        root.set("meta", meta_json("sweep", echo));
        root.set("rows", std::move(jrows));
        write_output(out.output, root.dump());
    }
    return 0;
}

struct ProfileOpts {
    double r_max = 0.0;  // 0: auto from the state's oscillator support
    int points = 400;
};

dosc::RadialState solved_state(const dosc::ModelParams& mp, dosc::SymmetryLimit limit) {
    const auto sol = dosc::solve_spectrum(mp, limit);
    // Prefer the particle branch; roots are ordered by descending real part,
    // so the first accepted positive root is the ground choice.
    for (int s = 0; s < static_cast<int>(sol.physical.size()); ++s)
        if (sol.accepted_at(s).root.real() > 0.0)
            return dosc::make_radial_state(mp, limit, sol, s);
    return dosc::make_radial_state(mp, limit, sol, 0);
}

std::vector<double> profile_grid(const dosc::RadialState& st, const ProfileOpts& po) {
    if (po.r_max < 0.0) throw UsageError("--r-max must be > 0");
    const double r_max =
        po.r_max > 0.0 ? po.r_max : std::sqrt((40.0 + 8.0 * st.params.n) / st.delta);
    if (po.points < 2) throw UsageError("--points must be >= 2");
    std::vector<double> r(static_cast<std::size_t>(po.points));
    for (int j = 0; j < po.points; ++j)
        r[static_cast<std::size_t>(j)] = r_max * (j + 1.0) / po.points;
    return r;
}

int run_wavefunction(const ParamSpecs& ps, const ProfileOpts& po, const CommonOut& out) {
    check_format(out);
    const auto limit = parse_limit(ps.limit);
    const auto mp = single_params(ps);
    const std::vector<std::pair<std::string, std::string>> echo = {
        {"alpha", ps.alpha}, {"mu", ps.mu},        {"w", ps.w},
        {"A", ps.A},         {"lambda", ps.lambda}, {"l", ps.l},
        {"n", ps.n},         {"limit", ps.limit},   {"format", out.format}};
    try {
        dosc::RadialState st = solved_state(mp, limit);
        const auto r = profile_grid(st, po);
        dosc::normalize(st, std::sqrt((80.0 + 16.0 * mp.n) / st.delta), 8192);
        if (out.format == "csv") {
            std::vector<dosc::io::CsvRow> rows;
            for (const double rr : r)
                rows.push_back({fmt_g17(rr), fmt_g17(dosc::eval_R1(st, rr)),
                                fmt_g17(dosc::eval_R2(st, rr))});
            std::ostringstream os;
            dosc::io::write_csv(
                os,
                {std::string(dosc::kToolName) + " " + dosc::kVersion + " wavefunction",
                 "eps = " + fmt_g17(st.eps) + ", k = " + fmt_g17(st.k) +
                     ", delta = " + fmt_g17(st.delta) + ", norm = " + fmt_g17(st.norm),
                 "columns: r,R1,R2"},
                {"r", "R1", "R2"}, rows);
            write_output(out.output, os.str());
        } else {
            JsonValue root = JsonValue::object();
            root.set("meta", meta_json("wavefunction", echo));
            JsonValue state = JsonValue::object();
            state.set("eps", JsonValue::num(st.eps));
            state.set("k", JsonValue::num(st.k));
            state.set("delta", JsonValue::num(st.delta));
            state.set("norm", JsonValue::num(st.norm));
            root.set("state", std::move(state));
            JsonValue rows = JsonValue::array();
            for (const double rr : r) {
                JsonValue jr = JsonValue::object();
                jr.set("r", JsonValue::num(rr));
                jr.set("R1", JsonValue::num(dosc::eval_R1(st, rr)));
                jr.set("R2", JsonValue::num(dosc::eval_R2(st, rr)));
                rows.push(std::move(jr));
            }
            root.set("rows", std::move(rows));
            write_output(out.output, root.dump());
        }
        return 0;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        write_output(out.output, error_payload("wavefunction", echo, out.format, e.what()));
        return 1;
    }
}

struct CoherentOpts {
    std::vector<double> xi;  // two reals (re, im): avoids locale-dependent complex parsing
    std::string tau = "0";
    std::string convention = "unitary";
};

int run_coherent(const ParamSpecs& ps, const ProfileOpts& po, const CoherentOpts& co,
                 const CommonOut& out, bool evolve_mode) {
    check_format(out);
    const auto limit = parse_limit(ps.limit);
    const auto mp = single_params(ps);
    if (co.xi.size() != 2) throw UsageError("--xi needs exactly two reals: re im");
    const std::complex<double> xi(co.xi[0], co.xi[1]);
    if (!(std::abs(xi) < 1.0)) throw UsageError("|xi| must be < 1");
    dosc::TimeConvention conv = dosc::TimeConvention::Unitary;
    if (co.convention == "mirror") conv = dosc::TimeConvention::Mirror;
    else if (co.convention != "unitary")
        throw UsageError("--convention must be 'unitary' or 'mirror'");
    const auto taus = parse_real_range(co.tau);

    const std::string cmd = evolve_mode ? "evolve" : "coherent";
    const std::vector<std::pair<std::string, std::string>> echo = {
        {"alpha", ps.alpha},   {"mu", ps.mu},
        {"w", ps.w},           {"A", ps.A},
        {"lambda", ps.lambda}, {"l", ps.l},
        {"n", ps.n},           {"limit", ps.limit},
        {"xi_re", fmt_g17(xi.real())}, {"xi_im", fmt_g17(xi.imag())},
        {"tau", co.tau},       {"convention", co.convention},
        {"format", out.format}};
    try {
        const dosc::RadialState st = solved_state(mp, limit);
        const auto r = profile_grid(st, po);
        const dosc::CoherentParams base = dosc::coherent_from_state(st, xi);

        std::vector<dosc::io::CsvRow> rows;
        JsonValue jrows = JsonValue::array();
        auto emit = [&](double tau, double rr, std::complex<double> r1,
                        std::complex<double> r2) {
            if (out.format == "csv") {
                dosc::io::CsvRow row;
                if (evolve_mode) row.push_back(fmt_g17(tau));
                row.push_back(fmt_g17(rr));
                row.push_back(fmt_g17(r1.real()));
                row.push_back(fmt_g17(r1.imag()));
                row.push_back(fmt_g17(r2.real()));
                row.push_back(fmt_g17(r2.imag()));
                rows.push_back(std::move(row));
            } else {
                JsonValue jr = JsonValue::object();
                if (evolve_mode) jr.set("tau", JsonValue::num(tau));
                jr.set("r", JsonValue::num(rr));
                jr.set("R1_re", JsonValue::num(r1.real()));
                jr.set("R1_im", JsonValue::num(r1.imag()));
                jr.set("R2_re", JsonValue::num(r2.real()));
                jr.set("R2_im", JsonValue::num(r2.imag()));
                jrows.push(std::move(jr));
            }
        };
        if (evolve_mode) {
            for (const double tau : taus) {
                const dosc::CoherentParams p = dosc::evolve(base, tau);
                for (const double rr : r)
                    emit(tau, rr, dosc::evolved_R1(p, rr, conv), dosc::evolved_R2(p, rr, conv));
            }
        } else {
            for (const double rr : r)
                emit(0.0, rr, dosc::coherent_R1_closed(base, rr),
                     dosc::coherent_R2_closed(base, rr));
        }
        if (out.format == "csv") {
            std::vector<std::string> header;
            if (evolve_mode) header.push_back("tau");
            for (const char* h : {"r", "R1_re", "R1_im", "R2_re", "R2_im"}) header.push_back(h);
            std::ostringstream os;
            dosc::io::write_csv(
                os,
                {std::string(dosc::kToolName) + " " + dosc::kVersion + " " + cmd,
                 "eps = " + fmt_g17(st.eps) + ", k = " + fmt_g17(st.k) +
                     ", delta = " + fmt_g17(st.delta)},
                header, rows);
            write_output(out.output, os.str());
        } else {
            JsonValue root = JsonValue::object();
            root.set("meta", meta_json(cmd, echo));
            JsonValue state = JsonValue::object();
            state.set("eps", JsonValue::num(st.eps));
            state.set("k", JsonValue::num(st.k));
            state.set("delta", JsonValue::num(st.delta));
            root.set("state", std::move(state));
            root.set("rows", std::move(jrows));
            write_output(out.output, root.dump());
        }
        return 0;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        write_output(out.output, error_payload(cmd, echo, out.format, e.what()));
        return 1;
    }
}

struct CheckOpts {
    std::string suite = "all";
    std::vector<std::string> tol;
    int grid_n = 2048;
    double xmax = 40.0;
    int nmax = 200;
    int rep_dim = 256;
};

int run_checks(const CheckOpts& co, const CommonOut& out) {
    dosc::checks::CheckOptions opt;
    opt.grid_n = co.grid_n;
    opt.grid_xmax = co.xmax;
    opt.coherent_nmax = co.nmax;
    opt.rep_dim = co.rep_dim;
    for (const auto& t : co.tol) {
        const auto pos = t.find('=');
        if (pos == std::string::npos)
            throw UsageError("--tol expects id=value, got '" + t + "'");
        opt.tol_override[t.substr(0, pos)] = parse_double(t.substr(pos + 1));
    }
    std::vector<std::string> ids;
    if (co.suite == "all") {
        ids = dosc::checks::suite_names();
    } else {
        for (const auto& id : split(co.suite, ',')) {
            const auto& known = dosc::checks::suite_names();
            if (std::find(known.begin(), known.end(), id) == known.end())
                throw UsageError("unknown check id '" + id + "'");
            ids.push_back(id);
        }
    }
    const auto results = dosc::checks::run_suite(ids, opt);
    write_output(out.output, dosc::checks::render_report(results));
    return dosc::checks::all_pass(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modified Dirac oscillator in curved spacetime: quartic spectra, radial "
                 "wavefunctions, su(1,1) coherent states"};
    app.require_subcommand(1);

    ParamSpecs ps_spectrum, ps_sweep, ps_wave, ps_coherent, ps_evolve;
    CommonOut out_spectrum, out_sweep, out_wave, out_coherent, out_evolve, out_check;
    ProfileOpts po_wave, po_coherent, po_evolve;
    CoherentOpts co_coherent, co_evolve;
    CheckOpts check_opts;

    auto* spectrum = app.add_subcommand("spectrum", "solve one bound-state problem");
    add_param_options(spectrum, ps_spectrum, false);
    add_out_options(spectrum, out_spectrum, "json");

    auto* sweep = app.add_subcommand("sweep", "solve over a Cartesian parameter grid");
    add_param_options(sweep, ps_sweep, true);
    add_out_options(sweep, out_sweep, "csv");

    auto* wave = app.add_subcommand("wavefunction", "normalized radial eigenfunction profile");
    add_param_options(wave, ps_wave, false);
    wave->add_option("--r-max", po_wave.r_max, "profile extent (default: auto)");
    wave->add_option("--points", po_wave.points, "profile sample count");
    add_out_options(wave, out_wave, "csv");

    auto* coherent = app.add_subcommand("coherent", "radial coherent-state profile");
    add_param_options(coherent, ps_coherent, false);
    coherent->add_option("--xi", co_coherent.xi, "displacement parameter: re im")
        ->expected(2);
    coherent->add_option("--r-max", po_coherent.r_max, "profile extent (default: auto)");
    coherent->add_option("--points", po_coherent.points, "profile sample count");
    add_out_options(coherent, out_coherent, "csv");

    auto* evolve = app.add_subcommand("evolve", "time-evolved coherent-state profiles");
    add_param_options(evolve, ps_evolve, false);
    evolve->add_option("--xi", co_evolve.xi, "displacement parameter: re im")->expected(2);
    evolve->add_option("--tau", co_evolve.tau, "fictitious times (value, list, or lo:hi:count)");
    evolve->add_option("--convention", co_evolve.convention,
                       "evolved-form convention: unitary | mirror");
    evolve->add_option("--r-max", po_evolve.r_max, "profile extent (default: auto)");
    evolve->add_option("--points", po_evolve.points, "profile sample count");
    add_out_options(evolve, out_evolve, "csv");

    auto* check = app.add_subcommand("check", "run the verification suites");
    check->add_option("--suite", check_opts.suite, "'all' or comma list of check ids");
    check->add_option("--tol", check_opts.tol, "bound override id=value (repeatable)");
    check->add_option("--grid-n", check_opts.grid_n, "su(1,1) grid size");
    check->add_option("--xmax", check_opts.xmax, "su(1,1) grid extent");
    check->add_option("--nmax", check_opts.nmax, "coherent series truncation");
    check->add_option("--rep-dim", check_opts.rep_dim, "truncated representation dimension");
    check->add_option("--output,-o", out_check.output, "report path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits 0; parse errors are usage failures
    }

    try {
        if (spectrum->parsed()) return run_spectrum(ps_spectrum, out_spectrum);
        if (sweep->parsed()) return run_sweep(ps_sweep, out_sweep);
        if (wave->parsed()) return run_wavefunction(ps_wave, po_wave, out_wave);
        if (coherent->parsed())
            return run_coherent(ps_coherent, po_coherent, co_coherent, out_coherent, false);
        if (evolve->parsed())
            return run_coherent(ps_evolve, po_evolve, co_evolve, out_evolve, true);
        if (check->parsed()) return run_checks(check_opts, out_check);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
