// thermocrack: batch driver for interfacial crack solves under thermal and
// diffusive loading.
//
//   thermocrack params --config run.json [--out dir]
//   thermocrack solve  --config run.json --out dir
//   thermocrack sweep  --config run.json --out dir --sweep-param a2_over_L --sweep-values 1,2,3
//   thermocrack check  [--config run.json]
//
// Exit codes: 0 ok, 1 usage, 2 invalid configuration, 3 unsupported case
// (d != 0), 4 numerical non-convergence or failing check.

#include <CLI11.hpp>

#include <thermocrack/checks.hpp>
#include <thermocrack/config.hpp>
#include <thermocrack/errors.hpp>
#include <thermocrack/solver.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace thermocrack;

namespace {

enum Exit { ok = 0, usage = 1, config_invalid = 2, unsupported = 3, nonconvergence = 4 };

// Residual bound above which a solve counts as non-converged.
constexpr double residual_limit = 1e-3;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

void write_atomic(const fs::path& file, const std::string& content) {
    fs::create_directories(file.parent_path().empty() ? fs::path(".") : file.parent_path());
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, file);
}

struct Scales {
    double opening, traction, sif;
};

Scales scales(const RunSpec& rs, const BimaterialParams& bp) {
    double base = rs.profile.theta_s * xi_scale(rs.plus, rs.profile.field);
    if (base == 0.0) base = 1.0;
    const double L = rs.profile.L;
    return {base * L, base / bp.b, base * std::sqrt(L) / bp.b};
}

bool matched(const RunSpec& rs) {
    const auto& p = rs.plus;
    const auto& m = rs.minus;
    return p.lambda == m.lambda && p.mu == m.mu &&
           conductivity(p, rs.profile.field) == conductivity(m, rs.profile.field) &&
           (rs.profile.field == TransportField::thermal ? p.gamma_t : p.gamma_c) != 0.0;
}

std::optional<ExampleClosedForm> closed_form(const RunSpec& rs) {
    if (!matched(rs)) return std::nullopt;
    const auto& pr = rs.profile;
    if (pr.family == ProfileFamily::delta_flux)
        return closed_form_example1(rs.plus, rs.minus, pr.theta_s, pr.L, pr.a1, pr.a2, pr.field);
    if (pr.family == ProfileFamily::gaussian_temperature)
        return closed_form_example2(rs.plus, rs.minus, pr.theta_s, pr.L, pr.field);
    return std::nullopt;
}

void require_decoupled(const BimaterialParams& bp) {
    if (std::abs(bp.d) > 1e-12 * bp.b) {
        std::ostringstream os;
        os << "d = " << g17(bp.d) << " is nonzero: the identities do not decouple and only the decoupled (d = 0) "
           << "solver is implemented";
        throw UnsupportedCase(os.str());
    }
}

// ---------------------------------------------------------------------------

int cmd_params(const RunSpec& rs, const std::string& out, bool quiet) {
    const BimaterialParams bp = compute_bimaterial_params(rs.plus, rs.minus);
    std::vector<std::pair<std::string, double>> rows = {
        {"b", bp.b},       {"d", bp.d},       {"alpha", bp.alpha}, {"gamma", bp.gamma}, {"h_t", bp.h_t},
        {"l_t", bp.l_t},   {"m_t", bp.m_t},   {"n_t", bp.n_t},     {"p_t", bp.p_t},     {"q_t", bp.q_t},
        {"h_c", bp.h_c},   {"l_c", bp.l_c},   {"m_c", bp.m_c},     {"n_c", bp.n_c},     {"p_c", bp.p_c},
        {"q_c", bp.q_c},
        {"Upsilon_t", upsilon(bp, rs.plus, rs.minus, TransportField::thermal)},
        {"Upsilon_c", upsilon(bp, rs.plus, rs.minus, TransportField::diffusive)}};
    if (rs.plus.lambda == rs.minus.lambda && rs.plus.mu == rs.minus.mu) {
        rows.emplace_back("Xi_plus_t", thermal_aux_params(bp, rs.plus, rs.minus, TransportField::thermal).Xi_plus);
        rows.emplace_back("Xi_plus_c", thermal_aux_params(bp, rs.plus, rs.minus, TransportField::diffusive).Xi_plus);
    }
    std::string csv = "name,value\n";
    for (const auto& [k, v] : rows) csv += k + "," + g17(v) + "\n";
    if (!out.empty()) write_atomic(fs::path(out) / "params.csv", csv);
    if (!quiet) std::cout << csv;
    return ok;
}

struct SolveReport {
    CrackSolution sol;
    IdentityResidual identity;
    double K_I_norm = 0, K_II_norm = 0;
};

SolveReport run_solve(const RunSpec& rs) {
    const BimaterialParams bp = compute_bimaterial_params(rs.plus, rs.minus);
    require_decoupled(bp);
    const InterfaceProfileSet prof = build_profiles(rs);
    const LoadSet loads = build_loads(rs);
    SolveReport r;
    r.sol = solve(bp, loads, prof, rs.numerics);
    const Scales sc = scales(rs, bp);
    r.K_I_norm = r.sol.K_I.value / sc.sif;
    r.K_II_norm = r.sol.K_II.value / sc.sif;
    return r;
}

int cmd_solve(const RunSpec& rs, const std::string& out, bool quiet) {
    const BimaterialParams bp = compute_bimaterial_params(rs.plus, rs.minus);
    require_decoupled(bp);
    SolveReport r = run_solve(rs);
    const CrackSolution& s = r.sol;
    const Scales sc = scales(rs, bp);
    const double L = rs.profile.L, xmax = rs.outputs.x_max_over_L * L;
    const fs::path dir(out);

    // Forward identities on the computed fields, over the tabulated window.
    {
        const GeneralIdentities gi(bp, build_loads(rs), build_profiles(rs));
        const TractionEvaluator ev(gi.assembly(), s.du1, s.du2);
        r.identity = gi.evaluate(s.du1, s.du2, [&](double x) { return ev(x); },
                                 std::min(0.9, xmax / s.truncation));
    }

    if (rs.outputs.opening) {
        std::string csv = "x1_over_L,jump_u1_norm,jump_u2_norm\n";
        for (int i = s.crack_grid.size() - 1; i >= 0; --i) {
            const double x = s.crack_grid.coordinate(i);
            if (-x > xmax) continue;
            csv += g17(x / L) + "," + g17(s.jump_u1.values[i] / sc.opening) + "," +
                   g17(s.jump_u2.values[i] / sc.opening) + "\n";
        }
        write_atomic(dir / "opening.csv", csv);
    }
    if (rs.outputs.traction) {
        std::string csv = "x1_over_L,sigma21_norm,sigma22_norm\n";
        for (int i = 0; i < s.ahead_grid.size(); ++i) {
            const double x = s.ahead_grid.coordinate(i);
            if (x > xmax) break;
            csv += g17(x / L) + "," + g17(s.sigma21.values[i] / sc.traction) + "," +
                   g17(s.sigma22.values[i] / sc.traction) + "\n";
        }
        write_atomic(dir / "traction.csv", csv);
    }

    std::ostringstream sm;
    sm << "K_I_norm = " << g17(r.K_I_norm) << "\n"
       << "K_II_norm = " << g17(r.K_II_norm) << "\n"
       << "K_I = " << g17(s.K_I.value) << "\n"
       << "K_II = " << g17(s.K_II.value) << "\n"
       << "K_I_fit_uncertainty = " << g17(s.K_I.uncertainty) << "\n"
       << "K_II_fit_uncertainty = " << g17(s.K_II.uncertainty) << "\n"
       << "sif_scale = " << g17(sc.sif) << "\n"
       << "forward_residual_u1 = " << g17(s.residual_u1) << "\n"
       << "forward_residual_u2 = " << g17(s.residual_u2) << "\n"
       << "identity_residual = " << g17(r.identity.relative()) << "\n"
       << "truncation_sensitivity = " << g17(s.truncation_sensitivity) << "\n"
       << "truncation_length_over_L = " << g17(s.truncation / L) << "\n"
       << "N = " << rs.numerics.N << "\n"
       << "grading = " << g17(rs.numerics.grading) << "\n";
    if (const auto cf = closed_form(rs)) {
        const auto rel = [](double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a / b - 1.0); };
        sm << "closed_form_K_I_norm = " << g17(cf->K_I / sc.sif) << "\n"
           << "closed_form_K_II_norm = " << g17(cf->K_II / sc.sif) << "\n"
           << "published_K_I_norm = " << g17(cf->K_I_published / sc.sif) << "\n"
           << "published_K_II_norm = " << g17(cf->K_II_published / sc.sif) << "\n"
           << "K_I_vs_closed_form = " << g17(rel(s.K_I.value, cf->K_I)) << "\n"
           << "K_I_vs_published = " << g17(rel(s.K_I.value, cf->K_I_published)) << "\n";
        if (cf->K_II_published != 0.0) sm << "K_II_vs_published = " << g17(rel(s.K_II.value, cf->K_II_published)) << "\n";
    }
    const bool converged = s.residual_u1 <= residual_limit && s.residual_u2 <= residual_limit;
    sm << "status = " << (converged ? "ok" : "non-converged") << "\n";
    write_atomic(dir / "summary.txt", sm.str());
    if (!quiet) std::cout << sm.str();
    if (!converged) {
        std::cerr << "thermocrack: forward residual above " << residual_limit << "\n";
        return nonconvergence;
    }
    return ok;
}

// ---------------------------------------------------------------------------

int thread_cap() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* e = std::getenv("THERMOCRACK_THREADS")) {
        const int v = std::atoi(e);
        if (v > 0) n = v;
    }
    return std::max(n, 1);
}

RunSpec with_parameter(RunSpec rs, const std::string& param, double v) {
    auto& p = rs.profile;
    if (param == "a1_over_L" || param == "a2_over_L") {
        if (p.family != ProfileFamily::delta_flux)
            throw ConfigError(param + " sweeps need profile.family = delta_flux");
        (param == "a1_over_L" ? p.a1 : p.a2) = v * p.L;
        if (!(p.a2 > 0.0) || p.a1 < p.a2)
            throw ConfigError(param + " = " + g17(v) + " violates a1 >= a2 > 0");
    } else if (param == "gamma_ratio") {
        if (p.field == TransportField::thermal) rs.minus.gamma_t = v * rs.plus.gamma_t;
        else rs.minus.gamma_c = v * rs.plus.gamma_c;
    } else {
        throw CLI::ValidationError("--sweep-param", "expected a1_over_L, a2_over_L or gamma_ratio");
    }
    return rs;
}

std::string monotonicity(const std::vector<double>& x, const std::vector<double>& y) {
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double s = (y[i] - y[i - 1]) * (x[i] - x[i - 1]);
        if (s < 0) inc = false;
        if (s > 0) dec = false;
    }
    if (x.size() < 2) return "n/a";
    if (inc && dec) return "constant";
    return inc ? "increasing" : dec ? "decreasing" : "non-monotone";
}

int cmd_sweep(const RunSpec& rs, const std::string& out, const std::string& param, const std::vector<double>& values,
              bool quiet) {
    if (values.empty()) throw CLI::ValidationError("--sweep-values", "need at least one value");
    std::vector<RunSpec> specs;
    for (double v : values) specs.push_back(with_parameter(rs, param, v));
    for (const auto& s : specs) require_decoupled(compute_bimaterial_params(s.plus, s.minus));

    std::vector<double> KI(values.size()), KII(values.size());
    std::vector<std::string> errors(values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                const auto r = run_solve(specs[i]);
                KI[i] = r.K_I_norm;
                KII[i] = r.K_II_norm;
                if (r.sol.residual_u1 > residual_limit || r.sol.residual_u2 > residual_limit)
                    errors[i] = "forward residual above limit";
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int nt = std::min<int>(thread_cap(), static_cast<int>(specs.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty()) throw NonConvergence(param + " = " + g17(values[i]) + ": " + errors[i], INFINITY);

    std::string csv = param + ",K_I_norm,K_II_norm\n";
    for (std::size_t i = 0; i < values.size(); ++i) csv += g17(values[i]) + "," + g17(KI[i]) + "," + g17(KII[i]) + "\n";
    write_atomic(fs::path(out) / "sif_sweep.csv", csv);

    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<double> xs, yI, yII;
    for (auto i : order) {
        xs.push_back(values[i]);
        yI.push_back(KI[i]);
        yII.push_back(KII[i]);
    }
    std::string summary = "parameter = " + param + "\nK_I_norm in " + param + ": " + monotonicity(xs, yI) +
                          "\nK_II_norm in " + param + ": " + monotonicity(xs, yII) + "\n";
    write_atomic(fs::path(out) / "sif_sweep_summary.txt", summary);
    if (!quiet) std::cout << csv << summary;
    return ok;
}

// ---------------------------------------------------------------------------

int cmd_check(int N, bool quiet) {
    int failures = 0;
    for (const auto& r : checks::run_all(N)) {
        const char* tag = !r.pass ? "FAIL" : r.warning ? "WARN" : "PASS";
        if (!r.pass) ++failures;
        if (!quiet || !r.pass) std::cout << tag << "  " << r.name << ": " << r.detail << "\n";
    }
    if (failures) {
        std::cerr << "thermocrack check: " << failures << " suite(s) failed\n";
        return nonconvergence;
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interfacial crack solver for thermodiffusive bimaterials"};
    app.require_subcommand(1);
    std::string config, out = ".", sweep_param;
    std::vector<double> sweep_values;
    bool quiet = false;
    app.add_flag("--quiet", quiet, "Suppress standard output");

    auto* params = app.add_subcommand("params", "Print the bimaterial parameters");
    params->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    params->add_option("--out", out, "Output directory for params.csv");

    auto* solve_cmd = app.add_subcommand("solve", "Solve for openings, tractions and stress intensity factors");
    solve_cmd->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--out", out, "Output directory");

    auto* sweep = app.add_subcommand("sweep", "Stress intensity factors over a parameter sweep");
    sweep->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out, "Output directory");
    sweep->add_option("--sweep-param", sweep_param, "a1_over_L, a2_over_L or gamma_ratio")
        ->required()
        ->check(CLI::IsMember({"a1_over_L", "a2_over_L", "gamma_ratio"}));
    sweep->add_option("--sweep-values", sweep_values, "Comma-separated values")->required()->delimiter(',');

    auto* check = app.add_subcommand("check", "Run the built-in verification suites");
    check->add_option("--config", config, "Optional configuration supplying numerics.N")->check(CLI::ExistingFile);

    for (auto* sc : {params, solve_cmd, sweep, check}) sc->add_flag("--quiet", quiet, "Suppress standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*check) {
            int N = 2048;
            if (!config.empty()) N = load_run_spec(config).numerics.N;
            return cmd_check(N, quiet);
        }
        const RunSpec rs = load_run_spec(config);
        if (*params) return cmd_params(rs, *params->get_option("--out") ? out : "", quiet);
        if (*solve_cmd) return cmd_solve(rs, out, quiet);
        return cmd_sweep(rs, out, sweep_param, sweep_values, quiet);
    } catch (const ConfigError& e) {
        std::cerr << "thermocrack: " << e.what() << "\n";
        return config_invalid;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "thermocrack: " << e.what() << "\n";
        return usage;
    } catch (const UnsupportedCase& e) {
        std::cerr << "thermocrack: unsupported case: " << e.what() << "\n";
        return unsupported;
    } catch (const NonConvergence& e) {
        std::cerr << "thermocrack: non-convergence: " << e.what() << "\n";
        return nonconvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "thermocrack: invalid input: " << e.what() << "\n";
        return config_invalid;
    } catch (const std::exception& e) {
        std::cerr << "thermocrack: " << e.what() << "\n";
        return nonconvergence;
    }
}
