#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "materials.hpp"
#include "profiles.hpp"
#include "sio.hpp"
#include "solver.hpp"

// JSON run configuration for the command-line tool.

namespace thermocrack {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ProfileFamily { delta_flux, gaussian_temperature, custom_sampled };

struct ProfileSpec {
    ProfileFamily family = ProfileFamily::delta_flux;
    TransportField field = TransportField::thermal;
    double theta_s = 1.0;
    double L = 1.0;
    double a1 = 4.0, a2 = 2.0;
    std::map<std::string, std::filesystem::path> members;  // custom_sampled only
};

struct OutputSpec {
    bool opening = true;
    bool traction = true;
    double x_max_over_L = 20.0;
};

struct RunSpec {
    Material plus, minus;
    ProfileSpec profile;
    std::array<std::filesystem::path, 4> load_files;  // avg_p1, avg_p2, jump_p1, jump_p2
    SolveOptions numerics;
    OutputSpec outputs;
    std::string source = "<config>";
};

inline const std::array<const char*, 8>& profile_member_names() {
    static const std::array<const char*, 8> n = {"avg_theta", "jump_theta", "avg_chi", "jump_chi",
                                                 "avg_q2",    "jump_q2",    "avg_j2",  "jump_j2"};
    return n;
}

namespace config_detail {

using nlohmann::json;

struct Ctx {
    const std::string& text;
    const std::string& source;

    // Line of the key path, found by scanning for each quoted key in order.
    int line_of(const std::vector<std::string>& path) const {
        std::size_t pos = 0;
        for (const auto& k : path) {
            const std::string q = "\"" + k + "\"";
            std::size_t at = pos;
            while (true) {
                at = text.find(q, at);
                if (at == std::string::npos) return 0;
                std::size_t c = at + q.size();
                while (c < text.size() && std::isspace(static_cast<unsigned char>(text[c]))) ++c;
                if (c < text.size() && text[c] == ':') break;
                at += q.size();
            }
            pos = at + q.size();
        }
        return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
    }

    [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& msg) const {
        std::string dotted;
        for (const auto& k : path) dotted += (dotted.empty() ? "" : ".") + k;
        const int line = line_of(path);
        throw ConfigError(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " + dotted + ": " + msg);
    }
};

inline void require_keys(const Ctx& c, const json& obj, const std::vector<std::string>& path,
                         const std::set<std::string>& allowed) {
    if (!obj.is_object()) c.fail(path, "expected an object");
    for (const auto& [k, v] : obj.items()) {
        if (!allowed.count(k)) {
            auto p = path;
            p.push_back(k);
            c.fail(p, "unknown key");
        }
    }
}

inline double number(const Ctx& c, const json& obj, std::vector<std::string> path, const std::string& key,
                     double fallback, bool required = false) {
    path.push_back(key);
    if (!obj.contains(key)) {
        if (required) c.fail(path, "missing required number");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) c.fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) c.fail(path, "must be finite");
    return d;
}

inline Material material(const Ctx& c, const json& obj, const std::string& name) {
    const std::vector<std::string> path{name};
    require_keys(c, obj, path, {"lambda", "mu", "gamma_t", "gamma_c", "k_t", "D_c", "E", "nu", "alpha_t", "alpha_c"});
    const bool lame = obj.contains("lambda") || obj.contains("mu");
    const bool eng = obj.contains("E") || obj.contains("nu");
    if (lame == eng) c.fail(path, "give either {lambda, mu} or {E, nu}");
    Material m;
    if (lame) {
        if (obj.contains("alpha_t") || obj.contains("alpha_c"))
            c.fail(path, "alpha_t/alpha_c belong to the {E, nu} form; use gamma_t/gamma_c");
        m.lambda = number(c, obj, path, "lambda", 0.0, true);
        m.mu = number(c, obj, path, "mu", 0.0, true);
        m.gamma_t = number(c, obj, path, "gamma_t", 0.0);
        m.gamma_c = number(c, obj, path, "gamma_c", 0.0);
        m.k_t = number(c, obj, path, "k_t", 1.0);
        m.D_c = number(c, obj, path, "D_c", 1.0);
    } else {
        if (obj.contains("gamma_t") || obj.contains("gamma_c"))
            c.fail(path, "gamma_t/gamma_c belong to the {lambda, mu} form; use alpha_t/alpha_c");
        try {
            m = Material::from_engineering(number(c, obj, path, "E", 0.0, true), number(c, obj, path, "nu", 0.0, true),
                                           number(c, obj, path, "alpha_t", 0.0), number(c, obj, path, "alpha_c", 0.0),
                                           number(c, obj, path, "k_t", 1.0), number(c, obj, path, "D_c", 1.0));
        } catch (const std::invalid_argument& e) {
            c.fail(path, e.what());
        }
    }
    try {
        validate(m, name);
    } catch (const std::invalid_argument& e) {
        c.fail(path, e.what());
    }
    return m;
}

}  // namespace config_detail

// Two-column (x1, value) CSV. A first line that does not parse as numbers is
// taken as a header. Rows are sorted by x1.
inline Sampled read_sampled_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError(file.string() + ": cannot open");
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, v;
        std::string extra;
        if (!(ss >> x >> v) || (ss >> extra)) {
            if (rows.empty() && lineno == 1) continue;
            throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": expected two numeric columns");
        }
        rows.emplace_back(x, v);
    }
    std::sort(rows.begin(), rows.end());
    std::vector<double> xs, vs;
    for (const auto& [x, v] : rows) {
        xs.push_back(x);
        vs.push_back(v);
    }
    try {
        return Sampled(std::move(xs), std::move(vs));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
}

inline RunSpec parse_run_spec(const std::string& text, const std::string& source = "<config>",
                              const std::filesystem::path& base_dir = {}) {
    using config_detail::json;
    using config_detail::number;
    using config_detail::require_keys;
    const config_detail::Ctx c{text, source};

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
        const int line = 1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n'));
        throw ConfigError(source + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
    }
    require_keys(c, root, {}, {"material_plus", "material_minus", "profile", "loads", "numerics", "outputs"});
    for (const char* k : {"material_plus", "material_minus", "profile"})
        if (!root.contains(k)) throw ConfigError(source + ": missing required section " + k);

    RunSpec rs;
    rs.source = source;
    rs.plus = config_detail::material(c, root["material_plus"], "material_plus");
    rs.minus = config_detail::material(c, root["material_minus"], "material_minus");

    const auto resolve = [&](const std::vector<std::string>& path, const json& v) {
        if (!v.is_string()) c.fail(path, "expected a file path string");
        std::filesystem::path p = v.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        if (!std::filesystem::exists(p)) c.fail(path, "file not found: " + p.string());
        return p;
    };

    {
        const json& pj = root["profile"];
        const std::vector<std::string> path{"profile"};
        require_keys(c, pj, path, {"family", "field", "theta_s", "L", "a1", "a2", "members"});
        if (!pj.contains("family") || !pj["family"].is_string()) c.fail({"profile", "family"}, "expected a string");
        const std::string fam = pj["family"];
        auto& ps = rs.profile;
        if (fam == "delta_flux") ps.family = ProfileFamily::delta_flux;
        else if (fam == "gaussian_temperature") ps.family = ProfileFamily::gaussian_temperature;
        else if (fam == "custom_sampled") ps.family = ProfileFamily::custom_sampled;
        else c.fail({"profile", "family"}, "expected delta_flux, gaussian_temperature or custom_sampled");
        if (pj.contains("field")) {
            const auto& f = pj["field"];
            if (f == "thermal") ps.field = TransportField::thermal;
            else if (f == "diffusive") ps.field = TransportField::diffusive;
            else c.fail({"profile", "field"}, "expected thermal or diffusive");
        }
        ps.theta_s = number(c, pj, path, "theta_s", 1.0);
        ps.L = number(c, pj, path, "L", 1.0);
        if (!(ps.L > 0.0)) c.fail({"profile", "L"}, "must be positive");
        if (ps.family == ProfileFamily::delta_flux) {
            ps.a1 = number(c, pj, path, "a1", 0.0, true);
            ps.a2 = number(c, pj, path, "a2", 0.0, true);
            if (!(ps.a2 > 0.0)) c.fail({"profile", "a2"}, "must be positive");
            if (ps.a1 < ps.a2) c.fail({"profile", "a1"}, "must not be smaller than a2");
        } else {
            for (const char* k : {"a1", "a2"})
                if (pj.contains(k)) c.fail({"profile", k}, "only used by the delta_flux family");
            ps.a1 = ps.a2 = 0.0;
        }
        if (ps.family == ProfileFamily::custom_sampled) {
            if (!pj.contains("members")) c.fail(path, "custom_sampled needs a members object");
            const json& mj = pj["members"];
            const auto& names = profile_member_names();
            require_keys(c, mj, {"profile", "members"}, std::set<std::string>(names.begin(), names.end()));
            for (const auto& [k, v] : mj.items()) ps.members[k] = resolve({"profile", "members", k}, v);
        } else if (pj.contains("members")) {
            c.fail({"profile", "members"}, "only used by the custom_sampled family");
        }
    }

    if (root.contains("loads")) {
        const json& lj = root["loads"];
        const char* names[] = {"avg_p1", "avg_p2", "jump_p1", "jump_p2"};
        require_keys(c, lj, {"loads"}, {names, names + 4});
        for (int i = 0; i < 4; ++i)
            if (lj.contains(names[i])) rs.load_files[i] = resolve({"loads", names[i]}, lj[names[i]]);
    }

    if (root.contains("numerics")) {
        const json& nj = root["numerics"];
        const std::vector<std::string> path{"numerics"};
        require_keys(c, nj, path, {"N", "grading", "truncation_factor", "sif_fit_window", "check_truncation"});
        auto& o = rs.numerics;
        if (nj.contains("N")) {
            if (!nj["N"].is_number_integer()) c.fail({"numerics", "N"}, "expected an integer");
            o.N = nj["N"].get<int>();
        }
        o.grading = number(c, nj, path, "grading", o.grading);
        o.truncation_factor = number(c, nj, path, "truncation_factor", o.truncation_factor);
        o.sif_x_min = number(c, nj, path, "sif_fit_window", o.sif_x_min);
        if (nj.contains("check_truncation")) {
            if (!nj["check_truncation"].is_boolean()) c.fail({"numerics", "check_truncation"}, "expected a boolean");
            o.check_truncation = nj["check_truncation"].get<bool>();
        }
        if (o.N < 64 || o.N > 65536) c.fail({"numerics", "N"}, "must lie in [64, 65536]");
        if (!(o.grading >= 1.0 && o.grading <= 5.0)) c.fail({"numerics", "grading"}, "must lie in [1, 5]");
        if (!(o.truncation_factor > 1.0)) c.fail({"numerics", "truncation_factor"}, "must exceed 1");
        if (!(o.sif_x_min > 0.0 && o.sif_x_min < 1.0)) c.fail({"numerics", "sif_fit_window"}, "must lie in (0, 1)");
    }

    if (root.contains("outputs")) {
        const json& oj = root["outputs"];
        const std::vector<std::string> path{"outputs"};
        require_keys(c, oj, path, {"tables", "x_max_over_L"});
        auto& out = rs.outputs;
        if (oj.contains("tables")) {
            const json& t = oj["tables"];
            if (!t.is_array()) c.fail({"outputs", "tables"}, "expected an array of table names");
            out.opening = out.traction = false;
            for (const auto& name : t) {
                if (name == "opening") out.opening = true;
                else if (name == "traction") out.traction = true;
                else c.fail({"outputs", "tables"}, "table names are opening and traction");
            }
        }
        out.x_max_over_L = number(c, oj, path, "x_max_over_L", out.x_max_over_L);
        if (!(out.x_max_over_L > 0.0)) c.fail({"outputs", "x_max_over_L"}, "must be positive");
    }
    return rs;
}

inline RunSpec load_run_spec(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError(file.string() + ": cannot open configuration");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_spec(ss.str(), file.string(), file.parent_path());
}

inline double conductivity(const Material& m, TransportField f) { return f == TransportField::thermal ? m.k_t : m.D_c; }

inline InterfaceProfileSet build_profiles(const RunSpec& rs) {
    const auto& p = rs.profile;
    const double kp = conductivity(rs.plus, p.field), km = conductivity(rs.minus, p.field);
    switch (p.family) {
        case ProfileFamily::delta_flux:
            return make_delta_flux_family(p.theta_s, p.L, p.a1, p.a2, kp, km, p.field);
        case ProfileFamily::gaussian_temperature:
            return make_gaussian_temperature_family(p.theta_s, p.L, kp, km, p.field);
        case ProfileFamily::custom_sampled: break;
    }
    InterfaceProfileSet s;
    s.theta_s = p.theta_s;
    s.L = p.L;
    Profile* slots[] = {&s.avg_theta, &s.jump_theta, &s.avg_chi, &s.jump_chi,
                        &s.avg_q2,    &s.jump_q2,    &s.avg_j2,  &s.jump_j2};
    for (std::size_t i = 0; i < profile_member_names().size(); ++i) {
        const auto it = p.members.find(profile_member_names()[i]);
        if (it != p.members.end()) slots[i]->add(read_sampled_csv(it->second));
    }
    return s;
}

inline LoadSet build_loads(const RunSpec& rs) {
    LoadSet l;
    Profile* slots[] = {&l.avg_p[0], &l.avg_p[1], &l.jump_p[0], &l.jump_p[1]};
    for (int i = 0; i < 4; ++i)
        if (!rs.load_files[i].empty()) slots[i]->add(read_sampled_csv(rs.load_files[i]));
    try {
        validate(l);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(rs.source + ": loads: " + e.what());
    }
    return l;
}

}  // namespace thermocrack
