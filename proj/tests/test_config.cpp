#include <gtest/gtest.h>

#include <thermocrack/config.hpp>

#include <filesystem>
#include <fstream>

using namespace thermocrack;
namespace fs = std::filesystem;

namespace {

const std::string base = R"({
  "material_plus":  {"lambda": 1.0, "mu": 1.0, "gamma_t": 1.0, "k_t": 1.0},
  "material_minus": {"lambda": 1.0, "mu": 1.0, "gamma_t": 0.8, "k_t": 1.0},
  "profile": {"family": "delta_flux", "theta_s": 1.0, "L": 1.0, "a1": 4.0, "a2": 2.0}
})";

std::string with(const std::string& from, const std::string& to) {
    std::string s = base;
    s.replace(s.find(from), from.size(), to);
    return s;
}

std::string error_of(const std::string& text, const fs::path& dir = {}) {
    try {
        parse_run_spec(text, "cfg.json", dir);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

fs::path scratch() {
    const fs::path d = fs::temp_directory_path() / "thermocrack_config_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST(Config, MinimalDocumentUsesDefaults) {
    const auto rs = parse_run_spec(base);
    EXPECT_EQ(rs.numerics.N, 2048);
    EXPECT_EQ(rs.numerics.grading, 3.0);
    EXPECT_EQ(rs.plus.D_c, 1.0);
    EXPECT_EQ(rs.minus.gamma_t, 0.8);
    EXPECT_EQ(rs.profile.field, TransportField::thermal);
    EXPECT_TRUE(rs.outputs.opening && rs.outputs.traction);
    const auto prof = build_profiles(rs);
    EXPECT_FALSE(prof.avg_theta.empty());
}

TEST(Config, RepositoryExamplesParse) {
    for (const char* name : {"example1.json", "example2.json"}) {
        const auto rs = load_run_spec(fs::path(THERMOCRACK_CONFIGS) / name);
        EXPECT_EQ(rs.numerics.N, 2048) << name;
    }
}

TEST(Config, UnknownKeyReportsLine) {
    const auto e = error_of(with("\"L\": 1.0", "\"L\": 1.0, \"bogus\": 2"));
    EXPECT_NE(e.find("cfg.json:4: profile.bogus: unknown key"), std::string::npos) << e;
    EXPECT_NE(error_of(with("\"k_t\": 1.0}", "\"k_t\": 1.0, \"kt\": 1}")).find("unknown key"), std::string::npos);
}

TEST(Config, MalformedJsonReportsLine) {
    const auto e = error_of(with("\"a2\": 2.0}", "\"a2\": 2.0,,}"));
    EXPECT_NE(e.find("cfg.json:4: malformed JSON"), std::string::npos) << e;
}

TEST(Config, RangesAreChecked) {
    const std::string num = ",\n  \"numerics\": {\"N\": 10}\n}";
    std::string t = base;
    t.replace(t.rfind('}'), 1, num);
    EXPECT_NE(error_of(t).find("numerics.N: must lie in [64, 65536]"), std::string::npos);
    EXPECT_NE(error_of(with("\"a1\": 4.0", "\"a1\": 1.0")).find("profile.a1"), std::string::npos);
    EXPECT_NE(error_of(with("\"L\": 1.0", "\"L\": -1.0")).find("profile.L: must be positive"), std::string::npos);
    EXPECT_NE(error_of(with("\"mu\": 1.0, \"gamma_t\": 0.8", "\"mu\": 0.0, \"gamma_t\": 0.8")).find("material_minus"),
              std::string::npos);
    EXPECT_NE(error_of(with("\"delta_flux\"", "\"wave\"")).find("profile.family"), std::string::npos);
}

TEST(Config, EqualOffsetsAccepted) {
    const auto rs = parse_run_spec(with("\"a1\": 4.0", "\"a1\": 2.0"));
    EXPECT_EQ(rs.profile.a1, rs.profile.a2);
    EXPECT_TRUE(build_profiles(rs).avg_theta.empty());
}

TEST(Config, EngineeringMaterialForm) {
    const auto rs = parse_run_spec(with(R"({"lambda": 1.0, "mu": 1.0, "gamma_t": 1.0, "k_t": 1.0})",
                                        R"({"E": 2.5, "nu": 0.25, "alpha_t": 0.4, "k_t": 1.0})"));
    EXPECT_NEAR(rs.plus.mu, 1.0, 1e-15);
    EXPECT_NEAR(rs.plus.gamma_t, 2.0, 1e-15);
    EXPECT_NE(error_of(with(R"("lambda": 1.0, "mu": 1.0, "gamma_t": 1.0)", R"("lambda": 1.0, "mu": 1.0, "E": 1.0)"))
                  .find("material_plus"),
              std::string::npos);
}

TEST(Config, SampledCsvWithAndWithoutHeader) {
    const auto d = scratch();
    {
        std::ofstream(d / "h.csv") << "x1,value\n-2,0.5\n-1,0.25\n0,0\n";
        std::ofstream(d / "n.csv") << "-2,0.5\n-1,0.25\n0,0\n";
        std::ofstream(d / "bad.csv") << "-2,0.5\n-1,oops\n";
    }
    const auto a = read_sampled_csv(d / "h.csv"), b = read_sampled_csv(d / "n.csv");
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.v, b.v);
    try {
        read_sampled_csv(d / "bad.csv");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("bad.csv:2"), std::string::npos) << e.what();
    }
    EXPECT_THROW(read_sampled_csv(d / "missing.csv"), ConfigError);
}

TEST(Config, RelativeLoadPathsResolveAgainstConfigDirectory) {
    const auto d = scratch();
    std::ofstream(d / "p2.csv") << "-3,0.1\n-2,0.2\n-1,0.1\n0,0\n";
    std::string t = base;
    t.replace(t.rfind('}'), 1, ",\n  \"loads\": {\"avg_p2\": \"p2.csv\"}\n}");
    const auto rs = parse_run_spec(t, "cfg.json", d);
    EXPECT_EQ(rs.load_files[1], d / "p2.csv");
    const auto loads = build_loads(rs);
    EXPECT_NEAR(loads.avg_p[1](-2.0), 0.2, 1e-15);
    EXPECT_NE(error_of(t, d / "elsewhere").find("loads.avg_p2: file not found"), std::string::npos);
}

TEST(Config, CustomSampledMembers) {
    const auto d = scratch();
    std::ofstream(d / "theta.csv") << "-2,0\n-1,0.5\n0,1\n1,0.5\n2,0\n";
    const auto rs = parse_run_spec(with(R"("family": "delta_flux", "theta_s": 1.0, "L": 1.0, "a1": 4.0, "a2": 2.0)",
                                        R"("family": "custom_sampled", "members": {"avg_theta": "theta.csv"})"),
                                   "cfg.json", d);
    const auto prof = build_profiles(rs);
    EXPECT_NEAR(prof.avg_theta(0.5), 0.75, 1e-15);
    EXPECT_TRUE(prof.jump_theta.empty());
    EXPECT_NE(error_of(with("\"a2\": 2.0", "\"a2\": 2.0, \"members\": {}")).find("profile.members"),
              std::string::npos);
}
