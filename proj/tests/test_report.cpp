#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ogl/report.hpp"

using namespace ogl;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("ogl_test_" + tag + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string schema_path_of(const Json& doc) {
    try {
        spec_from_json(doc);
    } catch (const SchemaError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST(SpecJson, Minimal) {
    auto s = spec_from_json(Json::parse(R"j({"A": "z", "B": "exp(z)"})j"));
    EXPECT_TRUE(s.homogeneous());
    EXPECT_EQ(to_string(s.B), "exp(z)");
}

TEST(SpecJson, DeclaredFields) {
    auto s = spec_from_json(Json::parse(R"j({"name": "x", "A": "exp(z^2)", "B": "exp(z)", "H": "z",
        "declared": {"fabry_gaps": true, "mu_B": 0.5, "notes": "n"}})j"));
    EXPECT_TRUE(s.declared.fabry_gaps);
    ASSERT_TRUE(s.declared.mu_B);
    EXPECT_EQ(*s.declared.mu_B, 0.5);
    ASSERT_TRUE(s.H);
}

TEST(SpecJson, ErrorsNameTheField) {
    EXPECT_EQ(schema_path_of(Json::parse(R"j({"A": "z"})j")), "");
    EXPECT_EQ(schema_path_of(Json::parse(R"j({"A": "z", "B": "exp(", "H": null})j")), "B");
    EXPECT_EQ(schema_path_of(Json::parse(R"j({"A": 3, "B": "z"})j")), "A");
    EXPECT_EQ(schema_path_of(Json::parse(R"j({"A": "z", "B": "z", "extra": 1})j")), "extra");
    EXPECT_EQ(schema_path_of(Json::parse(R"j({"A": "z", "B": "z", "declared": {"fabry": true}})j")),
              "declared.fabry");
    EXPECT_EQ(schema_path_of(Json::parse(R"j({"A": "z", "B": "z", "declared": {"mu_B": "big"}})j")), "declared.mu_B");
    try {
        spec_from_json(Json::parse(R"j({"A": "z"})j"));
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("B required"), std::string::npos);
    }
}

TEST(SpecJson, SemanticValidation) {
    EXPECT_THROW(spec_from_json(Json::parse(R"j({"A": "z", "B": "exp(z) - exp(z)"})j")), SpecError);
    EXPECT_THROW(spec_from_json(Json::parse(R"j({"A": "z", "B": "z", "declared": {"mu_B": 1}})j")), SpecError);
    EXPECT_THROW(spec_from_json(Json::parse(R"j({"A": "z", "B": "z", "declared": {"rho_H": 1}})j")), SpecError);
}

TEST(SpecJson, RoundTrip) {
    auto s = spec_from_json(Json::parse(R"j({"name": "rt", "A": "(exp(z) + 1)*exp(z^2)", "B": "z^3 - 2i",
        "H": "exp(-z)", "declared": {"lambda_lt_rho": true, "rho_A": 2}})j"));
    auto again = spec_from_json(to_json(s));
    EXPECT_EQ(to_json(again), to_json(s));
    EXPECT_EQ(expand(again.A), expand(s.A));
}

TEST(SpecFile, LoadErrors) {
    auto dir = scratch_dir("load");
    EXPECT_THROW(load_spec((dir / "missing.json").string()), std::runtime_error);
    EXPECT_THROW(load_spec(write_file(dir, "bad.json", "{not json")), SchemaError);
    auto s = load_spec(write_file(dir, "ok.json", R"j({"A": "z", "B": "exp(z)"})j"));
    EXPECT_EQ(to_string(s.A), "z");
    fs::remove_all(dir);
}

TEST(Config, DefaultsOverridesAndEnvironment) {
    auto dir = scratch_dir("config");
    EXPECT_EQ(config_from_json(Json::object()).rel_tol, IntegratorConfig{}.rel_tol);
    EXPECT_EQ(config_from_json(Json::parse(R"j({"rel_tol": 1e-8, "max_steps": 100})j")).max_steps, 100u);
    EXPECT_THROW(config_from_json(Json::parse(R"j({"rel_tol": 1})j")), SchemaError);
    EXPECT_THROW(config_from_json(Json::parse(R"j({"tolerance": 1e-8})j")), SchemaError);
    EXPECT_THROW(config_from_json(Json::parse(R"j({"max_steps": -3})j")), SchemaError);

    const auto path = write_file(dir, "cfg.json", R"j({"max_step": 0.125})j");
    EXPECT_EQ(load_config(path).max_step, 0.125);
    ::setenv(kConfigEnvVar, path.c_str(), 1);
    EXPECT_EQ(load_config(std::nullopt).max_step, 0.125);
    ::unsetenv(kConfigEnvVar);
    EXPECT_EQ(load_config(std::nullopt).max_step, IntegratorConfig{}.max_step);
    fs::remove_all(dir);
}

TEST(AnalysisReport, ValidatesAndIsDeterministic) {
    auto s = spec_from_json(Json::parse(R"j({"name": "r", "A": "exp(z)", "B": "z", "H": "1"})j"));
    const Json a = to_json(analyze(s));
    const Json b = to_json(analyze(s));
    EXPECT_NO_THROW(validate_report(a));
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a["schema"], kReportSchema);
    EXPECT_EQ(a["profiles"].size(), 3u);
    EXPECT_EQ(a["order_estimates"][0]["value"], 1.0);
    // polynomial B is flagged as order zero rather than failing
    EXPECT_EQ(a["order_estimates"][1]["value"], 0.0);
}

TEST(AnalysisReport, ValidationRejectsDamage) {
    auto s = spec_from_json(Json::parse(R"j({"A": "z", "B": "exp(z)"})j"));
    const Json good = to_json(analyze(s));
    auto broken = [&](auto mutate) {
        Json j = good;
        mutate(j);
        try {
            validate_report(j);
        } catch (const SchemaError& e) {
            return e.path();
        }
        return std::string("<valid>");
    };
    EXPECT_EQ(broken([](Json& j) { j["schema"] = "other/9"; }), "schema");
    EXPECT_EQ(broken([](Json& j) { j.erase("geometry"); }), "");
    EXPECT_EQ(broken([](Json& j) { j["verdicts"][0]["citation"] = ""; }), "verdicts[0].citation");
    EXPECT_EQ(broken([](Json& j) { j["verdicts"][0]["rule"] = "Bogus"; }), "verdicts[0].rule");
    EXPECT_EQ(broken([](Json& j) { j["profiles"][0]["entries"][1]["r"] = 0.0; }), "profiles[0].entries");
    EXPECT_EQ(broken([](Json&) {}), "<valid>");
    Json zero_b = good;
    zero_b["spec"]["B"] = "0";
    EXPECT_THROW(validate_report(zero_b), SpecError);
    EXPECT_THROW(validate_report(Json::array()), SchemaError);
}

TEST(Csv, RowCountsAndHeaders) {
    auto s = spec_from_json(Json::parse(R"j({"A": "exp(z^2)", "B": "z"})j"));
    auto rep = analyze(s);
    const auto verdicts = verdicts_csv(rep.verdicts);
    EXPECT_EQ(csv_row_count(verdicts), rep.verdicts.size());
    EXPECT_EQ(verdicts.substr(0, verdicts.find('\n')), "rule,conclusion,hyper_order,citation");
    // 4 rays from e^{z^2}, 3 from B = z
    EXPECT_EQ(csv_row_count(rays_csv(s)), 7u);
    const auto prof = profile_csv(rep.profiles.front().profile);
    EXPECT_EQ(csv_row_count(prof), default_profile_radii().size());
    auto samples = integrate_ray(s.homogeneous_part(), 0.0, 0.0, 1.0, {1.0, 0.0}, {}, {0.5, 1.0});
    EXPECT_EQ(csv_row_count(samples_csv(samples)), 3u);
    EXPECT_EQ(csv_row_count(""), 0u);
}

TEST(Csv, NumbersRoundTrip) {
    GrowthProfile p;
    p.entries.push_back({0.1, 1.0 / 3.0, std::nullopt, 2.0 / 7.0});
    const auto csv = profile_csv(p);
    const auto row = csv.substr(csv.find('\n') + 1);
    EXPECT_EQ(std::stod(row.substr(row.find(',') + 1)), 1.0 / 3.0);
    EXPECT_NE(row.find(",,"), std::string::npos);
}
