#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "ogl/commands.hpp"

using namespace ogl;
namespace fs = std::filesystem;

namespace {

EquationSpec spec(const char* a, const char* b, const char* h = nullptr) {
    Json doc = {{"A", a}, {"B", b}};
    if (h) doc["H"] = h;
    return spec_from_json(doc);
}

}  // namespace

TEST(ParseAngle, Forms) {
    using std::numbers::pi;
    EXPECT_DOUBLE_EQ(parse_angle("0.75"), 0.75);
    EXPECT_DOUBLE_EQ(parse_angle("pi"), pi);
    EXPECT_DOUBLE_EQ(parse_angle("-pi"), -pi);
    EXPECT_DOUBLE_EQ(parse_angle("pi/4"), pi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("-3pi/2"), -3 * pi / 2);
    EXPECT_DOUBLE_EQ(parse_angle("2*pi/3"), 2 * pi / 3);
    EXPECT_DOUBLE_EQ(parse_angle(" 3 * pi / 4 "), 3 * pi / 4);
    for (const char* bad : {"", "pie", "pi/0", "2x", "pi*2", "/pi"}) EXPECT_THROW(parse_angle(bad), std::invalid_argument) << bad;
}

TEST(ParseComplex, Constants) {
    EXPECT_EQ(parse_complex_constant("1+2i"), Complex(1, 2));
    EXPECT_EQ(parse_complex_constant("-0.5"), Complex(-0.5, 0));
    EXPECT_THROW(parse_complex_constant("z"), std::invalid_argument);
    EXPECT_NEAR(std::abs(parse_complex_constant("exp(1)") - std::numbers::e), 0.0, 1e-15);
}

TEST(Commands, ClassifyExitCodes) {
    std::ostringstream out;
    EXPECT_EQ(cmd_classify(spec("z", "exp(z)"), out, false), kExitOk);
    EXPECT_NE(out.str().find("G1988a"), std::string::npos);
    std::ostringstream none;
    EXPECT_EQ(cmd_classify(spec("z", "z"), none, true), kExitValidation);
    auto j = Json::parse(none.str());
    EXPECT_EQ(j["verdicts"][0]["conclusion"], "NoRuleApplies");
}

TEST(Commands, RaysJson) {
    std::ostringstream out;
    EXPECT_EQ(cmd_rays(spec("exp(z^2)", "z"), out, true), kExitOk);
    auto j = Json::parse(out.str());
    EXPECT_EQ(j["A_exponential"]["rays"].size(), 4u);
    EXPECT_EQ(j["B_critical_rays"].size(), 3u);
}

TEST(Commands, IntegrateCsv) {
    IntegrateOptions o;
    o.r_max = 2.0;
    o.samples = 8;
    std::ostringstream out;
    EXPECT_EQ(cmd_integrate(spec("0", "1"), o, {}, out), kExitOk);
    EXPECT_EQ(csv_row_count(out.str()), 9u);
    std::ostringstream tr;
    o.transformed = true;
    EXPECT_EQ(cmd_integrate(spec("2*z", "z^2"), o, {}, tr), kExitOk);
    EXPECT_EQ(csv_row_count(tr.str()), 9u);
}

TEST(Commands, ProfileJson) {
    ProfileOptions o;
    o.r_min = 5;
    o.r_max = 500;
    o.json = true;
    std::ostringstream out;
    EXPECT_EQ(cmd_profile(parse_expression("exp(z)"), o, out), kExitOk);
    auto j = Json::parse(out.str());
    EXPECT_NEAR(j["order_estimate"]["value"].get<double>(), 1.0, 0.05);
    std::ostringstream narrow;
    o.r_max = 10;
    EXPECT_EQ(cmd_profile(parse_expression("exp(z)"), o, narrow), kExitOk);
    EXPECT_TRUE(Json::parse(narrow.str())["order_estimate"].contains("error"));
}

TEST(Commands, ExamplesFilterAndList) {
    std::ostringstream out;
    EXPECT_EQ(cmd_examples("rule-Long", false, false, {}, out), kExitOk);
    EXPECT_NE(out.str().find("PASS rule-Long2018a"), std::string::npos);
    std::ostringstream list;
    EXPECT_EQ(cmd_examples("", true, true, {}, list), kExitOk);
    EXPECT_EQ(Json::parse(list.str()).size(), catalog().size());
    std::ostringstream none;
    EXPECT_EQ(cmd_examples("zzz-nothing", false, false, {}, none), kExitValidation);
}

TEST(Commands, ReportWritesFiles) {
    const auto dir = fs::temp_directory_path() / "ogl_test_report_cmd";
    fs::remove_all(dir);
    std::ostringstream out;
    auto s = spec("exp(z)", "z", "1");
    EXPECT_EQ(cmd_report(s, dir, "json", out), kExitOk);
    EXPECT_NO_THROW(validate_report(read_json_file((dir / "report.json").string())));
    EXPECT_EQ(cmd_report(s, dir, "csv", out), kExitOk);
    for (const char* f : {"verdicts.csv", "rays.csv", "profile_A.csv", "profile_B.csv", "profile_H.csv"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    EXPECT_THROW(cmd_report(s, dir, "xml", out), SchemaError);
    fs::remove_all(dir);
}
