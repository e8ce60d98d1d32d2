// ogl: classify, integrate and profile f'' + A f' + B f = H from the command line.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ogl/commands.hpp"

namespace {

struct SpecSource {
    std::string file;
    std::string a, b, h;

    void attach(CLI::App* app) {
        app->add_option("spec", file, "spec file (JSON with name/A/B/H/declared)");
        app->add_option("--A", a, "coefficient A, instead of a spec file");
        app->add_option("--B", b, "coefficient B, instead of a spec file");
        app->add_option("--H", h, "forcing term H");
    }

    ogl::EquationSpec load() const {
        if (!file.empty()) return ogl::load_spec(file);
        ogl::Json doc = ogl::Json::object();
        doc["name"] = "command-line";
        if (!a.empty()) doc["A"] = a;
        if (!b.empty()) doc["B"] = b;
        if (!h.empty()) doc["H"] = h;
        return ogl::spec_from_json(doc);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Growth analysis of f'' + A f' + B f = H with entire coefficients"};
    app.require_subcommand(1);
    std::optional<std::string> config_path;
    app.add_option("--config", config_path,
                   std::string("integrator config JSON (default: $") + ogl::kConfigEnvVar + ")");

    bool json = false;

    auto* classify = app.add_subcommand("classify", "report every rule that forces infinite-order solutions");
    SpecSource classify_spec;
    classify_spec.attach(classify);
    classify->add_flag("--json", json, "emit JSON");

    auto* rays = app.add_subcommand("rays", "critical rays and sectors of the coefficients");
    SpecSource rays_spec;
    rays_spec.attach(rays);
    rays->add_flag("--json", json, "emit JSON");

    auto* integrate = app.add_subcommand("integrate", "integrate a solution along a ray; CSV on stdout");
    SpecSource integrate_spec;
    integrate_spec.attach(integrate);
    std::string theta_text = "0", f0_text = "1", f1_text = "0";
    ogl::IntegrateOptions iopt;
    integrate->add_option("--theta", theta_text, "ray angle: radians or e.g. pi/4");
    integrate->add_option("--r-max", iopt.r_max, "end of the ray")->required();
    integrate->add_option("--t0", iopt.t0, "start of the ray");
    integrate->add_option("--f0", f0_text, "f at t0, e.g. 1 or 0.5+2i");
    integrate->add_option("--f1", f1_text, "f' at t0");
    integrate->add_option("--samples", iopt.samples, "uniform output grid size (0: every step)");
    integrate->add_flag("--transformed", iopt.transformed, "integrate y'' + (B - A^2/4 - A'/2) y = 0 instead");

    auto* profile = app.add_subcommand("profile", "max/min modulus profile and order estimate");
    SpecSource profile_spec;
    profile_spec.attach(profile);
    std::string expr_text, field = "A", format = "csv";
    ogl::ProfileOptions popt;
    profile->add_option("--expr", expr_text, "expression to profile, instead of a spec field");
    profile->add_option("--field", field, "spec field to profile")->check(CLI::IsMember({"A", "B", "H"}));
    profile->add_option("--r-min", popt.r_min, "smallest radius");
    profile->add_option("--r-max", popt.r_max, "largest radius");
    profile->add_option("--radii", popt.radii, "number of geometric radii");
    profile->add_option("--angular", popt.angular, "angular samples per circle (>= 64)");
    profile->add_flag("--min", popt.with_min, "include the min-modulus channel");
    profile->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* examples = app.add_subcommand("examples", "run the built-in scenario catalog");
    std::string filter;
    bool list_only = false;
    examples->add_option("--filter", filter, "substring of scenario ids");
    examples->add_flag("--list", list_only, "list scenarios without running them");
    examples->add_flag("--json", json, "emit JSON");

    auto* report = app.add_subcommand("report", "write classify + rays + profiles to a directory");
    SpecSource report_spec;
    report_spec.attach(report);
    std::string out_dir, report_format = "json";
    report->add_option("--out", out_dir, "output directory")->required();
    report->add_option("--format", report_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ogl::kExitValidation;
    }

    try {
        const auto config = ogl::load_config(config_path);
        if (*classify) return ogl::cmd_classify(classify_spec.load(), std::cout, json);
        if (*rays) return ogl::cmd_rays(rays_spec.load(), std::cout, json);
        if (*integrate) {
            iopt.theta = ogl::parse_angle(theta_text);
            iopt.init = {ogl::parse_complex_constant(f0_text), ogl::parse_complex_constant(f1_text)};
            return ogl::cmd_integrate(integrate_spec.load(), iopt, config, std::cout);
        }
        if (*profile) {
            popt.json = format == "json";
            ogl::CoeffExpr f;
            if (!expr_text.empty()) {
                f = ogl::parse_expression(expr_text);
            } else {
                auto spec = profile_spec.load();
                if (field == "H" && !spec.H) throw ogl::SpecError("field H requested but the equation is homogeneous");
                f = field == "A" ? spec.A : field == "B" ? spec.B : *spec.H;
            }
            return ogl::cmd_profile(f, popt, std::cout);
        }
        if (*examples) return ogl::cmd_examples(filter, list_only, json, config, std::cout);
        if (*report) return ogl::cmd_report(report_spec.load(), out_dir, report_format, std::cout);
    } catch (const ogl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ogl::kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ogl::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ogl::kExitRuntime;
    }
    return ogl::kExitRuntime;
}
