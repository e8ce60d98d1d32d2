#pragma once

// Command implementations behind the ogl executable. Each returns a process
// exit code: 0 success, 2 validation or hypothesis failure, 1 runtime error.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <string_view>

#include "ogl/catalog.hpp"
#include "ogl/liouville.hpp"
#include "ogl/report.hpp"

namespace ogl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/// Radians, or multiples of pi: "pi/4", "-3pi/2", "2*pi/3", "0.75".
inline double parse_angle(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto number = [&](std::string_view part) {
        double v = 0;
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || p != part.data() + part.size() || part.empty())
            throw std::invalid_argument("malformed angle '" + std::string(text) + "'");
        return v;
    };
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return number(s);
    std::string head = s.substr(0, pos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double coef = 1.0;
    if (head == "-")
        coef = -1.0;
    else if (head == "+" || head.empty())
        coef = 1.0;
    else
        coef = number(head[0] == '+' ? std::string_view(head).substr(1) : std::string_view(head));
    std::string tail = s.substr(pos + 2);
    double denom = 1.0;
    if (!tail.empty()) {
        if (tail[0] != '/') throw std::invalid_argument("malformed angle '" + std::string(text) + "'");
        denom = number(std::string_view(tail).substr(1));
        if (denom == 0.0) throw std::invalid_argument("angle denominator is zero");
    }
    return coef * std::numbers::pi / denom;
}

/// A complex constant written in the expression grammar, e.g. "1+2i".
inline Complex parse_complex_constant(std::string_view text) {
    auto p = as_polynomial(parse_expression(text));
    if (!p || p->degree() > 0) throw std::invalid_argument("'" + std::string(text) + "' is not a constant");
    return p->constant_term();
}

namespace detail {

inline void print_verdicts(std::ostream& out, const std::vector<Verdict>& verdicts) {
    for (const auto& v : verdicts) {
        out << (v.rule ? to_string(*v.rule) : "-") << ": " << to_string(v.conclusion);
        if (v.hyper_order) out << " (hyper-order " << format_double(*v.hyper_order) << ")";
        out << "\n  citation: " << v.citation << "\n";
        for (const auto& h : v.hypotheses_checked)
            out << "  [" << (h.satisfied ? "x" : " ") << "] " << h.name << ": " << h.value
                << (h.source == HypothesisSource::declared ? " (declared)" : "") << "\n";
    }
}

inline bool no_rule(const std::vector<Verdict>& v) {
    return v.size() == 1 && v.front().conclusion == Conclusion::NoRuleApplies;
}

}  // namespace detail

inline int cmd_classify(const EquationSpec& spec, std::ostream& out, bool json) {
    auto verdicts = classify(spec);
    if (json) {
        Json arr = Json::array();
        for (const auto& v : verdicts) arr.push_back(to_json(v));
        out << Json{{"schema", kReportSchema}, {"spec", to_json(spec)}, {"verdicts", arr}}.dump(2) << "\n";
    } else {
        out << "equation: f'' + (" << to_string(spec.A) << ") f' + (" << to_string(spec.B) << ") f = "
            << (spec.H ? to_string(*spec.H) : "0") << "\n";
        detail::print_verdicts(out, verdicts);
    }
    return detail::no_rule(verdicts) ? kExitValidation : kExitOk;
}

inline int cmd_rays(const EquationSpec& spec, std::ostream& out, bool json) {
    if (json) {
        out << geometry_json(spec).dump(2) << "\n";
        return kExitOk;
    }
    auto fac = factor_exp(spec.A);
    if (fac && fac->P.degree() >= 1) {
        auto d = critical_rays_exp(fac->P);
        out << "A = h e^P with P = " << format_polynomial(fac->P) << ": " << d.rays.size() << " critical rays\n";
        for (double r : d.rays) out << "  theta = " << std::setprecision(17) << r << "\n";
        for (const auto& s : d.sectors)
            out << "  (" << s.theta_low << ", " << s.theta_high << ") " << to_string(s.sign) << "\n";
    } else {
        out << "A has no h e^P form with nonconstant P\n";
    }
    if (auto bp = as_polynomial(spec.B); bp && bp->degree() >= 1) {
        auto rays = critical_rays_poly(*bp);
        out << "B polynomial of degree " << bp->degree() << ": " << rays.size() << " critical rays\n";
        for (double r : rays) out << "  theta = " << std::setprecision(17) << r << "\n";
    }
    return kExitOk;
}

struct IntegrateOptions {
    double theta = 0;
    double t0 = 0;
    double r_max = 1;
    bool transformed = false;
    std::array<Complex, 2> init{1.0, 0.0};
    /// Uniform output grid of this many points; 0 records every step.
    std::size_t samples = 0;
};

inline int cmd_integrate(const EquationSpec& spec, const IntegrateOptions& o, const IntegratorConfig& config,
                         std::ostream& out) {
    std::vector<double> stops;
    for (std::size_t k = 1; k <= o.samples; ++k) stops.push_back(o.t0 + (o.r_max - o.t0) * double(k) / double(o.samples));
    std::vector<RaySample> samples;
    if (o.transformed)
        samples = integrate_transformed(spec, o.theta, o.t0, o.r_max, o.init, config, stops).y;
    else
        samples = integrate_ray(spec, o.theta, o.t0, o.r_max, o.init, config, stops);
    out << samples_csv(samples);
    return kExitOk;
}

struct ProfileOptions {
    double r_min = 1;
    double r_max = 100;
    std::size_t radii = 24;
    std::size_t angular = 256;
    bool with_min = false;
    bool json = false;
};

inline int cmd_profile(const CoeffExpr& f, const ProfileOptions& o, std::ostream& out) {
    auto radii = geometric_radii(o.r_min, o.r_max, o.radii);
    auto ev = evaluator_of(f);
    auto prof = o.with_min ? min_modulus_profile(ev, radii, o.angular) : max_modulus_profile(ev, radii, o.angular);
    std::optional<OrderEstimate> est;
    std::string err;
    try {
        est = order_estimate(prof);
    } catch (const ProfileError& e) {
        err = e.what();
    }
    if (o.json) {
        Json j = {{"function", to_string(f)}, {"entries", to_json(prof)}};
        j["order_estimate"] = est ? to_json(*est) : Json{{"error", err}};
        out << j.dump(2) << "\n";
    } else {
        out << profile_csv(prof);
    }
    return kExitOk;
}

inline int cmd_examples(std::string_view filter, bool list_only, bool json, const IntegratorConfig& config,
                        std::ostream& out) {
    bool all_passed = true;
    Json arr = Json::array();
    std::size_t matched = 0;
    for (const auto& s : catalog()) {
        if (s.id.find(filter) == std::string::npos) continue;
        ++matched;
        if (list_only) {
            if (json)
                arr.push_back({{"id", s.id}, {"title", s.title}, {"citation", s.citation}});
            else
                out << s.id << "  " << s.title << "\n    " << s.citation << "\n";
            continue;
        }
        auto rep = run_scenario(s, config);
        all_passed = all_passed && rep.passed;
        if (json) {
            arr.push_back(to_json(rep));
            continue;
        }
        out << (rep.passed ? "PASS " : "FAIL ") << rep.id << "  " << rep.title << "\n";
        for (const auto& c : rep.checks) {
            out << "    " << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << std::setprecision(10) << c.measured
                << " " << to_string(c.relation) << " " << c.reference;
            if (c.relation == Relation::within) out << " +/- " << c.tolerance;
            if (!c.detail.empty()) out << " (" << c.detail << ")";
            out << "\n";
        }
    }
    if (json) out << arr.dump(2) << "\n";
    if (matched == 0) {
        out << "no scenario matches '" << filter << "'\n";
        return kExitValidation;
    }
    return all_passed ? kExitOk : kExitValidation;
}

inline int cmd_report(const EquationSpec& spec, const std::filesystem::path& dir, std::string_view format,
                      std::ostream& out) {
    if (format != "json" && format != "csv") throw SchemaError("format", "expected json or csv");
    std::filesystem::create_directories(dir);
    auto rep = analyze(spec);
    auto write = [&](const std::string& name, const std::string& text) {
        const auto path = dir / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
        f << text;
        out << "wrote " << path.string() << "\n";
    };
    if (format == "json") {
        const Json j = to_json(rep);
        validate_report(j);
        write("report.json", j.dump(2) + "\n");
    } else {
        write("verdicts.csv", verdicts_csv(rep.verdicts));
        write("rays.csv", rays_csv(spec));
        for (const auto& p : rep.profiles) write("profile_" + p.function + ".csv", profile_csv(p.profile));
    }
    return kExitOk;
}

}  // namespace ogl
