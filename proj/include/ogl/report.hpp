#pragma once

// Spec files, integrator config files, JSON reports and CSV tables.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ogl/catalog.hpp"
#include "ogl/classifier.hpp"
#include "ogl/growth.hpp"
#include "ogl/indicator.hpp"
#include "ogl/integrator.hpp"
#include "ogl/parser.hpp"

namespace ogl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ode-growth-lab/1";
inline constexpr const char* kConfigEnvVar = "OGL_CONFIG";

/// Malformed spec, config or report document; `path` locates the field.
class SchemaError : public SpecError {
public:
    SchemaError(const std::string& path, const std::string& what)
        : SpecError(path.empty() ? what : path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// ---------------------------------------------------------------------------
// Spec documents

namespace detail {

inline const Json& require_field(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path, std::string(key) + " required");
    return *it;
}

inline std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

inline CoeffExpr parse_field(const Json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, "expected an expression string");
    try {
        return parse_expression(v.get<std::string>());
    } catch (const ParseError& e) {
        throw SchemaError(path, e.what());
    }
}

inline bool get_bool(const Json& v, const std::string& path) {
    if (!v.is_boolean()) throw SchemaError(path, "expected a boolean");
    return v.get<bool>();
}

inline double get_number(const Json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

inline void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* a : allowed) known = known || it.key() == a;
        if (!known) throw SchemaError(join_path(path, it.key()), "unknown field");
    }
}

}  // namespace detail

inline EquationSpec spec_from_json(const Json& doc) {
    using namespace detail;
    if (!doc.is_object()) throw SchemaError("", "spec must be an object");
    reject_unknown(doc, {"name", "A", "B", "H", "declared"}, "");
    EquationSpec s;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw SchemaError("name", "expected a string");
        s.name = it->get<std::string>();
    }
    s.A = parse_field(require_field(doc, "A", ""), "A");
    s.B = parse_field(require_field(doc, "B", ""), "B");
    if (auto it = doc.find("H"); it != doc.end() && !it->is_null()) s.H = parse_field(*it, "H");
    if (auto it = doc.find("declared"); it != doc.end()) {
        const Json& d = *it;
        if (!d.is_object()) throw SchemaError("declared", "expected an object");
        reject_unknown(d,
                       {"fabry_gaps", "multiply_connected_fatou", "lambda_lt_rho",
                        "h_bounded_away_on_Eplus_blows_up_on_Eminus", "mu_B", "rho_A", "rho_B", "rho_H",
                        "transcendental_A", "transcendental_B", "notes"},
                       "declared");
        auto& p = s.declared;
        auto flag = [&](const char* key, bool& out) {
            if (auto f = d.find(key); f != d.end()) out = get_bool(*f, join_path("declared", key));
        };
        auto num = [&](const char* key, std::optional<double>& out) {
            if (auto f = d.find(key); f != d.end() && !f->is_null()) out = get_number(*f, join_path("declared", key));
        };
        auto tri = [&](const char* key, std::optional<bool>& out) {
            if (auto f = d.find(key); f != d.end() && !f->is_null()) out = get_bool(*f, join_path("declared", key));
        };
        flag("fabry_gaps", p.fabry_gaps);
        flag("multiply_connected_fatou", p.multiply_connected_fatou);
        flag("lambda_lt_rho", p.lambda_lt_rho);
        flag("h_bounded_away_on_Eplus_blows_up_on_Eminus", p.h_bounded_away_on_Eplus_blows_up_on_Eminus);
        num("mu_B", p.mu_B);
        num("rho_A", p.rho_A);
        num("rho_B", p.rho_B);
        num("rho_H", p.rho_H);
        tri("transcendental_A", p.transcendental_A);
        tri("transcendental_B", p.transcendental_B);
        if (auto f = d.find("notes"); f != d.end()) {
            if (!f->is_string()) throw SchemaError("declared.notes", "expected a string");
            p.notes = f->get<std::string>();
        }
    }
    validate(s);
    return s;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", "'" + path + "' is not valid JSON: " + e.what());
    }
}

inline EquationSpec load_spec(const std::string& path) { return spec_from_json(read_json_file(path)); }

inline Json to_json(const EquationSpec& s) {
    Json d = Json::object();
    const auto& p = s.declared;
    d["fabry_gaps"] = p.fabry_gaps;
    d["multiply_connected_fatou"] = p.multiply_connected_fatou;
    d["lambda_lt_rho"] = p.lambda_lt_rho;
    d["h_bounded_away_on_Eplus_blows_up_on_Eminus"] = p.h_bounded_away_on_Eplus_blows_up_on_Eminus;
    if (p.mu_B) d["mu_B"] = *p.mu_B;
    if (p.rho_A) d["rho_A"] = *p.rho_A;
    if (p.rho_B) d["rho_B"] = *p.rho_B;
    if (p.rho_H) d["rho_H"] = *p.rho_H;
    if (p.transcendental_A) d["transcendental_A"] = *p.transcendental_A;
    if (p.transcendental_B) d["transcendental_B"] = *p.transcendental_B;
    if (!p.notes.empty()) d["notes"] = p.notes;
    Json j = Json::object();
    j["name"] = s.name;
    j["A"] = to_string(s.A);
    j["B"] = to_string(s.B);
    if (s.H) j["H"] = to_string(*s.H);
    j["declared"] = d;
    return j;
}

// ---------------------------------------------------------------------------
// Integrator config

inline IntegratorConfig config_from_json(const Json& j) {
    using namespace detail;
    if (!j.is_object()) throw SchemaError("", "config must be an object");
    reject_unknown(j, {"rel_tol", "abs_floor", "max_step", "rescale_threshold", "initial_step", "min_step", "max_steps"},
                   "");
    IntegratorConfig c;
    auto num = [&](const char* key, double& out) {
        if (auto f = j.find(key); f != j.end()) out = get_number(*f, key);
    };
    num("rel_tol", c.rel_tol);
    num("abs_floor", c.abs_floor);
    num("max_step", c.max_step);
    num("rescale_threshold", c.rescale_threshold);
    num("initial_step", c.initial_step);
    num("min_step", c.min_step);
    if (auto f = j.find("max_steps"); f != j.end()) {
        if (!f->is_number_unsigned()) throw SchemaError("max_steps", "expected a nonnegative integer");
        c.max_steps = f->get<std::size_t>();
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError("", e.what());
    }
    return c;
}

/// Config from `path`, else from the file named by OGL_CONFIG, else defaults.
inline IntegratorConfig load_config(const std::optional<std::string>& path) {
    if (path) return config_from_json(read_json_file(*path));
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) return config_from_json(read_json_file(env));
    return {};
}

// ---------------------------------------------------------------------------
// Report pieces

inline Json to_json(const Verdict& v) {
    Json j = Json::object();
    j["rule"] = v.rule ? Json(to_string(*v.rule)) : Json(nullptr);
    j["conclusion"] = to_string(v.conclusion);
    j["hyper_order"] = v.hyper_order ? Json(*v.hyper_order) : Json(nullptr);
    Json hs = Json::array();
    for (const auto& h : v.hypotheses_checked)
        hs.push_back({{"name", h.name},
                      {"value", h.value},
                      {"satisfied", h.satisfied},
                      {"source", h.source == HypothesisSource::declared ? "declared" : "computed"}});
    j["hypotheses_checked"] = hs;
    j["citation"] = v.citation;
    return j;
}

inline Json to_json(const SectorDecomposition& d) {
    Json sectors = Json::array();
    for (const auto& s : d.sectors)
        sectors.push_back({{"theta_low", s.theta_low}, {"theta_high", s.theta_high}, {"sign", to_string(s.sign)}});
    return {{"rays", d.rays}, {"sectors", sectors}};
}

/// Indicator geometry of A = h e^P and critical rays of B when it is a
/// nonconstant polynomial.
inline Json geometry_json(const EquationSpec& s) {
    Json g = Json::object();
    auto fac = factor_exp(s.A);
    if (fac && fac->P.degree() >= 1) {
        Json a = to_json(critical_rays_exp(fac->P));
        a["h"] = to_string(fac->h);
        a["P"] = format_polynomial(fac->P);
        g["A_exponential"] = a;
    } else {
        g["A_exponential"] = nullptr;
    }
    auto bp = as_polynomial(s.B);
    g["B_critical_rays"] = bp && bp->degree() >= 1 ? Json(critical_rays_poly(*bp)) : Json(nullptr);
    return g;
}

inline Json to_json(const GrowthProfile& p) {
    Json rows = Json::array();
    for (const auto& e : p.entries)
        rows.push_back({{"r", e.r},
                        {"log_max_modulus", e.log_max_modulus},
                        {"log_min_modulus", e.log_min_modulus ? Json(*e.log_min_modulus) : Json(nullptr)},
                        {"argmax_theta", e.argmax_theta}});
    return rows;
}

inline Json to_json(const OrderEstimate& o) {
    Json j = {{"kind", to_string(o.kind)},
              {"value", o.value},
              {"fit_residual", o.fit_residual},
              {"radii_used", {o.r_lo, o.r_hi}}};
    if (!o.note.empty()) j["note"] = o.note;
    return j;
}

inline Json to_json(const CheckResult& c) {
    Json j = {{"name", c.name},
              {"operation", c.operation},
              {"measured", c.measured},
              {"relation", to_string(c.relation)},
              {"reference", c.reference}};
    if (c.relation == Relation::within) j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

inline Json to_json(const ScenarioReport& r) {
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"id", r.id}, {"title", r.title}, {"citation", r.citation}, {"passed", r.passed},
            {"verdicts", verdicts}, {"checks", checks}};
}

// ---------------------------------------------------------------------------
// Analysis report

struct ProfileSummary {
    std::string function;  // "A", "B" or "H"
    GrowthProfile profile;
    std::optional<OrderEstimate> order;
    std::string order_error;
};

struct AnalysisReport {
    EquationSpec spec;
    std::vector<Verdict> verdicts;
    std::vector<ProfileSummary> profiles;
    std::optional<std::vector<ScenarioReport>> scenario_results;
};

/// Default radii for coefficient profiles: 24 geometric radii on [5, 500].
inline std::vector<double> default_profile_radii() { return geometric_radii(5.0, 500.0, 24); }

inline AnalysisReport analyze(const EquationSpec& spec) {
    AnalysisReport r{spec, classify(spec), {}, std::nullopt};
    auto add = [&](const char* name, const CoeffExpr& e) {
        ProfileSummary ps{name, max_modulus_profile(evaluator_of(e), default_profile_radii()), std::nullopt, {}};
        try {
            ps.order = order_estimate(ps.profile);
        } catch (const ProfileError& err) {
            ps.order_error = err.what();
        }
        r.profiles.push_back(std::move(ps));
    };
    add("A", spec.A);
    add("B", spec.B);
    if (spec.H) add("H", *spec.H);
    return r;
}

inline Json to_json(const AnalysisReport& r) {
    Json j = Json::object();
    j["schema"] = kReportSchema;
    j["spec"] = to_json(r.spec);
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    j["verdicts"] = verdicts;
    j["geometry"] = geometry_json(r.spec);
    Json profiles = Json::array(), orders = Json::array();
    for (const auto& p : r.profiles) {
        profiles.push_back({{"function", p.function}, {"entries", to_json(p.profile)}});
        Json o = p.order ? to_json(*p.order) : Json{{"kind", "order"}, {"error", p.order_error}};
        Json tagged = {{"function", p.function}};
        tagged.update(o);
        orders.push_back(tagged);
    }
    j["profiles"] = profiles;
    j["order_estimates"] = orders;
    if (r.scenario_results) {
        Json s = Json::array();
        for (const auto& sr : *r.scenario_results) s.push_back(to_json(sr));
        j["scenario_results"] = s;
    } else {
        j["scenario_results"] = nullptr;
    }
    return j;
}

/// Throws SchemaError unless `j` is a well-formed analysis report whose spec
/// section loads back into an EquationSpec.
inline void validate_report(const Json& j) {
    using namespace detail;
    if (!j.is_object()) throw SchemaError("", "report must be an object");
    const auto& schema = require_field(j, "schema", "");
    if (!schema.is_string() || schema.get<std::string>() != kReportSchema)
        throw SchemaError("schema", std::string("expected \"") + kReportSchema + "\"");
    spec_from_json(require_field(j, "spec", ""));
    const auto& verdicts = require_field(j, "verdicts", "");
    if (!verdicts.is_array() || verdicts.empty()) throw SchemaError("verdicts", "expected a nonempty array");
    for (std::size_t k = 0; k < verdicts.size(); ++k) {
        const auto path = "verdicts[" + std::to_string(k) + "]";
        const auto& v = verdicts[k];
        if (!v.is_object()) throw SchemaError(path, "expected an object");
        const auto& rule = require_field(v, "rule", path);
        if (!rule.is_null() && (!rule.is_string() || !rule_from_string(rule.get<std::string>())))
            throw SchemaError(path + ".rule", "unknown rule");
        if (!require_field(v, "conclusion", path).is_string()) throw SchemaError(path + ".conclusion", "expected a string");
        const auto& cit = require_field(v, "citation", path);
        if (!cit.is_string() || cit.get<std::string>().empty())
            throw SchemaError(path + ".citation", "every verdict carries a citation");
        if (!require_field(v, "hypotheses_checked", path).is_array())
            throw SchemaError(path + ".hypotheses_checked", "expected an array");
    }
    if (!require_field(j, "geometry", "").is_object()) throw SchemaError("geometry", "expected an object");
    const auto& profiles = require_field(j, "profiles", "");
    if (!profiles.is_array()) throw SchemaError("profiles", "expected an array");
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        const auto path = "profiles[" + std::to_string(k) + "]";
        const auto& entries = require_field(profiles[k], "entries", path);
        if (!entries.is_array()) throw SchemaError(path + ".entries", "expected an array");
        double prev = 0;
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const double r = get_number(require_field(entries[e], "r", path), path + ".entries.r");
            if (e > 0 && !(r > prev)) throw SchemaError(path + ".entries", "radii must be strictly increasing");
            prev = r;
        }
    }
    if (!require_field(j, "order_estimates", "").is_array()) throw SchemaError("order_estimates", "expected an array");
    require_field(j, "scenario_results", "");
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

}  // namespace detail

inline std::string samples_csv(const std::vector<RaySample>& samples) {
    std::ostringstream out;
    out << "t,log_abs_f,phase_f,log_abs_fprime,phase_fprime\n";
    for (const auto& s : samples)
        out << detail::csv_number(s.t) << ',' << detail::csv_number(s.log_abs_f) << ','
            << detail::csv_number(s.phase_f) << ',' << detail::csv_number(s.log_abs_fprime) << ','
            << detail::csv_number(s.phase_fprime) << '\n';
    return out.str();
}

inline std::string profile_csv(const GrowthProfile& p) {
    std::ostringstream out;
    out << "r,log_max,log_min,argmax_theta\n";
    for (const auto& e : p.entries)
        out << detail::csv_number(e.r) << ',' << detail::csv_number(e.log_max_modulus) << ','
            << (e.log_min_modulus ? detail::csv_number(*e.log_min_modulus) : "") << ','
            << detail::csv_number(e.argmax_theta) << '\n';
    return out.str();
}

inline std::string verdicts_csv(const std::vector<Verdict>& verdicts) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::ostringstream out;
    out << "rule,conclusion,hyper_order,citation\n";
    for (const auto& v : verdicts)
        out << (v.rule ? to_string(*v.rule) : "") << ',' << to_string(v.conclusion) << ','
            << (v.hyper_order ? detail::csv_number(*v.hyper_order) : "") << ',' << quote(v.citation) << '\n';
    return out.str();
}

inline std::string rays_csv(const EquationSpec& s) {
    std::ostringstream out;
    out << "kind,theta,sign_after\n";
    if (auto fac = factor_exp(s.A); fac && fac->P.degree() >= 1) {
        auto d = critical_rays_exp(fac->P);
        for (double r : d.rays) {
            auto it = std::find_if(d.sectors.begin(), d.sectors.end(), [&](const Sector& sec) { return sec.theta_low == r; });
            out << "A_exponential," << detail::csv_number(r) << ',' << (it != d.sectors.end() ? to_string(it->sign) : "")
                << '\n';
        }
    }
    if (auto bp = as_polynomial(s.B); bp && bp->degree() >= 1)
        for (double r : critical_rays_poly(*bp)) out << "B_polynomial," << detail::csv_number(r) << ",\n";
    return out.str();
}

/// Number of data rows in a CSV document (lines after the header).
inline std::size_t csv_row_count(const std::string& csv) {
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    return lines == 0 ? 0 : lines - 1;
}

}  // namespace ogl
