// Command-line front end over the ditraj C API. Scenario files are JSON with
// an explicit schema version; reports are emitted either as structured JSON
// or as comma-separated tables. Output is deterministic: identical inputs
// produce byte-identical bytes, with doubles printed at 17 significant
// digits.

#include <ditraj/ditraj.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_schema = 2;
constexpr int exit_infeasible = 3;
constexpr int exit_verification = 4;

// verification gates; mirrored in the README and the verify output itself
constexpr double k_gate_energy_abs = 1e-3;
constexpr double k_gate_energy_rel = 5e-3;
constexpr double k_gate_violation = 1e-6;
constexpr double k_gate_junction = 1e-9;
constexpr double k_gate_position_rel = 1e-6;
constexpr double k_gate_search_undershoot = 1e-6;

struct cli_error {
    int code;
    std::string message;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Minimal JSON emitter with insertion-ordered fields and stable layout.
class json_writer {
  public:
    void object_begin(const char* key = nullptr) {
        prefix(key);
        buf_ += '{';
        first_.push_back(true);
    }
    void object_end() { close('}'); }
    void array_begin(const char* key = nullptr) {
        prefix(key);
        buf_ += '[';
        first_.push_back(true);
    }
    void array_end() { close(']'); }
    void number(const char* key, double value) {
        prefix(key);
        buf_ += fmt(value);
    }
    void integer(const char* key, long long value) {
        prefix(key);
        buf_ += std::to_string(value);
    }
    void boolean(const char* key, bool value) {
        prefix(key);
        buf_ += value ? "true" : "false";
    }
    void null(const char* key) {
        prefix(key);
        buf_ += "null";
    }
    void text(const char* key, const std::string& value) {
        prefix(key);
        quote(value);
    }
    std::string take() {
        buf_ += '\n';
        return std::move(buf_);
    }

  private:
    void prefix(const char* key) {
        if (!first_.empty()) {
            if (!first_.back()) buf_ += ',';
            first_.back() = false;
            newline(first_.size());
        }
        if (key) {
            quote(key);
            buf_ += ": ";
        }
    }
    void close(char bracket) {
        const bool empty = first_.back();
        first_.pop_back();
        if (!empty) newline(first_.size());
        buf_ += bracket;
    }
    void newline(std::size_t depth) {
        buf_ += '\n';
        buf_.append(2 * depth, ' ');
    }
    void quote(const std::string& s) {
        buf_ += '"';
        for (const char c : s) {
            if (c == '"' || c == '\\') {
                buf_ += '\\';
                buf_ += c;
            } else if (static_cast<unsigned char>(c) < 0x20) {
                char esc[8];
                std::snprintf(esc, sizeof esc, "\\u%04x", c);
                buf_ += esc;
            } else {
                buf_ += c;
            }
        }
        buf_ += '"';
    }
    std::string buf_;
    std::vector<bool> first_;
};

void number_or_null(json_writer& w, const char* key, double value) {
    if (std::isnan(value)) {
        w.null(key);
    } else {
        w.number(key, value);
    }
}

struct scenario_input {
    std::string name;
    ditraj_scenario_spec spec;
};

using scenario_ptr = std::unique_ptr<ditraj_scenario, void (*)(ditraj_scenario*)>;
using plan_ptr = std::unique_ptr<ditraj_plan, void (*)(ditraj_plan*)>;

int line_of_byte(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

double need_number(const nlohmann::json& obj, const char* key,
                   const std::string& where) {
    if (!obj.contains(key)) {
        throw cli_error{exit_schema,
                        "schema error: " + where + ": missing field '" + key + "'"};
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw cli_error{exit_schema, "schema error: " + where + ": field '" + key +
                                         "' must be a number"};
    }
    return v.get<double>();
}

double optional_number(const nlohmann::json& obj, const char* key,
                       double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) {
        throw cli_error{exit_schema, "schema error: " + where + ": field '" + key +
                                         "' must be a number"};
    }
    return obj.at(key).get<double>();
}

std::vector<scenario_input> load_scenarios(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw cli_error{exit_schema,
                        "schema error: cannot read input file '" + path + "'"};
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw cli_error{exit_schema,
                        "schema error: " + path + ":" +
                            std::to_string(line_of_byte(text, e.byte)) + ": " +
                            e.what()};
    }

    if (!doc.is_object()) {
        throw cli_error{exit_schema,
                        "schema error: " + path + ": top level must be an object"};
    }
    if (!doc.contains("schema_version") ||
        !doc["schema_version"].is_number_integer() ||
        doc["schema_version"].get<long long>() != 1) {
        throw cli_error{exit_schema,
                        "schema error: " + path + ": schema_version must be 1"};
    }
    if (!doc.contains("scenarios") || !doc["scenarios"].is_array()) {
        throw cli_error{exit_schema, "schema error: " + path +
                                         ": missing 'scenarios' array"};
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "schema_version" && key != "scenarios") {
            throw cli_error{exit_schema, "schema error: " + path +
                                             ": unknown top-level field '" + key +
                                             "'"};
        }
    }

    static const std::vector<std::string> known = {
        "name", "t0", "p0", "v0", "T", "pT", "u_min", "u_max", "v_min", "v_max"};

    std::vector<scenario_input> out;
    std::size_t idx = 0;
    for (const auto& item : doc["scenarios"]) {
        std::string where = path + ": scenario " + std::to_string(idx);
        if (!item.is_object()) {
            throw cli_error{exit_schema,
                            "schema error: " + where + ": must be an object"};
        }
        scenario_input si{};
        if (item.contains("name")) {
            if (!item["name"].is_string()) {
                throw cli_error{exit_schema, "schema error: " + where +
                                                 ": field 'name' must be a string"};
            }
            si.name = item["name"].get<std::string>();
        } else {
            si.name = "scenario-" + std::to_string(idx);
        }
        where = path + ": scenario '" + si.name + "'";
        for (const auto& [key, value] : item.items()) {
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                throw cli_error{exit_schema, "schema error: " + where +
                                                 ": unknown field '" + key + "'"};
            }
        }
        si.spec.t0 = optional_number(item, "t0", 0.0, where);
        si.spec.p0 = optional_number(item, "p0", 0.0, where);
        si.spec.v0 = need_number(item, "v0", where);
        si.spec.terminal_time = need_number(item, "T", where);
        si.spec.terminal_position = need_number(item, "pT", where);
        si.spec.u_min = need_number(item, "u_min", where);
        si.spec.u_max = need_number(item, "u_max", where);
        si.spec.v_min = need_number(item, "v_min", where);
        si.spec.v_max = need_number(item, "v_max", where);
        out.push_back(std::move(si));
        ++idx;
    }
    return out;
}

scenario_ptr make_scenario_handle(const scenario_input& si) {
    ditraj_scenario* raw = nullptr;
    const ditraj_status st = ditraj_scenario_create(&si.spec, &raw);
    if (st != DITRAJ_OK) {
        throw cli_error{exit_schema, "invalid scenario '" + si.name +
                                         "': " + ditraj_status_name(st)};
    }
    return scenario_ptr(raw, ditraj_scenario_destroy);
}

std::string infeasible_message(const ditraj_scenario* sc, const std::string& name) {
    ditraj_classification c{};
    ditraj_scenario_classify(sc, &c);
    return "scenario '" + name +
           "' is infeasible: the canonical target distance must lie in [" +
           fmt(c.min_distance) + ", " + fmt(c.max_distance) +
           "]; the largest reachable distance is " + fmt(c.max_distance);
}

plan_ptr make_plan_handle(const ditraj_scenario* sc, const std::string& name) {
    ditraj_plan* raw = nullptr;
    const ditraj_status st = ditraj_scenario_plan(sc, &raw);
    if (st == DITRAJ_ERR_INFEASIBLE) {
        throw cli_error{exit_infeasible, infeasible_message(sc, name)};
    }
    if (st != DITRAJ_OK) {
        throw cli_error{exit_schema, "planning failed for scenario '" + name +
                                         "': " + ditraj_status_name(st)};
    }
    return plan_ptr(raw, ditraj_plan_destroy);
}

struct options {
    std::string input;
    std::string output;
    std::string format = "structured";
    std::size_t samples = 100;
    std::size_t qp_grid = 2000;
    std::size_t search_grid = 2000;
    double tolerance = 1e-6;
    double debug_perturb = 0.0;
};

void write_output(const options& opt, const std::string& payload) {
    if (opt.output.empty()) {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
        throw cli_error{exit_schema,
                        "cannot write output file '" + opt.output + "'"};
    }
    out << payload;
}

void emit_classification_fields(json_writer& w, const ditraj_classification& c) {
    w.boolean("feasible", c.feasible != 0);
    w.boolean("mirrored", c.mirrored != 0);
    if (c.feasible) {
        w.text("profile", ditraj_profile_name(c.profile));
    } else {
        w.null("profile");
    }
    number_or_null(w, "state_threshold", c.state_threshold);
    number_or_null(w, "control_threshold", c.control_threshold);
    w.number("min_distance", c.min_distance);
    w.number("max_distance", c.max_distance);
}

std::string csv_or_empty(bool present, double value) {
    return present ? fmt(value) : std::string();
}

ditraj_classification classify_or_throw(const ditraj_scenario* sc,
                                        const std::string& name) {
    ditraj_classification c{};
    const ditraj_status st = ditraj_scenario_classify(sc, &c);
    if (st != DITRAJ_OK && st != DITRAJ_ERR_INFEASIBLE) {
        throw cli_error{exit_schema, "classification failed for scenario '" +
                                         name + "': " + ditraj_status_name(st)};
    }
    return c;
}

int cmd_classify(const options& opt) {
    const auto scenarios = load_scenarios(opt.input);
    std::optional<std::string> first_infeasible;
    std::string payload;

    if (opt.format == "structured") {
        json_writer w;
        w.object_begin();
        w.integer("schema_version", 1);
        w.text("command", "classify");
        w.array_begin("results");
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const ditraj_classification c = classify_or_throw(sc.get(), si.name);
            w.object_begin();
            w.text("name", si.name);
            emit_classification_fields(w, c);
            w.object_end();
            if (!c.feasible && !first_infeasible) {
                first_infeasible = infeasible_message(sc.get(), si.name);
            }
        }
        w.array_end();
        w.object_end();
        payload = w.take();
    } else {
        std::string t =
            "name,feasible,mirrored,profile,state_threshold,control_threshold,"
            "min_distance,max_distance\n";
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const ditraj_classification c = classify_or_throw(sc.get(), si.name);
            t += si.name;
            t += c.feasible ? ",true" : ",false";
            t += c.mirrored ? ",true" : ",false";
            t += ',';
            if (c.feasible) t += ditraj_profile_name(c.profile);
            t += ',' + csv_or_empty(!std::isnan(c.state_threshold), c.state_threshold);
            t += ',' +
                 csv_or_empty(!std::isnan(c.control_threshold), c.control_threshold);
            t += ',' + fmt(c.min_distance) + ',' + fmt(c.max_distance) + '\n';
            if (!c.feasible && !first_infeasible) {
                first_infeasible = infeasible_message(sc.get(), si.name);
            }
        }
        payload = t;
    }

    write_output(opt, payload);
    if (first_infeasible) {
        std::fprintf(stderr, "%s\n", first_infeasible->c_str());
        return exit_infeasible;
    }
    return exit_ok;
}

void emit_plan_fields(json_writer& w, const ditraj_plan* plan) {
    w.text("profile", ditraj_profile_name(ditraj_plan_profile(plan)));
    w.boolean("mirrored", ditraj_plan_mirrored(plan) != 0);
    int has_tau_c = 0, has_tau_s = 0;
    double tau_c = 0.0, tau_s = 0.0;
    ditraj_plan_junctions(plan, &has_tau_c, &tau_c, &has_tau_s, &tau_s);
    if (has_tau_c) {
        w.number("tau_c", tau_c);
    } else {
        w.null("tau_c");
    }
    if (has_tau_s) {
        w.number("tau_s", tau_s);
    } else {
        w.null("tau_s");
    }
    w.number("energy", ditraj_plan_energy(plan));
    w.array_begin("arcs");
    for (std::size_t k = 0; k < ditraj_plan_arc_count(plan); ++k) {
        ditraj_arc a{};
        ditraj_plan_arc(plan, k, &a);
        w.object_begin();
        w.text("kind", ditraj_arc_kind_name(a.kind));
        w.number("t_start", a.t_start);
        w.number("t_end", a.t_end);
        w.number("slope", a.slope);
        w.number("intercept", a.intercept);
        w.number("v_entry", a.v_entry);
        w.number("p_entry", a.p_entry);
        w.object_end();
    }
    w.array_end();
}

void append_plan_rows(std::string& t, const std::string& name,
                      const ditraj_plan* plan) {
    int has_tau_c = 0, has_tau_s = 0;
    double tau_c = 0.0, tau_s = 0.0;
    ditraj_plan_junctions(plan, &has_tau_c, &tau_c, &has_tau_s, &tau_s);
    const std::string common =
        name + ',' + ditraj_profile_name(ditraj_plan_profile(plan)) + ',' +
        fmt(ditraj_plan_energy(plan)) + ',' + csv_or_empty(has_tau_c != 0, tau_c) +
        ',' + csv_or_empty(has_tau_s != 0, tau_s);
    for (std::size_t k = 0; k < ditraj_plan_arc_count(plan); ++k) {
        ditraj_arc a{};
        ditraj_plan_arc(plan, k, &a);
        t += common + ',' + std::to_string(k) + ',' + ditraj_arc_kind_name(a.kind) +
             ',' + fmt(a.t_start) + ',' + fmt(a.t_end) + ',' + fmt(a.slope) + ',' +
             fmt(a.intercept) + ',' + fmt(a.v_entry) + ',' + fmt(a.p_entry) + '\n';
    }
}

int cmd_plan(const options& opt) {
    const auto scenarios = load_scenarios(opt.input);
    std::string payload;
    if (opt.format == "structured") {
        json_writer w;
        w.object_begin();
        w.integer("schema_version", 1);
        w.text("command", "plan");
        w.array_begin("results");
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const plan_ptr plan = make_plan_handle(sc.get(), si.name);
            w.object_begin();
            w.text("name", si.name);
            emit_plan_fields(w, plan.get());
            w.object_end();
        }
        w.array_end();
        w.object_end();
        payload = w.take();
    } else {
        payload =
            "name,profile,energy,tau_c,tau_s,arc,kind,t_start,t_end,slope,"
            "intercept,v_entry,p_entry\n";
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const plan_ptr plan = make_plan_handle(sc.get(), si.name);
            append_plan_rows(payload, si.name, plan.get());
        }
    }
    write_output(opt, payload);
    return exit_ok;
}

std::vector<ditraj_state> sample_plan(const ditraj_plan* plan, std::size_t n,
                                      const std::string& name) {
    std::size_t count = 0;
    ditraj_status st = ditraj_plan_sample_count(plan, n, &count);
    if (st != DITRAJ_OK) {
        throw cli_error{exit_schema, "sampling failed for scenario '" + name +
                                         "': " + ditraj_status_name(st)};
    }
    std::vector<ditraj_state> rows(count);
    std::size_t written = 0;
    st = ditraj_plan_sample(plan, n, rows.data(), rows.size(), &written);
    if (st != DITRAJ_OK || written != count) {
        throw cli_error{exit_schema, "sampling failed for scenario '" + name +
                                         "': " + ditraj_status_name(st)};
    }
    return rows;
}

int cmd_sample(const options& opt) {
    const auto scenarios = load_scenarios(opt.input);
    std::string payload;
    if (opt.format == "structured") {
        json_writer w;
        w.object_begin();
        w.integer("schema_version", 1);
        w.text("command", "sample");
        w.array_begin("results");
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const plan_ptr plan = make_plan_handle(sc.get(), si.name);
            const auto rows = sample_plan(plan.get(), opt.samples, si.name);
            w.object_begin();
            w.text("name", si.name);
            w.array_begin("samples");
            for (const ditraj_state& s : rows) {
                w.object_begin();
                w.number("t", s.t);
                w.number("u", s.u);
                w.number("v", s.v);
                w.number("p", s.p);
                w.object_end();
            }
            w.array_end();
            w.object_end();
        }
        w.array_end();
        w.object_end();
        payload = w.take();
    } else {
        bool first = true;
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const plan_ptr plan = make_plan_handle(sc.get(), si.name);
            const auto rows = sample_plan(plan.get(), opt.samples, si.name);
            if (!first) payload += '\n';
            first = false;
            payload += "# " + si.name + "\nt,u,v,p\n";
            for (const ditraj_state& s : rows) {
                payload += fmt(s.t) + ',' + fmt(s.u) + ',' + fmt(s.v) + ',' +
                           fmt(s.p) + '\n';
            }
        }
    }
    write_output(opt, payload);
    return exit_ok;
}

struct verify_row {
    std::string name;
    ditraj_verification v{};
    bool pass = false;
};

bool verification_passes(const ditraj_verification& v, double span) {
    if (v.qp_status != DITRAJ_QP_OPTIMAL) return false;
    const double energy_gate =
        std::max(k_gate_energy_abs, k_gate_energy_rel * std::abs(v.plan_energy));
    if (std::abs(v.qp_energy_gap) > energy_gate) return false;
    if (v.diagnostics.max_control_violation > k_gate_violation) return false;
    if (v.diagnostics.max_speed_violation > k_gate_violation) return false;
    if (v.diagnostics.junction_discontinuity > k_gate_junction) return false;
    if (v.diagnostics.terminal_position_error >
        k_gate_position_rel * std::max(1.0, std::abs(span))) {
        return false;
    }
    if (v.search_found &&
        v.search_energy - v.plan_energy < -k_gate_search_undershoot) {
        return false;
    }
    return true;
}

int cmd_verify(const options& opt) {
    const auto scenarios = load_scenarios(opt.input);
    std::vector<verify_row> rows;
    for (const auto& si : scenarios) {
        const scenario_ptr sc = make_scenario_handle(si);
        const plan_ptr plan = make_plan_handle(sc.get(), si.name);
        if (opt.debug_perturb != 0.0) {
            ditraj_plan_perturb(plan.get(), opt.debug_perturb);
        }
        verify_row row;
        row.name = si.name;
        const ditraj_status st =
            ditraj_plan_verify(plan.get(), opt.qp_grid, opt.search_grid,
                               opt.tolerance, &row.v);
        if (st != DITRAJ_OK) {
            throw cli_error{exit_schema, "verification failed for scenario '" +
                                             si.name +
                                             "': " + ditraj_status_name(st)};
        }
        row.pass = verification_passes(
            row.v, si.spec.terminal_position - si.spec.p0);
        rows.push_back(row);
    }

    bool all_passed = true;
    for (const verify_row& r : rows) all_passed = all_passed && r.pass;

    std::string payload;
    if (opt.format == "structured") {
        json_writer w;
        w.object_begin();
        w.integer("schema_version", 1);
        w.text("command", "verify");
        w.object_begin("tolerances");
        w.number("energy_gap_abs", k_gate_energy_abs);
        w.number("energy_gap_rel", k_gate_energy_rel);
        w.number("constraint_violation", k_gate_violation);
        w.number("junction_discontinuity", k_gate_junction);
        w.number("terminal_position_rel", k_gate_position_rel);
        w.number("search_undershoot", k_gate_search_undershoot);
        w.object_end();
        w.boolean("all_passed", all_passed);
        w.array_begin("results");
        for (const verify_row& r : rows) {
            w.object_begin();
            w.text("name", r.name);
            w.boolean("pass", r.pass);
            w.number("plan_energy", r.v.plan_energy);
            w.object_begin("qp");
            w.text("status", ditraj_qp_status_name(r.v.qp_status));
            w.number("energy", r.v.qp_energy);
            w.number("energy_gap", r.v.qp_energy_gap);
            w.number("max_control_gap", r.v.qp_max_control_gap);
            w.number("max_state_gap", r.v.qp_max_state_gap);
            w.object_end();
            w.object_begin("search");
            w.boolean("found", r.v.search_found != 0);
            if (r.v.search_found) {
                w.text("profile", ditraj_profile_name(r.v.search_profile));
                if (r.v.search_has_tau_c) {
                    w.number("tau_c", r.v.search_tau_c);
                } else {
                    w.null("tau_c");
                }
                if (r.v.search_has_tau_s) {
                    w.number("tau_s", r.v.search_tau_s);
                } else {
                    w.null("tau_s");
                }
                w.number("energy", r.v.search_energy);
                w.number("energy_gap", r.v.search_energy - r.v.plan_energy);
            }
            w.object_end();
            w.object_begin("diagnostics");
            w.number("max_control_violation", r.v.diagnostics.max_control_violation);
            w.number("max_speed_violation", r.v.diagnostics.max_speed_violation);
            w.number("terminal_position_error",
                     r.v.diagnostics.terminal_position_error);
            w.number("junction_discontinuity",
                     r.v.diagnostics.junction_discontinuity);
            w.number("terminal_control", r.v.diagnostics.terminal_control);
            w.object_end();
            w.object_end();
        }
        w.array_end();
        w.object_end();
        payload = w.take();
    } else {
        payload =
            "name,pass,plan_energy,qp_status,qp_energy,qp_energy_gap,"
            "qp_max_control_gap,qp_max_state_gap,search_found,search_profile,"
            "search_tau_c,search_tau_s,search_energy,max_control_violation,"
            "max_speed_violation,terminal_position_error,junction_discontinuity\n";
        for (const verify_row& r : rows) {
            payload += r.name;
            payload += r.pass ? ",true" : ",false";
            payload += ',' + fmt(r.v.plan_energy) + ',' +
                       ditraj_qp_status_name(r.v.qp_status) + ',' +
                       fmt(r.v.qp_energy) + ',' + fmt(r.v.qp_energy_gap) + ',' +
                       fmt(r.v.qp_max_control_gap) + ',' +
                       fmt(r.v.qp_max_state_gap);
            payload += r.v.search_found ? ",true," : ",false,";
            if (r.v.search_found) payload += ditraj_profile_name(r.v.search_profile);
            payload +=
                ',' + csv_or_empty(r.v.search_found && r.v.search_has_tau_c,
                                   r.v.search_tau_c) +
                ',' +
                csv_or_empty(r.v.search_found && r.v.search_has_tau_s,
                             r.v.search_tau_s) +
                ',' + csv_or_empty(r.v.search_found != 0, r.v.search_energy) + ',' +
                fmt(r.v.diagnostics.max_control_violation) + ',' +
                fmt(r.v.diagnostics.max_speed_violation) + ',' +
                fmt(r.v.diagnostics.terminal_position_error) + ',' +
                fmt(r.v.diagnostics.junction_discontinuity) + '\n';
        }
    }
    write_output(opt, payload);
    return all_passed ? exit_ok : exit_verification;
}

int cmd_batch(const options& opt) {
    const auto scenarios = load_scenarios(opt.input);
    std::optional<std::string> first_infeasible;
    std::string payload;

    if (opt.format == "structured") {
        json_writer w;
        w.object_begin();
        w.integer("schema_version", 1);
        w.text("command", "batch");
        w.array_begin("results");
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const ditraj_classification c = classify_or_throw(sc.get(), si.name);
            w.object_begin();
            w.text("name", si.name);
            emit_classification_fields(w, c);
            if (c.feasible) {
                const plan_ptr plan = make_plan_handle(sc.get(), si.name);
                w.object_begin("plan");
                emit_plan_fields(w, plan.get());
                w.object_end();
            } else {
                w.null("plan");
                if (!first_infeasible) {
                    first_infeasible = infeasible_message(sc.get(), si.name);
                }
            }
            w.object_end();
        }
        w.array_end();
        w.object_end();
        payload = w.take();
    } else {
        payload =
            "name,feasible,mirrored,profile,energy,tau_c,tau_s,arc,kind,t_start,"
            "t_end,slope,intercept,v_entry,p_entry\n";
        for (const auto& si : scenarios) {
            const scenario_ptr sc = make_scenario_handle(si);
            const ditraj_classification c = classify_or_throw(sc.get(), si.name);
            if (c.feasible) {
                const plan_ptr plan = make_plan_handle(sc.get(), si.name);
                int has_tau_c = 0, has_tau_s = 0;
                double tau_c = 0.0, tau_s = 0.0;
                ditraj_plan_junctions(plan.get(), &has_tau_c, &tau_c, &has_tau_s,
                                      &tau_s);
                const std::string common =
                    si.name + ",true," +
                    (ditraj_plan_mirrored(plan.get()) ? "true," : "false,") +
                    ditraj_profile_name(ditraj_plan_profile(plan.get())) + ',' +
                    fmt(ditraj_plan_energy(plan.get())) + ',' +
                    csv_or_empty(has_tau_c != 0, tau_c) + ',' +
                    csv_or_empty(has_tau_s != 0, tau_s);
                for (std::size_t k = 0; k < ditraj_plan_arc_count(plan.get());
                     ++k) {
                    ditraj_arc a{};
                    ditraj_plan_arc(plan.get(), k, &a);
                    payload += common + ',' + std::to_string(k) + ',' +
                               ditraj_arc_kind_name(a.kind) + ',' +
                               fmt(a.t_start) + ',' + fmt(a.t_end) + ',' +
                               fmt(a.slope) + ',' + fmt(a.intercept) + ',' +
                               fmt(a.v_entry) + ',' + fmt(a.p_entry) + '\n';
                }
            } else {
                payload += si.name + ",false," + (c.mirrored ? "true" : "false") +
                           ",,,,,,,,,,,,\n";
                if (!first_infeasible) {
                    first_infeasible = infeasible_message(sc.get(), si.name);
                }
            }
        }
    }

    write_output(opt, payload);
    if (first_infeasible) {
        std::fprintf(stderr, "%s\n", first_infeasible->c_str());
        return exit_infeasible;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ditraj: exact energy-optimal double-integrator trajectories under "
        "speed and acceleration limits"};
    app.require_subcommand(1);

    options opt;
    const auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input", opt.input, "scenario file (JSON)")->required();
        cmd->add_option("--output", opt.output,
                        "output path (default: standard output)");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"structured", "tabular"}))
            ->capture_default_str();
    };

    CLI::App* classify =
        app.add_subcommand("classify", "report the active-constraint profile, "
                                       "thresholds and feasibility per scenario");
    add_io(classify);

    CLI::App* plan = app.add_subcommand(
        "plan", "compute the optimal arcs, switching times and energy");
    add_io(plan);

    CLI::App* sample = app.add_subcommand(
        "sample", "tabulate t,u,v,p along each plan, junctions included");
    add_io(sample);
    sample->add_option("--samples", opt.samples, "uniform sample count")
        ->check(CLI::Range(static_cast<std::size_t>(2),
                           static_cast<std::size_t>(10000000)))
        ->capture_default_str();

    CLI::App* verify = app.add_subcommand(
        "verify", "cross-check each plan against the QP and switching-time "
                  "search oracles; nonzero exit on any gate failure");
    add_io(verify);
    verify->add_option("--qp-grid", opt.qp_grid, "QP discretization cells")
        ->check(CLI::Range(static_cast<std::size_t>(10),
                           static_cast<std::size_t>(200000)))
        ->capture_default_str();
    verify
        ->add_option("--search-grid", opt.search_grid,
                     "switching-time search resolution")
        ->check(CLI::Range(static_cast<std::size_t>(100),
                           static_cast<std::size_t>(50000)))
        ->capture_default_str();
    verify->add_option("--tolerance", opt.tolerance, "QP stopping tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify
        ->add_option("--debug-perturb", opt.debug_perturb,
                     "offset every arc's control by this amount before "
                     "verification (fault injection)")
        ->capture_default_str();

    CLI::App* batch = app.add_subcommand(
        "batch", "classification and plan for every scenario in one pass");
    add_io(batch);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_schema;
    }

    try {
        if (classify->parsed()) return cmd_classify(opt);
        if (plan->parsed()) return cmd_plan(opt);
        if (sample->parsed()) return cmd_sample(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (batch->parsed()) return cmd_batch(opt);
    } catch (const cli_error& e) {
        std::fprintf(stderr, "%s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_schema;
    }
    return exit_ok;
}
