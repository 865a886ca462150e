#pragma once

#include <charconv>
#include <string>

#include "json.hpp"

#include "spex/extremal.hpp"
#include "spex/join.hpp"
#include "spex/search.hpp"
#include "spex/spectral.hpp"
#include "spex/transforms.hpp"

namespace spex {

using json = nlohmann::json;

/// 12 significant digits, locale-independent ('.' decimal separator always).
inline std::string fmt12(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

/// Round to 12 significant digits; JSON numbers go through this so dumps are
/// stable and match the CSV precision.
inline double round12(double v) {
    std::string s = fmt12(v);
    double out = v;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

// ---- JoinSpec ----------------------------------------------------------------

inline json to_json(const JoinSpec& s) {
    return json{{"apex_k", s.apex_k}, {"apex_edge", s.apex_edge}, {"parts", s.partition.parts()}};
}

inline JoinSpec join_spec_from_json(const json& j) {
    return JoinSpec(j.at("apex_k").get<int>(), PathPartition(j.at("parts").get<std::vector<int>>()),
                    j.value("apex_edge", false));
}

// ---- spectral ------------------------------------------------------------------

inline json to_json(const SpectralResult& r, bool with_vector = false) {
    json j{{"rho", round12(r.rho)},       {"residual", round12(r.residual)},
           {"iterations", r.iterations},  {"n", static_cast<int>(r.vector.size())},
           {"converged", r.converged},    {"connected", r.connected}};
    if (!r.connected) j["achieving_component"] = r.achieving_component;
    if (with_vector) {
        json v = json::array();
        for (double x : r.vector) v.push_back(round12(x));
        j["vector"] = v;
    }
    return j;
}

inline json to_json(const BracketReport& b) {
    return json{{"n", b.n},
                {"apex_count", b.apex_count},
                {"rho", round12(b.rho)},
                {"lower", round12(b.lower)},
                {"upper", round12(b.upper)},
                {"checked", b.checked},
                {"lower_violations", b.lower_violations},
                {"upper_violations", b.upper_violations},
                {"min_lower_slack", round12(b.min_lower_slack)},
                {"min_upper_slack", round12(b.min_upper_slack)},
                {"min_entry", round12(b.min_entry)},
                {"max_entry", round12(b.max_entry)},
                {"all_within", b.all_within}};
}

// ---- extremal ------------------------------------------------------------------

inline json to_json(const CandidateSpec& c) {
    return json{{"theorem", to_string(c.theorem)},
                {"params", json{{"n", c.n}, {"t", c.t}, {"l", c.l}, {"alt_form", c.alt_form}}},
                {"pattern", to_string(c.pattern)},
                {"join", to_json(c.spec)},
                {"partition", c.spec.partition.to_string()},
                {"n_threshold", c.n_threshold}};
}

inline json to_json(const CandidateReport& r) {
    json j{{"theorem", to_string(r.cand.theorem)},
           {"params", json{{"n", r.cand.n}, {"t", r.cand.t}, {"l", r.cand.l}, {"alt_form", r.cand.alt_form}}},
           {"pattern", to_string(r.cand.pattern)},
           {"partition", r.cand.spec.partition.to_string()},
           {"rho", round12(r.rho)},
           {"structured_free", r.structured.to_string()},
           {"generic_free", r.generic_checked ? json(r.generic_free) : json(nullptr)},
           {"class_bound", round12(r.class_bound)},
           {"bounds_ok", r.rho_within_bound},
           {"planarity_ok", r.planarity_ok}};
    return j;
}

// ---- transforms ----------------------------------------------------------------

inline json to_json(const TransformScanReport& r, bool with_timing = false) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"n", row.n},
                            {"rho_before", round12(row.rho_before)},
                            {"rho_after", round12(row.rho_after)},
                            {"delta", round12(row.delta)}});
    json j{{"apex_k", r.apex_k},
           {"s1", r.s1},
           {"s2", r.s2},
           {"grid", r.grid.to_string()},
           {"rows", rows},
           {"nonpositive_ns", r.nonpositive_ns},
           {"observed_threshold_n", r.observed_threshold_n}};
    (void)with_timing;
    return j;
}

inline std::string to_csv(const TransformScanReport& r) {
    std::string out = "n,rho_before,rho_after,delta\n";
    for (const auto& row : r.rows)
        out += std::to_string(row.n) + "," + fmt12(row.rho_before) + "," + fmt12(row.rho_after) + "," +
               fmt12(row.delta) + "\n";
    return out;
}

// ---- search ---------------------------------------------------------------------

inline json to_json(const ArgmaxReport& r, bool with_timing = false) {
    json best = json::array();
    for (const auto& b : r.best) best.push_back(json{{"partition", b.partition.to_string()}, {"rho", round12(b.rho)}});
    json j{{"kind", "argmax_partitions"},
           {"n", r.n},
           {"apex_k", r.apex_k},
           {"pattern", to_string(r.pattern)},
           {"mode", to_string(r.mode)},
           {"best", best},
           {"explored", r.explored},
           {"free_count", r.free_count}};
    if (r.has_reference)
        j["agreement"] = json{{"reference", r.reference.to_string()},
                              {"reference_rho", round12(r.reference_rho)},
                              {"reference_free", r.reference_free},
                              {"agrees", r.agrees}};
    if (with_timing) j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

inline json to_json(const OracleReport& r, bool with_timing = false) {
    json best = json::array();
    for (const auto& b : r.best) best.push_back(json{{"graph6", b.graph6}, {"rho", round12(b.rho)}});
    json j{{"kind", "tiny_oracle"},
           {"n", r.n},
           {"class", to_string(r.cls)},
           {"pattern", r.pattern ? json(to_string(*r.pattern)) : json(nullptr)},
           {"best", best},
           {"explored", r.explored},
           {"evaluated", r.evaluated},
           {"resumed", r.resumed}};
    if (with_timing) {
        j["runtime_seconds"] = r.runtime_seconds;
        j["threads"] = r.threads;
    }
    return j;
}

inline json to_json(const ConjectureReport& r, bool with_timing = false) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"n", row.n},
                            {"best_partition", row.best.to_string()},
                            {"best_rho", round12(row.best_rho)},
                            {"conjectured", row.conjectured.to_string()},
                            {"conjectured_rho", round12(row.conjectured_rho)},
                            {"conjectured_free", row.conjectured_free},
                            {"agrees", row.agrees}});
    json j{{"kind", "conjecture_scan"},
           {"problem", to_string(r.problem)},
           {"l", r.l},
           {"apex_k", r.apex_k},
           {"pattern", to_string(r.pattern)},
           {"grid", r.grid.to_string()},
           {"rows", rows},
           {"explored", r.explored}};
    if (with_timing) j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
    return "\"" + s + "\""; // partition strings contain commas; they never contain quotes
}

} // namespace detail

inline std::string to_csv(const ArgmaxReport& r) {
    std::string out = "n,best_partition,rho,agrees_with_candidate\n";
    out += std::to_string(r.n) + "," + detail::csv_quote(r.best.empty() ? "" : r.best.front().partition.to_string()) +
           "," + fmt12(r.best.empty() ? 0.0 : r.best.front().rho) + "," +
           (r.has_reference ? (r.agrees ? "true" : "false") : "") + "\n";
    return out;
}

inline std::string to_csv(const ConjectureReport& r) {
    std::string out = "n,best_partition,rho,agrees_with_candidate\n";
    for (const auto& row : r.rows)
        out += std::to_string(row.n) + "," + detail::csv_quote(row.best.to_string()) + "," + fmt12(row.best_rho) +
               "," + (row.agrees ? "true" : "false") + "\n";
    return out;
}

// ---- schema-lite validation -----------------------------------------------------
// Enough of JSON Schema (type / properties / required / items / enum) to
// check the shipped report schemas against emitted documents.

inline bool matches_schema(const json& instance, const json& schema, std::string* error = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    if (schema.contains("enum")) {
        for (const auto& v : schema.at("enum"))
            if (v == instance) return true;
        return fail("value not in enum");
    }
    if (schema.contains("type")) {
        const auto& t = schema.at("type");
        auto has_type = [&](const std::string& name) {
            if (t.is_string()) return t.get<std::string>() == name;
            for (const auto& x : t)
                if (x.get<std::string>() == name) return true;
            return false;
        };
        bool ok = (instance.is_object() && has_type("object")) || (instance.is_array() && has_type("array")) ||
                  (instance.is_string() && has_type("string")) || (instance.is_boolean() && has_type("boolean")) ||
                  (instance.is_null() && has_type("null")) ||
                  (instance.is_number() && (has_type("number") || (instance.is_number_integer() && has_type("integer"))));
        if (!ok) return fail("type mismatch: got " + std::string(instance.type_name()));
    }
    if (instance.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema.at("required"))
                if (!instance.contains(k.get<std::string>())) return fail("missing required key " + k.get<std::string>());
        if (schema.contains("properties"))
            for (auto it = schema.at("properties").begin(); it != schema.at("properties").end(); ++it)
                if (instance.contains(it.key())) {
                    std::string sub;
                    if (!matches_schema(instance.at(it.key()), it.value(), &sub))
                        return fail("at ." + it.key() + ": " + sub);
                }
    }
    if (instance.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < instance.size(); ++i) {
            std::string sub;
            if (!matches_schema(instance[i], schema.at("items"), &sub))
                return fail("at [" + std::to_string(i) + "]: " + sub);
        }
    }
    return true;
}

} // namespace spex
