#pragma once

#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "classify.hpp"

namespace lenslab {

namespace detail {

inline nlohmann::json json_of_set(const std::set<long>& s) {
    nlohmann::json a = nlohmann::json::array();
    for (long n : s) a.push_back(n);
    return a;
}

inline std::set<long> set_of_json(const nlohmann::json& a) {
    if (!a.is_array()) throw invalid_params("expected an array of integers");
    std::set<long> s;
    for (const auto& x : a) {
        if (!x.is_number_integer()) throw invalid_params("expected an array of integers");
        s.insert(x.get<long>());
    }
    return s;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string join_set(const std::set<long>& s) {
    if (s.empty()) return "(none)";
    std::string out;
    for (long n : s) {
        if (!out.empty()) out += ' ';
        out += std::to_string(n);
    }
    return out;
}

}

inline nlohmann::json report_to_json(const ClassificationReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const Row& r : rep.rows)
        rows.push_back({{"k", r.k},
                        {"m", r.m},
                        {"n", r.n},
                        {"verdict", to_string(r.verdict)},
                        {"engine", r.engine},
                        {"witness", r.witness}});
    return {{"schema", "1"},
            {"p", rep.p},
            {"m_bound", rep.m_bound},
            {"rows", rows},
            {"realized", detail::json_of_set(rep.realized)},
            {"not_obstructed", detail::json_of_set(rep.not_obstructed)},
            {"obstructed", detail::json_of_set(rep.obstructed)},
            {"undetermined", detail::json_of_set(rep.undetermined)},
            {"realization_unknown", detail::json_of_set(rep.realization_unknown)}};
}

inline ClassificationReport report_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schema") || j.at("schema") != "1")
        throw invalid_params("unsupported report schema");
    ClassificationReport rep;
    rep.p = j.at("p").get<long>();
    rep.m_bound = j.at("m_bound").get<long>();
    for (const auto& e : j.at("rows")) {
        Row r;
        r.k = e.at("k").get<long>();
        r.m = e.at("m").get<long>();
        r.n = e.at("n").get<long>();
        r.verdict = row_verdict_from_string(e.at("verdict").get<std::string>());
        r.engine = e.at("engine").get<std::string>();
        r.witness = e.at("witness").get<std::string>();
        rep.rows.push_back(r);
    }
    rep.realized = detail::set_of_json(j.at("realized"));
    rep.not_obstructed = detail::set_of_json(j.at("not_obstructed"));
    rep.obstructed = detail::set_of_json(j.at("obstructed"));
    rep.undetermined = detail::set_of_json(j.at("undetermined"));
    rep.realization_unknown = detail::set_of_json(j.at("realization_unknown"));
    return rep;
}

inline std::string report_to_csv(const ClassificationReport& rep) {
    std::string out = "p,k,m,n,verdict,engine,witness\n";
    for (const Row& r : rep.rows) {
        out += std::to_string(rep.p) + ',' + std::to_string(r.k) + ',' +
               std::to_string(r.m) + ',' + std::to_string(r.n) + ',' +
               to_string(r.verdict) + ',' + detail::csv_field(r.engine) + ',' +
               detail::csv_field(r.witness) + '\n';
    }
    return out;
}

inline std::string report_to_text(const ClassificationReport& rep) {
    std::ostringstream out;
    out << "targets of distance-one surgeries from L(" << rep.p << ",1), |m| <= "
        << rep.m_bound << "\n";
    out << "realized:            " << detail::join_set(rep.realized) << "\n";
    out << "not obstructed:      " << detail::join_set(rep.not_obstructed) << "\n";
    out << "realization unknown: " << detail::join_set(rep.realization_unknown) << "\n";
    out << "undetermined:        " << detail::join_set(rep.undetermined) << "\n";
    out << "obstructed:          " << detail::join_set(rep.obstructed) << "\n";
    out << "rows (k m n verdict engine witness):\n";
    for (const Row& r : rep.rows)
        out << "  " << r.k << ' ' << r.m << ' ' << r.n << ' ' << to_string(r.verdict)
            << ' ' << r.engine << ' ' << r.witness << "\n";
    return out.str();
}

}
