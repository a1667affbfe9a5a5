#pragma once

#include <json.hpp>

#include "rsum/prover.hpp"
#include "rsum/rational.hpp"
#include "rsum/verify.hpp"

namespace rsum {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& q) {
    return Json{{"fraction", fraction_string(q)}, {"decimal", decimal_string(q)}};
}

inline Json step_json(const Step& s) {
    Json inputs = Json::object();
    for (const auto& [k, v] : s.inputs) inputs[k] = rational_json(v);
    Json values = Json::object();
    for (const auto& [k, v] : s.values) values[k] = rational_json(v);
    Json j{{"lemma", s.rule},
           {"inputs", inputs},
           {"values", values},
           {"inequality", s.lhs + " " + s.relation + " " + s.rhs},
           {"holds", s.holds}};
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

inline Json certificate_json(const ProofCertificate& cert) {
    Json steps = Json::array();
    for (const auto& s : cert.steps) steps.push_back(step_json(s));
    Json j{{"case", case_name(cert.label)}, {"steps", steps}, {"lower_bound", rational_json(cert.lower_bound)}};
    if (cert.exact_probability) j["exact_probability"] = rational_json(*cert.exact_probability);
    switch (cert.sound) {
        case Soundness::Sound: j["sound"] = true; break;
        case Soundness::Unsound: j["sound"] = false; break;
        case Soundness::NotChecked: j["sound"] = "not_checked"; break;
    }
    return j;
}

inline Json vector_report_json(const VectorReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json jc{{"name", c.name}, {"pass", c.pass}};
        if (!c.details.empty()) jc["details"] = c.details;
        checks.push_back(jc);
    }
    return Json{{"weights", report.weights},
                {"case", report.case_label},
                {"checks", checks},
                {"all_pass", report.all_pass}};
}

}  // namespace rsum
