#pragma once

// State dump format:
//   { "modes": int, "terms": [ { "coeff": [re, im], "alphas": [[re, im], ...] } ] }
// nlohmann::json writes doubles with shortest round-trip precision, so a dump
// followed by a load reproduces every bit.

#include <string>
#include <vector>

#include "catclust/coherent.hpp"
#include "json.hpp"

namespace catclust {

namespace detail {
inline nlohmann::json complexToJson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline Complex complexFromJson(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}
}  // namespace detail

inline nlohmann::json stateToJson(const SuperposedState& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : s.terms()) {
        nlohmann::json alphas = nlohmann::json::array();
        for (const auto& a : t.alphas) alphas.push_back(detail::complexToJson(a));
        terms.push_back({{"coeff", detail::complexToJson(t.coeff)}, {"alphas", std::move(alphas)}});
    }
    return {{"modes", s.modes()}, {"terms", std::move(terms)}};
}

inline SuperposedState stateFromJson(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("modes") || !j.contains("terms"))
        throw FormatError("state JSON needs 'modes' and 'terms'");
    if (!j["modes"].is_number_integer() || j["modes"].get<long long>() <= 0)
        throw FormatError("'modes' must be a positive integer");
    if (!j["terms"].is_array()) throw FormatError("'terms' must be an array");
    const auto modes = j["modes"].get<std::size_t>();
    std::vector<CoherentTerm> terms;
    for (const auto& jt : j["terms"]) {
        if (!jt.is_object() || !jt.contains("coeff") || !jt.contains("alphas") || !jt["alphas"].is_array())
            throw FormatError("each term needs 'coeff' and an 'alphas' array");
        CoherentTerm t;
        t.coeff = detail::complexFromJson(jt["coeff"]);
        for (const auto& ja : jt["alphas"]) t.alphas.push_back(detail::complexFromJson(ja));
        terms.push_back(std::move(t));
    }
    try {
        return SuperposedState(modes, std::move(terms));
    } catch (const ModeError& e) {
        throw FormatError(e.what());
    }
}

inline std::string dumpState(const SuperposedState& s) { return stateToJson(s).dump(); }

inline SuperposedState loadState(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("state JSON: ") + e.what());
    }
    return stateFromJson(j);
}

}  // namespace catclust
