#ifndef TRILOC_JSON_IO_HPP
#define TRILOC_JSON_IO_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "triloc/errors.hpp"
#include "triloc/state.hpp"

namespace triloc {

/// State wire format: {"amps": [[re, im], ... 8 entries ...]}.
inline nlohmann::json state_to_json(const PureState3Q& s) {
    nlohmann::json amps = nlohmann::json::array();
    for (const Complex& a : s.amps) amps.push_back({a.real(), a.imag()});
    return {{"amps", amps}};
}

inline PureState3Q state_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("amps"))
        throw ParseError("state object must contain an \"amps\" array");
    const auto& amps = j.at("amps");
    if (!amps.is_array() || amps.size() != 8)
        throw ParseError("\"amps\" must be an array of 8 [re, im] pairs");
    PureState3Q s;
    for (int n = 0; n < 8; ++n) {
        const auto& pair = amps.at(n);
        if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
            !pair.at(1).is_number())
            throw ParseError("amplitude " + std::to_string(n) + " must be a [re, im] pair");
        s.amps[n] = Complex{pair.at(0).get<double>(), pair.at(1).get<double>()};
    }
    if (!s.finite()) throw ParseError("amplitudes must be finite");
    return s;
}

inline PureState3Q load_state(const std::string& path, bool require_normalized = true) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    const PureState3Q s = state_from_json(j);
    if (require_normalized && !s.is_normalized())
        throw NotNormalized(path + " has norm " + std::to_string(s.norm()));
    return s;
}

inline void save_state(const std::string& path, const PureState3Q& s) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << state_to_json(s).dump(2) << "\n";
}

}  // namespace triloc

#endif
