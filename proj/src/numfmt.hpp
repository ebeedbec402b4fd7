// Formatting helpers shared by the serializers: shortest round-trip doubles
// and CSV field quoting. Private to the library sources.
#pragma once

#include <charconv>
#include <string>

namespace sbidea {

inline std::string num_to_string(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace sbidea
