#pragma once
#include <cstdint>
#include <map>
#include <string>

#include "tangle/cache.hpp"

namespace tangle {

inline constexpr char kToolVersion[] = "1.0.0";

// Record of one CLI invocation: enough to rerun it (command + parameters) plus
// provenance (format version, parameter hash, timing, tool version). Replaying
// a manifest through the CLI reproduces byte-identical output files; `seconds`
// is informational and excluded from the hash.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    uint32_t format_version = kCacheFormatVersion;
    std::string parameter_hash;
    double seconds = 0.0;
    std::string tool_version = kToolVersion;

    // Canonical "command;k1=v1;k2=v2;..." text (keys sorted); its fnv1a_hex is
    // the parameter hash.
    std::string parameter_text() const;
    void stamp_hash() { parameter_hash = fnv1a_hex(parameter_text()); }

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);  // ParseError on bad input
};

}  // namespace tangle
