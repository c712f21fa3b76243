#include "tangle/manifest.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "tangle/errors.hpp"

namespace tangle {

std::string RunManifest::parameter_text() const {
    std::ostringstream os;
    os << command;
    for (const auto& [k, v] : parameters) os << ";" << k << "=" << v;
    return os.str();
}

std::string RunManifest::to_json() const {
    nlohmann::json doc;
    doc["command"] = command;
    doc["parameters"] = parameters;
    doc["format_version"] = format_version;
    doc["parameter_hash"] = parameter_hash;
    doc["seconds"] = seconds;
    doc["tool_version"] = tool_version;
    return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad manifest JSON: ") + e.what());
    }
    RunManifest m;
    try {
        m.command = doc.at("command").get<std::string>();
        m.parameters = doc.at("parameters").get<std::map<std::string, std::string>>();
        m.format_version = doc.at("format_version").get<uint32_t>();
        m.parameter_hash = doc.at("parameter_hash").get<std::string>();
        m.seconds = doc.value("seconds", 0.0);
        m.tool_version = doc.value("tool_version", std::string());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("manifest missing field: ") + e.what());
    }
    if (m.parameter_hash != fnv1a_hex(m.parameter_text()))
        throw ParseError("manifest parameter hash does not match its parameters");
    return m;
}

}  // namespace tangle
