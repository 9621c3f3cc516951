#ifndef GTEVAL_REPORT_HPP
#define GTEVAL_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace gteval {
namespace report {

inline constexpr const char* kToolName = "gteval";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// FNV-1a 64-bit fingerprint of a file (input provenance, not a
/// cryptographic digest).
std::uint64_t fnv1a_file(const std::string& path);
std::string hex64(std::uint64_t value);

/// Record of one command execution. The resolved configuration is
/// sufficient to re-run the command; nothing time- or host-dependent is
/// stored so a re-run reproduces the report byte for byte.
struct RunReport {
    std::string command;
    Json config = Json::object();
    Json inputs = Json::object();   // path -> fnv1a fingerprint
    std::vector<std::string> outputs;  // file names relative to the output directory
    Json results = Json::object();

    void add_input(const std::string& path);

    Json to_json() const;
    void save(const std::string& path) const;
    static RunReport load(const std::string& path);
};

/// Fixed-notation double formatting used by every CSV writer ("%.12g").
std::string format_double(double v);

}  // namespace report
}  // namespace gteval

#endif
