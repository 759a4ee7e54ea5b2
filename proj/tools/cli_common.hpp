#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "latbab/errors.hpp"

namespace latbab::cli {

// Exit codes: 0 success, 2 precondition/condition failure, 3 parse error.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCondition = 2;
constexpr int kExitParse = 3;

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
        dynamic_cast<const UnknownLattice*>(&e))
        return kExitParse;
    if (dynamic_cast<const ConditionFailed*>(&e) || dynamic_cast<const PreconditionViolation*>(&e) ||
        dynamic_cast<const HypothesisFailed*>(&e) || dynamic_cast<const DensityOutOfRange*>(&e) ||
        dynamic_cast<const UnsupportedForExact*>(&e) || dynamic_cast<const NoRationalWithinTolerance*>(&e))
        return kExitCondition;
    return kExitError;
}

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Canonical config line -> stable hash, so identical configurations produce
// byte-identical CSV output.
inline std::string config_hash(const std::string& subcommand,
                               const std::map<std::string, std::string>& kv) {
    std::string canon = subcommand;
    for (const auto& [k, v] : kv) canon += " " + k + "=" + v;
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canon)));
    return buf;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

inline void write_json(Output& out, const nlohmann::json& j) {
    out.stream() << j.dump(2) << "\n";
}

inline void write_csv(Output& out, const std::string& subcommand,
                      const std::map<std::string, std::string>& config,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    auto& os = out.stream();
    os << "# config-hash=" << config_hash(subcommand, config) << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 == header.size() ? "\n" : ",");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 == row.size() ? "\n" : ",");
}

// Sweep emission honoring --format: CSV (default) or a JSON array of rows.
inline void write_rows(Output& out, const std::string& format, const std::string& subcommand,
                       const std::map<std::string, std::string>& config,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    if (format == "csv") {
        write_csv(out, subcommand, config, header, rows);
        return;
    }
    if (format != "json") throw ParseError("--format must be json or csv");
    nlohmann::json j;
    j["config_hash"] = config_hash(subcommand, config);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < row.size() && i < header.size(); ++i)
            obj[header[i]] = row[i];
        arr.push_back(obj);
    }
    j["rows"] = arr;
    write_json(out, j);
}

}  // namespace latbab::cli
