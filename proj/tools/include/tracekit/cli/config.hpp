#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "tracekit/plancherel/plancherel.hpp"
#include "tracekit/trace/divergence.hpp"
#include "tracekit/util/policy.hpp"
#include "tracekit/util/quadrature.hpp"

namespace tracekit::cli {

using json = nlohmann::ordered_json;

/// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest allowed product of quadrature node counts along the axes of one integral.
inline constexpr double kNodeProductLimit = 1e7;

struct RunConfig {
    std::string command;
    std::string scenario;
    std::uint64_t seed = 1;
    NumericPolicy policy;
    QuadratureSpec quadrature;
    std::optional<CutoffSchedule> schedule;
    Truncation truncation;
    TorusQuadrature torus_quadrature;
    json params = json::object();  // scenario defaults merged with overrides
    std::filesystem::path out_dir;
    bool write_tables = true;
};

/// Validates every key and range; throws ConfigError.
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Config for a named scenario with all defaults.
RunConfig default_config(const std::string& scenario);

/// The resolved parameters as they enter the computation.
json resolved_parameters(const RunConfig& cfg);

/// Reads one JSON object field by field and reports unknown keys.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string where);

    bool has(const std::string& key) const;
    double number(const std::string& key, double lo, double hi);
    int integer(const std::string& key, long lo, long hi);
    bool boolean(const std::string& key);
    std::string string(const std::string& key);
    const json& raw(const std::string& key);
    void finish() const;

    template <class T>
    void maybe(const std::string& key, T& out, double lo, double hi) {
        if (!has(key)) return;
        if constexpr (std::is_integral_v<T>) {
            out = static_cast<T>(integer(key, static_cast<long>(lo), static_cast<long>(hi)));
        } else {
            out = number(key, lo, hi);
        }
    }

private:
    const json& obj_;
    std::string where_;
    std::vector<std::string> seen_;
};

}  // namespace tracekit::cli
