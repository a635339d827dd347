#pragma once

// JSON experiment configuration and the function/unit spec language.
//
// Function spec: a number, a [re, im] pair, the name of an entry under
// "functions", or an object with a "kind" of
//   constant          {"value"}
//   exp_approach      {"c", "a", "offset" = 1}     offset + c exp(-a s)
//   rational          {"c", "d"}                   c / (1 + s) + d
//   piecewise_linear  {"knots": [[s, v], ...]}
//   samples           {"samples": [...], "tail"}
//   csv               {"path"}                     tail row, then s,re,im
// Unit spec: "omega", "xi", the name of an entry under "units", or
// {"zeta": <function>, "beta": <function, default 0>}.

#include "fockidx/fock.hpp"
#include "fockidx/presets.hpp"

#include <json.hpp>

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace fockidx::io {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct Tolerances {
    double membership = 1e-9;
    double psd = 1e-10;
    double exp = 1e-12;
    double tail = 1e-9;
    double hermitian = 1e-13;
    double semigroup_law = 1e-9;
    double coherence = 1e-11;
    double inner = 1e-12;
    double witness = 1e-12;
    double theta = 1e-10;
    double index = 1e-11;
    double index_gap = 1e-10;
};

class ExperimentConfig {
public:
    /// Validates the document: grid, tolerances, and every preset kind.
    ExperimentConfig(nlohmann::json document, std::filesystem::path base_dir);

    const GridSpec& grid() const noexcept { return grid_; }
    const Tolerances& tolerances() const noexcept { return tol_; }
    const nlohmann::json& document() const noexcept { return doc_; }

    bool has(const std::string& key) const { return doc_.contains(key); }
    const nlohmann::json& at(const std::string& key) const;

    FunctionPreset preset(const nlohmann::json& spec) const;
    AlgebraElement function(const nlohmann::json& spec) const;
    AlgebraElement function(const std::string& key, Complex fallback) const;
    FockUnit unit(const nlohmann::json& spec) const;
    std::vector<FockUnit> units(const std::string& key) const;
    std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;
    std::vector<int> integers(const std::string& key, std::vector<int> fallback) const;
    double real(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;

private:
    nlohmann::json doc_;
    std::filesystem::path base_dir_;
    GridSpec grid_;
    Tolerances tol_;
};

ExperimentConfig load_config(const std::filesystem::path& path);

Complex parse_complex(const nlohmann::json& value);

/// Reads an element written as `tail,<re>,<im>` followed by a `s,re,im`
/// header and one row per grid point.
AlgebraElement read_element_csv(std::istream& in, const GridSpec& grid);
AlgebraElement read_element_csv(const std::filesystem::path& path, const GridSpec& grid);

}  // namespace fockidx::io
