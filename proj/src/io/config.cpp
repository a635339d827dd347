#include "fockidx/io/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fockidx::io {

using nlohmann::json;

namespace {

const std::set<std::string>& known_kinds() {
    static const std::set<std::string> kinds{"constant", "exp_approach", "rational",
                                             "piecewise_linear", "samples", "csv"};
    return kinds;
}

void validate_kinds(const json& node, const std::string& where) {
    if (node.is_object()) {
        if (auto it = node.find("kind"); it != node.end()) {
            if (!it->is_string() || !known_kinds().contains(it->get<std::string>())) {
                throw ConfigError("unknown preset kind " + it->dump() + " at " + where);
            }
        }
        for (const auto& [key, value] : node.items()) validate_kinds(value, where + "/" + key);
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            validate_kinds(node[i], where + "/" + std::to_string(i));
        }
    }
}

double number(const json& obj, const char* key, double fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return it->get<double>();
}

Complex complex_field(const json& obj, const char* key, Complex fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : parse_complex(*it);
}

Complex complex_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(std::string("missing field '") + key + "'");
    return parse_complex(*it);
}

}  // namespace

Complex parse_complex(const json& value) {
    if (value.is_number()) return {value.get<double>(), 0.0};
    if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        return {value[0].get<double>(), value[1].get<double>()};
    }
    if (value.is_object() && value.contains("re")) {
        return {value.at("re").get<double>(), value.value("im", 0.0)};
    }
    throw ConfigError("expected a complex number, got " + value.dump());
}

ExperimentConfig::ExperimentConfig(json document, std::filesystem::path base_dir)
    : doc_(std::move(document)), base_dir_(std::move(base_dir)) {
    if (!doc_.is_object()) throw ConfigError("configuration must be a JSON object");
    try {
        if (doc_.contains("grid")) {
            const json& g = doc_.at("grid");
            grid_ = GridSpec(g.value("m", 4), g.value("S", 40));
        }
        if (doc_.contains("tolerances")) {
            const json& t = doc_.at("tolerances");
            tol_.membership = number(t, "membership", tol_.membership);
            tol_.psd = number(t, "psd", tol_.psd);
            tol_.exp = number(t, "exp", tol_.exp);
            tol_.tail = number(t, "tail", tol_.tail);
            tol_.hermitian = number(t, "hermitian", tol_.hermitian);
            tol_.semigroup_law = number(t, "semigroup_law", tol_.semigroup_law);
            tol_.coherence = number(t, "coherence", tol_.coherence);
            tol_.inner = number(t, "inner", tol_.inner);
            tol_.witness = number(t, "witness", tol_.witness);
            tol_.theta = number(t, "theta", tol_.theta);
            tol_.index = number(t, "index", tol_.index);
            tol_.index_gap = number(t, "index_gap", tol_.index_gap);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed grid or tolerances: ") + e.what());
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
    validate_kinds(doc_, "");
    // named entries are instantiated now so CSV and shape errors surface at parse time
    if (doc_.contains("functions")) {
        for (const auto& [name, spec] : doc_.at("functions").items()) {
            if (spec.is_string()) throw ConfigError("function '" + name + "' may not alias another");
            function(spec);
        }
    }
    if (doc_.contains("units")) {
        const json& named = doc_.at("units");
        if (named.is_object()) {
            for (const auto& [name, spec] : named.items()) unit(spec);
        }
    }
}

const json& ExperimentConfig::at(const std::string& key) const {
    auto it = doc_.find(key);
    if (it == doc_.end()) throw ConfigError("missing field '" + key + "'");
    return *it;
}

FunctionPreset ExperimentConfig::preset(const json& spec) const {
    if (spec.is_string()) {
        const std::string name = spec.get<std::string>();
        if (!doc_.contains("functions") || !doc_.at("functions").contains(name)) {
            throw ConfigError("unknown function '" + name + "'");
        }
        return preset(doc_.at("functions").at(name));
    }
    if (spec.is_number() || spec.is_array()) return ConstantPreset{parse_complex(spec)};
    if (!spec.is_object() || !spec.contains("kind")) {
        throw ConfigError("function spec must be a number, pair, name or preset object: " +
                          spec.dump());
    }
    try {
        const std::string kind = spec.at("kind").get<std::string>();
        if (kind == "constant") return ConstantPreset{complex_field(spec, "value")};
        if (kind == "exp_approach") {
            return ExpApproachPreset{complex_field(spec, "c"), number(spec, "a", 1.0),
                                     complex_field(spec, "offset", Complex{1.0, 0.0})};
        }
        if (kind == "rational") {
            return RationalPreset{complex_field(spec, "c"), complex_field(spec, "d", 0.0)};
        }
        if (kind == "piecewise_linear") {
            PiecewiseLinearPreset p;
            for (const json& knot : spec.at("knots")) {
                if (!knot.is_array() || knot.size() != 2) {
                    throw ConfigError("piecewise_linear knots are [s, value] pairs");
                }
                p.knots.emplace_back(knot[0].get<double>(), parse_complex(knot[1]));
            }
            return p;
        }
        if (kind == "samples") {
            SampledPreset p;
            for (const json& v : spec.at("samples")) p.samples.push_back(parse_complex(v));
            p.tail = complex_field(spec, "tail");
            return p;
        }
        if (kind == "csv") {
            std::filesystem::path path = spec.at("path").get<std::string>();
            if (path.is_relative()) path = base_dir_ / path;
            const AlgebraElement e = read_element_csv(path, grid_);
            return SampledPreset{{e.samples().begin(), e.samples().end()}, e.tail()};
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed preset ") + spec.dump() + ": " + e.what());
    }
    throw ConfigError("unknown preset kind in " + spec.dump());
}

AlgebraElement ExperimentConfig::function(const json& spec) const {
    try {
        return sample(preset(spec), grid_);
    } catch (const ConfigError&) {
        throw;
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("invalid function ") + spec.dump() + ": " + e.what());
    }
}

AlgebraElement ExperimentConfig::function(const std::string& key, Complex fallback) const {
    return has(key) ? function(at(key)) : constant(grid_, fallback);
}

FockUnit ExperimentConfig::unit(const json& spec) const {
    if (spec.is_string()) {
        const std::string name = spec.get<std::string>();
        if (name == "omega") return FockUnit::omega(grid_);
        if (name == "xi") return FockUnit::xi(grid_);
        if (doc_.contains("units") && doc_.at("units").is_object() &&
            doc_.at("units").contains(name)) {
            const json& target = doc_.at("units").at(name);
            if (target.is_string()) throw ConfigError("unit '" + name + "' may not alias another");
            return unit(target);
        }
        throw ConfigError("unknown unit '" + name + "'");
    }
    if (!spec.is_object() || !spec.contains("zeta")) {
        throw ConfigError("unit spec must name a unit or give {\"zeta\", \"beta\"}: " + spec.dump());
    }
    AlgebraElement zeta = function(spec.at("zeta"));
    AlgebraElement beta = spec.contains("beta") ? function(spec.at("beta")) : constant(grid_, 0.0);
    return {std::move(zeta), std::move(beta)};
}

std::vector<FockUnit> ExperimentConfig::units(const std::string& key) const {
    const json& list = at(key);
    if (!list.is_array()) throw ConfigError("'" + key + "' must be a list of units");
    std::vector<FockUnit> out;
    for (const json& spec : list) out.push_back(unit(spec));
    return out;
}

std::vector<double> ExperimentConfig::reals(const std::string& key,
                                            std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    try {
        if (v.is_number()) return {v.get<double>()};
        return v.get<std::vector<double>>();
    } catch (const json::exception&) {
        throw ConfigError("'" + key + "' must be a number or a list of numbers");
    }
}

std::vector<int> ExperimentConfig::integers(const std::string& key, std::vector<int> fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    try {
        if (v.is_number_integer()) return {v.get<int>()};
        return v.get<std::vector<int>>();
    } catch (const json::exception&) {
        throw ConfigError("'" + key + "' must be an integer or a list of integers");
    }
}

double ExperimentConfig::real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_number()) throw ConfigError("'" + key + "' must be a number");
    return at(key).get<double>();
}

int ExperimentConfig::integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
    return at(key).get<int>();
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return ExperimentConfig(std::move(doc), path.parent_path());
}

AlgebraElement read_element_csv(std::istream& in, const GridSpec& grid) {
    std::string line;
    auto fields = [](const std::string& text) {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(item);
        return out;
    };
    auto to_double = [](const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + text + "' in element CSV");
        }
        if (used != text.size()) throw ConfigError("bad number '" + text + "' in element CSV");
        return v;
    };

    if (!std::getline(in, line)) throw ConfigError("element CSV is empty");
    auto head = fields(line);
    if (head.size() != 3 || head[0] != "tail") {
        throw ConfigError("element CSV must start with 'tail,<re>,<im>'");
    }
    const Complex tail{to_double(head[1]), to_double(head[2])};
    if (!std::getline(in, line) || line != "s,re,im") {
        throw ConfigError("element CSV needs a 's,re,im' header on line 2");
    }
    std::vector<Complex> samples;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto row = fields(line);
        if (row.size() != 3) throw ConfigError("element CSV rows have three columns");
        const std::size_t k = samples.size();
        if (k >= grid.sample_count() || std::abs(to_double(row[0]) - grid.point(k)) > 1e-9) {
            throw ConfigError("element CSV row " + std::to_string(k) + " is off the declared grid");
        }
        samples.emplace_back(to_double(row[1]), to_double(row[2]));
    }
    if (samples.size() != grid.sample_count()) {
        throw ConfigError("element CSV has " + std::to_string(samples.size()) + " rows, grid needs " +
                          std::to_string(grid.sample_count()));
    }
    return {grid, std::move(samples), tail};
}

AlgebraElement read_element_csv(const std::filesystem::path& path, const GridSpec& grid) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open element CSV " + path.string());
    return read_element_csv(in, grid);
}

}  // namespace fockidx::io
