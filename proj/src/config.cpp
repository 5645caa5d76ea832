#include "qlm/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qlm {

namespace {

struct Value {
    enum class Type { Number, String, Array } type;
    double number = 0.0;
    std::string str;
    std::vector<Value> array;
};

class ValueParser {
  public:
    ValueParser(const std::string& s, int line) : s_(s), line_(line) {}

    Value parse() {
        Value v = value();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] != '#')
            throw ParseError("trailing characters after value", line_, static_cast<int>(pos_) + 1);
        return v;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    Value value() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("missing value", line_, static_cast<int>(pos_) + 1);
        const char c = s_[pos_];
        if (c == '"') return string_value();
        if (c == '[') return array_value();
        return number_value();
    }

    Value string_value() {
        ++pos_;
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != '"') out += s_[pos_++];
        if (pos_ >= s_.size()) throw ParseError("unterminated string", line_, static_cast<int>(pos_) + 1);
        ++pos_;
        Value v;
        v.type = Value::Type::String;
        v.str = out;
        return v;
    }

    Value array_value() {
        ++pos_;
        Value v;
        v.type = Value::Type::Array;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ']') {
            ++pos_;
            return v;
        }
        while (true) {
            v.array.push_back(value());
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (pos_ < s_.size() && s_[pos_] == ']') {
                ++pos_;
                return v;
            }
            throw ParseError("expected ',' or ']' in array", line_, static_cast<int>(pos_) + 1);
        }
    }

    Value number_value() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double d = std::strtod(begin, &end);
        if (end == begin) throw ParseError("expected a value", line_, static_cast<int>(pos_) + 1);
        pos_ += static_cast<size_t>(end - begin);
        Value v;
        v.type = Value::Type::Number;
        v.number = d;
        return v;
    }

    const std::string& s_;
    int line_;
    size_t pos_ = 0;
};

double as_number(const Value& v, const std::string& key) {
    if (v.type != Value::Type::Number) throw ConfigError("field '" + key + "' must be a number");
    return v.number;
}

std::string as_string(const Value& v, const std::string& key) {
    if (v.type != Value::Type::String) throw ConfigError("field '" + key + "' must be a string");
    return v.str;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool radii_set = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        // strip comments outside strings
        bool in_str = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) {
                line = line.substr(0, i);
                break;
            }
        }
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("malformed section header", lineno, 1);
            section = line.substr(1, line.size() - 2);
            if (section != "metric" && section != "metric.params")
                throw ConfigError("unknown config section '" + section + "'");
            cfg.has_metric = true;
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno, 1);
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        const Value v = ValueParser(line.substr(eq + 1), lineno).parse();

        if (section == "metric") {
            if (key.size() != 3 || key[0] != 'g' || !std::isdigit((unsigned char)key[1]) ||
                !std::isdigit((unsigned char)key[2]))
                throw ConfigError("metric component key '" + key + "' must look like g00..g33");
            const int a = key[1] - '0', b2 = key[2] - '0';
            if (a > 3 || b2 > 3 || a > b2)
                throw ConfigError("metric component key '" + key + "' must have 0 <= a <= b <= 3");
            cfg.metric.components[{a, b2}] = as_string(v, key);
            continue;
        }
        if (section == "metric.params") {
            cfg.metric.params[key] = as_number(v, key);
            continue;
        }

        if (key == "scenario") {
            const std::string s = as_string(v, key);
            if (s == "minkowski")
                cfg.scenario = Scenario::Minkowski;
            else if (s == "schwarzschild")
                cfg.scenario = Scenario::Schwarzschild;
            else if (s == "boosted-schwarzschild")
                cfg.scenario = Scenario::BoostedSchwarzschild;
            else if (s == "custom-dsl")
                cfg.scenario = Scenario::CustomDsl;
            else
                throw ConfigError("unknown scenario '" + s + "'");
        } else if (key == "M" || key == "mass") {
            cfg.mass = as_number(v, key);
        } else if (key == "beta") {
            cfg.beta = as_number(v, key);
        } else if (key == "order") {
            cfg.order = static_cast<int>(as_number(v, key));
        } else if (key == "nphi") {
            cfg.nphi = static_cast<int>(as_number(v, key));
        } else if (key == "out") {
            cfg.out = as_string(v, key);
        } else if (key == "residual_tol") {
            cfg.residual_tol = as_number(v, key);
        } else if (key == "radii") {
            if (v.type != Value::Type::Array) throw ConfigError("field 'radii' must be an array");
            cfg.radii.clear();
            for (const auto& x : v.array) cfg.radii.push_back(as_number(x, key));
            radii_set = true;
        } else if (key == "observers") {
            if (v.type != Value::Type::Array)
                throw ConfigError("field 'observers' must be an array of 3-vectors");
            cfg.observers.clear();
            for (const auto& o : v.array) {
                if (o.type != Value::Type::Array || o.array.size() != 3)
                    throw ConfigError("field 'observers' must be an array of 3-vectors");
                cfg.observers.push_back({as_number(o.array[0], key), as_number(o.array[1], key),
                                         as_number(o.array[2], key)});
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    if (!radii_set) {
        const double scale = cfg.mass > 0 ? cfg.mass : 1.0;
        cfg.radii = {250 * scale, 500 * scale, 1000 * scale, 2000 * scale};
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
    if (!(cfg.mass >= 0)) throw ConfigError("field 'M' must be nonnegative");
    if (!(std::abs(cfg.beta) < 1)) throw ConfigError("field 'beta' must satisfy |beta| < 1");
    if (cfg.order < 16 || cfg.order > 512)
        throw ConfigError("field 'order' must lie in [16, 512]");
    if (cfg.nphi < 4 || cfg.nphi % 2 != 0)
        throw ConfigError("field 'nphi' must be even and at least 4");
    if (cfg.radii.size() < 3)
        throw ConfigError("field 'radii' must list at least three radii");
    double prev = 0.0;
    for (double r : cfg.radii) {
        if (!(r > prev)) throw ConfigError("field 'radii' must be positive and increasing");
        prev = r;
    }
    if (cfg.observers.empty()) throw ConfigError("field 'observers' must not be empty");
    if (cfg.scenario == Scenario::CustomDsl && cfg.metric.components.empty())
        throw ConfigError("scenario 'custom-dsl' requires a [metric] section");
}

std::string scenario_name(Scenario s) {
    switch (s) {
    case Scenario::Minkowski:
        return "minkowski";
    case Scenario::Schwarzschild:
        return "schwarzschild";
    case Scenario::BoostedSchwarzschild:
        return "boosted-schwarzschild";
    case Scenario::CustomDsl:
        return "custom-dsl";
    }
    return "?";
}

} // namespace qlm
