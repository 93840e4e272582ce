#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/params.hpp"

namespace wqed::cli {

// Bad configuration (exit status 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Unreadable input or unwritable output (exit status 3).
class IoError : public Error {
public:
    using Error::Error;
};

using KeyValues = std::map<std::string, std::string>;

enum class Kind { Number, Angle, Integer, Text };

struct KeySpec {
    std::string name;
    Kind kind;
    std::string help;
};

const std::vector<std::string>& experiment_names();

// Keys accepted by an experiment, with their defaults.
const std::vector<KeySpec>& key_specs();
KeyValues defaults_for(const std::string& experiment);

// "key = value" lines; blank lines and text after '#' are ignored.
KeyValues parse_config_text(const std::string& text, const std::string& source);
KeyValues read_config_file(const std::string& path);

// Number with an optional "pi" suffix ("25.5pi", "pi", "-0.5pi").
double parse_angle(const std::string& key, const std::string& value);
double parse_number(const std::string& key, const std::string& value);
long parse_integer(const std::string& key, const std::string& value);

// Fully resolved run description: defaults, then the config file, then flags.
class ExperimentConfig {
public:
    ExperimentConfig(std::string experiment, const KeyValues& file, const KeyValues& flags);

    const std::string& experiment() const { return experiment_; }
    const KeyValues& values() const { return values_; }

    double number(const std::string& key) const;
    double angle(const std::string& key) const;
    long integer(const std::string& key) const;
    const std::string& text(const std::string& key) const;

    SystemParams params() const;
    QuadratureSettings quadrature() const;

private:
    const std::string& raw(const std::string& key) const;

    std::string experiment_;
    KeyValues values_;
};

}  // namespace wqed::cli
