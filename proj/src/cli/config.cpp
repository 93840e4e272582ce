#include "cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wqed::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const KeySpec* find_spec(const std::string& key) {
    for (const auto& k : key_specs())
        if (k.name == key) return &k;
    return nullptr;
}

const char* kSchemaHint =
    "expected lines of the form 'key = value', e.g. 'k0L = 25.5pi' (run 'wqed --help' for keys)";

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"fig1-map",         "fig2-g2",    "fig3-g2",
                                                    "fig4-poles",       "fig5-concurrence",
                                                    "figS1-poles",      "custom"};
    return names;
}

const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs = {
        {"omega0", Kind::Number, "qubit frequency (units of Gamma)"},
        {"gamma-prime", Kind::Number, "loss rate to non-guided modes"},
        {"k0L", Kind::Angle, "separation phase omega0 L / c"},
        {"output", Kind::Text, "output file, '-' for stdout"},
        {"format", Kind::Text, "csv or json"},
        {"quad-tol", Kind::Number, "relative tolerance of the momentum integrals"},
        {"window", Kind::Number, "starting half width of the integration window"},
        {"max-refine", Kind::Integer, "maximum number of window doublings"},
        {"delta", Kind::Number, "detuning ck - omega0 of the incident photons"},
        {"delta-min", Kind::Number, "first detuning of the map"},
        {"delta-max", Kind::Number, "last detuning of the map"},
        {"n-delta", Kind::Integer, "number of detunings"},
        {"phase-min", Kind::Angle, "first value of 2kL"},
        {"phase-max", Kind::Angle, "last value of 2kL"},
        {"n-phase", Kind::Integer, "number of 2kL values"},
        {"tau-max", Kind::Number, "largest delay (units of 1/Gamma)"},
        {"n-tau", Kind::Integer, "number of delays"},
        {"xc-offset", Kind::Number, "distance of the reference point from the nearest qubit"},
        {"channel", Kind::Text, "both, transmitted or reflected"},
        {"k0L-min", Kind::Angle, "first k0L of a scan"},
        {"k0L-max", Kind::Angle, "last k0L of a scan or continuation"},
        {"step", Kind::Angle, "largest continuation step in k0L"},
        {"stride", Kind::Integer, "write every n-th continuation step"},
        {"newton-tol", Kind::Number, "Newton tolerance on |F|"},
        {"max-iter", Kind::Integer, "Newton iteration limit"},
        {"n-points", Kind::Integer, "number of k0L values"},
        {"mode", Kind::Text, "markov, renormalized or both"},
        {"Omega1", Kind::Number, "Rabi frequency on qubit 1"},
        {"Omega2", Kind::Number, "Rabi frequency on qubit 2"},
        {"drive-detuning", Kind::Number, "drive frequency minus omega0"},
        {"re-min", Kind::Number, "window: smallest Re omega - omega0"},
        {"re-max", Kind::Number, "window: largest Re omega - omega0"},
        {"im-min", Kind::Number, "window: smallest Im omega"},
        {"im-max", Kind::Number, "window: largest Im omega"},
    };
    return specs;
}

KeyValues defaults_for(const std::string& experiment) {
    KeyValues v = {{"omega0", "100"}, {"gamma-prime", "0.1"}, {"k0L", "0"},
                   {"output", "-"},   {"format", "csv"}};
    const KeyValues quad = {{"quad-tol", "1e-6"}, {"window", "50"}, {"max-refine", "10"}};
    const KeyValues newton = {{"newton-tol", "1e-12"}, {"max-iter", "50"}, {"step", "0.01pi"}};
    const KeyValues drive = {{"Omega1", "0.1"}, {"Omega2", "0"}, {"drive-detuning", "0"}};
    auto add = [&v](const KeyValues& more) { v.insert(more.begin(), more.end()); };

    if (experiment == "fig1-map") {
        v["gamma-prime"] = "0";
        add({{"delta-min", "-3"}, {"delta-max", "3"}, {"n-delta", "121"},
             {"phase-min", "0"},  {"phase-max", "4pi"}, {"n-phase", "121"}});
        v.erase("k0L");
    } else if (experiment == "fig2-g2" || experiment == "fig3-g2") {
        add(quad);
        const bool markov = experiment == "fig2-g2";
        v["k0L"] = markov ? "0" : "25.5pi";
        add({{"delta", "0"},
             {"tau-max", markov ? "10" : "50"},
             {"n-tau", markov ? "201" : "401"},
             {"xc-offset", "1"},
             {"channel", "both"}});
    } else if (experiment == "fig4-poles") {
        add(newton);
        add({{"k0L-max", "100.5pi"}, {"stride", "1"}});
        v.erase("k0L");
    } else if (experiment == "fig5-concurrence") {
        add(newton);
        add(drive);
        add({{"k0L-min", "0"}, {"k0L-max", "5pi"}, {"n-points", "501"}, {"mode", "both"}});
        v.erase("k0L");
    } else if (experiment == "figS1-poles") {
        add(newton);
        v["k0L"] = "100.5pi";
        v["format"] = "json";
        add({{"re-min", "-4"}, {"re-max", "4"}, {"im-min", "-2"}, {"im-max", "0"}});
    } else if (experiment == "custom") {
        add(quad);
        add(newton);
        add(drive);
        add({{"delta", "0"}});
    } else {
        std::string known;
        for (const auto& n : experiment_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("config", "unknown experiment '" + experiment + "' (known: " + known + ")");
    }
    return v;
}

KeyValues parse_config_text(const std::string& text, const std::string& source) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw ConfigError("read_config", where + ": missing '='; " + kSchemaHint);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("read_config", where + ": empty key or value; " + kSchemaHint);
        if (!find_spec(key)) throw ConfigError("read_config", where + ": unknown key '" + key + "'");
        if (out.count(key)) throw ConfigError("read_config", where + ": duplicate key '" + key + "'");
        out[key] = value;
    }
    if (out.empty()) throw ConfigError("read_config", source + " has no settings; " + kSchemaHint);
    return out;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("read_config", "cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw IoError("read_config", "cannot read config file " + path);
    return parse_config_text(ss.str(), path);
}

double parse_number(const std::string& key, const std::string& value) {
    const std::string s = trim(value);
    if (s.empty()) throw ConfigError("config", key + ": empty value");
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x))
        throw ConfigError("config", key + ": '" + value + "' is not a finite number");
    return x;
}

double parse_angle(const std::string& key, const std::string& value) {
    const std::string s = trim(value);
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        const std::string head = s.substr(0, s.size() - 2);
        if (head.empty() || head == "+") return kPi;
        if (head == "-") return -kPi;
        return parse_number(key, head) * kPi;
    }
    return parse_number(key, s);
}

long parse_integer(const std::string& key, const std::string& value) {
    const std::string s = trim(value);
    char* end = nullptr;
    errno = 0;
    const long n = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError("config", key + ": '" + value + "' is not an integer");
    return n;
}

ExperimentConfig::ExperimentConfig(std::string experiment, const KeyValues& file,
                                   const KeyValues& flags)
    : experiment_(std::move(experiment)), values_(defaults_for(experiment_)) {
    for (const KeyValues* layer : {&file, &flags})
        for (const auto& [k, v] : *layer) {
            if (!values_.count(k)) {
                std::string known;
                for (const auto& [name, _] : values_) known += (known.empty() ? "" : ", ") + name;
                throw ConfigError("config", "key '" + k + "' does not apply to " + experiment_ +
                                                " (accepted: " + known + ")");
            }
            values_[k] = v;
        }
    // Type-check everything up front so a bad value fails before any work.
    for (const auto& [k, v] : values_) {
        switch (find_spec(k)->kind) {
            case Kind::Number: parse_number(k, v); break;
            case Kind::Angle: parse_angle(k, v); break;
            case Kind::Integer: parse_integer(k, v); break;
            case Kind::Text: break;
        }
    }
    const std::string& fmt = text("format");
    if (fmt != "csv" && fmt != "json") throw ConfigError("config", "format must be csv or json");
}

const std::string& ExperimentConfig::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("config", "key '" + key + "' is not set for " + experiment_);
    return it->second;
}

double ExperimentConfig::number(const std::string& key) const { return parse_number(key, raw(key)); }
double ExperimentConfig::angle(const std::string& key) const { return parse_angle(key, raw(key)); }
long ExperimentConfig::integer(const std::string& key) const { return parse_integer(key, raw(key)); }
const std::string& ExperimentConfig::text(const std::string& key) const { return raw(key); }

SystemParams ExperimentConfig::params() const {
    SystemParams p;
    p.omega0 = number("omega0");
    p.gamma_prime = number("gamma-prime");
    p.k0L = values_.count("k0L") ? angle("k0L") : 0.0;
    try {
        return validate(p);
    } catch (const DomainError& e) {
        throw ConfigError(e.op(), std::string(e.what()).substr(e.op().size() + 2));
    }
}

QuadratureSettings ExperimentConfig::quadrature() const {
    QuadratureSettings q;
    q.tol = number("quad-tol");
    q.window = number("window");
    q.max_refine = static_cast<int>(integer("max-refine"));
    if (!(q.tol > 0) || !(q.window > 0) || q.max_refine < 0)
        throw ConfigError("config", "quad-tol and window must be > 0, max-refine >= 0");
    return q;
}

}  // namespace wqed::cli
