#include "bathdiff/config.hpp"

#include "bathdiff/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace bathdiff {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: key '" + key + "' expects true/false, got '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ConfigError("config: key '" + key + "' has an empty list element");
        }
        out.push_back(parse_int(key, item));
    }
    return out;
}

void apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "N_E") {
        cfg.n_bath = parse_int(key, value);
    } else if (key == "n_exc") {
        cfg.n_exc = parse_int(key, value);
    } else if (key == "omega_BW") {
        cfg.omega_bw = parse_double(key, value);
    } else if (key == "gamma") {
        cfg.gamma = parse_double(key, value);
    } else if (key == "V") {
        cfg.coupling = parse_double(key, value);
    } else if (key == "omega0") {
        cfg.omega0 = parse_double(key, value);
    } else if (key == "horizon") {
        cfg.horizon = parse_double(key, value);
    } else if (key == "n_steps") {
        cfg.n_steps = parse_int(key, value);
    } else if (key == "occupied_modes") {
        cfg.occupied_modes = parse_int_list(key, value);
    } else if (key == "me2") {
        cfg.with_me2 = parse_bool(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "' in [scenario]");
    }
}

void apply_sweep_key(SweepConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "N_E_min") {
        cfg.n_bath_min = parse_int(key, value);
    } else if (key == "N_E_max") {
        cfg.n_bath_max = parse_int(key, value);
    } else if (key == "gamma") {
        cfg.gamma = parse_double(key, value);
    } else if (key == "omega_BW_factor") {
        cfg.omega_bw_factor = parse_double(key, value);
    } else if (key == "horizon") {
        cfg.horizon = parse_double(key, value);
    } else if (key == "n_steps") {
        cfg.n_steps = parse_int(key, value);
    } else if (key == "me2") {
        cfg.with_me2 = parse_bool(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "' in [sweep]");
    }
}

} // namespace

ParsedConfig parse_config_text(const std::string& text) {
    ParsedConfig parsed;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section == "scenario") {
                if (!parsed.scenario) parsed.scenario = ScenarioConfig{};
            } else if (section == "sweep") {
                if (!parsed.sweep) parsed.sweep = SweepConfig{};
            } else {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unknown section [" + section + "]");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        if (section.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": key '" + key + "' outside any section");
        }
        if (section == "scenario") {
            apply_scenario_key(*parsed.scenario, key, value);
        } else {
            apply_sweep_key(*parsed.sweep, key, value);
        }
        parsed.raw[section][key] = value;
    }
    return parsed;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace bathdiff
