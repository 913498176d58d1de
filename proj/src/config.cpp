#include "hybo/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace hybo {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("invalid value for '" + key + "': '" + value + "'");
    }
    return out;
}

bool parse_switch(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw std::invalid_argument("invalid value for '" + key + "': '" + value + "' (expected on/off)");
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in, const std::string& source) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "benchmark") {
        cfg.benchmark = value;
    } else if (key == "method") {
        cfg.method = parse_method(value);
    } else if (key == "budget") {
        cfg.budget = parse_number<int>(key, value);
    } else if (key == "n_init") {
        cfg.n_init = parse_number<int>(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "max_order") {
        cfg.max_order = value == "full" ? 0 : parse_number<int>(key, value);
    } else if (key == "afo.cma_population") {
        cfg.afo.cma_population = parse_number<int>(key, value);
    } else if (key == "afo.cma_sigma0") {
        cfg.afo.cma_sigma0 = parse_number<double>(key, value);
    } else if (key == "afo.cma_budget") {
        cfg.afo.cma_budget = parse_number<int>(key, value);
    } else if (key == "afo.ls_restarts") {
        cfg.afo.ls_restarts = parse_number<int>(key, value);
    } else if (key == "afo.alternations") {
        cfg.afo.alternations = parse_number<int>(key, value);
    } else if (key == "hyper.n_samples") {
        cfg.hyper.n_samples = parse_number<int>(key, value);
    } else if (key == "hyper.burn_in") {
        cfg.hyper.burn_in = parse_number<int>(key, value);
    } else if (key == "output") {
        cfg.output_path = value;
    } else if (key == "timing") {
        cfg.record_timing = parse_switch(key, value);
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    RunConfig cfg;
    for (const auto& [k, v] : parse_key_values(in, path)) apply_setting(cfg, k, v);
    return cfg;
}

}  // namespace hybo
