#include "cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tisgm::cli {

using nlohmann::json;

std::vector<double> ThetaRange::grid() const {
    std::vector<double> g;
    g.reserve(points);
    for (int i = 0; i < points; ++i) {
        g.push_back(start + (stop - start) * i / (points - 1));
    }
    return g;
}

std::vector<double> RunConfig::theta_grid() const {
    if (theta_range) return theta_range->grid();
    if (theta) return {*theta};
    throw std::runtime_error("either --theta or --theta-range is required");
}

std::string RunConfig::echo_json() const {
    json j;
    j["command"] = command;
    if (theta) j["theta"] = *theta;
    if (theta_range) {
        j["theta_range"] = {{"start", theta_range->start},
                            {"stop", theta_range->stop},
                            {"points", theta_range->points}};
    }
    if (!ks.empty()) j["k"] = ks;
    j["grid"] = grid;
    j["tol"] = tol;
    j["seed"] = seed;
    j["format"] = format == Format::csv ? "csv" : "json";
    if (command == "critical") {
        j["bracket"] = {bracket_lo, bracket_hi};
    }
    if (command == "sample" || command == "verify") {
        j["depth"] = depth;
    }
    if (command == "sample") {
        j["trees"] = trees;
        j["law"] = law;
        if (x_override) j["x"] = *x_override;
    }
    return j.dump();
}

ThetaRange parse_theta_range(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::runtime_error("theta range must be START:STOP:POINTS");
    }
    ThetaRange r{};
    try {
        r.start = std::stod(text.substr(0, c1));
        r.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        r.points = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw std::runtime_error("theta range must be START:STOP:POINTS");
    }
    if (!(r.start < r.stop) || r.points < 2) {
        throw std::runtime_error("theta range needs start < stop and points >= 2");
    }
    return r;
}

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> ks;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            ks.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw std::runtime_error("k list must be comma-separated integers");
        }
        if (ks.back() < 1) throw std::runtime_error("k must be >= 1");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (ks.empty()) throw std::runtime_error("k list must be nonempty");
    return ks;
}

std::pair<double, double> parse_bracket(const std::string& text) {
    const auto c = text.find(':');
    if (c == std::string::npos) {
        throw std::runtime_error("bracket must be LO:HI");
    }
    double lo, hi;
    try {
        lo = std::stod(text.substr(0, c));
        hi = std::stod(text.substr(c + 1));
    } catch (const std::exception&) {
        throw std::runtime_error("bracket must be LO:HI");
    }
    if (!(lo < hi) || !(lo > 0.0)) {
        throw std::runtime_error("bracket needs 0 < lo < hi");
    }
    return {lo, hi};
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("malformed config file " + path + ": " + e.what());
    }

    if (j.contains("theta")) cfg.theta = j["theta"].get<double>();
    if (j.contains("theta_range")) {
        cfg.theta_range = parse_theta_range(j["theta_range"].get<std::string>());
    }
    if (j.contains("k")) {
        if (j["k"].is_array()) {
            cfg.ks = j["k"].get<std::vector<int>>();
        } else {
            cfg.ks = {j["k"].get<int>()};
        }
    }
    if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) {
        const auto f = j["format"].get<std::string>();
        if (f == "csv") cfg.format = Format::csv;
        else if (f == "json") cfg.format = Format::json;
        else throw std::runtime_error("format must be csv or json");
    }
    if (j.contains("bracket")) {
        const auto b = parse_bracket(j["bracket"].get<std::string>());
        cfg.bracket_lo = b.first;
        cfg.bracket_hi = b.second;
    }
    if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
    if (j.contains("trees")) cfg.trees = j["trees"].get<long>();
    if (j.contains("law")) cfg.law = j["law"].get<std::string>();
    if (j.contains("x")) cfg.x_override = j["x"].get<double>();
}

std::string resolve_out_path(const RunConfig& cfg) {
    if (!cfg.out.empty()) return cfg.out;
    if (const char* dir = std::getenv("TISGM_OUT_DIR"); dir && *dir) {
        const char* ext = cfg.format == Format::csv ? ".csv" : ".json";
        return std::string(dir) + "/" + cfg.command + ext;
    }
    return {};
}

} // namespace tisgm::cli
