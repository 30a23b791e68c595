#ifndef TISGM_CLI_CONFIG_HPP
#define TISGM_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tisgm::cli {

struct ThetaRange {
    double start;
    double stop;
    int points;

    std::vector<double> grid() const;
};

enum class Format { csv, json };

/// Effective run configuration. Precedence: command-line flags > config
/// file (--config, JSON) > defaults. The echo of this struct is embedded
/// in every output so runs are reproducible from their artifacts.
struct RunConfig {
    std::string command;
    std::optional<double> theta;
    std::optional<ThetaRange> theta_range;
    std::vector<int> ks;
    int grid = 2001;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::string out;  // empty: TISGM_OUT_DIR/<command>.<ext>, else stdout
    Format format = Format::csv;
    // command-specific
    double bracket_lo = 1.0;
    double bracket_hi = 5.0;
    int depth = 3;
    long trees = 100000;
    std::string law = "disordered";
    std::optional<double> x_override;

    /// Grid of theta values: the range if given, else the single theta.
    std::vector<double> theta_grid() const;

    /// Deterministic JSON echo of the effective configuration.
    std::string echo_json() const;
};

/// "A:B:N" with A < B, N >= 2.
ThetaRange parse_theta_range(const std::string& text);

/// "2" or "2,3,4".
std::vector<int> parse_k_list(const std::string& text);

/// "A:B" with A < B.
std::pair<double, double> parse_bracket(const std::string& text);

/// Load defaults from a JSON config file into cfg (flags applied later
/// override these). Throws std::runtime_error with a usable message on
/// malformed files.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Resolve the output target: explicit --out wins; otherwise
/// $TISGM_OUT_DIR/<command>.<csv|json> when the variable is set; otherwise
/// empty (stdout).
std::string resolve_out_path(const RunConfig& cfg);

} // namespace tisgm::cli

#endif
