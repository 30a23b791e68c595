#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

using tisgm::cli::Format;
using tisgm::cli::RunConfig;

int main(int argc, char** argv) {
    // Pre-pass: an optional JSON config file supplies defaults; flags
    // parsed below override them.
    RunConfig cfg;
    try {
        for (int i = 1; i + 1 < argc; ++i) {
            if (std::string(argv[i]) == "--config") {
                tisgm::cli::load_config_file(argv[i + 1], cfg);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "tisgm: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{
        "Fixed points, phase classification, Kesten-Stigum scans, sampling "
        "and exact small-volume checks for the period-3 triple mixed-spin "
        "Ising model on Cayley trees"};
    app.require_subcommand(1);

    std::string theta_range_text, k_text, bracket_text, format_text, config_path;

    const auto parse_double = [](const std::string& v, const char* flag) {
        try {
            std::size_t used = 0;
            const double x = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(flag) +
                                     " expects a number, got '" + v + "'");
        }
    };

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--theta", "single theta value")
            ->each([&](const std::string& v) {
                cfg.theta = parse_double(v, "--theta");
            });
        sub->add_option("--theta-range", theta_range_text,
                        "theta grid START:STOP:POINTS")
            ->each([&](const std::string& v) {
                cfg.theta_range = tisgm::cli::parse_theta_range(v);
            });
        sub->add_option("--k", k_text, "tree order(s), e.g. 2 or 2,3,4,5")
            ->each([&](const std::string& v) {
                cfg.ks = tisgm::cli::parse_k_list(v);
            });
        sub->add_option("--grid", cfg.grid, "fixed-point scan grid size");
        sub->add_option("--tol", cfg.tol, "verification residual tolerance");
        sub->add_option("--seed", cfg.seed, "RNG seed (splitmix64)");
        sub->add_option("--out", cfg.out,
                        "output file (default: $TISGM_OUT_DIR/<cmd>.<ext>, "
                        "else stdout)");
        sub->add_option("--format", format_text, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->each([&](const std::string& v) {
                cfg.format = v == "json" ? Format::json : Format::csv;
            });
        sub->add_option("--config", config_path,
                        "JSON config file (flags override it)");
    };

    CLI::App* stability = app.add_subcommand(
        "stability", "s_k(theta) = f'(1) - 1 over a theta grid");
    CLI::App* critical = app.add_subcommand(
        "critical", "critical theta where s_k changes sign, per k");
    CLI::App* phases = app.add_subcommand(
        "phases", "fixed points, stability and regime per (theta, k)");
    CLI::App* ks = app.add_subcommand(
        "ks", "Kesten-Stigum scan g_k(theta) at the disordered law");
    CLI::App* sample = app.add_subcommand(
        "sample", "forward-sample the tree-indexed chain of a boundary law");
    CLI::App* verify = app.add_subcommand(
        "verify", "exact small-volume checks: compatibility, TP2, Holley, "
                  "MLR, sandwich");

    for (CLI::App* sub : {stability, critical, phases, ks, sample, verify}) {
        add_common(sub);
    }
    critical->add_option("--bracket", bracket_text, "search bracket LO:HI")
        ->each([&](const std::string& v) {
            const auto b = tisgm::cli::parse_bracket(v);
            cfg.bracket_lo = b.first;
            cfg.bracket_hi = b.second;
        });
    sample->add_option("--depth", cfg.depth, "ball radius to sample");
    sample->add_option("--trees", cfg.trees, "number of independent trees");
    sample->add_option("--law", cfg.law, "disordered, minus or plus");
    sample->add_option("--x", "explicit psi-ratio x for the law")
        ->each([&](const std::string& v) {
            cfg.x_override = parse_double(v, "--x");
        });
    verify->add_option("--depth", cfg.depth, "volume radius for exact checks");

    // different defaults per command when neither flag nor config file set it
    const bool depth_from_file = cfg.depth != 3;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "tisgm: " << e.what() << "\n";
        return 1;
    }

    for (CLI::App* sub : {stability, critical, phases, ks, sample, verify}) {
        if (sub->parsed()) cfg.command = sub->get_name();
    }
    if (cfg.command == "verify" && !depth_from_file &&
        verify->count("--depth") == 0) {
        cfg.depth = 2;
    }

    return tisgm::cli::run(cfg);
}
