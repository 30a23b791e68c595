#include "cli/commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "tisgm/chain.hpp"
#include "tisgm/oracle.hpp"
#include "tisgm/rng.hpp"
#include "tisgm/solver.hpp"
#include "tisgm/spectral.hpp"

namespace tisgm::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_header(const RunConfig& cfg, const std::string& columns) {
    std::string out;
    out += "# tisgm " + cfg.command + "\n";
    out += "# config: " + cfg.echo_json() + "\n";
    out += columns + "\n";
    return out;
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::attracting: return "attracting";
        case Stability::repelling: return "repelling";
        default: return "neutral";
    }
}

const char* regime_name(Regime r) {
    return r == Regime::coexistence ? "coexistence" : "unique_disordered";
}

json fixed_point_json(const FixedPoint& fp) {
    return json{{"x", fp.x_star},
                {"multiplier", fp.multiplier},
                {"stability", stability_name(fp.stability)},
                {"residual", fp.residual}};
}

BoundaryLaw law_for_config(const RunConfig& cfg, const ScalarMapContext& ctx) {
    if (cfg.x_override) return law_from_x(*cfg.x_override, ctx);
    if (cfg.law == "disordered") return disordered_law(ctx);
    if (cfg.law == "minus" || cfg.law == "plus") {
        const auto fps = find_fixed_points(ctx, cfg.grid);
        if (fps.size() < 3) {
            throw BracketingError("law '" + cfg.law +
                                  "' needs the coexistence regime (found " +
                                  std::to_string(fps.size()) + " fixed points)");
        }
        return law_from_x(cfg.law == "minus" ? fps.front().x_star
                                             : fps.back().x_star,
                          ctx);
    }
    throw std::runtime_error("law must be disordered, minus, plus (or use --x)");
}

} // namespace

std::string render_stability(const RunConfig& cfg) {
    const auto thetas = cfg.theta_grid();
    const auto& ks = cfg.ks;
    if (ks.empty()) throw std::runtime_error("--k is required");

    if (cfg.format == Format::json) {
        json rows = json::array();
        for (int k : ks) {
            for (double th : thetas) {
                rows.push_back(json{{"theta", th}, {"k", k}, {"s_k", s_k(th, k)}});
            }
        }
        return json{{"config", json::parse(cfg.echo_json())}, {"rows", rows}}
                   .dump(2) +
               "\n";
    }
    std::string out = csv_header(cfg, "theta,k,s_k");
    for (int k : ks) {
        for (double th : thetas) {
            out += num(th) + "," + std::to_string(k) + "," + num(s_k(th, k)) + "\n";
        }
    }
    return out;
}

std::string render_critical(const RunConfig& cfg) {
    if (cfg.ks.empty()) throw std::runtime_error("--k is required");
    std::vector<std::pair<int, double>> rows;
    for (int k : cfg.ks) {
        rows.emplace_back(k, critical_theta(k, {cfg.bracket_lo, cfg.bracket_hi}));
    }
    if (cfg.format == Format::json) {
        json jr = json::array();
        for (auto [k, tc] : rows) jr.push_back(json{{"k", k}, {"theta_c", tc}});
        return json{{"config", json::parse(cfg.echo_json())}, {"rows", jr}}.dump(2) +
               "\n";
    }
    std::string out = csv_header(cfg, "k,theta_c");
    for (auto [k, tc] : rows) out += std::to_string(k) + "," + num(tc) + "\n";
    return out;
}

namespace {

// In a three-point coexistence the extremes are the minus/plus phases;
// the symmetric point is always the disordered one.
std::string phase_label(const PhasePoint& p, std::size_t i) {
    if (p.fixed_points[i].x_star == 1.0) return "disordered";
    if (p.fixed_points.size() == 3) return i == 0 ? "minus" : "plus";
    return "ordered";
}

} // namespace

std::string render_phases(const RunConfig& cfg) {
    const auto thetas = cfg.theta_grid();
    if (cfg.ks.empty()) throw std::runtime_error("--k is required");

    std::vector<PhasePoint> points;
    for (int k : cfg.ks) {
        for (double th : thetas) points.push_back(classify_phase(th, k));
    }

    if (cfg.format == Format::csv) {
        std::string out = csv_header(
            cfg, "theta,k,s_k,regime,x_star,multiplier,stability,residual,phase");
        for (const auto& p : points) {
            for (std::size_t i = 0; i < p.fixed_points.size(); ++i) {
                const auto& fp = p.fixed_points[i];
                out += num(p.theta) + "," + std::to_string(p.k) + "," +
                       num(p.s_k) + "," + regime_name(p.regime) + "," +
                       num(fp.x_star) + "," + num(fp.multiplier) + "," +
                       stability_name(fp.stability) + "," + num(fp.residual) +
                       "," + phase_label(p, i) + "\n";
            }
        }
        return out;
    }
    json jp = json::array();
    for (const auto& p : points) {
        json fps = json::array();
        for (std::size_t i = 0; i < p.fixed_points.size(); ++i) {
            json fp = fixed_point_json(p.fixed_points[i]);
            fp["phase"] = phase_label(p, i);
            fps.push_back(std::move(fp));
        }
        jp.push_back(json{{"theta", p.theta},
                          {"k", p.k},
                          {"s_k", p.s_k},
                          {"regime", regime_name(p.regime)},
                          {"fixed_points", fps},
                          {"suspected_tangencies", p.suspected_tangencies}});
    }
    return json{{"config", json::parse(cfg.echo_json())}, {"phase_points", jp}}
               .dump(2) +
           "\n";
}

std::string render_ks(const RunConfig& cfg) {
    const auto thetas = cfg.theta_grid();
    if (cfg.ks.empty()) throw std::runtime_error("--k is required");

    std::vector<KSScan> scans;
    for (int k : cfg.ks) scans.push_back(ks_scan(k, thetas));

    if (cfg.format == Format::json) {
        json jk = json::array();
        for (std::size_t i = 0; i < scans.size(); ++i) {
            json rows = json::array();
            for (const auto& r : scans[i].reports) {
                rows.push_back(json{{"theta", r.theta},
                                    {"k", r.k},
                                    {"lambda2", r.lambda2},
                                    {"g_k", r.g},
                                    {"non_extremal", r.non_extremal}});
            }
            json ivs = json::array();
            for (const auto& iv : scans[i].positive_intervals) {
                ivs.push_back(json{{"theta_lo", iv.theta_lo},
                                   {"theta_hi", iv.theta_hi},
                                   {"width", iv.width()}});
            }
            jk.push_back(json{{"k", cfg.ks[i]},
                              {"rows", rows},
                              {"positive_intervals", ivs}});
        }
        return json{{"config", json::parse(cfg.echo_json())}, {"scans", jk}}
                   .dump(2) +
               "\n";
    }

    std::string out = "# tisgm ks\n# config: " + cfg.echo_json() + "\n";
    for (std::size_t i = 0; i < scans.size(); ++i) {
        for (const auto& iv : scans[i].positive_intervals) {
            out += "# positive_interval k=" + std::to_string(cfg.ks[i]) + ": [" +
                   num(iv.theta_lo) + ", " + num(iv.theta_hi) +
                   "] width=" + num(iv.width()) + "\n";
        }
    }
    out += "theta,k,lambda2,g_k,non_extremal\n";
    for (const auto& scan : scans) {
        for (const auto& r : scan.reports) {
            out += num(r.theta) + "," + std::to_string(r.k) + "," +
                   num(r.lambda2) + "," + num(r.g) + "," +
                   (r.non_extremal ? "1" : "0") + "\n";
        }
    }
    return out;
}

std::string render_sample(const RunConfig& cfg) {
    if (!cfg.theta) throw std::runtime_error("--theta is required");
    if (cfg.ks.size() != 1) throw std::runtime_error("sample needs exactly one k");
    const ScalarMapContext ctx(make_params(*cfg.theta, cfg.ks[0]));
    const BoundaryLaw law = law_for_config(cfg, ctx);

    const LevelHistogram hist =
        sample_histogram(law, ctx, cfg.depth, cfg.trees, cfg.seed);
    const MagnetizationEstimate mag =
        magnetization(law, ctx, cfg.depth, cfg.trees, cfg.seed);

    if (cfg.format == Format::json) {
        json jh = json::array();
        for (int d = 0; d <= hist.depth; ++d) {
            const auto alpha = SpinAlphabets::doubled(SpinAlphabets::level_of(d));
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                jh.push_back(json{{"level", d},
                                  {"value", SpinAlphabets::real_value(alpha[i])},
                                  {"count", hist.counts[d][i]}});
            }
        }
        json jm{{"m0", mag.m0},           {"m1", mag.m1},   {"m2", mag.m2},
                {"se0", mag.se0},         {"se1", mag.se1}, {"se2", mag.se2},
                {"trees", mag.trees},     {"depth", mag.depth},
                {"seed", mag.seed},       {"rng", mag.rng_id}};
        return json{{"config", json::parse(cfg.echo_json())},
                    {"histogram", jh},
                    {"magnetization", jm}}
                   .dump(2) +
               "\n";
    }

    std::string out = "# tisgm sample\n# config: " + cfg.echo_json() + "\n";
    out += "# rng: " + std::string(mag.rng_id) + "\n";
    out += "# magnetization: m0=" + num(mag.m0) + " se0=" + num(mag.se0) +
           " m1=" + num(mag.m1) + " se1=" + num(mag.se1) + " m2=" +
           num(mag.m2) + " se2=" + num(mag.se2) + " trees=" +
           std::to_string(mag.trees) + "\n";
    char line[80];
    out += "level,value,count\n";
    for (int d = 0; d <= hist.depth; ++d) {
        const auto alpha = SpinAlphabets::doubled(SpinAlphabets::level_of(d));
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            std::snprintf(line, sizeof line, "%d,%g,%" PRId64 "\n", d,
                          SpinAlphabets::real_value(alpha[i]),
                          static_cast<std::int64_t>(hist.counts[d][i]));
            out += line;
        }
    }
    return out;
}

namespace {

struct Check {
    std::string name;
    std::string expected;
    std::string observed;
    bool pass;
    std::string detail;
};

void add_check(std::vector<Check>& checks, std::string name,
               std::string expected, std::string observed, std::string detail) {
    const bool pass = expected == observed;
    checks.push_back({std::move(name), std::move(expected), std::move(observed),
                      pass, std::move(detail)});
}

} // namespace

VerifyResult render_verify(const RunConfig& cfg) {
    if (!cfg.theta) throw std::runtime_error("--theta is required");
    if (cfg.ks.size() != 1) throw std::runtime_error("verify needs exactly one k");
    const double theta = *cfg.theta;
    const int k = cfg.ks[0];
    const ScalarMapContext ctx(make_params(theta, k));
    const bool ferro = theta > 1.0;

    std::vector<Check> checks;

    // compatibility for the law of every fixed point, plus a perturbed run
    const PhasePoint phase = classify_phase(theta, k);
    for (const auto& fp : phase.fixed_points) {
        const auto fields = FieldAssignment::from_law(
            law_from_x(fp.x_star, ctx), k, cfg.depth);
        const double res = check_compatibility(fields, ctx, cfg.depth);
        add_check(checks, "compatibility x=" + num(fp.x_star), "hold",
                  res <= cfg.tol ? "hold" : "violate",
                  "residual=" + num(res) + " tol=" + num(cfg.tol));
    }
    {
        auto fields =
            FieldAssignment::from_law(disordered_law(ctx), k, cfg.depth);
        const BallIndex ball(k, cfg.depth);
        fields.h[ball.level_offset(cfg.depth)][1] += 0.1;
        const double res = check_compatibility(fields, ctx, cfg.depth);
        add_check(checks, "compatibility (perturbed fields)", "violate",
                  res > 1e-4 ? "violate" : "hold", "residual=" + num(res));
    }

    // TP2 cross-ratio: identity always, >= 1 only in the ferromagnetic case
    {
        double worst_identity = 0.0;
        double min_ratio = 1e300;
        const Level parents[3] = {Level::psi, Level::phi, Level::upsilon};
        for (Level parent : parents) {
            const Level child =
                static_cast<Level>((static_cast<int>(parent) + 1) % 3);
            const auto sa = SpinAlphabets::doubled(parent);
            const auto ta = SpinAlphabets::doubled(child);
            for (std::size_t i = 0; i < sa.size(); ++i) {
                for (std::size_t j = i + 1; j < sa.size(); ++j) {
                    for (std::size_t a = 0; a < ta.size(); ++a) {
                        for (std::size_t b = a + 1; b < ta.size(); ++b) {
                            const double s1 = SpinAlphabets::real_value(sa[i]);
                            const double s2 = SpinAlphabets::real_value(sa[j]);
                            const double t1 = SpinAlphabets::real_value(ta[a]);
                            const double t2 = SpinAlphabets::real_value(ta[b]);
                            const double ratio =
                                check_tp2({s1, s2}, {t1, t2}, ctx);
                            const double closed = std::exp(
                                2.0 * std::log(theta) * (s2 - s1) * (t2 - t1));
                            worst_identity = std::max(
                                worst_identity,
                                std::abs(ratio - closed) / closed);
                            min_ratio = std::min(min_ratio, ratio);
                        }
                    }
                }
            }
        }
        add_check(checks, "tp2 cross-ratio identity", "hold",
                  worst_identity <= 1e-12 ? "hold" : "violate",
                  "worst relative deviation=" + num(worst_identity));
        add_check(checks, "tp2 ratio >= 1", ferro ? "hold" : "violate",
                  min_ratio >= 1.0 ? "hold" : "violate",
                  "min ratio=" + num(min_ratio));
    }

    // Holley on the depth-1 volume with extremal boundary rings
    {
        const auto eta = extremal_ring(k, 1, -1);
        const auto xi = extremal_ring(k, 1, +1);
        const HolleyReport rep = check_holley(ctx, 1, eta, xi);
        add_check(checks, "holley lattice inequality", ferro ? "hold" : "violate",
                  rep.lattice_ok ? "hold" : "violate",
                  "worst log-margin=" + num(rep.worst_lattice_margin) +
                      " at pair (" + std::to_string(rep.worst_pair_a) + "," +
                      std::to_string(rep.worst_pair_b) + ") over " +
                      std::to_string(rep.pairs_checked) + " pairs");
        add_check(checks, "holley stochastic domination",
                  ferro ? "hold" : "violate",
                  rep.domination_ok ? "hold" : "violate",
                  "worst margin=" + num(rep.worst_domination_margin) + " over " +
                      std::to_string(rep.upsets_checked) + " up-sets");
    }

    // MLR preservation on 100 random ordered pairs per kernel
    {
        SplitMix64 rng(cfg.seed);
        long violations = 0, cases = 0;
        const Level parents[3] = {Level::psi, Level::phi, Level::upsilon};
        for (Level parent : parents) {
            const Level child =
                static_cast<Level>((static_cast<int>(parent) + 1) % 3);
            const std::size_t n = SpinAlphabets::size(child);
            for (int rep = 0; rep < 100; ++rep) {
                std::vector<double> m(n), mp(n);
                double ratio = std::exp(2.0 * (rng.next_double() - 0.5));
                for (std::size_t i = 0; i < n; ++i) {
                    m[i] = std::exp(2.0 * (rng.next_double() - 0.5));
                    ratio *= std::exp(rng.next_double());  // nondecreasing
                    mp[i] = m[i] * ratio;
                }
                if (!check_mlr(parent, m, mp, ctx)) ++violations;
                ++cases;
            }
        }
        add_check(checks, "mlr preservation (300 random pairs)",
                  ferro ? "hold" : "violate",
                  violations == 0 ? "hold" : "violate",
                  std::to_string(violations) + "/" + std::to_string(cases) +
                      " violations");
    }

    // sandwich, only meaningful in the coexistence regime
    bool sandwich_skipped = false;
    if (ferro && phase.fixed_points.size() >= 3) {
        const BoundaryLaw laws[3] = {
            law_from_x(phase.fixed_points.front().x_star, ctx),
            disordered_law(ctx),
            law_from_x(phase.fixed_points.back().x_star, ctx)};
        const int depth = std::min(cfg.depth, 2);
        const SandwichReport rep =
            check_sandwich(ctx, depth, laws, cfg.seed, 1000);
        add_check(checks, "sandwich ordering", "hold",
                  rep.ordering_ok ? "hold" : "violate",
                  "worst margin=" + num(rep.worst_ordering_margin) + " over " +
                      std::to_string(rep.functions_tested) + " functions");
        add_check(checks, "sandwich volume monotonicity", "hold",
                  rep.plus_monotone_ok && rep.minus_monotone_ok ? "hold"
                                                                : "violate",
                  "worst margin=" + num(rep.worst_monotonicity_margin));
    } else {
        sandwich_skipped = true;
    }

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.pass;

    VerifyResult result;
    result.all_pass = all_pass;
    if (cfg.format == Format::json) {
        json jc = json::array();
        for (const auto& c : checks) {
            jc.push_back(json{{"name", c.name},
                              {"expected", c.expected},
                              {"observed", c.observed},
                              {"pass", c.pass},
                              {"detail", c.detail}});
        }
        result.output = json{{"config", json::parse(cfg.echo_json())},
                             {"checks", jc},
                             {"sandwich_skipped", sandwich_skipped},
                             {"all_pass", all_pass}}
                            .dump(2) +
                        "\n";
    } else {
        std::string out = "# tisgm verify\n# config: " + cfg.echo_json() + "\n";
        for (const auto& c : checks) {
            const char* tag =
                c.pass ? (c.expected == "violate" ? "expected-fail" : "pass")
                       : "FAIL";
            out += "[" + std::string(tag) + "] " + c.name + " (" + c.detail +
                   ")\n";
        }
        if (sandwich_skipped) {
            out += "[skipped] sandwich (needs the coexistence regime)\n";
        }
        out += all_pass ? "verify: all checks as expected\n"
                        : "verify: unexpected results\n";
        result.output = out;
    }
    return result;
}

namespace {

int write_output(const RunConfig& cfg, const std::string& content) {
    const std::string path = resolve_out_path(cfg);
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "tisgm: cannot open output file: " << path << "\n";
        return 1;
    }
    out << content;
    if (!out) {
        std::cerr << "tisgm: write failed: " << path << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int run(const RunConfig& cfg) {
    try {
        if (!(cfg.tol > 0.0)) throw std::runtime_error("--tol must be positive");
        if (cfg.command == "stability") return write_output(cfg, render_stability(cfg));
        if (cfg.command == "critical") return write_output(cfg, render_critical(cfg));
        if (cfg.command == "phases") return write_output(cfg, render_phases(cfg));
        if (cfg.command == "ks") return write_output(cfg, render_ks(cfg));
        if (cfg.command == "sample") return write_output(cfg, render_sample(cfg));
        if (cfg.command == "verify") {
            const VerifyResult res = render_verify(cfg);
            const int io = write_output(cfg, res.output);
            if (io != 0) return io;
            return res.all_pass ? 0 : 4;
        }
        std::cerr << "tisgm: unknown command: " << cfg.command << "\n";
        return 1;
    } catch (const CapacityError& e) {
        std::cerr << "tisgm " << cfg.command << ": capacity: " << e.what() << "\n";
        return 3;
    } catch (const AmbiguityError& e) {
        std::cerr << "tisgm " << cfg.command << ": " << e.what() << "\n";
        for (const auto& [lo, hi] : e.brackets) {
            std::cerr << "  sign change in [" << lo << ", " << hi << "]\n";
        }
        return 2;
    } catch (const Error& e) {
        std::cerr << "tisgm " << cfg.command << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tisgm " << cfg.command << ": " << e.what() << "\n";
        return 1;
    }
}

} // namespace tisgm::cli
