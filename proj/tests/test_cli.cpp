#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "tisgm/errors.hpp"

using namespace tisgm::cli;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(TISGM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("theta range parsing") {
    const ThetaRange r = parse_theta_range("1:2:5");
    CHECK(r.start == 1.0);
    CHECK(r.stop == 2.0);
    CHECK(r.points == 5);
    const auto g = r.grid();
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == 2.0);
    CHECK(g[2] == doctest::Approx(1.5));

    CHECK_THROWS(parse_theta_range("1:2"));
    CHECK_THROWS(parse_theta_range("2:1:5"));
    CHECK_THROWS(parse_theta_range("1:2:1"));
    CHECK_THROWS(parse_theta_range("abc"));
}

TEST_CASE("k list and bracket parsing") {
    CHECK(parse_k_list("2") == std::vector<int>{2});
    CHECK(parse_k_list("2,3,5") == std::vector<int>{2, 3, 5});
    CHECK_THROWS(parse_k_list("2,,3"));
    CHECK_THROWS(parse_k_list("0"));
    CHECK_THROWS(parse_k_list("x"));

    const auto b = parse_bracket("1.5:4");
    CHECK(b.first == 1.5);
    CHECK(b.second == 4.0);
    CHECK_THROWS(parse_bracket("4:1"));
    CHECK_THROWS(parse_bracket("nope"));
}

TEST_CASE("config file defaults with flag-style precedence") {
    const std::string path = "/tmp/tisgm_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"theta": 1.6, "k": [2], "seed": 9, "format": "csv",)"
            << R"( "theta_range": "1:2:3", "depth": 2, "trees": 50})";
    }
    RunConfig cfg;
    load_config_file(path, cfg);
    CHECK(cfg.theta == 1.6);
    CHECK(cfg.ks == std::vector<int>{2});
    CHECK(cfg.seed == 9);
    CHECK(cfg.trees == 50);
    REQUIRE(cfg.theta_range.has_value());
    CHECK(cfg.theta_range->points == 3);
    std::remove(path.c_str());

    CHECK_THROWS(load_config_file("/nonexistent/p.json", cfg));
}

TEST_CASE("stability output: header, config echo, rows") {
    RunConfig cfg;
    cfg.command = "stability";
    cfg.theta_range = parse_theta_range("1:2:3");
    cfg.ks = {2};
    const std::string out = render_stability(cfg);
    CHECK(out.find("# tisgm stability") == 0);
    CHECK(out.find("# config: {") != std::string::npos);
    CHECK(out.find("theta,k,s_k\n") != std::string::npos);
    CHECK(out.find("1,2,-1\n") != std::string::npos);
    // byte determinism
    CHECK(render_stability(cfg) == out);
}

TEST_CASE("stability crosses zero exactly once on (1,2) for k=2") {
    RunConfig cfg;
    cfg.command = "stability";
    cfg.theta_range = parse_theta_range("1.01:2:101");
    cfg.ks = {2};
    const std::string out = render_stability(cfg);
    // count sign changes in the s_k column
    int changes = 0;
    double prev = 0.0;
    bool first = true;
    std::size_t pos = out.find("theta,k,s_k\n") + 12;
    while (pos < out.size()) {
        const auto eol = out.find('\n', pos);
        const auto c2 = out.rfind(',', eol);
        const double s = std::stod(out.substr(c2 + 1, eol - c2 - 1));
        if (!first && (s < 0) != (prev < 0)) ++changes;
        prev = s;
        first = false;
        pos = eol + 1;
    }
    CHECK(changes == 1);
}

TEST_CASE("critical output lists one theta_c per k") {
    RunConfig cfg;
    cfg.command = "critical";
    cfg.ks = {2, 5};
    const std::string out = render_critical(cfg);
    CHECK(out.find("k,theta_c\n") != std::string::npos);
    CHECK(out.find("2,1.53061797") != std::string::npos);
    CHECK(out.find("5,1.17737") != std::string::npos);
}

TEST_CASE("phases json carries fixed points and regime") {
    RunConfig cfg;
    cfg.command = "phases";
    cfg.theta = 1.6;
    cfg.ks = {2};
    cfg.format = Format::json;
    const std::string out = render_phases(cfg);
    CHECK(out.find("\"regime\": \"coexistence\"") != std::string::npos);
    CHECK(out.find("\"fixed_points\"") != std::string::npos);
    CHECK(out.find("\"config\"") != std::string::npos);
    CHECK(out.find("\"phase\": \"minus\"") != std::string::npos);
    CHECK(out.find("\"phase\": \"disordered\"") != std::string::npos);
    CHECK(out.find("\"phase\": \"plus\"") != std::string::npos);

    cfg.theta = 1.2;
    const std::string out2 = render_phases(cfg);
    CHECK(out2.find("\"regime\": \"unique_disordered\"") != std::string::npos);
}

TEST_CASE("ks output reports positive intervals") {
    RunConfig cfg;
    cfg.command = "ks";
    cfg.theta_range = parse_theta_range("1.01:4.99:100");
    cfg.ks = {2};
    const std::string out = render_ks(cfg);
    CHECK(out.find("theta,k,lambda2,g_k,non_extremal") != std::string::npos);
    CHECK(out.find("# positive_interval k=2:") != std::string::npos);
}

TEST_CASE("sample output is byte-identical for identical seeds") {
    RunConfig cfg;
    cfg.command = "sample";
    cfg.theta = 1.6;
    cfg.ks = {2};
    cfg.depth = 2;
    cfg.trees = 500;
    cfg.seed = 11;
    cfg.law = "plus";
    const std::string a = render_sample(cfg);
    const std::string b = render_sample(cfg);
    CHECK(a == b);
    CHECK(a.find("level,value,count\n") != std::string::npos);
    CHECK(a.find("# rng: splitmix64") != std::string::npos);

    cfg.seed = 12;
    CHECK(render_sample(cfg) != a);

    cfg.law = "minus";
    CHECK_NOTHROW(render_sample(cfg));
    cfg.law = "weird";
    CHECK_THROWS(render_sample(cfg));
}

TEST_CASE("sample law resolution needs coexistence for plus/minus") {
    RunConfig cfg;
    cfg.command = "sample";
    cfg.theta = 1.2;
    cfg.ks = {2};
    cfg.depth = 1;
    cfg.trees = 10;
    cfg.law = "plus";
    CHECK_THROWS_AS(render_sample(cfg), tisgm::BracketingError);
    cfg.x_override = 1.0;
    CHECK_NOTHROW(render_sample(cfg));
}

TEST_CASE("verify passes in the ferromagnetic regime") {
    RunConfig cfg;
    cfg.command = "verify";
    cfg.theta = 2.0;
    cfg.ks = {2};
    cfg.depth = 2;
    const VerifyResult res = render_verify(cfg);
    CHECK(res.all_pass);
    CHECK(res.output.find("verify: all checks as expected") != std::string::npos);

    cfg.theta = 0.8;
    const VerifyResult anti = render_verify(cfg);
    CHECK(anti.all_pass);
    CHECK(anti.output.find("expected-fail") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("") == 1);                                   // usage
    CHECK(run_cli("critical --k 2") == 0);                     // success
    CHECK(run_cli("critical --k 2 --bracket 2:3") == 2);       // bracketing
    CHECK(run_cli("verify --theta 2 --k 3 --depth 4") == 3);   // capacity
    CHECK(run_cli("verify --theta 2 --k 2") == 0);             // verification
    CHECK(run_cli("stability --theta 1.5") == 1);              // missing --k
    CHECK(run_cli("stability --theta abc --k 2") == 1);        // bad number
    CHECK(run_cli("stability --theta-range nope --k 2") == 1); // bad range
    CHECK(run_cli("verify --theta 2 --k 2 --tol -1") == 1);    // bad tol
}

TEST_CASE("flags override config-file values end to end") {
    const std::string cfg_path = "/tmp/tisgm_prec_config.json";
    {
        std::ofstream out(cfg_path);
        out << R"({"k": [3], "seed": 55})";
    }
    const std::string out_path = "/tmp/tisgm_prec_out.csv";
    const std::string cmd = std::string(TISGM_CLI_PATH) +
                            " stability --config " + cfg_path +
                            " --theta-range 1:2:3 --k 2 --out " + out_path +
                            " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::ifstream in(out_path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content.find("\"seed\":55") != std::string::npos);  // from config
    CHECK(content.find("\"k\":[2]") != std::string::npos);    // flag wins
    CHECK(content.find("1,2,-1\n") != std::string::npos);
    std::remove(cfg_path.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("TISGM_OUT_DIR routes command output end to end") {
    const std::string dir = "/tmp/tisgm_envdir";
    std::system(("mkdir -p " + dir).c_str());
    const std::string cmd = "TISGM_OUT_DIR=" + dir + " " +
                            std::string(TISGM_CLI_PATH) +
                            " critical --k 2 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::ifstream in(dir + "/critical.csv");
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content.find("k,theta_c") != std::string::npos);
    std::remove((dir + "/critical.csv").c_str());
}

TEST_CASE("out path resolution honors TISGM_OUT_DIR") {
    RunConfig cfg;
    cfg.command = "stability";
    cfg.out = "/tmp/explicit.csv";
    CHECK(resolve_out_path(cfg) == "/tmp/explicit.csv");

    cfg.out.clear();
    setenv("TISGM_OUT_DIR", "/tmp/tisgm_outs", 1);
    CHECK(resolve_out_path(cfg) == "/tmp/tisgm_outs/stability.csv");
    cfg.format = Format::json;
    CHECK(resolve_out_path(cfg) == "/tmp/tisgm_outs/stability.json");
    unsetenv("TISGM_OUT_DIR");
    CHECK(resolve_out_path(cfg).empty());
}
