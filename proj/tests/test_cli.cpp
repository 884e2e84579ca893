#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "cli_out_" + std::to_string(counter++) + ".txt";
    const std::string cmd =
        std::string(BBLAB_BIN_PATH) + " " + args + " >" + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    CmdResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out_path);
    std::remove(out_path.c_str());
    return res;
}

json run_json(const std::string& args, const std::string& json_path,
              int expect_exit = 0) {
    const CmdResult res = run_cli(args + " --json " + json_path);
    INFO(res.out);
    REQUIRE(res.exit_code == expect_exit);
    const json parsed = json::parse(slurp(json_path));
    std::remove(json_path.c_str());
    return parsed;
}

const json& find_check(const json& report, const std::string& name) {
    for (const json& c : report.at("checks")) {
        if (c.at("name") == name) return c;
    }
    FAIL("check not found: " + name);
    static json dummy;
    return dummy;
}

}  // namespace

TEST_CASE("analyze dictator") {
    const json rep = run_json("analyze --tt 01 --p 0.3", "cli_a1.json");
    CHECK(rep.at("suite") == "analyze");
    CHECK(rep.at("created") == "");
    const json& r = rep.at("reports").at(0).at("results");
    const double h_q = 0.43966987940134293;
    CHECK(std::abs(r.at("entropy").get<double>() - h_q) < 1e-12);
    CHECK(std::abs(r.at("conjecture_slack").get<double>()) < 1e-12);
    CHECK(r.at("theorem_slack").get<double>() > 0.3);
    CHECK(std::abs(r.at("entropy_cross_check_delta").get<double>()) < 1e-8);
    CHECK(r.at("support_size") == 2);
    CHECK(r.at("spectrum").size() == 2);
}

TEST_CASE("analyze two-bit parity at the uniform measure") {
    const json rep = run_json("analyze --tt 0110 --p 0.5", "cli_a2.json");
    const json& r = rep.at("reports").at(0).at("results");
    CHECK(std::abs(r.at("entropy").get<double>()) < 1e-12);
    CHECK(std::abs(r.at("sum_sq_influences").get<double>() - 2.0) < 1e-12);
}

TEST_CASE("analyze an or-type function") {
    const json rep = run_json("analyze --tt 0111 --p 0.3", "cli_a3.json");
    const json& r = rep.at("reports").at(0).at("results");
    CHECK(r.at("entropy").get<double>() > 0.0);
    CHECK(r.at("support_size").get<int>() == 4);
    CHECK(std::isfinite(r.at("min_entropy").get<double>()));
    CHECK(r.at("theorem_slack").get<double>() >= -1e-9);
    CHECK(r.at("conjecture_slack").get<double>() >= -1e-9);
}

TEST_CASE("analyze a file of functions") {
    {
        std::ofstream f("cli_funcs.txt");
        f << "# corpus\n01\n0110  # parity\n\n";
    }
    const json rep = run_json("analyze --file cli_funcs.txt --p 0.3", "cli_a4.json");
    CHECK(rep.at("reports").size() == 2);
    std::remove("cli_funcs.txt");
}

TEST_CASE("analyze rejects bad input") {
    CHECK(run_cli("analyze --tt 01 --p 1.7").exit_code == 2);
    CHECK(run_cli("analyze --tt 012 --p 0.3").exit_code == 2);
    CHECK(run_cli("analyze --p 0.3").exit_code == 2);
    CHECK(run_cli("analyze --tt xyz --p 0.3").exit_code == 2);
}

TEST_CASE("verify exit codes and determinism") {
    CHECK(run_cli("verify --n 1").exit_code == 0);
    CHECK(run_cli("verify --n 1 --p-grid 1.5").exit_code == 2);
    CHECK(run_cli("verify --n 5").exit_code == 2);  // exhaustive cap
    CHECK(run_cli("verify").exit_code == 2);

    const std::string args = "verify --n 2 --p-grid 0.1,0.3 --json cli_v1.json";
    CHECK(run_cli(args).exit_code == 0);
    const std::string first = slurp("cli_v1.json");
    CHECK(run_cli(args).exit_code == 0);
    CHECK(slurp("cli_v1.json") == first);
    std::remove("cli_v1.json");

    const json rep = json::parse(first);
    CHECK(rep.at("suite") == "verify");
    CHECK(rep.at("params").at("n") == 2);
    CHECK(rep.at("gating_failures") == 0);
    CHECK(find_check(rep, "entropy_lower_bound_q1q").at("failures") == 0);
    CHECK(find_check(rep, "parseval").at("count") == 32);
}

TEST_CASE("verify on random functions is reproducible") {
    const json a = run_json("verify --n 5 --random 20 --seed 42 --p-grid 0.3",
                            "cli_v2.json");
    const json b = run_json("verify --n 5 --random 20 --seed 42 --p-grid 0.3",
                            "cli_v3.json");
    CHECK(a == b);
    CHECK(a.at("functions") == 20);
    CHECK(a.at("gating_failures") == 0);
}

TEST_CASE("search exhaustive and its guard rails") {
    const json rep =
        run_json("search --n 3 --p 0.3 --mode exhaustive", "cli_s1.json");
    const json& r = rep.at("reports").at(0);
    const double h_q = r.at("reference").at("h_q").get<double>();
    CHECK(r.at("leaderboard").at(0).at("ratio").get<double>() >= h_q - 1e-9);
    CHECK(r.at("conjecture_violations") == 0);
    CHECK(r.at("stats").contains("wall_ms") == false);

    CHECK(run_cli("search --n 5 --p 0.3 --mode exhaustive").exit_code == 2);
    CHECK(run_cli("search --n 3 --mode exhaustive").exit_code == 2);  // no p
}

TEST_CASE("search random mode is seed-stable") {
    const std::string args = "search --n 6 --p 0.2 --mode random --samples 300 --seed 7";
    const json a = run_json(args, "cli_s2.json");
    const json b = run_json(args, "cli_s3.json");
    CHECK(a == b);
    CHECK(a.at("reports").at(0).at("stats").at("evaluated").get<int>() > 0);
}

TEST_CASE("search refine mode reports a single record") {
    const json rep = run_json(
        "search --n 3 --p 0.3 --mode refine --start 01110001 --budget 300 --seed 5",
        "cli_s4.json");
    const json& board = rep.at("reports").at(0).at("leaderboard");
    REQUIRE(board.size() == 1);
    CHECK(board.at(0).at("ratio").get<double>() > 0.0);
}

TEST_CASE("search csv export") {
    const CmdResult res = run_cli(
        "search --n 2 --p 0.3 --mode exhaustive --csv cli_s5.csv --json cli_s5.json");
    CHECK(res.exit_code == 0);
    const std::string csv = slurp("cli_s5.csv");
    CHECK(csv.rfind("tt,n,p,entropy,sum_sq_inf,ratio,conjecture_slack\n", 0) == 0);
    std::remove("cli_s5.csv");
    std::remove("cli_s5.json");
}

TEST_CASE("sweep emits the reference curve") {
    const json rep =
        run_json("sweep --n 2 --p-grid 0.1,0.5,0.9 --mode exhaustive", "cli_w1.json");
    CHECK(rep.at("suite") == "sweep");
    REQUIRE(rep.at("curve").size() == 3);
    for (const json& point : rep.at("curve")) {
        CHECK(point.at("min_ratio").get<double>() >=
              point.at("h_q").get<double>() - 1e-9);
        CHECK(point.at("min_ratio").get<double>() >=
              point.at("q_one_minus_q").get<double>() - 1e-9);
    }
    CHECK(rep.at("curve").at(1).at("h_q").get<double>() == 0.0);
}

TEST_CASE("stability spectral and monte carlo") {
    const json rep = run_json("stability --tt 01 --p 0.5 --eps 0.2", "cli_t1.json");
    CHECK(std::abs(rep.at("results").at("spectral").get<double>() - 0.8) < 1e-12);
    CHECK(rep.at("results").at("mc_estimate").is_null());

    const json rep0 = run_json("stability --tt 0111 --p 0.3 --eps 0", "cli_t2.json");
    CHECK(std::abs(rep0.at("results").at("spectral").get<double>() - 1.0) < 1e-12);

    const json rep1 = run_json("stability --tt 0111 --p 0.3 --eps 1", "cli_t3.json");
    // only the empty set survives at eps = 1: E[f]^2, and E[f] = 1 - 2(1-p)^2
    const double mean = 1.0 - 2.0 * 0.7 * 0.7;
    CHECK(std::abs(rep1.at("results").at("spectral").get<double>() - mean * mean) <
          1e-12);

    const json mc = run_json("stability --tt 01 --p 0.5 --eps 0.2 --mc 50000 --seed 9",
                             "cli_t4.json");
    CHECK(std::abs(mc.at("results").at("mc_estimate").get<double>() - 0.8) < 0.02);
    CHECK(mc.at("results").at("difference").is_number());

    CHECK(run_cli("stability --tt 01 --p 0.5 --eps 1.5").exit_code == 2);
    CHECK(run_cli("stability --tt 01 --p 0.5 --eps -0.1").exit_code == 2);
}

TEST_CASE("moments along the chain") {
    const json rep = run_json("moments --tt 0111 --p 0.3 --eps 0", "cli_m1.json");
    for (const json& m : rep.at("results").at("moments")) {
        CHECK(std::abs(m.get<double>() - 1.0) < 1e-9);
    }
    for (const json& d : rep.at("results").at("increments")) {
        CHECK(std::abs(d.get<double>()) < 1e-9);
    }
    CHECK(std::abs(rep.at("results").at("telescope_residual").get<double>()) < 1e-9);

    const json dict = run_json("moments --tt 01 --p 0.3 --eps 0.1", "cli_m2.json");
    const json& ms = dict.at("results").at("moments");
    const double m_full = ms.at(ms.size() - 1).get<double>();
    CHECK(std::abs(m_full - 0.95868976609628380) < 1e-12);  // (1-q)^1.1 + q^1.1
    CHECK(dict.at("results").at("ledger").size() == 1);

    const json chained = run_json(
        "moments --tt 01100110 --p 0.3 --eps 0.05 --chain 3,1,2", "cli_m3.json");
    CHECK(std::abs(chained.at("results").at("telescope_residual").get<double>()) < 1e-9);
    CHECK(chained.at("params").at("chain") == json::array({3, 1, 2}));

    CHECK(run_cli("moments --tt 01 --p 0.3 --eps 0.5").exit_code == 2);
    CHECK(run_cli("moments --tt 01 --p 0.3 --eps -0.1").exit_code == 2);

    // n = 7 needs --force-long for the ledger
    std::string big(128, '0');
    big[3] = '1';
    CHECK(run_cli("moments --tt " + big + " --p 0.3 --eps 0.1").exit_code == 2);
    CHECK(run_cli("moments --tt " + big + " --p 0.3 --eps 0.1 --force-long")
              .exit_code == 0);
}

TEST_CASE("chain flag reaches the verify suite") {
    const CmdResult res = run_cli("verify --n 2 --p-grid 0.3 --chain 2,1");
    CHECK(res.exit_code == 0);
}

TEST_CASE("worker env fallback and flag produce the same checks") {
    const std::string args = "verify --n 2 --p-grid 0.3 --json cli_wk.json";
    const std::string env_cmd = "env BBLAB_WORKERS=2 " + std::string(BBLAB_BIN_PATH) +
                                " " + args + " >/dev/null 2>&1";
    REQUIRE(std::system(env_cmd.c_str()) == 0);
    const json via_env = json::parse(slurp("cli_wk.json"));
    CHECK(via_env.at("params").at("workers") == 2);
    REQUIRE(run_cli(args + " --workers 2").exit_code == 0);
    const json via_flag = json::parse(slurp("cli_wk.json"));
    CHECK(via_env == via_flag);
    std::remove("cli_wk.json");
}

TEST_CASE("timestamp flag stamps the report") {
    const json rep = run_json("analyze --tt 01 --p 0.3 --timestamp", "cli_ts.json");
    CHECK(rep.at("created").get<std::string>().size() == 20);  // ISO-8601 Z form
}
