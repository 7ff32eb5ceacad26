#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cantorvar/driver.hpp"

using namespace cantorvar;

namespace {

std::string write_temp(const std::string& name, const json& j) {
    std::string path = std::string("/tmp/cantorvar_test_") + name + ".json";
    std::ofstream out(path);
    out << j.dump();
    return path;
}

}  // namespace

TEST_CASE("cmd_cp emits the assembled constants") {
    CliOptions opt;
    opt.ps = {2};
    std::ostringstream out;
    CHECK(run_command("cp", opt, out) == kExitOk);
    CHECK(out.str() == "p,c_p,C_p\n2,1,3\n");
}

TEST_CASE("verify runs clean with a small config and is deterministic") {
    CliOptions opt;
    opt.config_path = write_temp(
        "verify_small", json{{"schema", 1}, {"group", {2}}, {"p", {2}}, {"trials", 6},
                             {"seed", 1}, {"mode", "both"}});
    std::ostringstream out1, out2;
    CHECK(run_command("verify", opt, out1) == kExitOk);
    CHECK(run_command("verify", opt, out2) == kExitOk);
    CHECK(out1.str() == out2.str());
    CHECK(out1.str().find("\"passed\": true") != std::string::npos);

    // parallel execution leaves the bytes unchanged
    CliOptions par = opt;
    par.jobs = 2;
    std::ostringstream out3;
    CHECK(run_command("verify", par, out3) == kExitOk);
    CHECK(out3.str() == out1.str());
}

TEST_CASE("verify in exact-only mode marks float checks as skipped") {
    CliOptions opt;
    opt.mode = "exact";
    opt.config_path = write_temp(
        "verify_exact", json{{"schema", 1}, {"group", {2}}, {"p", {2}}, {"trials", 4}});
    std::ostringstream out;
    CHECK(run_command("verify", opt, out) == kExitOk);
    json rep = json::parse(out.str());
    bool found_skip = false;
    for (const auto& c : rep.at("checks"))
        if (c.at("mode") == "skipped") found_skip = true;
    CHECK(found_skip);
}

TEST_CASE("planted faults are detected with exit code 1") {
    for (const std::string fault : {"telescoping", "character", "ominus"}) {
        CliOptions opt;
        opt.fault = fault;
        opt.mode = "exact";
        // ominus is invisible at d = 2 (the group is 2-torsion); use d = 3
        opt.config_path = write_temp(
            "verify_fault_" + fault,
            json{{"schema", 1}, {"group", {3}}, {"p", {2}}, {"trials", 4}});
        std::ostringstream out;
        CHECK(run_command("verify", opt, out) == kExitCheckFailure);
        json rep = json::parse(out.str());
        bool hit = false;
        for (const auto& c : rep.at("checks")) {
            if (c.at("failures").get<long long>() == 0) continue;
            std::string id = c.at("check_id");
            if (fault == "telescoping" && id == "telescoping") hit = true;
            if (fault == "character" &&
                (id == "character_orthogonality" || id == "character_property"))
                hit = true;
            if (fault == "ominus" && (id == "character_property" || id == "dual_telescoping"))
                hit = true;
        }
        CHECK(hit);
    }
}

TEST_CASE("config errors exit with code 2") {
    CliOptions opt;
    opt.config_path = "/tmp/cantorvar_missing_config.json";
    std::ostringstream out;
    CHECK(run_command("verify", opt, out) == kExitConfigError);

    CliOptions bad_schema;
    bad_schema.config_path = write_temp("bad_schema", json{{"schema", 2}});
    CHECK(run_command("verify", bad_schema, out) == kExitConfigError);

    CliOptions bad_mode;
    bad_mode.mode = "fancy";
    CHECK(run_command("verify", bad_mode, out) == kExitConfigError);
}

TEST_CASE("cap violations exit with code 3") {
    CliOptions opt;
    opt.config_path = write_temp(
        "cap", json{{"schema", 1}, {"group", {3}}, {"ladder", {-2, 0}},
                    {"instances", json{{"type", "random"}, {"trials", 1}, {"N", 1}, {"K", 2},
                                       {"nonneg", true}, {"seed", 1}}}});
    std::ostringstream out;
    CHECK(run_command("variation", opt, out) == kExitCapExceeded);
}

TEST_CASE("variation of the worked indicator example") {
    CliOptions opt;
    opt.config_path = write_temp(
        "variation_ind", json{{"schema", 1}, {"group", {2}}, {"ladder", {-1, 0}},
                              {"p", {2.0}}, {"instances", json{{"type", "indicator"}}}});
    std::ostringstream out;
    CHECK(run_command("variation", opt, out) == kExitOk);
    std::string csv = out.str();
    CHECK(csv.find("trial,p,variation_sum,bound,ratio,jump_norms\n") == 0);
    CHECK(csv.find("0,2,0.25,3,") != std::string::npos);
}

TEST_CASE("variation on random instances stays below the bound") {
    CliOptions opt;
    opt.config_path = write_temp(
        "variation_rand",
        json{{"schema", 1}, {"group", {3}}, {"ladder", {-1, 0, 1}}, {"p", {2.0, 3.0}},
             {"instances", json{{"type", "random"}, {"trials", 6}, {"N", 0}, {"K", 1},
                                {"nonneg", true}, {"seed", 9}}}});
    std::ostringstream out1, out2;
    CHECK(run_command("variation", opt, out1) == kExitOk);
    CHECK(run_command("variation", opt, out2) == kExitOk);
    CHECK(out1.str() == out2.str());
}

TEST_CASE("jumps command on a constant-average system") {
    // trivial actions make every M_n identical: all counts 0
    json sys{{"group", {2}},
             {"depth", 3},
             {"space", json{{"type", "translation"}, {"B", {2}}, {"sigma", {0, 0, 0}},
                            {"tau", {0, 0, 0}}}}};
    CliOptions opt;
    opt.config_path = write_temp(
        "jumps_const", json{{"schema", 1}, {"p", 2}, {"eps", {0.1, 0.5}}, {"trials", 5},
                            {"seed", 2}, {"system", sys}});
    std::ostringstream out;
    CHECK(run_command("jumps", opt, out) == kExitOk);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "trial,eps,count,bound");
    while (std::getline(lines, line)) {
        auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        auto c3 = line.find(',', c2 + 1);
        CHECK(line.substr(c2 + 1, c3 - c2 - 1) == "0");
    }
}

TEST_CASE("jumps command on a mixing translation system") {
    json sys{{"group", {2}},
             {"depth", 3},
             {"space", json{{"type", "translation"}, {"B", {2, 2, 2}},
                            {"sigma", {1, 2, 4}}, {"tau", {4, 1, 2}}}}};
    CliOptions opt;
    opt.config_path = write_temp(
        "jumps_mix", json{{"schema", 1}, {"p", 2}, {"eps", {0.1, 0.2, 0.5}}, {"trials", 10},
                          {"seed", 3}, {"system", sys}});
    std::ostringstream out;
    CHECK(run_command("jumps", opt, out) == kExitOk);
}

TEST_CASE("explicit system specs parse and validate") {
    json sys{{"group", {2}},
             {"depth", 1},
             {"space", json{{"type", "explicit"}, {"size", 2},
                            {"genS", {std::vector<int>{1, 0}}},
                            {"genT", {std::vector<int>{1, 0}}}}}};
    FiniteSystem parsed = system_from_json(sys);
    CHECK(parsed.size == 2);

    json bad = sys;
    bad["space"]["genT"] = {std::vector<int>{0, 0}};  // not a permutation
    CHECK_THROWS(system_from_json(bad));
}
