#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sskg/bounds.hpp>
#include <sskg/serialize.hpp>
#include <sskg/sources.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using namespace sskg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
    int code;
    std::string out;
};

CmdResult run_cli(const std::string& args, bool mergeStderr = false) {
    const std::string cmd =
        std::string(SSKG_CLI_PATH) + " " + args + (mergeStderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        const auto d = fs::temp_directory_path() / "sskg_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string cascade_file() {
    const auto path = (work_dir() / "cascade.json").string();
    write_text_file(path, to_json(bsc_cascade(0.1, 0.2)));
    return path;
}

} // namespace

TEST_CASE("bounds report matches the library bit for bit") {
    const auto res = run_cli("bounds " + cascade_file());
    REQUIRE(res.code == 0);
    const json doc = json::parse(res.out);
    const auto fromCli = sk_bounds_from_json(doc.at("bounds").dump());
    const auto direct = sk_bounds(bsc_cascade(0.1, 0.2));
    CHECK(fromCli.lowerXY == direct.lowerXY);
    CHECK(fromCli.lowerYX == direct.lowerYX);
    CHECK(fromCli.upperMI == direct.upperMI);
    CHECK(fromCli.upperCMI == direct.upperCMI);
    CHECK(fromCli.lower() == doctest::Approx(0.357750778903337).epsilon(1e-12));
    CHECK(doc.at("config").at("dist").get<std::string>() == cascade_file());
}

TEST_CASE("bounds csv emits one header and one row") {
    const auto res = run_cli("bounds " + cascade_file() + " --format csv");
    REQUIRE(res.code == 0);
    CHECK(res.out.rfind("lowerXY,lowerYX,upperMI,upperCMI,lower,upper\n", 0) == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 2);
}

TEST_CASE("invalid tensors exit with the validation code") {
    const auto bad = (work_dir() / "bad.json").string();
    write_text_file(bad, R"({"labelsX":["0","1"],"labelsY":["0","1"],"labelsZ":["0","1"],)"
                         R"("probs":[[[0.2,0.2],[0.2,0.2]],[[0.1,0.0],[0.0,0.0]]]})");
    const auto res = run_cli("bounds " + bad, true);
    CHECK(res.code == 1);
    CHECK(res.out.find("validation error") != std::string::npos);
    CHECK(run_cli("bounds " + (work_dir() / "missing.json").string()).code == 1);
    CHECK(run_cli("bounds").code == 1);
}

TEST_CASE("degrade verdict for the cascade") {
    const auto res = run_cli("degrade " + cascade_file());
    REQUIRE(res.code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc.at("verdict").at("kind").get<std::string>() == "physical");
    CHECK(doc.at("verdict").at("witness").is_array());
    CHECK(doc.at("verdict").at("residual").get<double>() <= 1e-8);
    CHECK(doc.at("config").at("tol").get<double>() == 1e-8);
}

TEST_CASE("order direction and violation reporting") {
    const auto ok = run_cli("order --mx 1 --wx 3 --mz 1 --wz 2");
    REQUIRE(ok.code == 0);
    const json okDoc = json::parse(ok.out);
    CHECK(okDoc.at("dominated").get<bool>());
    CHECK(okDoc.at("firstViolation").is_null());
    CHECK(okDoc.at("gridPoints").get<std::size_t>() == 514);

    const auto rev = run_cli("order --mx 1 --wx 2 --mz 1 --wz 3");
    REQUIRE(rev.code == 0);
    const json revDoc = json::parse(rev.out);
    CHECK_FALSE(revDoc.at("dominated").get<bool>());
    CHECK(revDoc.at("firstViolation").is_number());
    CHECK(revDoc.at("firstViolation").get<double>() > 0.0);

    CHECK(run_cli("order --mx -1 --wx 3 --mz 1 --wz 2").code == 1);
}

TEST_CASE("satellite run is reproducible and writes samples") {
    const auto samples = (work_dir() / "samples.csv").string();
    const std::string args = "satellite --fade-x constant:1 --fade-z constant:1 --n 2000 "
                             "--bins 4 --seed 11 --samples-out " + samples;
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json doc = json::parse(a.out);
    CHECK(doc.at("bounds").at("lower").is_number());
    const auto csv = read_text_file(samples);
    CHECK(csv.rfind("x,y,z\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2001);
    CHECK(run_cli("satellite --fade-x bogus:1 --n 10").code == 1);
}

TEST_CASE("simulate single exact run satisfies the reported identities") {
    const auto res = run_cli("simulate " + cascade_file() + " --n 2 --seed 4");
    REQUIRE(res.code == 0);
    const json doc = json::parse(res.out);
    const auto report = protocol_report_from_json(doc.at("report").dump());
    CHECK(report.mode == "exact");
    CHECK(report.nonConfusion + report.nonStealth ==
          doctest::Approx(report.effSecrecy).epsilon(1e-12));
    CHECK(report.pe >= 0.0);
    CHECK(report.pe <= 1.0);
}

TEST_CASE("simulate sweep emits one csv row per configuration") {
    const auto res = run_cli("simulate " + cascade_file() +
                             " --n 1 --n 2 --rate-confusion 0.25 0.5 --books 2 --seed 1");
    REQUIRE(res.code == 0);
    CHECK(res.out.rfind("n,rateKey,rateConfusion,book,seed,mode,", 0) == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 1 + 2 * 2 * 2);
}

TEST_CASE("oversize exact request fails the guard while auto falls back") {
    const auto forced = run_cli("simulate " + cascade_file() + " --n 12 --mode exact", true);
    CHECK(forced.code == 2);
    CHECK(forced.out.find("guard error") != std::string::npos);
    const auto fallback = run_cli("simulate " + cascade_file() +
                                  " --n 12 --mode auto --trials 2000 --seed 2");
    REQUIRE(fallback.code == 0);
    const json doc = json::parse(fallback.out);
    CHECK(doc.at("report").at("mode").get<std::string>() == "monte-carlo");
    CHECK(doc.at("report").at("pluginDivergences").get<bool>());
}

TEST_CASE("budget arithmetic and schedule") {
    const auto res = run_cli("budget --dz 0.1 --dy 0.02 --xi 0.1 --n 10000 --omega 0.05");
    REQUIRE(res.code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc.at("phase2KeyBits").get<double>() == doctest::Approx(0.46).epsilon(1e-12));
    CHECK(doc.at("regimeOk").get<bool>());
    CHECK(doc.at("schedule").is_null());

    const auto clamp = run_cli("budget --dz 0.01 --dy 0.5 --xi 0.1 --n 10000 --omega 0.05");
    CHECK(json::parse(clamp.out).at("phase2KeyBits").get<double>() == 0.0);

    const auto sched = run_cli("budget --dz 0.1 --dy 0.02 --xi 0.1 --n 1000 --omega 0.05 --dist " +
                               cascade_file());
    REQUIRE(sched.code == 0);
    const auto schedule =
        key_schedule_from_json(json::parse(sched.out).at("schedule").dump());
    CHECK(schedule.phase1KeyBits == 1000.0);
    CHECK_FALSE(schedule.feasible);

    const auto offRegime =
        run_cli("budget --dz 0.1 --dy 0.02 --xi 0.1 --n 100 --omega 100", true);
    REQUIRE(offRegime.code == 0);
    CHECK(offRegime.out.find("no longer vanishing") != std::string::npos);
    CHECK(run_cli("budget --dz 0.1 --dy 0.02 --xi 1.5 --n 100 --omega 1").code == 1);
}

TEST_CASE("config file values load and flags override them") {
    const auto cfg = (work_dir() / "config.json").string();
    const json config{{"seed", 9},
                      {"order", {{"mx", 1.0}, {"wx", 3.0}, {"mz", 1.0}, {"wz", 2.0}}}};
    write_text_file(cfg, config.dump());
    const auto fromConfig = run_cli("order --config " + cfg);
    REQUIRE(fromConfig.code == 0);
    const json doc = json::parse(fromConfig.out);
    CHECK(doc.at("dominated").get<bool>());
    CHECK(doc.at("config").at("wx").get<double>() == 3.0);

    // A flag on the command line beats the config file.
    const auto overridden = run_cli("order --config " + cfg + " --wx 1.5");
    REQUIRE(overridden.code == 0);
    const json doc2 = json::parse(overridden.out);
    CHECK(doc2.at("config").at("wx").get<double>() == 1.5);
    CHECK_FALSE(doc2.at("dominated").get<bool>());
}
