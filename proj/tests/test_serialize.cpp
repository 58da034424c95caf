#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sskg/serialize.hpp>
#include <sskg/sources.hpp>
#include <sskg/degrade.hpp>
#include <sskg/errors.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

using namespace sskg;

TEST_CASE("finite dist json round trip is bit exact") {
    const FiniteDist p({"a", "b", "c"}, {0.1, 1.0 / 3.0, 1.0 - 0.1 - 1.0 / 3.0});
    const auto back = finite_dist_from_json(to_json(p));
    REQUIRE(back.size() == 3);
    CHECK(back.labels() == p.labels());
    for (std::size_t i = 0; i < 3; ++i) CHECK(back.p(i) == p.p(i));
}

TEST_CASE("joint3 json round trip is bit exact") {
    const auto j = bsc_cascade(0.1, 0.2);
    const auto back = joint3_from_json(to_json(j));
    CHECK(back.labels_x() == j.labels_x());
    CHECK(back.labels_z() == j.labels_z());
    for (std::size_t i = 0; i < 8; ++i) CHECK(back.probs()[i] == j.probs()[i]);
}

TEST_CASE("bounds and report round trips") {
    const SkBounds b{0.25, 0.125, 0.5, 0.4375};
    const auto b2 = sk_bounds_from_json(to_json(b));
    CHECK(b2.lowerXY == b.lowerXY);
    CHECK(b2.lowerYX == b.lowerYX);
    CHECK(b2.upperMI == b.upperMI);
    CHECK(b2.upperCMI == b.upperCMI);

    ProtocolReport r;
    r.pe = 0.03125;
    r.uniformityGap = 0.0;
    r.effSecrecy = 0.75;
    r.combinedMetric = 0.75;
    r.nonConfusion = 0.5;
    r.nonStealth = 0.25;
    r.mode = "exact";
    r.trials = 0;
    const auto r2 = protocol_report_from_json(to_json(r));
    CHECK(r2.pe == r.pe);
    CHECK(r2.effSecrecy == r.effSecrecy);
    CHECK(r2.mode == "exact");
    CHECK(r2.pluginDivergences == false);

    KeySchedule s{1000.0, 0.46, 357.75, false, false};
    const auto s2 = key_schedule_from_json(to_json(s));
    CHECK(s2.phase1KeyBits == s.phase1KeyBits);
    CHECK(s2.phase2KeyBits == s.phase2KeyBits);
    CHECK(s2.feasible == s.feasible);
}

TEST_CASE("verdict json carries the witness only when one exists") {
    const auto physical = classify_degradedness(bsc_cascade(0.1, 0.2));
    const auto pj = to_json(physical);
    CHECK(pj.find("\"physical\"") != std::string::npos);
    CHECK(pj.find("\"witness\"") != std::string::npos);
    CHECK(pj.find("null") == std::string::npos);

    // Reversed cascade has no witness at this tolerance.
    const auto j = bsc_cascade(0.1, 0.2);
    std::vector<double> swapped(8);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                swapped[(x * 2 + z) * 2 + y] = j.at(x, y, z);
    const auto none =
        stochastic_degradedness_test(JointDist3({"0", "1"}, {"0", "1"}, {"0", "1"}, swapped), 1e-6);
    const auto nj = to_json(none);
    CHECK(nj.find("\"none\"") != std::string::npos);
    CHECK(nj.find("\"witness\":null") != std::string::npos);
}

TEST_CASE("malformed inputs raise named validation errors") {
    CHECK_THROWS_AS(finite_dist_from_json("{not json"), validation_error);
    CHECK_THROWS_AS(finite_dist_from_json("{\"labels\":[\"a\"],\"probs\":[0.5,0.5]}"),
                    validation_error);
    CHECK_THROWS_AS(finite_dist_from_json("{\"labels\":[\"a\",\"b\"],\"probs\":[0.9,0.9]}"),
                    validation_error);
    CHECK_THROWS_AS(joint3_from_json("{\"labelsX\":[\"a\"]}"), validation_error);
    CHECK_THROWS_AS(joint3_from_json("[]"), validation_error);
}

TEST_CASE("joint3 file loading reports the path on failure") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "sskg_serialize_test";
    fs::create_directories(dir);
    const auto path = (dir / "cascade.json").string();
    write_text_file(path, to_json(bsc_cascade(0.1, 0.2)));
    const auto j = load_joint3(path);
    CHECK(j.at(0, 0, 0) == doctest::Approx(0.36).epsilon(1e-15));
    CHECK(read_text_file(path) == to_json(bsc_cascade(0.1, 0.2)));
    try {
        load_joint3((dir / "missing.json").string());
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("sample csv layout") {
    SampleSet s;
    s.xs = {1.0, 0.5};
    s.ys = {2.0, -1.25};
    s.zs = {0.0, 3.5};
    const auto csv = sample_set_csv(s);
    CHECK(csv.rfind("x,y,z\n", 0) == 0);
    CHECK(csv.find("\n1,2,0\n") != std::string::npos);
    CHECK(csv.find("0.5,-1.25,3.5") != std::string::npos);
}
