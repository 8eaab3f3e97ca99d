#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "tlsub/error.hpp"
#include "tlsub/report.hpp"

using namespace tlsub;

namespace {

RunConfig with_preset(const std::string& name, int levels = 6) {
    RunConfig c;
    c.preset = name;
    c.levels = levels;
    return c;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("matrix input") {
    const CMatrix a = parse_matrix_json(R"({"entries": [[0, {"re": 1, "im": 0}], [-1, 0]]})");
    CHECK(a.rows() == 2);
    CHECK(a(0, 1) == Complex(1.0));
    CHECK(a(1, 0) == Complex(-1.0));
    const CMatrix b = parse_matrix_json(R"({"antidiagonal": [1, {"re": 0, "im": 1}, 1]})");
    CHECK(b(1, 1) == Complex(0.0, 1.0));
    CHECK(b(0, 2) == Complex(1.0));
    CHECK(b(0, 0) == Complex(0.0));
    CHECK(code_of([] { parse_matrix_json("{"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_matrix_json(R"({"entries": [[1, 2], [3]]})"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse_matrix_json(R"({"other": 1})"); }) == ErrorCode::Parse);
}

TEST_CASE("presets") {
    for (const std::string& name : test::kPresets) CHECK(preset_matrix(name).rows() >= 2);
    CHECK(test::preset("uq2-0.3").q == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(code_of([] { preset_matrix("uq2-1.5"); }) == ErrorCode::InvalidQ);
    CHECK(code_of([] { preset_matrix("missing"); }) == ErrorCode::InvalidArgument);
    RunConfig both = with_preset("m2-q1");
    both.input_path = "x.json";
    CHECK_THROWS_AS(load_input(both), Error);
}

TEST_CASE("configuration limits") {
    RunConfig c = with_preset("m2-q1");
    c.levels = 0;
    CHECK(code_of([&] { validate_config(c); }) == ErrorCode::InvalidArgument);
    c = with_preset("m2-q1");
    c.format = "yaml";
    CHECK_THROWS_AS(validate_config(c), Error);
    c = with_preset("m2-q1");
    c.tol = -1.0;
    CHECK_THROWS_AS(validate_config(c), Error);
}

TEST_CASE("analyze") {
    const CommandResult r = cmd_analyze(with_preset("m3-phase", 4));
    CHECK(r.exit_code == 0);
    CHECK(r.report["data"]["q"].get<double>() ==
          doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
    CHECK(r.report["data"]["dims"] == Json::array({1, 3, 8, 21, 55}));
    CHECK(r.report["tl_report"]["is_tl"] == true);
    CHECK(r.report["schema_version"] == 1);

    RunConfig bad;
    bad.input_path = std::string(TLSUB_TEST_DATA) + "/non_tl.json";
    const CommandResult nt = cmd_analyze(bad);
    CHECK(nt.exit_code == 0);
    CHECK(nt.report["tl_report"]["is_tl"] == false);

    RunConfig missing;
    missing.input_path = "/nonexistent/matrix.json";
    CHECK(code_of([&] { cmd_analyze(missing); }) == ErrorCode::Io);
}

TEST_CASE("verify exit codes") {
    const CommandResult ok = cmd_verify(with_preset("uq2-0.5"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.report["pass"] == true);
    for (const Json& rel : ok.report["relations"]) {
        CHECK(rel["pass"] == true);
        if (rel["name"] == "cp_defect") continue;
        for (const Json& lv : rel["per_level"]) CHECK(lv["residual"].get<double>() < 1e-9);
    }

    RunConfig corrupt = with_preset("uq2-0.5");
    corrupt.corrupt_iota = 3;
    const CommandResult bad = cmd_verify(corrupt);
    CHECK(bad.exit_code == 1);
    CHECK(bad.report["pass"] == false);

    const CommandResult one = cmd_verify(with_preset("m3-phase", 1));
    CHECK(one.exit_code == 0);
}

TEST_CASE("deterministic reports") {
    const std::string a = dump_json(cmd_verify(with_preset("m3-scaled", 5)).report);
    const std::string b = dump_json(cmd_verify(with_preset("m3-scaled", 5)).report);
    CHECK(a == b);
    CHECK(a.back() == '\n');
}

TEST_CASE("cache reuse gives the same report") {
    const auto path = std::filesystem::temp_directory_path() / "tlsub_cmd_cache.bin";
    std::filesystem::remove(path);
    RunConfig c = with_preset("m3-phase", 4);
    c.cache_path = path.string();
    const std::string first = dump_json(cmd_verify(c).report);
    CHECK(std::filesystem::exists(path));
    const std::string second = dump_json(cmd_verify(c).report);
    CHECK(first == second);
    std::filesystem::remove(path);
}

TEST_CASE("json formatting") {
    Json j;
    j["b"] = 1.0;
    j["a"] = 0.1;
    j["c"] = std::numeric_limits<double>::quiet_NaN();
    j["d"] = Json::array({1, 2});
    const std::string s = dump_json(j);
    CHECK(s.find("\"a\": 0.10000000000000001") != std::string::npos);
    CHECK(s.find("\"b\": 1.0") != std::string::npos);
    CHECK(s.find("\"c\": null") != std::string::npos);
    CHECK(s.find("\"a\"") < s.find("\"b\""));
    CHECK(render_text(j).find("b = 1") != std::string::npos);
}

TEST_CASE("fusion, ktheory and uq2 commands") {
    const CommandResult f = cmd_fusion(RunConfig{}, {1, 0}, {1, 0});
    CHECK(f.report["decomposition"] ==
          Json::parse(R"([{"k":2,"l":0,"mult":1},{"k":0,"l":1,"mult":1}])"));
    CHECK_THROWS_AS(cmd_fusion(RunConfig{}, {-1, 0}, {1, 0}), Error);

    const CommandResult k = cmd_ktheory(RunConfig{});
    CHECK(k.exit_code == 0);
    bool seen = false;
    for (const Json& row : k.report["k_groups"])
        if (row["m"] == 4) {
            seen = true;
            CHECK(row["k0"] == "Z/2");
            CHECK(row["k1"] == "0");
        }
    CHECK(seen);

    RunConfig small;
    small.window_k0 = 3;
    small.window_L = 2;
    CHECK(code_of([&] { cmd_ktheory(small); }) == ErrorCode::WindowTooSmall);

    RunConfig u;
    u.ell_max = 2;
    const CommandResult q = cmd_uq2(u);
    CHECK(q.exit_code == 0);
    CHECK(q.report["spins"].size() == 5);
    for (const Json& s : q.report["spins"]) CHECK(s["homogeneous"] == true);
}
