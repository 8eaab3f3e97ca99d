#include "doctest.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "tlsub/tlsub.h"

namespace {

std::string temp_path(const char* name) {
    const char* dir = std::getenv("TLSUB_TEST_TMP");
    return std::string(dir ? dir : ".") + "/" + name;
}

std::string take(char* s) {
    std::string out = s ? s : "";
    tls_string_free(s);
    return out;
}

} // namespace

TEST_CASE("config defaults") {
    tls_config cfg;
    tls_config_init(&cfg);
    CHECK(cfg.levels == 6);
    CHECK(cfg.tol == 1e-10);
    CHECK(cfg.window_k0 == 4);
    CHECK(cfg.window_L == 6);
    CHECK(cfg.ell_max == 2);
    CHECK(cfg.trunc_K == 60);
    CHECK(cfg.preset == nullptr);
    CHECK(std::strcmp(tls_status_string(TLS_OK), "ok") == 0);
}

TEST_CASE("data handles") {
    tls_data* d = nullptr;
    REQUIRE(tls_data_from_preset("uq2-0.5", 1e-10, &d) == TLS_OK);
    CHECK(tls_data_m(d) == 2);
    CHECK(tls_data_q(d) == doctest::Approx(0.5).epsilon(1e-14));
    tls_data_free(d);

    const double rot[8] = {0, 0, 1, 0, -1, 0, 0, 0};
    REQUIRE(tls_data_from_matrix(rot, 2, 1e-10, &d) == TLS_OK);
    CHECK(tls_data_q(d) == 1.0);
    tls_data_free(d);

    REQUIRE(tls_data_from_json(R"({"antidiagonal": [1, {"re": 0, "im": 1}, 1]})", 1e-10, &d) ==
            TLS_OK);
    CHECK(tls_data_m(d) == 3);
    tls_data_free(d);

    const double singular[8] = {1, 0, 2, 0, 2, 0, 4, 0};
    d = nullptr;
    CHECK(tls_data_from_matrix(singular, 2, 1e-10, &d) == TLS_SINGULAR_MATRIX);
    CHECK(d == nullptr);
    CHECK(std::strlen(tls_last_error()) > 0);
    const double shear[8] = {1, 0, 1, 0, 0, 0, 1, 0};
    CHECK(tls_data_from_matrix(shear, 2, 1e-10, &d) == TLS_NOT_TEMPERLEY_LIEB);
    CHECK(tls_data_from_json("{", 1e-10, &d) == TLS_PARSE);
    CHECK(tls_data_from_preset("nope", 1e-10, &d) == TLS_INVALID_ARGUMENT);
    CHECK(tls_data_from_preset("m2-q1", 1e-10, nullptr) == TLS_INVALID_ARGUMENT);
    tls_data_free(nullptr);
}

TEST_CASE("fock handles") {
    tls_data* d = nullptr;
    REQUIRE(tls_data_from_preset("m3-phase", 1e-10, &d) == TLS_OK);
    tls_fock* f = nullptr;
    REQUIRE(tls_fock_build(d, 4, 0, &f) == TLS_OK);
    CHECK(tls_fock_levels(f) == 4);
    int64_t dims[5] = {0};
    REQUIRE(tls_fock_dims(f, dims, 5) == TLS_OK);
    CHECK(dims[0] == 1);
    CHECK(dims[2] == 8);
    CHECK(dims[4] == 55);
    CHECK(tls_fock_dims(f, dims, 3) == TLS_INVALID_ARGUMENT);

    char* json = nullptr;
    int passed = 0;
    REQUIRE(tls_fock_verify_json(f, 1e-9, &json, &passed) == TLS_OK);
    CHECK(passed == 1);
    CHECK(take(json).find("\"mixed\"") != std::string::npos);

    const std::string path = temp_path("capi_cache.bin");
    REQUIRE(tls_fock_save(f, path.c_str()) == TLS_OK);
    tls_fock* g = nullptr;
    REQUIRE(tls_fock_load(d, 4, path.c_str(), &g) == TLS_OK);
    CHECK(tls_fock_levels(g) == 4);
    tls_fock* wrong = nullptr;
    CHECK(tls_fock_load(d, 3, path.c_str(), &wrong) == TLS_IO);
    CHECK(wrong == nullptr);
    std::remove(path.c_str());

    REQUIRE(tls_fock_corrupt_iota(g, 3, 1e-3) == TLS_OK);
    REQUIRE(tls_fock_verify_json(g, 1e-9, &json, &passed) == TLS_OK);
    CHECK(passed == 0);
    tls_string_free(json);
    CHECK(tls_fock_corrupt_iota(g, 9, 1e-3) == TLS_LEVEL_OUT_OF_RANGE);

    tls_data* big = nullptr;
    REQUIRE(tls_data_from_preset("m4-alt", 1e-10, &big) == TLS_OK);
    tls_fock* h = nullptr;
    CHECK(tls_fock_build(big, 6, 1024, &h) == TLS_BUDGET_EXCEEDED);
    CHECK(h == nullptr);

    tls_fock_free(g);
    tls_fock_free(f);
    tls_data_free(big);
    tls_data_free(d);
}

TEST_CASE("commands") {
    tls_config cfg;
    tls_config_init(&cfg);
    cfg.preset = "uq2-0.5";
    char* report = nullptr;
    int code = -1;
    REQUIRE(tls_verify(&cfg, &report, &code) == TLS_OK);
    CHECK(code == 0);
    const std::string first = take(report);
    CHECK(first.find("\"schema_version\": 1") != std::string::npos);
    REQUIRE(tls_verify(&cfg, &report, &code) == TLS_OK);
    CHECK(take(report) == first);

    cfg.corrupt_iota = 3;
    REQUIRE(tls_verify(&cfg, &report, &code) == TLS_OK);
    CHECK(code == 1);
    tls_string_free(report);
    cfg.corrupt_iota = 0;

    cfg.levels = 3;
    cfg.text_format = 1;
    REQUIRE(tls_analyze(&cfg, &report, &code) == TLS_OK);
    CHECK(take(report).find("data.q = 0.5") != std::string::npos);
    cfg.text_format = 0;

    REQUIRE(tls_fusion(&cfg, 1, 0, 1, 0, &report, &code) == TLS_OK);
    CHECK(take(report).find("\"decomposition\"") != std::string::npos);
    CHECK(tls_fusion(&cfg, -1, 0, 1, 0, &report, &code) == TLS_INVALID_ARGUMENT);
    CHECK(code == 2);

    REQUIRE(tls_ktheory(&cfg, &report, &code) == TLS_OK);
    CHECK(take(report).find("\"Z/2\"") != std::string::npos);

    cfg.ell_max = 1;
    REQUIRE(tls_uq2(&cfg, &report, &code) == TLS_OK);
    CHECK(code == 0);
    tls_string_free(report);

    cfg.preset = nullptr;
    cfg.input_path = "/nonexistent.json";
    CHECK(tls_analyze(&cfg, &report, &code) == TLS_IO);
    CHECK(code == 2);
    CHECK(tls_analyze(nullptr, &report, &code) == TLS_INVALID_ARGUMENT);
}
