#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tlsub/tlsub.h"

namespace {

int finish(tls_status st, char* report, int exit_code) {
    if (st != TLS_OK) {
        std::cerr << "error: " << tls_status_string(st) << ": " << tls_last_error() << '\n';
        return 2;
    }
    std::fputs(report, stdout);
    tls_string_free(report);
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temperley-Lieb subproduct system workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    tls_config cfg;
    tls_config_init(&cfg);
    std::string input, preset, format = "json", cache;
    app.add_option("--input", input, "JSON file with \"entries\" or \"antidiagonal\"");
    app.add_option("--preset", preset,
                   "built-in instance: m2-q1, m2-phase, m3-phase, m3-scaled, m4-alt, uq2-<q>");
    app.add_option("--levels", cfg.levels, "truncation level N")->capture_default_str();
    app.add_option("--tol", cfg.tol, "numerical tolerance")->capture_default_str();
    app.add_option("--window-k0", cfg.window_k0, "K-theory window k0")->capture_default_str();
    app.add_option("--window-L", cfg.window_L, "K-theory window L")->capture_default_str();
    app.add_option("--ell-max", cfg.ell_max, "largest spin l for uq2")->capture_default_str();
    app.add_option("--trunc-K", cfg.trunc_K, "sequence space truncation for uq2")
        ->capture_default_str();
    app.add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--budget", cfg.memory_budget, "memory budget in bytes")->capture_default_str();
    app.add_option("--cache", cache, "Fock cache file (read if valid, written otherwise)");
    app.add_option("--corrupt-iota", cfg.corrupt_iota, "perturb iota at this level (testing)")
        ->group("");

    auto* analyze = app.add_subcommand("analyze", "validate A and summarize the instance");
    auto* verify = app.add_subcommand("verify", "run all relation and quasi-homomorphism checks");
    auto* fusion = app.add_subcommand("fusion", "decompose U_{k,l} (x) U_{k2,l2}");
    int k = 0, l = 0, k2 = 0, l2 = 0;
    fusion->add_option("k", k)->required();
    fusion->add_option("l", l)->required();
    fusion->add_option("k2", k2)->required();
    fusion->add_option("l2", l2)->required();
    auto* ktheory = app.add_subcommand("ktheory", "K-groups table and window Smith normal form");
    auto* uq2 = app.add_subcommand("uq2", "coefficient checks for U_q(2) spin representations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.input_path = input.empty() ? nullptr : input.c_str();
    cfg.preset = preset.empty() ? nullptr : preset.c_str();
    cfg.cache_path = cache.empty() ? nullptr : cache.c_str();
    cfg.text_format = format == "text" ? 1 : 0;

    char* report = nullptr;
    int code = 2;
    tls_status st = TLS_INTERNAL;
    if (analyze->parsed()) st = tls_analyze(&cfg, &report, &code);
    else if (verify->parsed()) st = tls_verify(&cfg, &report, &code);
    else if (fusion->parsed()) st = tls_fusion(&cfg, k, l, k2, l2, &report, &code);
    else if (ktheory->parsed()) st = tls_ktheory(&cfg, &report, &code);
    else if (uq2->parsed()) st = tls_uq2(&cfg, &report, &code);
    return finish(st, report, code);
}
