#include "tlsub/tlsub.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "tlsub/commands.hpp"

struct tls_data {
    tlsub::TLData value;
};

struct tls_fock {
    tlsub::FockTruncation value;
};

namespace {

thread_local std::string last_error;

tls_status to_status(tlsub::ErrorCode c) {
    using tlsub::ErrorCode;
    switch (c) {
    case ErrorCode::InvalidArgument: return TLS_INVALID_ARGUMENT;
    case ErrorCode::SingularMatrix: return TLS_SINGULAR_MATRIX;
    case ErrorCode::NotTemperleyLieb: return TLS_NOT_TEMPERLEY_LIEB;
    case ErrorCode::TraceTooSmall: return TLS_TRACE_TOO_SMALL;
    case ErrorCode::CanonicalizationFailed: return TLS_CANONICALIZATION_FAILED;
    case ErrorCode::BudgetExceeded: return TLS_BUDGET_EXCEEDED;
    case ErrorCode::RankAmbiguous: return TLS_RANK_AMBIGUOUS;
    case ErrorCode::RequiresAntidiagonal: return TLS_REQUIRES_ANTIDIAGONAL;
    case ErrorCode::LevelOutOfRange: return TLS_LEVEL_OUT_OF_RANGE;
    case ErrorCode::WindowTooSmall: return TLS_WINDOW_TOO_SMALL;
    case ErrorCode::InvalidQ: return TLS_INVALID_Q;
    case ErrorCode::Io: return TLS_IO;
    case ErrorCode::Parse: return TLS_PARSE;
    }
    return TLS_INTERNAL;
}

template <class F> tls_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return TLS_OK;
    } catch (const tlsub::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TLS_BUDGET_EXCEEDED;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TLS_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return TLS_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

tlsub::RunConfig to_config(const tls_config* cfg) {
    if (cfg == nullptr) throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null config");
    tlsub::RunConfig r;
    if (cfg->input_path) r.input_path = cfg->input_path;
    if (cfg->preset) r.preset = cfg->preset;
    if (cfg->cache_path) r.cache_path = cfg->cache_path;
    r.levels = cfg->levels;
    r.tol = cfg->tol;
    r.window_k0 = cfg->window_k0;
    r.window_L = cfg->window_L;
    r.ell_max = cfg->ell_max;
    r.trunc_K = cfg->trunc_K;
    r.format = cfg->text_format ? "text" : "json";
    r.memory_budget = cfg->memory_budget;
    r.corrupt_iota = cfg->corrupt_iota;
    return r;
}

template <class F>
tls_status run_command(const tls_config* cfg, char** report, int* exit_code, F&& command) {
    if (report == nullptr || exit_code == nullptr) {
        last_error = "null output pointer";
        return TLS_INVALID_ARGUMENT;
    }
    *report = nullptr;
    *exit_code = 2;
    return guarded([&] {
        const tlsub::RunConfig rc = to_config(cfg);
        const tlsub::CommandResult res = command(rc);
        const std::string text =
            rc.format == "text" ? tlsub::render_text(res.report) : tlsub::dump_json(res.report);
        *report = copy_string(text);
        *exit_code = res.exit_code;
    });
}

template <class T> bool null_out(T** out) {
    if (out == nullptr) {
        last_error = "null output pointer";
        return true;
    }
    *out = nullptr;
    return false;
}

} // namespace

extern "C" {

void tls_config_init(tls_config* cfg) {
    if (cfg == nullptr) return;
    const tlsub::RunConfig d;
    cfg->input_path = nullptr;
    cfg->preset = nullptr;
    cfg->levels = d.levels;
    cfg->tol = d.tol;
    cfg->window_k0 = d.window_k0;
    cfg->window_L = d.window_L;
    cfg->ell_max = d.ell_max;
    cfg->trunc_K = d.trunc_K;
    cfg->text_format = 0;
    cfg->memory_budget = d.memory_budget;
    cfg->cache_path = nullptr;
    cfg->corrupt_iota = 0;
}

const char* tls_status_string(tls_status s) {
    switch (s) {
    case TLS_OK: return "ok";
    case TLS_INVALID_ARGUMENT: return "invalid argument";
    case TLS_SINGULAR_MATRIX: return "singular matrix";
    case TLS_NOT_TEMPERLEY_LIEB: return "not Temperley-Lieb";
    case TLS_TRACE_TOO_SMALL: return "trace too small";
    case TLS_CANONICALIZATION_FAILED: return "canonicalization failed";
    case TLS_BUDGET_EXCEEDED: return "budget exceeded";
    case TLS_RANK_AMBIGUOUS: return "rank ambiguous";
    case TLS_REQUIRES_ANTIDIAGONAL: return "requires antidiagonal data";
    case TLS_LEVEL_OUT_OF_RANGE: return "level out of range";
    case TLS_WINDOW_TOO_SMALL: return "window too small";
    case TLS_INVALID_Q: return "invalid q";
    case TLS_IO: return "i/o error";
    case TLS_PARSE: return "parse error";
    case TLS_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* tls_last_error(void) { return last_error.c_str(); }

void tls_string_free(char* s) { std::free(s); }

tls_status tls_data_from_matrix(const double* entries, int m, double tol, tls_data** out) {
    if (null_out(out)) return TLS_INVALID_ARGUMENT;
    return guarded([&] {
        if (entries == nullptr || m < 2)
            throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "need m >= 2 and entries");
        tlsub::CMatrix A(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                A(i, j) = {entries[2 * (i * m + j)], entries[2 * (i * m + j) + 1]};
        *out = new tls_data{tlsub::normalize(A, tol)};
    });
}

tls_status tls_data_from_json(const char* json, double tol, tls_data** out) {
    if (null_out(out)) return TLS_INVALID_ARGUMENT;
    return guarded([&] {
        if (json == nullptr) throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null json");
        *out = new tls_data{tlsub::normalize(tlsub::parse_matrix_json(json), tol)};
    });
}

tls_status tls_data_from_preset(const char* name, double tol, tls_data** out) {
    if (null_out(out)) return TLS_INVALID_ARGUMENT;
    return guarded([&] {
        if (name == nullptr) throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null name");
        *out = new tls_data{tlsub::normalize(tlsub::preset_matrix(name), tol)};
    });
}

int tls_data_m(const tls_data* d) { return d ? d->value.m : 0; }
double tls_data_q(const tls_data* d) { return d ? d->value.q : 0.0; }
void tls_data_free(tls_data* d) { delete d; }

tls_status tls_fock_build(const tls_data* d, int levels, uint64_t memory_budget, tls_fock** out) {
    if (null_out(out)) return TLS_INVALID_ARGUMENT;
    return guarded([&] {
        if (d == nullptr) throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null data");
        tlsub::BuildOptions opts;
        if (memory_budget != 0) opts.memory_budget = memory_budget;
        *out = new tls_fock{tlsub::build(d->value, levels, opts)};
    });
}

tls_status tls_fock_load(const tls_data* d, int levels, const char* path, tls_fock** out) {
    if (null_out(out)) return TLS_INVALID_ARGUMENT;
    return guarded([&] {
        if (d == nullptr || path == nullptr)
            throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null argument");
        *out = new tls_fock{tlsub::load_cache(path, d->value, levels)};
    });
}

tls_status tls_fock_save(const tls_fock* f, const char* path) {
    return guarded([&] {
        if (f == nullptr || path == nullptr)
            throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null argument");
        tlsub::save_cache(f->value, path);
    });
}

tls_status tls_fock_dims(const tls_fock* f, int64_t* dims, size_t capacity) {
    return guarded([&] {
        if (f == nullptr || dims == nullptr)
            throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null argument");
        const auto& d = f->value.dims();
        if (capacity < d.size())
            throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "dims buffer too small");
        for (std::size_t k = 0; k < d.size(); ++k) dims[k] = d[k];
    });
}

int tls_fock_levels(const tls_fock* f) { return f ? f->value.levels() : 0; }

tls_status tls_fock_corrupt_iota(tls_fock* f, int level, double eps) {
    return guarded([&] {
        if (f == nullptr) throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null fock");
        f->value.corrupt_iota(level, eps);
    });
}

tls_status tls_fock_verify_json(const tls_fock* f, double tolerance, char** json, int* passed) {
    if (null_out(json) || passed == nullptr) return TLS_INVALID_ARGUMENT;
    return guarded([&] {
        if (f == nullptr) throw tlsub::Error(tlsub::ErrorCode::InvalidArgument, "null fock");
        tlsub::Json out = tlsub::Json::array();
        bool ok = true;
        for (const auto& r : tlsub::verify_all(f->value, tolerance)) {
            out.push_back(tlsub::to_json(r));
            ok = ok && r.pass;
        }
        *json = copy_string(tlsub::dump_json(out));
        *passed = ok ? 1 : 0;
    });
}

void tls_fock_free(tls_fock* f) { delete f; }

tls_status tls_analyze(const tls_config* cfg, char** report, int* exit_code) {
    return run_command(cfg, report, exit_code, [](const auto& c) { return tlsub::cmd_analyze(c); });
}

tls_status tls_verify(const tls_config* cfg, char** report, int* exit_code) {
    return run_command(cfg, report, exit_code, [](const auto& c) { return tlsub::cmd_verify(c); });
}

tls_status tls_fusion(const tls_config* cfg, int k, int l, int k2, int l2, char** report,
                      int* exit_code) {
    return run_command(cfg, report, exit_code, [&](const auto& c) {
        return tlsub::cmd_fusion(c, {k, l}, {k2, l2});
    });
}

tls_status tls_ktheory(const tls_config* cfg, char** report, int* exit_code) {
    return run_command(cfg, report, exit_code, [](const auto& c) { return tlsub::cmd_ktheory(c); });
}

tls_status tls_uq2(const tls_config* cfg, char** report, int* exit_code) {
    return run_command(cfg, report, exit_code, [](const auto& c) { return tlsub::cmd_uq2(c); });
}

} // extern "C"
