#include "tlsub/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "tlsub/quasihom.hpp"
#include "tlsub/uq2coeff.hpp"

namespace tlsub {

namespace {

Complex parse_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_object()) {
        double re = 0.0, im = 0.0;
        if (j.contains("re")) {
            if (!j.at("re").is_number()) throw Error(ErrorCode::Parse, "\"re\" must be a number");
            re = j.at("re").get<double>();
        }
        if (j.contains("im")) {
            if (!j.at("im").is_number()) throw Error(ErrorCode::Parse, "\"im\" must be a number");
            im = j.at("im").get<double>();
        }
        return {re, im};
    }
    throw Error(ErrorCode::Parse, "expected a number or {\"re\", \"im\"}");
}

CVector antidiagonal_vector(std::initializer_list<Complex> values) {
    CVector a(static_cast<Index>(values.size()));
    Index k = 0;
    for (Complex v : values) a(k++) = v;
    return a;
}

double check_tolerance(const RunConfig& cfg) { return std::max(kCheckTolerance, cfg.tol); }

Json instance_json(const TLData& d) {
    Json j{{"m", d.m}, {"q", d.q}, {"trace", d.trace}};
    j["antidiagonal"] = d.antidiagonal ? to_json(*d.antidiagonal) : Json(nullptr);
    return j;
}

std::vector<Complex> gauge_phases(const TLData& d) {
    std::vector<Complex> c;
    const CVector& a = *d.antidiagonal;
    for (int i = 0; i < d.m; ++i) c.push_back(-a(i) * std::conj(a(d.m - 1 - i)));
    return c;
}

CVector alternating(int m) {
    CVector a(m);
    for (int i = 0; i < m; ++i) a(i) = (i % 2 == 0) ? 1.0 : -1.0;
    return a;
}

} // namespace

void validate_config(const RunConfig& cfg) {
    if (cfg.levels < 1) throw Error(ErrorCode::InvalidArgument, "--levels must be >= 1");
    if (!(cfg.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    if (cfg.format != "json" && cfg.format != "text")
        throw Error(ErrorCode::InvalidArgument, "--format must be json or text");
    if (cfg.ell_max < 0) throw Error(ErrorCode::InvalidArgument, "--ell-max must be >= 0");
    if (cfg.trunc_K < 4) throw Error(ErrorCode::InvalidArgument, "--trunc-K must be >= 4");
    if (cfg.memory_budget == 0) throw Error(ErrorCode::InvalidArgument, "--budget must be positive");
}

CMatrix parse_matrix_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::Parse, "input must be a JSON object");
    if (j.contains("entries")) {
        const Json& rows = j.at("entries");
        if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::Parse, "\"entries\" must be a non-empty array");
        const Index m = static_cast<Index>(rows.size());
        CMatrix A(m, m);
        for (Index i = 0; i < m; ++i) {
            const Json& row = rows.at(i);
            if (!row.is_array() || static_cast<Index>(row.size()) != m)
                throw Error(ErrorCode::Parse, "\"entries\" must be a square array");
            for (Index k = 0; k < m; ++k) A(i, k) = parse_complex(row.at(k));
        }
        return A;
    }
    if (j.contains("antidiagonal")) {
        const Json& a = j.at("antidiagonal");
        if (!a.is_array() || a.empty())
            throw Error(ErrorCode::Parse, "\"antidiagonal\" must be a non-empty array");
        CVector v(static_cast<Index>(a.size()));
        for (Index k = 0; k < v.size(); ++k) v(k) = parse_complex(a.at(k));
        return antidiagonal_matrix(v);
    }
    throw Error(ErrorCode::Parse, "input needs \"entries\" or \"antidiagonal\"");
}

std::vector<std::string> preset_names() {
    return {"m2-q1", "m2-phase", "m3-phase", "m3-scaled", "m4-alt", "uq2-<q>"};
}

CMatrix preset_matrix(const std::string& name) {
    const Complex I(0.0, 1.0);
    if (name == "m2-q1") return antidiagonal_matrix(antidiagonal_vector({1.0, -1.0}));
    if (name == "m2-phase") return antidiagonal_matrix(antidiagonal_vector({I, 1.0}));
    if (name == "m3-phase") return antidiagonal_matrix(antidiagonal_vector({1.0, I, 1.0}));
    if (name == "m3-scaled") return antidiagonal_matrix(antidiagonal_vector({2.0, 1.0, 0.5}));
    if (name == "m4-alt") return antidiagonal_matrix(alternating(4));
    if (name.rfind("uq2-", 0) == 0) {
        const std::string tail = name.substr(4);
        double q = 0.0;
        std::size_t used = 0;
        try {
            q = std::stod(tail, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tail.size() || tail.empty())
            throw Error(ErrorCode::InvalidArgument, "unknown preset: " + name);
        if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidQ, "preset q must lie in (0, 1]");
        return antidiagonal_matrix(antidiagonal_vector({1.0 / std::sqrt(q), -std::sqrt(q)}));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown preset: " + name);
}

CMatrix load_input(const RunConfig& cfg) {
    if (!cfg.input_path.empty() && !cfg.preset.empty())
        throw Error(ErrorCode::InvalidArgument, "give either --input or --preset, not both");
    if (!cfg.preset.empty()) return preset_matrix(cfg.preset);
    if (cfg.input_path.empty())
        throw Error(ErrorCode::InvalidArgument, "an input matrix is required (--input or --preset)");
    std::ifstream in(cfg.input_path);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + cfg.input_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix_json(ss.str());
}

FockTruncation build_or_load(const TLData& data, const RunConfig& cfg) {
    BuildOptions opts;
    opts.memory_budget = cfg.memory_budget;
    if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path)) {
        try {
            return load_cache(cfg.cache_path, data, cfg.levels);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Io) throw;
        }
    }
    FockTruncation f = build(data, cfg.levels, opts);
    if (!cfg.cache_path.empty()) save_cache(f, cfg.cache_path);
    return f;
}

CommandResult cmd_analyze(const RunConfig& cfg) {
    validate_config(cfg);
    const CMatrix A = load_input(cfg);
    CommandResult res;
    Json& j = res.report;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "analyze";
    const TLReport rep = validate(A, cfg.tol);
    j["tl_report"] = to_json(rep);
    if (!rep.is_tl) {
        j["data"] = nullptr;
        return res;
    }
    const TLData d = normalize(A, cfg.tol);
    Json data = instance_json(d);
    data["lambda_closed_form"] = d.lambda();
    data["levels"] = cfg.levels;
    Json dims = Json::array();
    const FockTruncation fock = build_or_load(d, cfg);
    for (Index n : fock.dims()) dims.push_back(n);
    data["dims"] = dims;
    if (d.antidiagonal) {
        Json phases = Json::array();
        for (Complex c : gauge_phases(d)) phases.push_back(to_json(c));
        data["gauge_phases"] = phases;
        data["canonical"] = nullptr;
    } else {
        data["gauge_phases"] = nullptr;
        try {
            const Canonical c = canonicalize(A, cfg.tol);
            data["canonical"] = Json{{"antidiagonal", to_json(c.a)}, {"residual", c.residual}};
        } catch (const Error& e) {
            data["canonical"] = Json{{"error", std::string(to_string(e.code()))}};
        }
    }
    j["data"] = data;
    return res;
}

CommandResult cmd_verify(const RunConfig& cfg) {
    validate_config(cfg);
    const TLData d = normalize(load_input(cfg), cfg.tol);
    auto fock = std::make_shared<FockTruncation>(build_or_load(d, cfg));
    if (cfg.corrupt_iota != 0) fock->corrupt_iota(cfg.corrupt_iota, 1e-3);
    const double tol = check_tolerance(cfg);
    const int N = fock->levels();
    const int m = fock->m();

    CommandResult res;
    Json& j = res.report;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify";
    Json inst = instance_json(d);
    inst["levels"] = N;
    inst["dims"] = fock->dims();
    j["instance"] = inst;
    bool pass = true;

    Json rel = Json::array();
    for (const auto& r : verify_all(*fock, tol)) {
        rel.push_back(to_json(r));
        pass = pass && r.pass;
    }
    j["relations"] = rel;

    Json quasi;
    if (N >= 2) {
        const QuasiData qd = build_theta_phi(fock, tol);
        Json checks = Json::array();
        for (const RelationReport* r : {&qd.isometry, &qd.complement, &qd.orthogonality, &qd.coisometry}) {
            checks.push_back(to_json(*r));
            pass = pass && r->pass;
        }
        const RelationReport unit = unit_difference(qd, tol);
        checks.push_back(to_json(unit));
        pass = pass && unit.pass;
        quasi["checks"] = checks;
        quasi["kernel_dim"] = qd.kernel_dim;
        pass = pass && qd.kernel_dim == 1;

        Json blocks = Json::array();
        for (int i = 0; i < m; ++i) {
            const QuasiBlockReport b = quasi_blocks(qd, i, tol);
            blocks.push_back(Json{{"i", i + 1},
                                  {"total", to_json(b.total)},
                                  {"theta", to_json(b.theta)},
                                  {"phi", to_json(b.phi_part)},
                                  {"envelope", b.envelope}});
            pass = pass && b.theta.pass && b.phi_part.pass;
            if (N >= 3) pass = pass && b.total.pass;
        }
        quasi["blocks"] = blocks;

        RelationReport defect{"defect_norm", {}, tol, true,
                              "|measured - closed form| on levels within the dense budget"};
        Json profile = Json::array();
        double previous = 0.0;
        for (int n = 1; n + 2 <= N; ++n) {
            if (std::pow(static_cast<double>(m), n + 2) > static_cast<double>(kDenseDimLimit)) break;
            const DefectNorm dn = defect_norm(*fock, n);
            defect.per_level.emplace_back(n, std::abs(dn.measured - dn.closed_form));
            profile.push_back(Json{{"n", n}, {"measured", dn.measured}, {"closed_form", dn.closed_form}});
            if (!(std::abs(dn.measured - dn.closed_form) <= tol)) defect.pass = false;
            if (n > 1 && !(dn.measured < previous)) defect.pass = false;
            previous = dn.measured;
        }
        quasi["defect_norm"] = to_json(defect);
        quasi["defect_profile"] = profile;
        pass = pass && defect.pass;

        Json ranks = Json::array();
        for (int n = 1; n <= std::min(3, N - 2); ++n) {
            const IndexRanks r = index_ranks(qd, n);
            const bool ok = r.rank_plus == 2 && r.rank_minus == m;
            ranks.push_back(Json{{"n", n}, {"rank_plus", r.rank_plus}, {"rank_minus", r.rank_minus},
                                 {"gap", r.gap}, {"pass", ok}});
            pass = pass && ok;
        }
        quasi["index_ranks"] = ranks;
    } else {
        quasi["note"] = "quasi-homomorphism checks need at least two levels";
    }
    j["quasi"] = quasi;
    j["pass"] = pass;
    res.exit_code = pass ? 0 : 1;
    return res;
}

CommandResult cmd_fusion(const RunConfig& cfg, RepLabel a, RepLabel b) {
    validate_config(cfg);
    CommandResult res;
    Json& j = res.report;
    const LabelMultiset f = fuse(a, b);
    j["schema_version"] = kSchemaVersion;
    j["command"] = "fusion";
    j["a"] = Json{{"k", a.k}, {"l", a.l}};
    j["b"] = Json{{"k", b.k}, {"l", b.l}};
    j["decomposition"] = to_json(f);
    int classical = 0;
    for (const auto& [c, mult] : f) classical += mult * (c.k + 1);
    j["classical_dim"] = classical;
    j["chain_class"] = chain_class(a) + chain_class(b);
    return res;
}

CommandResult cmd_ktheory(const RunConfig& cfg) {
    validate_config(cfg);
    CommandResult res;
    Json& j = res.report;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "ktheory";
    bool pass = true;

    Json table = Json::array();
    for (int m = 2; m <= 6; ++m) {
        BuildOptions opts;
        opts.memory_budget = cfg.memory_budget;
        const TLData d = normalize(antidiagonal_matrix(alternating(m)), cfg.tol);
        auto fock = std::make_shared<const FockTruncation>(build(d, 3, opts));
        const QuasiData qd = build_theta_phi(fock);
        const KGroups g = k_groups_O(m, &qd);
        const bool ok = g.d_numeric && *g.d_numeric == g.d_analytic;
        pass = pass && ok;
        table.push_back(Json{{"m", m},
                             {"k0", g.k0.str()},
                             {"k1", g.k1.str()},
                             {"groups", to_json(g)},
                             {"d", g.d},
                             {"d_analytic", g.d_analytic},
                             {"d_numeric", *g.d_numeric}});
    }
    j["k_groups"] = table;

    const WindowMatrix w = window_matrix(cfg.window_k0, cfg.window_L);
    const auto snf = smith_normal_form(w.entries);
    bool ones = true;
    Json diag = Json::array();
    for (const auto& v : snf) {
        diag.push_back(static_cast<long long>(v));
        ones = ones && v == 1;
    }
    bool triangular = true;
    for (std::size_t r = 0; r < w.entries.size(); ++r)
        for (std::size_t c = 0; c < r; ++c) triangular = triangular && w.entries[r][c] == 0;
    pass = pass && ones;
    j["window"] = Json{{"k0", cfg.window_k0},
                       {"L", cfg.window_L},
                       {"size", w.entries.size()},
                       {"row_window_size", w.row_window_size},
                       {"upper_triangular", triangular},
                       {"snf", diag},
                       {"snf_all_ones", ones}};

    bool leading = true, rho = true;
    for (int k = 1; k <= 8; ++k)
        for (int l = -8; l <= 8; ++l) {
            const KClass c = pi_star(k, l);
            const auto top = c.p_coeffs.rbegin()->first.first;
            int count = 0;
            for (const auto& [mn, v] : c.p_coeffs)
                if (mn.first == top) ++count;
            leading = leading && top == k - 1 && count == 1 &&
                      c.p_coeffs.at({k - 1, l + 1}) == -1;
        }
    for (int k = 0; k <= 8; ++k)
        for (int l = -8; l <= 8; ++l) {
            const KClass c = pi_star(k, l);
            const auto r = rho_star({k, l});
            rho = rho && std::map<int, long long>(r.begin(), r.end()) == c.qt_coeffs;
        }
    pass = pass && leading && rho;
    j["pi_star"] = Json{{"leading_term", leading}, {"rho_star_consistent", rho}};
    j["pass"] = pass;
    res.exit_code = pass ? 0 : 1;
    return res;
}

CommandResult cmd_uq2(const RunConfig& cfg) {
    validate_config(cfg);
    double q = 0.5;
    if (!cfg.input_path.empty() || !cfg.preset.empty()) {
        const TLData d = normalize(load_input(cfg), cfg.tol);
        if (d.m == 2 && d.q > 0.0 && d.q < 1.0) q = d.q;
    }
    const SURep rep = build_su_rep(q, cfg.trunc_K);
    CommandResult res;
    Json& j = res.report;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "uq2";
    j["q"] = q;
    j["K"] = cfg.trunc_K;
    Json resid;
    for (const auto& [name, v] : rep.residuals) resid[name] = v;
    j["generator_residuals"] = resid;
    bool pass = true;
    Json spins = Json::array();
    for (int two_l = 0; two_l <= 2 * cfg.ell_max; ++two_l) {
        const XDegreeReport x = xdegree_check(rep, two_l);
        const TorusReport t = torus_weight_check(rep, two_l);
        const double unitarity = spin_unitarity(rep, two_l);
        const WeightMultiset expected = weights({two_l, 0});
        const bool weights_ok = x.column_weights == expected;
        const bool ok = x.pass && t.pass && unitarity < 1e-8 && weights_ok;
        pass = pass && ok;
        Json w = Json::array();
        for (const auto& [s, mult] : x.column_weights) w.push_back(Json{{"weight", s}, {"mult", mult}});
        spins.push_back(Json{{"two_l", two_l},
                             {"degrees", x.degrees},
                             {"expected_column_degrees", x.expected},
                             {"off_degree_mass", x.off_degree_mass},
                             {"homogeneous", x.pass},
                             {"torus_residual", t.residual},
                             {"torus_samples", t.samples},
                             {"interior_unitarity", unitarity},
                             {"column_weights", w},
                             {"weights_match", weights_ok},
                             {"pass", ok}});
    }
    j["spins"] = spins;
    j["pass"] = pass;
    res.exit_code = pass ? 0 : 1;
    return res;
}

} // namespace tlsub
