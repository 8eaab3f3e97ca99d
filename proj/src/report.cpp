#include "tlsub/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tlsub {

namespace {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    const char* sep = indent > 0 ? ": " : ":";
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{' << nl;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ',' << nl;
            first = false;
            os << pad << Json(it.key()).dump() << sep;
            write(os, it.value(), indent, depth + 1);
        }
        os << nl << close << '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << '[' << nl;
        bool first = true;
        for (const auto& v : j) {
            if (!first) os << ',' << nl;
            first = false;
            os << pad;
            write(os, v, indent, depth + 1);
        }
        os << nl << close << ']';
        return;
    }
    case Json::value_t::number_float:
        os << format_double(j.get<double>());
        return;
    default:
        os << j.dump();
    }
}

void text(std::ostringstream& os, const Json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            text(os, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t k = 0; k < j.size(); ++k)
            text(os, j[k], prefix + "[" + std::to_string(k) + "]");
    } else {
        os << prefix << " = ";
        write(os, j, 0, 0);
        os << '\n';
    }
}

} // namespace

std::string dump_json(const Json& j, int indent) {
    std::ostringstream os;
    write(os, j, indent, 0);
    os << '\n';
    return os.str();
}

std::string render_text(const Json& j) {
    std::ostringstream os;
    text(os, j, "");
    return os.str();
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const CVector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

Json to_json(const TLReport& r) {
    return Json{{"is_tl", r.is_tl},
                {"scale", r.scale},
                {"unitarity_residual", r.unitarity_residual},
                {"lambda", r.lambda},
                {"lambda_residual", r.lambda_residual}};
}

Json to_json(const RelationReport& r) {
    Json levels = Json::array();
    for (const auto& [n, v] : r.per_level) levels.push_back(Json{{"n", n}, {"residual", v}});
    return Json{{"name", r.name},
                {"per_level", levels},
                {"tolerance", r.tolerance},
                {"pass", r.pass},
                {"note", r.note}};
}

Json to_json(const AbelianGroup& g) {
    return Json{{"free_rank", g.free_rank}, {"torsion", g.torsion}};
}

Json to_json(const KGroups& g) { return Json{{"k0", to_json(g.k0)}, {"k1", to_json(g.k1)}}; }

Json to_json(const LabelMultiset& labels) {
    Json out = Json::array();
    for (auto it = labels.rbegin(); it != labels.rend(); ++it)
        out.push_back(Json{{"k", it->first.k}, {"l", it->first.l}, {"mult", it->second}});
    return out;
}

} // namespace tlsub
