#pragma once

#include <string>

#include <json.hpp>

#include "tlsub/ktheory.hpp"
#include "tlsub/param.hpp"
#include "tlsub/relations.hpp"
#include "tlsub/repring.hpp"

namespace tlsub {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Sorted keys, floats with 17 significant digits, non-finite values as null.
std::string dump_json(const Json& j, int indent = 2);
std::string render_text(const Json& j);

Json to_json(Complex z);
Json to_json(const CVector& v);
Json to_json(const TLReport& r);
Json to_json(const RelationReport& r);
Json to_json(const AbelianGroup& g);
Json to_json(const KGroups& g);
Json to_json(const LabelMultiset& labels);

} // namespace tlsub
