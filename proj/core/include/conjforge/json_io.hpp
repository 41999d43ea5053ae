#pragma once

#include <string>

#include <json.hpp>

#include "conjforge/matrix_oracle.hpp"
#include "conjforge/reduce.hpp"

namespace conjforge::io {

using nlohmann::json;

json kind_to_json(const rootsys::RootSystemKind& k);
rootsys::RootSystemKind kind_from_json(const json& j);

// Versioned root-system document: kind, positive roots as integer arrays.
json root_system_to_json(const rootsys::RootSystem& rs);

// Order document: sequence of roots plus tagged witnesses.
json order_to_json(const rootsys::RootSystem& rs, const rootsys::ReductionOrder& o);
rootsys::ReductionOrder order_from_json(const rootsys::RootSystem& rs, const json& j);

// {"kind": ..., "coords": {"[c1,...,cn]": "p/q", ...}}
json coords_to_json(const rootsys::RootSystem& rs, const unipotent::UnipotentCoords& u);
unipotent::UnipotentCoords coords_from_json(const rootsys::RootSystem& rs, const json& j);

json word_to_json(const liealg::ChevalleyBasis& cb, const unipotent::ConjugatorWord& w);
unipotent::ConjugatorWord word_from_json(const liealg::ChevalleyBasis& cb, const json& j);

json step_to_json(const liealg::ChevalleyBasis& cb, const reduce::StepRecord& s);
json result_to_json(const liealg::ChevalleyBasis& cb, const reduce::ConjugacyResult& r);

// Constants report with exact rationals rendered as "p/q" strings.
json constants_to_json(const liealg::ChevalleyBasis& cb);

json matrix_to_json(const oracle::RationalMatrix& m);
oracle::RationalMatrix matrix_from_json(const json& j);

}  // namespace conjforge::io
