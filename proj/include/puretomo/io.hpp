#pragma once

#include <string>

#include <json.hpp>

#include "puretomo/bounds.hpp"
#include "puretomo/constructions.hpp"
#include "puretomo/tomography.hpp"
#include "puretomo/verify.hpp"

namespace puretomo {

using nlohmann::json;

// JSON schemas (doubles serialize shortest-round-trip, so values survive
// write → read bit for bit):
//
//   state:        {"dim": d, "amplitudes": [[re, im], ...]}
//   operator set: {"dim": d,
//                  "elements": [{"generator": [[re, im], ...]}
//                               | {"matrix": [[[re, im], ...], ...]}, ...],
//                  "resolution_subset": [k, ...]}          (optional)
//   outcomes:     {"dim": d, "values": [p_0, ...]}
//
// Readers re-validate through the library factories, so a file with a
// non-PSD matrix, a zero generator, or a bad subset fails with the same
// errors the in-memory constructors raise.

json to_json(const PureState& s);
PureState state_from_json(const json& j);

json to_json(const OperatorSet& set);
OperatorSet set_from_json(const json& j);

json to_json(const Povm& p);  // serialized as its operator set

json to_json(const OutcomeVector& v);
OutcomeVector outcomes_from_json(const json& j);

json to_json(const BoundsReport& r);
json to_json(const AdaptiveTranscript& t);
json to_json(const DistinguishabilityReport& r);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace puretomo
