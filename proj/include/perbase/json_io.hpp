#pragma once

#include <string>

#include "json.hpp"
#include "perbase/classify.hpp"
#include "perbase/dynamics.hpp"
#include "perbase/laurent.hpp"
#include "perbase/pipeline.hpp"

namespace perbase {

using Json = nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json integer_json(const BigInt& v);
BigInt integer_from_json(const Json& j);

/// {"coords": ["p/q", ...]}
Json element_json(const FieldElement& x);
FieldElement element_from_json(const Field& field, const Json& j);

/// {"L": int, "preperiod": [digits], "period": [digits]}
Json rep_json(const Representation& rep);
Representation rep_from_json(const Json& j);

/// {"terms": [[exponent, coefficient], ...]} in descending exponent order.
Json laurent_json(const LaurentIntElement& z);
/// "e:c,e:c,..." pairs of exponent and integer coefficient.
LaurentIntElement parse_laurent(const Field& field, const std::string& text);

Json classification_json(const BaseClassification& c, const WeakGreedyAdvisory& advisory);
Json trace_json(const PipelineTrace& t);
Json orbit_trace_json(const DigitSelector& sel, const OrbitTrace& t);

/// {"kind": "greedy" | "balanced" | "itosadahiro" | "thurston",
///  "region": {"disk": r} | {"polygon": [[re, im], ...]}, "alphabet": [ints]}
/// A thurston spec without region and alphabet selects the unit-disk default.
DigitSelector selector_from_json(const Field& field, const Json& j);

}  // namespace perbase
