#pragma once

// JSON forms of the library's data:
//   step function  {"breakpoints": [...], "values": [...], "tail": v}
//   matrix         {"n": n, "w": w, "re": [[...]], "im": [[...]]}  (row-major, "im" optional)
//   hom            {"terms": [{"A": matrix, "B": matrix}], "orthogonal": bool}
// Readers throw FormatError on malformed input.

#include <json.hpp>
#include <string>

#include "kinterp/orbits.hpp"
#include "kinterp/pair_hom.hpp"
#include "kinterp/step_function.hpp"
#include "kinterp/transfer.hpp"

namespace kinterp {

using Json = nlohmann::ordered_json;

Json to_json(const StepFunction& f);
Json to_json(const SingularFunction& mu);
Json to_json(const TraceMatrix& x);
Json to_json(const PairHom& t);
Json to_json(const CertifiedBounds& b);
Json to_json(const TransferPlan& p);
Json to_json(const TransferReport& r);
Json to_json(const InterpolationReport& r);
Json to_json(const OrbitCheckReport& r);
Json to_json(const CounterexampleReport& r);

StepFunction step_from_json(const Json& j);
TraceMatrix matrix_from_json(const Json& j);
PairHom hom_from_json(const Json& j);

// Parses text; FormatError on a syntax error.
Json parse_json(const std::string& text);

// Non-finite numbers are written as the strings "inf", "-inf", "nan".
Json number(double v);

}  // namespace kinterp
