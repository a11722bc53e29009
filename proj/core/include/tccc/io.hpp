#pragma once

#include "tccc/arrangement.hpp"
#include "tccc/cellular.hpp"
#include "tccc/divisors.hpp"
#include "tccc/harness.hpp"
#include "tccc/microlocal.hpp"
#include "tccc/twisted_sheaf.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace tccc {

using Json = nlohmann::json;

/// {"dim": n, "rays": [[...], ...], "max_cones": [[...], ...]}. Throws InputError.
FanPtr fan_from_json(const Json& j, std::string name = "custom");
Json fan_to_json(const Fan& f);
/// A built-in name or a path to a JSON file.
FanPtr load_fan(const std::string& name_or_path);

/// {"fan": ..., "coeffs": {"rayIdx": "p/q", ...}}, {"coeffs": ["p/q", ...]} or a bare list.
/// The fan entry is optional when a fan is supplied. Throws InputError.
Divisor divisor_from_json(const Json& j, FanPtr fan = nullptr);
Json divisor_to_json(const Divisor& d);

/// Comma-separated rationals, e.g. "1/2,-3".
RationalVector parse_point(const std::string& text);

Json to_json(const RationalVector& x);
Json to_json(const GradedDims& g);
Json to_json(const PathCertificate& c);
Json to_json(const ArrangementComplex& a);
Json to_json(const SheafComplex& f);
Json to_json(const TorusHom& h);
Json to_json(const CohomologyReport& r);
Json to_json(const VerificationResult& v);

} // namespace tccc
