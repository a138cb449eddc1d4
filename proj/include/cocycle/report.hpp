#pragma once

#include <string>

#include "json.hpp"

#include "cocycle/barycentric.hpp"
#include "cocycle/butterfly.hpp"
#include "cocycle/exponents.hpp"
#include "cocycle/hyperbolicity.hpp"

namespace cocycle {

// Insertion-ordered JSON, so reports serialize byte-for-byte reproducibly.
using Json = nlohmann::ordered_json;

// Report schema: every record carries "exponents", "multiplicities",
// "steps", "stderr" and "trace" where they apply; certificates and the
// resolved run configuration sit alongside.
Json to_json(const ExponentReport& r);
Json to_json(const UHCertificate& c);
Json to_json(const BarycentricEstimate& e);
Json to_json(const FurstenbergVerdict& v);
Json to_json(const MeasureSliceResult& m);
// Raster summary (dimensions, energy range, per-row frequency and method).
Json to_json(const ButterflyRaster& r);

// {"config": config, "report": body}, two-space indented, trailing newline.
std::string render_report(const Json& config, const Json& body);

}  // namespace cocycle
