#pragma once

// Wire formats: rationals as "a/b" strings, log values and brackets with both
// exact fields and float renderings, maps as sparse coefficient tables.

#include <string>

#include <json.hpp>

#include "padic/dynamics.hpp"

namespace padic::io {

using nlohmann::json;

// Floats are a courtesy rendering; round to 12 significant digits.
double round12(double x);

json logvalue_json(const LogValue& v);
json point_json(const ProjectivePoint& P);
std::vector<PadicRational> coords_from_json(const json& j, PrimeContext ctx);
json distance_json(const ChordalDistance& d, long p);
json map_json(const HomogeneousMap& f);
HomogeneousMap map_from_json(const json& j);
HomogeneousMap map_from_file(const std::string& path);
json resultant_json(const HomogeneousMap& f);
json green_json(const GreenEstimate& g);
json classification_json(const OrbitClassification& c);
json certificate_json(const FatouCertificate& c);
json holder_json(const HolderConstants& h, PrimeContext ctx);
json min_bound_json(const MinBoundResult& r);
json orbit_json(const HomogeneousMap& f, const OrbitSegment& seg);

} // namespace padic::io
