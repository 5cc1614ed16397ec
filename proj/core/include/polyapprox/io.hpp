#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "polyapprox/constants.hpp"
#include "polyapprox/deviations.hpp"
#include "polyapprox/estimator.hpp"
#include "polyapprox/measures.hpp"
#include "polyapprox/optimize.hpp"
#include "polyapprox/polytope.hpp"
#include "polyapprox/random.hpp"

namespace polyapprox {

using Json = nlohmann::json;

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

// {"n", "vertices", "facets": [{"normal", "offset"}]}, vertices and facets in lexicographic order.
void to_json(Json& j, const Polytope& p);
// Rebuilds the hull of the listed vertices; facets in the input are ignored.
void from_json(const Json& j, Polytope& p);

void to_json(Json& j, const EstimatorResult& r);
void from_json(const Json& j, EstimatorResult& r);

void to_json(Json& j, const DeviationReport& r);
void to_json(Json& j, const IntrinsicVolumeVector& v);
void to_json(Json& j, const InequalityRecord& r);
void to_json(Json& j, const TilingNumbers& t);
void to_json(Json& j, const HarnessResult& r);
void to_json(Json& j, const BestApproxResult& r);
void to_json(Json& j, const TriangleViolation& t);
void to_json(Json& j, const Delta1Comparison& c);
void to_json(Json& j, const Figure1Row& r);

// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

// Columns N,trials,scaled_mean,std_error.
std::string harness_csv(const HarnessResult& r);

}  // namespace polyapprox
