#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "polyapprox/errors.hpp"
#include "polyapprox/io.hpp"

using namespace polyapprox;

TEST(PolytopeJson, RoundTripPreservesGeometry) {
  const Polytope p = make_regular_simplex(3).scaled(1.7);
  const Json j = p;
  EXPECT_EQ(j.at("n").get<int>(), 3);
  EXPECT_EQ(j.at("vertices").size(), 4u);
  EXPECT_EQ(j.at("facets").size(), 4u);
  const Polytope q = j.get<Polytope>();
  EXPECT_NEAR(q.volume(), p.volume(), 1e-12);
  EXPECT_EQ(Json(q).dump(), j.dump());
}

TEST(PolytopeJson, VerticesInLexicographicOrder) {
  const Json j = make_regular_polygon(7, 1.0, 0.4);
  const auto& v = j.at("vertices");
  for (std::size_t i = 1; i < v.size(); ++i)
    EXPECT_TRUE(v[i - 1].get<std::vector<double>>() < v[i].get<std::vector<double>>());
  for (const auto& f : j.at("facets")) {
    const auto nrm = f.at("normal").get<std::vector<double>>();
    EXPECT_NEAR(std::hypot(nrm[0], nrm[1]), 1.0, 1e-12);
    EXPECT_NEAR(f.at("offset").get<double>(), std::cos(M_PI / 7), 1e-12);
  }
}

TEST(PolytopeJson, RejectsMalformed) {
  EXPECT_THROW(Json::parse(R"({"n": 2})").get<Polytope>(), Error);
  EXPECT_THROW(Json::parse(R"({"n": 3, "vertices": [[0,0],[1,0],[0,1]]})").get<Polytope>(), Error);
  EXPECT_THROW(Json::parse(R"({"vertices": [[0,"a"]]})").get<Polytope>(), Error);
}

TEST(EstimatorJson, RoundTrip) {
  const EstimatorResult r{0.125, 3e-4, 100000, 18446744073709551615ull};
  const Json j = r;
  EXPECT_EQ(j.dump(), R"({"samples":100000,"seed":18446744073709551615,"std_error":0.0003,"value":0.125})");
  const auto back = j.get<EstimatorResult>();
  EXPECT_EQ(back.value, r.value);
  EXPECT_EQ(back.seed, r.seed);
}

TEST(DeviationJson, MirrorsEstimatorPlusKind) {
  DeviationReport r;
  r.kind = DeviationKind::DeltaSigma;
  r.value = 1.5;
  r.components = {0.5, 1.0};
  r.component_errors = {0.0, 0.0};
  const Json j = r;
  for (const char* key : {"value", "std_error", "samples", "seed", "kind", "components"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("components").size(), 2u);
  EXPECT_FALSE(j.contains("cross_check"));
}

TEST(Json, NonFiniteBecomesNull) {
  const Json j = EstimatorResult::exact(std::numeric_limits<double>::infinity());
  EXPECT_TRUE(j.at("value").is_null());
}

TEST(HarnessCsv, Columns) {
  HarnessResult h;
  h.rows = {{64, 10, 1.5, 0.25, 0.1}, {128, 10, 1.25, 0.5, 0.05}};
  EXPECT_EQ(harness_csv(h), "N,trials,scaled_mean,std_error\n64,10,1.5,0.25\n128,10,1.25,0.5\n");
}
