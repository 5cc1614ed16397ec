#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyapprox/body.hpp"
#include "polyapprox/deviations.hpp"
#include "polyapprox/io.hpp"

namespace polyapprox::cli {

// Everything a run depends on. Thread count is deliberately absent: it never changes results.
struct RunConfig {
  std::string command;
  int dim = 2;
  std::optional<int> j;
  std::optional<double> q;
  std::string kind = "delta";  // deviation kind
  std::string body = "ball";
  std::string other;
  std::vector<int> N;
  int trials = 100;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  // Command-specific settings.
  double eps = 0.1;
  int nmax = 1000;
  bool suite = false;
  std::string mode = "inscribed";
  std::string density = "uniform";
  std::string moments = "sigma";
  std::string method;  // intrinsic-volume method for estimate; empty = auto
  int restarts = 8;
  int steps = 3000;
  double h_min = -0.9;
  double h_max = 3.0;
  double h_step = 0.01;
  int corpus = 50;
};

void to_json(Json& j, const RunConfig& c);
void from_json(const Json& j, RunConfig& c);

// Body descriptor "kind[:params]" in dimension dim; see kBodyGrammar.
BodyPtr parse_body(const std::string& descriptor, int dim);
MomentSequence parse_moments(const std::string& descriptor, int dim);

extern const char* const kBodyGrammar;

struct Output {
  std::vector<Json> records;  // result payloads, wrapped with the config on emission
  std::string csv;            // set when the run asked for CSV
};

// Runs one configured command; throws polyapprox::Error on bad input or estimator failure.
Output execute(const RunConfig& cfg);

// Full front end: parse, resolve the seed, execute, emit. env_seed is the POLYAPPROX_SEED value or null.
// Exit codes: 0 success, 2 bad input, 3 internal estimator failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const char* env_seed);

}  // namespace polyapprox::cli
