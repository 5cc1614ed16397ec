#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyapprox/body.hpp"

namespace polyapprox {

struct CorpusEntry {
  BodyPtr body;
  BodyPtr partner;  // random polytope of the same dimension
  BodyPtr nested;   // polytope contained in body
  std::string label;
};

// Seeded mix of polytopes (n = 2..4), balls, ellipsoids, caps and ball-polytope intersections (n = 2, 3).
std::vector<CorpusEntry> property_corpus(int count, std::uint64_t seed);

struct PropertyCheck {
  std::string body;
  std::string property;
  bool pass = false;
  double margin = 0.0;  // slack left before the check fails, in the check's own units
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  std::size_t failures() const;
  // Distinct property names that were checked.
  std::vector<std::string> properties() const;
};

// Nonnegativity and symmetry of every deviation kind against the partner, the isoperimetric chain and
// log-concavity of V_j / V_j(D_n), handshaking/Euler on the polytopes involved, and
// Delta_1 >= V_1(D_n) delta_1 with equality on the nested pair. Tolerances are 3 combined sigma.
PropertyReport check_properties(const std::vector<CorpusEntry>& corpus, std::uint64_t samples, std::uint64_t seed);

// Euler relation, handshaking (n >= 3) and, for simplicial n >= 4, f_0 < ... < f_{m-1} <= f_m (m = floor(n/2))
// with a strictly decreasing tail from f_{floor(3(n-1)/4)}. The last head step is an equality for even-dimensional simplices.
bool f_vector_ok(const Polytope& p, std::string* detail = nullptr);

}  // namespace polyapprox
