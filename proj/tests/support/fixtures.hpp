#pragma once

#include <cstdint>
#include <vector>

#include "tspgap/instance.hpp"

namespace fixture {

using tspgap::Rat;

struct StructuredF2M {
  tspgap::MetricInstance instance;
  std::vector<Rat> x;
};

/// Two leaf blocks joined by a cut path of `cut` unit edges. Each leaf is a
/// triangle with a handle path of `handle` unit edges between two of its
/// corners; the third corner carries the cut path. Non-edges take the
/// shortest-path distance. For cut >= 2 the returned x is the unique optimal
/// fractional 2-matching.
StructuredF2M cut_path_instance(int handle, int cut);

/// Random support with the fractional 2-matching structure: two or four odd
/// half-cycles whose vertices are paired by unit paths (connected), plus an
/// optional integral cycle. Support edges get random integer costs and the
/// instance is their metric closure, so x is feasible but not necessarily
/// optimal.
StructuredF2M random_structured_f2m(std::uint64_t seed);

}  // namespace fixture
