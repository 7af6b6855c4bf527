#pragma once

// Lin and strong geography predicates and skyline similarity.

#include <optional>
#include <utility>
#include <vector>

#include "hfcx/ualgebra.hpp"

namespace hfcx {

// No torsion, or an F[U]/U summand.
bool lin_check(const ModuleDecomp& m);

// Every order 1..l occurs, l the annihilator exponent of the torsion.
bool strong_check(const ModuleDecomp& m);

struct SkylineMatch {
  // (order in a, matched order in b); 0 means the summand vanished.
  std::vector<std::pair<unsigned, unsigned>> pairs;
  // Unmatched summands of b, all of order 1.
  unsigned extra_ones = 0;
};

std::optional<SkylineMatch> skyline_match(const ModuleDecomp& a, const ModuleDecomp& b);
bool skyline_similar(const ModuleDecomp& a, const ModuleDecomp& b);

// Consecutive members similar, and if the first has an order-N summand and the
// last is torsion-free then every order 1..N-1 occurs somewhere.
bool intermediate_value_check(const std::vector<ModuleDecomp>& seq);

}  // namespace hfcx
