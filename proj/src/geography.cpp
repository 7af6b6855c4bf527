#include "hfcx/geography.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace hfcx {

bool lin_check(const ModuleDecomp& m) {
  return m.torsion.empty() || std::find(m.torsion.begin(), m.torsion.end(), 1u) != m.torsion.end();
}

bool strong_check(const ModuleDecomp& m) {
  const unsigned l = annihilator_exponent(m);
  std::set<unsigned> seen(m.torsion.begin(), m.torsion.end());
  for (unsigned k = 1; k <= l; ++k) {
    if (!seen.count(k)) return false;
  }
  return true;
}

std::optional<SkylineMatch> skyline_match(const ModuleDecomp& a, const ModuleDecomp& b) {
  if (a.free_rank != b.free_rank) return std::nullopt;
  std::map<unsigned, unsigned, std::greater<>> need;  // a orders, descending
  for (unsigned k : a.torsion) ++need[k];
  std::map<unsigned, unsigned> left;  // unmatched b orders
  for (unsigned k : b.torsion) ++left[k];
  std::vector<std::pair<unsigned, unsigned>> groups(need.begin(), need.end());

  SkylineMatch match;
  auto avail = [&](unsigned k) -> unsigned {
    auto it = left.find(k);
    return (k == 0 || it == left.end()) ? 0 : it->second;
  };
  // Distributes each group of equal orders h over h+1, h, h-1 (or vanishing
  // when h = 1), larger targets first.
  std::function<bool(std::size_t)> go = [&](std::size_t idx) -> bool {
    if (idx == groups.size()) {
      unsigned ones = 0;
      for (const auto& [k, c] : left) {
        if (c == 0) continue;
        if (k != 1) return false;
        ones += c;
      }
      match.extra_ones = ones;
      return true;
    }
    const auto [h, c] = groups[idx];
    const unsigned up = std::min(c, avail(h + 1));
    for (unsigned x1 = up + 1; x1-- > 0;) {
      const unsigned same = std::min(c - x1, avail(h));
      for (unsigned x2 = same + 1; x2-- > 0;) {
        const unsigned x3 = c - x1 - x2;
        if (h > 1 && x3 > avail(h - 1)) continue;
        left[h + 1] -= x1;
        left[h] -= x2;
        if (h > 1) left[h - 1] -= x3;
        // Orders above h can no longer be reached by smaller groups.
        bool stranded = false;
        for (auto it = left.upper_bound(h); it != left.end(); ++it) {
          if (it->second > 0 && it->first > 1) stranded = true;
        }
        const std::size_t mark = match.pairs.size();
        if (!stranded) {
          for (unsigned t = 0; t < x1; ++t) match.pairs.emplace_back(h, h + 1);
          for (unsigned t = 0; t < x2; ++t) match.pairs.emplace_back(h, h);
          for (unsigned t = 0; t < x3; ++t) match.pairs.emplace_back(h, h - 1);
          if (go(idx + 1)) return true;
          match.pairs.resize(mark);
        }
        left[h + 1] += x1;
        left[h] += x2;
        if (h > 1) left[h - 1] += x3;
      }
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return match;
}

bool skyline_similar(const ModuleDecomp& a, const ModuleDecomp& b) { return skyline_match(a, b).has_value(); }

bool intermediate_value_check(const std::vector<ModuleDecomp>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!skyline_similar(seq[i], seq[i + 1])) return false;
  }
  if (seq.empty() || !seq.back().torsion.empty()) return true;
  const unsigned top = annihilator_exponent(seq.front());
  std::set<unsigned> seen;
  for (const auto& m : seq) seen.insert(m.torsion.begin(), m.torsion.end());
  for (unsigned k = 1; k < top; ++k) {
    if (!seen.count(k)) return false;
  }
  return true;
}

}  // namespace hfcx
