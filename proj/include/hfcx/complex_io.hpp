#pragma once

// Plain-text complex files. One grammar covers knots (components=1) and links:
//
//   hfcx v1 components=<l>
//   lk <i> <j> <val>                      components numbered from 1
//   gen <id> maslov=<rat> alex=<v1,..>    halves written a/2
//   dif <src> <dst> u=<m1,..>
//   flip <id> <id>                        knots only; unlisted gens are fixed
//
// '#' starts a comment. Malformed text throws ParseError.

#include <optional>
#include <string>
#include <string_view>

#include "hfcx/knot_complex.hpp"
#include "hfcx/link_complex.hpp"

namespace hfcx {

struct ParsedComplex {
  LinkComplex link;
  // Set for one component. Without flip lines the involution is searched for.
  std::optional<KnotComplex> knot;
  bool explicit_flip = false;

  bool is_knot() const { return knot.has_value(); }
};

ParsedComplex parse_complex(std::string_view text);
// Throws ParseError when the file cannot be read.
std::string read_text_file(const std::string& path);

std::string serialize_knot(const KnotComplex& k);
std::string serialize_link(const LinkComplex& c);

}  // namespace hfcx
