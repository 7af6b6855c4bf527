#pragma once

// Run report shared by every CLI command: JSON for machines, text for people.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hfcx/ualgebra.hpp"

namespace hfcx {

struct ReportLabel {
  std::string label;                // spin^c label as printed (residue or lattice point)
  std::optional<std::string> alt;   // second indexing when there is one
  unsigned free_rank = 0;
  std::vector<unsigned> torsion;

  bool operator==(const ReportLabel&) const = default;
};

struct Report {
  std::string command;
  std::string input_digest;  // sha256 of the input bytes, hex
  std::map<std::string, std::string> params;
  std::vector<ReportLabel> labels;  // sorted by label order of the computation
  std::optional<ReportLabel> total;
  std::map<std::string, bool> verdicts;
  std::vector<std::string> findings;
  nlohmann::json details = nlohmann::json::object();
  std::map<std::string, double> timings_ms;  // dropped from machine output

  bool operator==(const Report&) const = default;
};

std::string sha256_hex(std::string_view bytes);

ReportLabel make_label(std::string label, const ModuleDecomp& d, std::optional<std::string> alt = std::nullopt);

nlohmann::json report_to_json(const Report& r, bool with_timings);
Report report_from_json(const nlohmann::json& j);

// Machine output: compact-ish JSON with sorted keys and a trailing newline.
std::string render_machine(const Report& r);
std::string render_human(const Report& r);

}  // namespace hfcx
