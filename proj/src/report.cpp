#include "hfcx/report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

#include "hfcx/error.hpp"

namespace hfcx {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InvalidArgument, "sha256 failed");
  }
  std::ostringstream o;
  for (unsigned i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return o.str();
}

ReportLabel make_label(std::string label, const ModuleDecomp& d, std::optional<std::string> alt) {
  return ReportLabel{std::move(label), std::move(alt), d.free_rank, d.torsion};
}

namespace {

json label_json(const ReportLabel& l) {
  json j = {{"label", l.label}, {"free_rank", l.free_rank}, {"torsion", l.torsion}};
  if (l.alt) j["alt"] = *l.alt;
  return j;
}

ReportLabel label_from(const json& j) {
  ReportLabel l;
  l.label = j.at("label").get<std::string>();
  if (j.contains("alt")) l.alt = j.at("alt").get<std::string>();
  l.free_rank = j.at("free_rank").get<unsigned>();
  l.torsion = j.at("torsion").get<std::vector<unsigned>>();
  return l;
}

std::string torsion_text(const ReportLabel& l) {
  std::ostringstream o;
  o << "F[U]^" << l.free_rank;
  if (!l.torsion.empty()) {
    o << " + torsion {";
    for (std::size_t i = 0; i < l.torsion.size(); ++i) o << (i ? "," : "") << l.torsion[i];
    o << "}";
  }
  return o.str();
}

}  // namespace

json report_to_json(const Report& r, bool with_timings) {
  json j;
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  j["params"] = r.params;
  j["labels"] = json::array();
  for (const auto& l : r.labels) j["labels"].push_back(label_json(l));
  if (r.total) j["total"] = label_json(*r.total);
  j["verdicts"] = r.verdicts;
  j["findings"] = r.findings;
  j["details"] = r.details;
  if (with_timings) j["timings_ms"] = r.timings_ms;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  try {
    r.command = j.at("command").get<std::string>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    for (const auto& l : j.at("labels")) r.labels.push_back(label_from(l));
    if (j.contains("total")) r.total = label_from(j.at("total"));
    r.verdicts = j.at("verdicts").get<std::map<std::string, bool>>();
    r.findings = j.at("findings").get<std::vector<std::string>>();
    r.details = j.at("details");
    if (j.contains("timings_ms")) r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad report: ") + e.what());
  }
  return r;
}

std::string render_machine(const Report& r) { return report_to_json(r, false).dump(2) + "\n"; }

std::string render_human(const Report& r) {
  std::ostringstream o;
  o << r.command;
  for (const auto& [k, v] : r.params) o << "  " << k << "=" << v;
  o << "\n";
  for (const auto& l : r.labels) {
    o << "  [" << l.label << "]";
    if (l.alt) o << " (" << *l.alt << ")";
    o << "  " << torsion_text(l) << "\n";
  }
  if (r.total) o << "total: " << torsion_text(*r.total) << "\n";
  for (const auto& [k, v] : r.verdicts) o << k << ": " << (v ? "yes" : "no") << "\n";
  if (!r.details.empty()) o << r.details.dump(2) << "\n";
  for (const auto& f : r.findings) o << "finding: " << f << "\n";
  for (const auto& [k, v] : r.timings_ms) o << "time " << k << ": " << std::fixed << std::setprecision(1) << v << " ms\n";
  return o.str();
}

}  // namespace hfcx
