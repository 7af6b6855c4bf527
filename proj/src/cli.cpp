#include "hfcx/cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hfcx/complex_io.hpp"
#include "hfcx/error.hpp"
#include "hfcx/geography.hpp"
#include "hfcx/knot_surgery.hpp"
#include "hfcx/link_surgery.hpp"
#include "hfcx/oracle.hpp"
#include "hfcx/report.hpp"

namespace hfcx {

namespace {

using nlohmann::json;

struct Options {
  std::string path;
  std::string slope;
  std::string framing;
  std::optional<int> window;
  bool crosscheck = false;
  std::uint64_t seed = 0;
  int components = 1;
  std::string format = "human";
};

json checks_json(const ValidationReport& v) {
  json arr = json::array();
  for (const auto& c : v.checks) {
    json j = {{"name", c.name}, {"passed", c.passed}};
    if (!c.passed) j["witness"] = c.witness;
    arr.push_back(j);
  }
  return arr;
}

ValidationReport validate(const ParsedComplex& pc) {
  return pc.is_knot() ? validate_knot_complex(*pc.knot) : validate_link_complex(pc.link);
}

bool all_lspace(const std::vector<ReportLabel>& labels) {
  return std::all_of(labels.begin(), labels.end(),
                     [](const ReportLabel& l) { return l.free_rank == 1 && l.torsion.empty(); });
}

LinkingMatrix parse_framing(const std::string& text, std::size_t ell) {
  std::vector<long> vals;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad framing entry '" + tok + "'");
    }
  }
  if (vals.size() != ell * ell) {
    throw Error(ErrorKind::ParseError, "framing needs " + std::to_string(ell * ell) + " entries, got " +
                                           std::to_string(vals.size()));
  }
  LinkingMatrix m(ell, std::vector<long>(ell));
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = 0; j < ell; ++j) m[i][j] = vals[i * ell + j];
  }
  return m;
}

void fill_geography(Report& r, const ModuleDecomp& total) {
  r.total = make_label("total", total);
  r.verdicts["lin"] = lin_check(total);
  r.verdicts["strong"] = strong_check(total);
  r.verdicts["lspace"] = all_lspace(r.labels);
}

void cmd_validate(const ParsedComplex& pc, Report& r) {
  const ValidationReport v = validate(pc);
  r.details["checks"] = checks_json(v);
  r.verdicts["valid"] = v.ok();
}

void require_valid(const ParsedComplex& pc) {
  const ValidationReport v = validate(pc);
  if (!v.ok()) throw Error(ErrorKind::InvalidComplex, v.to_string());
}

void knot_surgery(const KnotComplex& k, const Options& o, Report& r) {
  long p = 0;
  long q = 1;
  if (!o.slope.empty()) {
    const Rational s = Rational::parse(o.slope);
    p = s.num();
    q = s.den();
  } else {
    const auto m = parse_framing(o.framing, 1);
    p = m[0][0];
  }
  const SurgeryResult res = rational_surgery(k, p, q, o.window);
  r.params["slope"] = Rational(p, q).to_string();
  r.details["window"] = res.window;
  for (const auto& l : res.labels) {
    r.labels.push_back(make_label(std::to_string(l.label), l.decomp, "residue " + std::to_string(l.residue)));
  }
  const ModuleDecomp total = res.total();
  fill_geography(r, total);
  r.verdicts["rank_law"] = total.free_rank == static_cast<unsigned>(std::labs(p));
  if (o.crosscheck) {
    const CrosscheckReport cr = crosscheck_surgery(k, p, q);
    r.verdicts["crosscheck"] = cr.match;
    if (!cr.match) r.findings.push_back(cr.detail);
  }
}

void link_surgery(const LinkComplex& c, const Options& o, Report& r) {
  if (o.framing.empty()) throw Error(ErrorKind::InvalidArgument, "links need --framing");
  const LinkingMatrix lam = parse_framing(o.framing, c.ell);
  r.params["framing"] = o.framing;
  const LinkSurgeryResult res = large_link_surgery(c, lam);
  for (const auto& [pt, d] : res.labels) r.labels.push_back(make_label(lattice_to_string(pt), d));
  const HyperBox box = hat_polytope(c).box;
  const AuditReport audit = geography_audit(res, AuditContext{&c, box});
  fill_geography(r, audit.total);
  r.verdicts["rank_law"] = audit.total.free_rank == static_cast<unsigned>(std::labs(determinant(lam)));
  if (audit.skyline_path) r.verdicts["skyline"] = *audit.skyline_path;
  if (audit.homology_sphere_shape) r.verdicts["homology_sphere_shape"] = *audit.homology_sphere_shape;
  json path = json::array();
  for (const auto& p : audit.path) path.push_back(lattice_to_string(p));
  r.details["audit_path"] = path;
  r.findings.insert(r.findings.end(), audit.findings.begin(), audit.findings.end());
}

void cmd_surgery(const ParsedComplex& pc, const Options& o, Report& r) {
  if (o.slope.empty() == o.framing.empty()) throw Error(ErrorKind::ParseError, "give exactly one of --slope, --framing");
  if (o.window) r.params["window"] = std::to_string(*o.window);
  require_valid(pc);
  if (pc.is_knot()) {
    knot_surgery(*pc.knot, o, r);
  } else {
    if (!o.slope.empty()) throw Error(ErrorKind::InvalidArgument, "--slope applies to knots; use --framing");
    link_surgery(pc.link, o, r);
  }
}

json box_json(const Polytope& pol) {
  json support = json::array();
  for (const auto& p : pol.support) support.push_back(lattice_to_string(p));
  return {{"support", support}, {"box", lattice_to_string(pol.box.q2)}};
}

void cmd_invariants(const ParsedComplex& pc, Report& r) {
  require_valid(pc);
  const Polytope pol = hat_polytope(pc.link);
  r.details["polytope"] = box_json(pol);
  if (pc.is_knot()) {
    const VHMTable t = vhm_table(*pc.knot);
    r.details["vhm"] = {{"S", t.S},
                        {"V", t.V},
                        {"H", t.H},
                        {"M", t.M},
                        {"h_diverges_pos", t.h_diverges_pos},
                        {"v_diverges_neg", t.v_diverges_neg}};
    r.verdicts["vhm_properties"] = true;
    const int reach = 2 * pol.box.q2[0] + 3;
    std::optional<int> threshold;
    for (int n = -reach; n <= reach; ++n) {
      if (is_large({{n}}, pol.box)) {
        threshold = n;
        break;
      }
    }
    if (threshold) r.details["large_threshold"] = *threshold;
  } else {
    json th = json::array();
    for (int q : pol.box.q2) th.push_back(q - 1);
    r.details["diagonal_thresholds"] = th;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hfcx: Heegaard Floer homology of knot and link surgeries from chain complexes"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));

  auto* v = app.add_subcommand("validate", "check a complex file");
  v->add_option("file", o.path)->required();
  auto* s = app.add_subcommand("surgery", "surgery on a knot (--slope) or link (--framing)");
  s->add_option("file", o.path)->required();
  s->add_option("--slope", o.slope, "p/q");
  s->add_option("--framing", o.framing, "row-major framing matrix, comma separated");
  s->add_option("--window", o.window, "mapping cone window b");
  s->add_flag("--crosscheck", o.crosscheck, "compare with the reduced fast path");
  auto* inv = app.add_subcommand("invariants", "V/H/M table, polytope and largeness thresholds");
  inv->add_option("file", o.path)->required();
  auto* rnd = app.add_subcommand("random", "print a random valid complex");
  rnd->add_option("--seed", o.seed);
  rnd->add_option("--components", o.components)->check(CLI::Range(1, 2));
  for (auto* sub : {v, s, inv}) {
    sub->add_option("--format", o.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (rnd->parsed()) {
    if (o.components == 1) {
      out << serialize_knot(random_knot_complex(o.seed));
    } else {
      out << serialize_link(random_link_complex(o.seed));
    }
    return kExitOk;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  int code = kExitOk;
  try {
    const std::string text = read_text_file(o.path);
    r.input_digest = sha256_hex(text);
    const ParsedComplex pc = parse_complex(text);
    if (v->parsed()) {
      r.command = "validate";
      cmd_validate(pc, r);
      if (!r.verdicts["valid"]) code = kExitDomain;
    } else if (s->parsed()) {
      r.command = "surgery";
      cmd_surgery(pc, o, r);
      if (r.verdicts.count("crosscheck") && !r.verdicts["crosscheck"]) code = kExitDomain;
    } else {
      r.command = "invariants";
      cmd_invariants(pc, r);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError ? kExitInput : kExitDomain;
  }
  r.timings_ms["total"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out << (o.format == "machine" ? render_machine(r) : render_human(r));
  return code;
}

}  // namespace hfcx
