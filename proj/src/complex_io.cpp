#include "hfcx/complex_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "hfcx/error.hpp"

namespace hfcx {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// "key=value" with the expected key.
std::string keyed(std::size_t line, const std::string& tok, const std::string& key) {
  if (tok.rfind(key + "=", 0) != 0) fail(line, "expected " + key + "=..., got '" + tok + "'");
  return tok.substr(key.size() + 1);
}

int to_int(std::size_t line, const std::string& s) {
  try {
    const Rational r = Rational::parse(s);
    if (!r.is_integer()) fail(line, "not an integer: '" + s + "'");
    return static_cast<int>(r.num());
  } catch (const Error&) {
    fail(line, "not an integer: '" + s + "'");
  }
}

// Value in doubled units: integers and halves a/2.
int to_doubled(std::size_t line, const std::string& s) {
  Rational r;
  try {
    r = Rational::parse(s);
  } catch (const Error&) {
    fail(line, "bad grading '" + s + "'");
  }
  const Rational d = r * 2;
  if (!d.is_integer()) fail(line, "grading '" + s + "' is not a multiple of 1/2");
  return static_cast<int>(d.num());
}

std::vector<int> int_list(std::size_t line, const std::string& s, std::size_t ell, bool doubled) {
  const auto parts = split(s, ',');
  if (parts.size() != ell) {
    fail(line, "expected " + std::to_string(ell) + " values, got " + std::to_string(parts.size()));
  }
  std::vector<int> out;
  for (const auto& p : parts) out.push_back(doubled ? to_doubled(line, p) : to_int(line, p));
  return out;
}

std::string half_string(int v2) {
  if (v2 % 2 == 0) return std::to_string(v2 / 2);
  return std::to_string(v2) + "/2";
}

}  // namespace

ParsedComplex parse_complex(std::string_view text) {
  ParsedComplex out;
  LinkComplex& c = out.link;
  std::map<std::string, std::size_t> ids;
  std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> flips;
  bool header = false;
  std::size_t lineno = 0;
  for (const auto& raw : split(text, '\n')) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 3 || tok[0] != "hfcx" || tok[1] != "v1") fail(lineno, "missing header 'hfcx v1 components=<l>'");
      const int ell = to_int(lineno, keyed(lineno, tok[2], "components"));
      if (ell < 1) fail(lineno, "components must be positive");
      c.ell = static_cast<std::size_t>(ell);
      c.linking.assign(c.ell, std::vector<int>(c.ell, 0));
      header = true;
      continue;
    }
    const std::string& kw = tok[0];
    if (kw == "gen") {
      if (tok.size() != 4) fail(lineno, "gen takes: <id> maslov=<rat> alex=<v,..>");
      if (ids.count(tok[1])) fail(lineno, "duplicate generator '" + tok[1] + "'");
      LinkGenerator g;
      g.id = tok[1];
      try {
        g.maslov = Rational::parse(keyed(lineno, tok[2], "maslov"));
      } catch (const Error& e) {
        if (std::string(e.what()).find("line ") != std::string::npos) throw;
        fail(lineno, "bad maslov grading");
      }
      g.alex2 = int_list(lineno, keyed(lineno, tok[3], "alex"), c.ell, true);
      ids[g.id] = c.gens.size();
      c.gens.push_back(std::move(g));
    } else if (kw == "dif") {
      if (tok.size() != 4) fail(lineno, "dif takes: <src> <dst> u=<m,..>");
      const auto s = ids.find(tok[1]);
      const auto d = ids.find(tok[2]);
      if (s == ids.end()) fail(lineno, "unknown generator '" + tok[1] + "'");
      if (d == ids.end()) fail(lineno, "unknown generator '" + tok[2] + "'");
      c.entries.push_back({s->second, d->second, int_list(lineno, keyed(lineno, tok[3], "u"), c.ell, false)});
    } else if (kw == "lk") {
      if (tok.size() != 4) fail(lineno, "lk takes: <i> <j> <val>");
      const int i = to_int(lineno, tok[1]);
      const int j = to_int(lineno, tok[2]);
      const int v = to_int(lineno, tok[3]);
      if (i < 1 || j < 1 || i > static_cast<int>(c.ell) || j > static_cast<int>(c.ell) || i == j) {
        fail(lineno, "lk indices must be distinct components in 1.." + std::to_string(c.ell));
      }
      c.linking[i - 1][j - 1] = v;
      c.linking[j - 1][i - 1] = v;
    } else if (kw == "flip") {
      if (tok.size() != 3) fail(lineno, "flip takes: <id> <id>");
      flips.push_back({{tok[1], tok[2]}, lineno});
    } else {
      fail(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) fail(lineno, "empty input");
  if (c.gens.empty()) fail(lineno, "no generators");
  if (!flips.empty() && c.ell != 1) fail(flips.front().second, "flip lines are only allowed for knots");

  if (c.ell == 1) {
    KnotComplex k;
    for (const auto& g : c.gens) {
      if (g.alex2[0] % 2 != 0) fail(0, "knot generator '" + g.id + "' has a half-integer alexander grading");
      k.gens.push_back({g.id, g.maslov, g.alex2[0] / 2});
    }
    for (const auto& e : c.entries) {
      if (e.m[0] < 0) fail(0, "negative U exponent on " + c.gens[e.src].id + " -> " + c.gens[e.dst].id);
      k.differential.push_back({e.src, e.dst, static_cast<unsigned>(e.m[0])});
    }
    if (!flips.empty()) {
      std::vector<std::size_t> inv(k.size());
      std::vector<bool> seen(k.size(), false);
      for (std::size_t x = 0; x < inv.size(); ++x) inv[x] = x;
      for (const auto& [pr, ln] : flips) {
        const auto a = ids.find(pr.first);
        const auto b = ids.find(pr.second);
        if (a == ids.end() || b == ids.end()) fail(ln, "unknown generator in flip");
        if (seen[a->second] || seen[b->second]) fail(ln, "generator appears in two flip pairs");
        seen[a->second] = seen[b->second] = true;
        inv[a->second] = b->second;
        inv[b->second] = a->second;
      }
      k.flip.involution = inv;
      out.explicit_flip = true;
    } else {
      k.flip.involution = find_involution(k);
    }
    out.knot = std::move(k);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string serialize_knot(const KnotComplex& k) {
  std::ostringstream o;
  o << "hfcx v1 components=1\n";
  for (const auto& g : k.gens) o << "gen " << g.id << " maslov=" << g.maslov.to_string() << " alex=" << g.alexander << "\n";
  for (const auto& e : k.differential) o << "dif " << k.gens[e.src].id << " " << k.gens[e.dst].id << " u=" << e.u << "\n";
  if (k.flip.involution) {
    const auto& inv = *k.flip.involution;
    for (std::size_t x = 0; x < inv.size(); ++x) {
      if (inv[x] >= x) o << "flip " << k.gens[x].id << " " << k.gens[inv[x]].id << "\n";
    }
  }
  return o.str();
}

std::string serialize_link(const LinkComplex& c) {
  std::ostringstream o;
  o << "hfcx v1 components=" << c.ell << "\n";
  for (std::size_t i = 0; i < c.ell; ++i) {
    for (std::size_t j = i + 1; j < c.ell; ++j) {
      if (c.linking[i][j] != 0) o << "lk " << i + 1 << " " << j + 1 << " " << c.linking[i][j] << "\n";
    }
  }
  for (const auto& g : c.gens) {
    o << "gen " << g.id << " maslov=" << g.maslov.to_string() << " alex=";
    for (std::size_t i = 0; i < g.alex2.size(); ++i) o << (i ? "," : "") << half_string(g.alex2[i]);
    o << "\n";
  }
  for (const auto& e : c.entries) {
    o << "dif " << c.gens[e.src].id << " " << c.gens[e.dst].id << " u=";
    for (std::size_t i = 0; i < e.m.size(); ++i) o << (i ? "," : "") << e.m[i];
    o << "\n";
  }
  return o.str();
}

}  // namespace hfcx
