// Copyright 2026 qumo-solver contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qumo/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qumo/error.hpp"

namespace qumo::io {

namespace {

constexpr const char* kMagic = "qumo";
constexpr int kVersion = 1;

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, std::size_t line) {
  if (tok == "inf") return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw ParseError("expected a number, got '" + tok + "'", line);
  return v;
}

std::size_t parse_index(const std::string& tok, std::size_t bound, std::size_t line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0')
    throw ParseError("expected an index, got '" + tok + "'", line);
  if (v >= bound) throw ParseError("index " + tok + " out of range", line);
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string format_exact(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

NativeProblem parse_native(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  auto next_meaningful = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto pos = line.find('#');
      if (pos != std::string::npos) line.erase(pos);
      if (!tokenize(line).empty()) {
        out = line;
        return true;
      }
    }
    return false;
  };

  if (!next_meaningful(line)) throw ParseError("empty file", lineno);
  {
    const auto toks = tokenize(line);
    if (toks.size() != 2 || toks[0] != kMagic)
      throw ParseError("missing 'qumo <version>' header", lineno);
    if (toks[1] != std::to_string(kVersion))
      throw ParseError("unsupported format version " + toks[1], lineno);
  }

  std::size_t n = 0;
  bool have_n = false;
  Domain domain = Domain::ZeroOne;
  std::vector<VarKind> kinds;
  std::vector<Triplet> triplets;
  Vec linear;
  double offset = 0.0;
  std::vector<transforms::LinearConstraint> constraints;

  enum class Section { None, Meta, Q, B, Const, Constraints };
  Section section = Section::None;

  while (next_meaningful(line)) {
    const auto toks = tokenize(line);
    if (toks[0][0] == '[') {
      if (toks[0] == "[meta]") section = Section::Meta;
      else if (toks[0] == "[Q]") section = Section::Q;
      else if (toks[0] == "[b]") section = Section::B;
      else if (toks[0] == "[const]") section = Section::Const;
      else if (toks[0] == "[constraints]") section = Section::Constraints;
      else throw ParseError("unknown section " + toks[0], lineno);
      if (section != Section::Meta && !have_n)
        throw ParseError("[meta] with n must come first", lineno);
      continue;
    }

    switch (section) {
      case Section::Meta: {
        if (toks[0] == "n" && toks.size() == 2) {
          char* end = nullptr;
          const long long v = std::strtoll(toks[1].c_str(), &end, 10);
          if (end == toks[1].c_str() || *end != '\0' || v <= 0)
            throw ParseError("n must be a positive integer", lineno);
          n = static_cast<std::size_t>(v);
          have_n = true;
          linear.assign(n, 0.0);
        } else if (toks[0] == "domain" && toks.size() == 2) {
          if (toks[1] == "zero_one") domain = Domain::ZeroOne;
          else if (toks[1] == "plus_minus_one") domain = Domain::PlusMinusOne;
          else throw ParseError("unknown domain " + toks[1], lineno);
        } else if (toks[0] == "kinds") {
          if (!have_n) throw ParseError("kinds before n", lineno);
          if (toks.size() != n + 1)
            throw ParseError("kinds must list one entry per variable", lineno);
          kinds.clear();
          for (std::size_t i = 1; i < toks.size(); ++i) {
            if (toks[i] == "b") kinds.push_back(VarKind::Binary);
            else if (toks[i] == "c") kinds.push_back(VarKind::Continuous);
            else throw ParseError("kind must be 'b' or 'c'", lineno);
          }
        } else {
          throw ParseError("unknown meta entry " + toks[0], lineno);
        }
        break;
      }
      case Section::Q: {
        if (toks.size() != 3) throw ParseError("[Q] lines are 'i j value'", lineno);
        const std::size_t i = parse_index(toks[0], n, lineno);
        const std::size_t j = parse_index(toks[1], n, lineno);
        triplets.push_back({i, j, parse_double(toks[2], lineno)});
        break;
      }
      case Section::B: {
        if (toks.size() != 2) throw ParseError("[b] lines are 'i value'", lineno);
        const std::size_t i = parse_index(toks[0], n, lineno);
        linear[i] = parse_double(toks[1], lineno);
        break;
      }
      case Section::Const: {
        if (toks.size() != 1) throw ParseError("[const] holds a single value", lineno);
        offset = parse_double(toks[0], lineno);
        break;
      }
      case Section::Constraints: {
        // lo hi m idx coeff idx coeff ...
        if (toks.size() < 3) throw ParseError("constraint line too short", lineno);
        transforms::LinearConstraint c;
        c.lo = parse_double(toks[0], lineno);
        c.hi = parse_double(toks[1], lineno);
        const std::size_t m = parse_index(toks[2], n + 1, lineno);
        if (toks.size() != 3 + 2 * m)
          throw ParseError("constraint term count mismatch", lineno);
        for (std::size_t k = 0; k < m; ++k) {
          const std::size_t idx = parse_index(toks[3 + 2 * k], n, lineno);
          c.coeffs.emplace_back(idx, parse_double(toks[4 + 2 * k], lineno));
        }
        constraints.push_back(std::move(c));
        break;
      }
      case Section::None:
        throw ParseError("content outside any section", lineno);
    }
  }

  if (!have_n) throw ParseError("missing n", lineno);
  if (kinds.empty()) kinds.assign(n, VarKind::Binary);
  if (kinds.size() != n) throw ParseError("kinds length mismatch", lineno);

  NativeProblem out;
  out.base = model::make_problem(n, SymWeights::from_triplets(n, triplets),
                                 std::move(linear), offset, std::move(kinds), domain);
  out.constraints = std::move(constraints);
  return out;
}

NativeProblem parse_native_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_native(in);
}

void write_native(std::ostream& out, const QumoProblem& p,
                  const std::vector<transforms::LinearConstraint>& constraints) {
  if (p.n == 0) throw InvalidArgument("write_native: empty problem");
  out << kMagic << ' ' << kVersion << "\n[meta]\nn " << p.n << "\ndomain "
      << (p.domain == Domain::ZeroOne ? "zero_one" : "plus_minus_one") << "\nkinds";
  for (VarKind k : p.kinds) out << (k == VarKind::Binary ? " b" : " c");
  out << "\n[Q]\n";
  p.q.for_each_upper([&](std::size_t i, std::size_t j, double v) {
    out << i << ' ' << j << ' ' << format_exact(v) << '\n';
  });
  out << "[b]\n";
  for (std::size_t i = 0; i < p.n; ++i)
    if (p.linear[i] != 0.0) out << i << ' ' << format_exact(p.linear[i]) << '\n';
  out << "[const]\n" << format_exact(p.offset) << '\n';
  if (!constraints.empty()) {
    out << "[constraints]\n";
    for (const auto& c : constraints) {
      out << format_exact(c.lo) << ' ' << format_exact(c.hi) << ' ' << c.coeffs.size();
      for (const auto& [idx, coef] : c.coeffs)
        out << ' ' << idx << ' ' << format_exact(coef);
      out << '\n';
    }
  }
}

void write_native_file(const std::string& path, const QumoProblem& p,
                       const std::vector<transforms::LinearConstraint>& constraints) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing", 0);
  write_native(out, p, constraints);
  if (!out) throw ParseError("write failed for " + path, 0);
}

GsetProblem parse_gset(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0, m = 0;
  bool header = false;
  GsetProblem out;

  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2) throw ParseError("G-Set header must be 'n m'", lineno);
      n = parse_index(toks[0], std::numeric_limits<std::size_t>::max(), lineno);
      m = parse_index(toks[1], std::numeric_limits<std::size_t>::max(), lineno);
      if (n == 0) throw ParseError("empty graph", lineno);
      header = true;
      continue;
    }
    if (toks.size() != 3) throw ParseError("edge lines are 'i j w'", lineno);
    const std::size_t i = parse_index(toks[0], n + 1, lineno);
    const std::size_t j = parse_index(toks[1], n + 1, lineno);
    if (i == 0 || j == 0) throw ParseError("G-Set indices are 1-based", lineno);
    if (i == j) throw ParseError("self-loop", lineno);
    out.edges.push_back({i - 1, j - 1, parse_double(toks[2], lineno)});
  }
  if (!header) throw ParseError("missing header", lineno);
  if (out.edges.size() != m)
    throw ParseError("edge count disagrees with header", lineno);

  // Duplicate edges sum; count distinct pairs for the report.
  std::map<std::pair<std::size_t, std::size_t>, double> acc;
  for (const auto& e : out.edges) {
    const auto key = std::minmax(e.u, e.v);
    acc[{key.first, key.second}] += e.weight;
  }
  out.vertices = n;
  out.edge_count = acc.size();
  out.problem = transforms::maxcut_to_ising(out.edges, n);
  return out;
}

GsetProblem parse_gset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_gset(in);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

BestKnownRegistry BestKnownRegistry::load_file(const std::string& path) {
  BestKnownRegistry reg;
  std::ifstream in(path);
  if (!in) return reg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = csv_split(line);
    if (lineno == 1 && !fields.empty() && fields[0] == "instance") continue;
    if (fields.size() != 3)
      throw ParseError("registry rows are 'instance,objective,provenance'", lineno);
    Entry e;
    e.objective = parse_double(fields[1], lineno);
    e.provenance = fields[2];
    reg.entries_[fields[0]] = std::move(e);
  }
  return reg;
}

void BestKnownRegistry::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing", 0);
  out << "instance,objective,provenance\n";
  for (const auto& [id, e] : entries_)
    out << csv_field(id) << ',' << format_exact(e.objective) << ','
        << csv_field(e.provenance) << '\n';
}

std::optional<BestKnownRegistry::Entry> BestKnownRegistry::lookup(
    const std::string& id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool BestKnownRegistry::update(const std::string& id, double objective,
                               const std::string& provenance) {
  const auto it = entries_.find(id);
  if (it != entries_.end() && it->second.objective <= objective) return false;
  entries_[id] = {objective, provenance};
  return true;
}

}  // namespace qumo::io
