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

#pragma once

// File formats and the best-known-value registry. The native `.qumo` format
// is line-oriented text with [meta]/[Q]/[b]/[const] sections and an optional
// [constraints] section; weights serialize with 17 significant digits so a
// write/parse round trip is lossless. G-Set files ("n m" header, 1-based
// "i j w" edges) load as max-cut problems in Ising form.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qumo/model.hpp"
#include "qumo/transforms.hpp"

namespace qumo::io {

/// Shortest decimal form that parses back to the exact same double.
std::string format_exact(double v);

struct NativeProblem {
  QumoProblem base;
  std::vector<transforms::LinearConstraint> constraints;  // may be empty

  bool constrained() const { return !constraints.empty(); }
  transforms::ConstrainedProblem as_constrained() const { return {base, constraints}; }
};

NativeProblem parse_native(std::istream& in);
NativeProblem parse_native_file(const std::string& path);

void write_native(std::ostream& out, const QumoProblem& p,
                  const std::vector<transforms::LinearConstraint>& constraints = {});
void write_native_file(const std::string& path, const QumoProblem& p,
                       const std::vector<transforms::LinearConstraint>& constraints = {});

struct GsetProblem {
  QumoProblem problem;  // Ising form; -objective == cut value
  std::size_t vertices = 0;
  std::size_t edge_count = 0;  // distinct edges after summing duplicates
  std::vector<transforms::WeightedEdge> edges;
};

GsetProblem parse_gset(std::istream& in);
GsetProblem parse_gset_file(const std::string& path);

/// RFC-4180 quoting for one CSV field.
std::string csv_field(const std::string& raw);

/// Splits one CSV record (no embedded newlines in our reports).
std::vector<std::string> csv_split(const std::string& line);

/// Best known objective per instance id; values only move down
/// (minimization) and every change carries a provenance note.
class BestKnownRegistry {
 public:
  struct Entry {
    double objective = 0.0;
    std::string provenance;
  };

  static BestKnownRegistry load_file(const std::string& path);  // missing: empty
  void save_file(const std::string& path) const;

  std::optional<Entry> lookup(const std::string& id) const;
  /// Records the value if the id is new or the value improves; returns
  /// whether anything changed.
  bool update(const std::string& id, double objective, const std::string& provenance);

  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace qumo::io
