// Copyright 2026 The Signet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Outcome measures for signed networks with two identity groups.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "signet/error.hpp"
#include "signet/netgen.hpp"

namespace signet {

struct OutcomeRecord {
  double r_pos = 0.0;
  double r_neg = 0.0;
  double r = 0.0;
  double h = 0.5;
  double z = 0.0;
  bool balanced = false;
};

struct Assortativity {
  double r_pos = 0.0;
  double r_neg = 0.0;
  double r = 0.0;
  bool pos_degenerate = false;  // no positive ties, or zero denominator
  bool neg_degenerate = false;
};

/// 2x2 type-mixing matrix e_ij (rows/cols: group A, group B), normalized to sum 1.
using MixingMatrix = std::array<std::array<double, 2>, 2>;

/// Newman's discrete assortativity for a type-mixing matrix. Returns nullopt
/// when 1 - sum_i a_i^2 vanishes.
inline std::optional<double> discrete_assortativity(const MixingMatrix& e) {
  const double a0 = e[0][0] + e[0][1];
  const double a1 = e[1][0] + e[1][1];
  const double sum_a2 = a0 * a0 + a1 * a1;
  const double denom = 1.0 - sum_a2;
  if (std::abs(denom) < 1e-14) return std::nullopt;
  return (e[0][0] + e[1][1] - sum_a2) / denom;
}

/// Signed assortativity (r+ - r-)/2 from realized ties. Mixing fractions are
/// taken over matrix entries, so an off-diagonal tie adds 1/2 to e_AB and 1/2
/// to e_BA (or 1 to e_AA) and a self-tie counts as a single entry. A sign class
/// with no ties or a zero denominator yields a coefficient of 0 and sets its
/// degenerate flag. Throws ConfigError on a network with no ties at all.
inline Assortativity assortativity(const SignedAdjacency& adj) {
  const int n = adj.n();
  std::array<std::array<double, 2>, 2> pos{};
  std::array<std::array<double, 2>, 2> neg{};
  double pos_total = 0.0;
  double neg_total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int gi = adj.group(i);
    for (int j = 0; j < n; ++j) {
      const int v = adj.at(i, j);
      if (v == 0) continue;
      const int gj = adj.group(j);
      if (v > 0) {
        pos[gi][gj] += 1.0;
        pos_total += 1.0;
      } else {
        neg[gi][gj] += 1.0;
        neg_total += 1.0;
      }
    }
  }
  if (pos_total == 0.0 && neg_total == 0.0) {
    throw ConfigError("assortativity: network has no ties");
  }
  auto coefficient = [](MixingMatrix e, double total, bool& degenerate) {
    if (total == 0.0) {
      degenerate = true;
      return 0.0;
    }
    for (auto& row : e) {
      for (double& x : row) x /= total;
    }
    const auto r = discrete_assortativity(e);
    degenerate = !r.has_value();
    return r.value_or(0.0);
  };
  Assortativity out;
  out.r_pos = coefficient(pos, pos_total, out.pos_degenerate);
  out.r_neg = coefficient(neg, neg_total, out.neg_degenerate);
  out.r = 0.5 * (out.r_pos - out.r_neg);
  return out;
}

/// Fraction of components sharing the majority sign; zeros count as positive.
inline double homogeneity(const Eigen::VectorXd& v) {
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0) {
    throw ConfigError("homogeneity: zero vector");
  }
  Eigen::Index positive = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) positive += v(i) >= 0.0 ? 1 : 0;
  const Eigen::Index majority = std::max(positive, v.size() - positive);
  return static_cast<double>(majority) / static_cast<double>(v.size());
}

inline double z_metric(double r, double h) { return r - 2.0 * h + 1.0; }

struct BalanceReport {
  bool balanced = true;
  std::optional<std::array<int, 3>> violating_triad;
};

/// Triad balance of a complete signed network. Every triad has a positive
/// sign product iff ties factor as s_i * s_j; with s_i = A(0, i) the first
/// mismatching pair (i, j) in row-major order closes the unbalanced triad
/// (0, i, j). The diagonal is ignored. Throws ConfigError when an off-diagonal
/// tie is missing.
inline BalanceReport is_balanced(const SignedAdjacency& adj) {
  const int n = adj.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adj.at(i, j) == 0) {
        throw ConfigError("is_balanced: network is not complete (missing tie " +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  BalanceReport report;
  if (n < 3) return report;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adj.at(i, j) != adj.at(0, i) * adj.at(0, j)) {
        report.balanced = false;
        report.violating_triad = std::array<int, 3>{0, i, j};
        return report;
      }
    }
  }
  return report;
}

/// Full outcome record for a final adjacency and the eigenvector that shaped it.
inline OutcomeRecord measure_outcome(const SignedAdjacency& final_state,
                                     const Eigen::VectorXd& leading_vector) {
  const Assortativity a = assortativity(final_state);
  OutcomeRecord rec;
  rec.r_pos = a.r_pos;
  rec.r_neg = a.r_neg;
  rec.r = a.r;
  rec.h = homogeneity(leading_vector);
  rec.z = z_metric(rec.r, rec.h);
  rec.balanced = is_balanced(final_state).balanced;
  return rec;
}

}  // namespace signet
