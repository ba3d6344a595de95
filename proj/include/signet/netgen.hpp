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

// Two-community signed stochastic block model: parameters, the analytic
// signal/noise quantities they imply, and random adjacency generation.
//
// Nodes 0..n/2-1 form group A and n/2..n-1 form group B.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "signet/error.hpp"
#include "signet/rng.hpp"

namespace signet {

struct BlockParams {
  int n = 100;
  double d_in = 0.5;
  double d_out = 0.5;
  double p_in_pos = 0.5;
  double p_out_pos = 0.5;
  bool zero_diagonal = true;
  std::uint64_t seed = 0;

  double p_in_neg() const noexcept { return 1.0 - p_in_pos; }
  double p_out_neg() const noexcept { return 1.0 - p_out_pos; }
  double density() const noexcept { return 0.5 * (d_in + d_out); }

  BlockParams with_seed(std::uint64_t s) const {
    BlockParams p = *this;
    p.seed = s;
    return p;
  }

  /// Throws ConfigError unless n is even and >= 4 and all probabilities lie in [0, 1].
  void validate() const {
    if (n < 4 || n % 2 != 0) {
      throw ConfigError("n must be even and >= 4, got " + std::to_string(n));
    }
    auto check = [](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << name << " must lie in [0, 1], got " << v;
        throw ConfigError(os.str());
      }
    };
    check(d_in, "d_in");
    check(d_out, "d_out");
    check(p_in_pos, "p_in_pos");
    check(p_out_pos, "p_out_pos");
  }
};

struct DerivedParams {
  double avg_in = 0.0;   // expected ingroup tie value
  double avg_out = 0.0;  // expected outgroup tie value
  double mu = 0.0;       // mean of all expected tie values
  double nu = 0.0;       // half-difference between ingroup and outgroup
  double var_in = 0.0;
  double var_out = 0.0;
  double var_avg = 0.0;  // sigma^2
  double density = 0.0;

  double sigma() const noexcept { return std::sqrt(var_avg > 0.0 ? var_avg : 0.0); }
};

inline DerivedParams derive(const BlockParams& p) {
  p.validate();
  DerivedParams dp;
  dp.avg_in = p.d_in * (2.0 * p.p_in_pos - 1.0);
  dp.avg_out = p.d_out * (2.0 * p.p_out_pos - 1.0);
  dp.mu = 0.5 * (dp.avg_in + dp.avg_out);
  dp.nu = 0.5 * (dp.avg_in - dp.avg_out);
  dp.var_in = p.d_in - dp.avg_in * dp.avg_in;
  dp.var_out = p.d_out - dp.avg_out * dp.avg_out;
  dp.density = p.density();
  dp.var_avg = dp.density - dp.mu * dp.mu - dp.nu * dp.nu;
  return dp;
}

/// Symmetric matrix over {-1, 0, +1}.
class SignedAdjacency {
 public:
  SignedAdjacency() = default;
  explicit SignedAdjacency(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw ConfigError("negative matrix size");
  }

  /// Rounds a dense symmetric matrix whose entries are in {-1, 0, 1}.
  static SignedAdjacency from_dense(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw ConfigError("adjacency must be square");
    const int n = static_cast<int>(m.rows());
    SignedAdjacency a(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = m(i, j);
        if (v != -1.0 && v != 0.0 && v != 1.0) {
          throw ConfigError("adjacency entries must be -1, 0 or 1");
        }
        if (m(j, i) != v) throw ConfigError("adjacency must be symmetric");
        a.entries_[a.index(i, j)] = static_cast<std::int8_t>(v);
      }
    }
    return a;
  }

  int n() const noexcept { return n_; }

  int at(int i, int j) const { return entries_[index(i, j)]; }

  /// Sets both (i, j) and (j, i).
  void set(int i, int j, int value) {
    if (value < -1 || value > 1) throw ConfigError("tie value must be -1, 0 or 1");
    entries_[index(i, j)] = static_cast<std::int8_t>(value);
    entries_[index(j, i)] = static_cast<std::int8_t>(value);
  }

  /// Group of node i: 0 for A, 1 for B.
  int group(int i) const noexcept { return i < n_ / 2 ? 0 : 1; }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd m(n_, n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) m(i, j) = entries_[index(i, j)];
    }
    return m;
  }

  bool diagonal_is_zero() const {
    for (int i = 0; i < n_; ++i) {
      if (at(i, i) != 0) return false;
    }
    return true;
  }

  friend bool operator==(const SignedAdjacency&, const SignedAdjacency&) = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<std::int8_t> entries_;
};

namespace detail {

// One uniform draw per pair: below d*p+ is a positive tie, below d a negative
// tie, otherwise no tie.
inline int draw_tie(double u, double density, double p_pos) noexcept {
  if (u < density * p_pos) return 1;
  if (u < density) return -1;
  return 0;
}

}  // namespace detail

/// Draws the upper triangle in row-major order from a SplitMix64 stream
/// seeded with params.seed. Diagonal draws are consumed only when
/// zero_diagonal is false.
inline SignedAdjacency generate(const BlockParams& params) {
  params.validate();
  const int n = params.n;
  const int half = n / 2;
  SplitMix64 rng(params.seed);
  SignedAdjacency a(n);
  for (int i = 0; i < n; ++i) {
    const int first = params.zero_diagonal ? i + 1 : i;
    for (int j = first; j < n; ++j) {
      const bool ingroup = (i < half) == (j < half);
      const double u = rng.uniform();
      const int v = ingroup ? detail::draw_tie(u, params.d_in, params.p_in_pos)
                            : detail::draw_tie(u, params.d_out, params.p_out_pos);
      if (v != 0) a.set(i, j, v);
    }
  }
  return a;
}

/// Homogeneous signal vector, all components 1/sqrt(n).
inline Eigen::VectorXd homogeneous_vector(int n) {
  return Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

/// Contrast signal vector: +1/sqrt(n) on group A, -1/sqrt(n) on group B.
inline Eigen::VectorXd contrast_vector(int n) {
  Eigen::VectorXd u = homogeneous_vector(n);
  u.tail(n / 2) *= -1.0;
  return u;
}

/// Expected adjacency mu*n*u_H*u_H^T + nu*n*u_C*u_C^T. The diagonal is left at
/// avg_in so the matrix is exactly rank 2.
inline Eigen::MatrixXd expected_matrix(const BlockParams& params) {
  const DerivedParams dp = derive(params);
  const int n = params.n;
  const int half = n / 2;
  Eigen::MatrixXd m(n, n);
  m.topLeftCorner(half, half).setConstant(dp.avg_in);
  m.bottomRightCorner(half, half).setConstant(dp.avg_in);
  m.topRightCorner(half, half).setConstant(dp.avg_out);
  m.bottomLeftCorner(half, half).setConstant(dp.avg_out);
  return m;
}

/// X = A - <A> for A = generate(params).
inline Eigen::MatrixXd noise_matrix(const BlockParams& params) {
  return generate(params).to_dense() - expected_matrix(params);
}

}  // namespace signet
