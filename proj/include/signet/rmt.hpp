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

// Random-matrix checks on the noise part of the block model: semicircle
// density and band edge, the resolvent trace f(lambda) = Tr(lambda - X)^{-1}
// computed numerically and in closed form, signal-eigenvalue root finding,
// interlacing under a rank-one contrast update, and the first-order
// eigenvalue fluctuation.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "signet/error.hpp"
#include "signet/netgen.hpp"
#include "signet/rng.hpp"
#include "signet/spectral.hpp"

namespace signet::rmt {

/// gamma = 2 sigma sqrt(n).
inline double band_edge(double sigma, int n) {
  if (!(sigma >= 0.0)) throw ConfigError("band_edge: sigma must be >= 0");
  return 2.0 * sigma * std::sqrt(static_cast<double>(n));
}

/// Semicircle density sqrt(4 n sigma^2 - z^2) / (2 pi n sigma^2), zero outside
/// the band.
inline double semicircle_density(double sigma, int n, double z) {
  const double r2 = 4.0 * n * sigma * sigma;
  const double arg = r2 - z * z;
  if (!(arg > 0.0)) return 0.0;
  return std::sqrt(arg) / (2.0 * std::numbers::pi * n * sigma * sigma);
}

/// Semicircle probability mass below z.
inline double semicircle_cdf(double sigma, int n, double z) {
  const double radius = band_edge(sigma, n);
  if (z <= -radius) return 0.0;
  if (z >= radius) return 1.0;
  const double x = z / radius;
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / std::numbers::pi;
}

struct SpectralDensity {
  std::vector<double> bin_edges;  // bins + 1 edges over [-gamma, gamma]
  std::vector<double> bin_mass;   // empirical mass per bin, sums to 1
  std::vector<double> semicircle_mass;
  double sigma = 0.0;
  int n = 0;

  double bin_center(std::size_t k) const { return 0.5 * (bin_edges[k] + bin_edges[k + 1]); }

  double l1_distance() const {
    double d = 0.0;
    for (std::size_t k = 0; k < bin_mass.size(); ++k) d += std::abs(bin_mass[k] - semicircle_mass[k]);
    return d;
  }
};

/// Histogram of eigenvalues over equal-width bins spanning [-gamma, gamma].
/// Eigenvalues outside the band fall into the end bins.
inline SpectralDensity spectral_density(const Eigen::VectorXd& eigenvalues, double sigma, int n,
                                        int bins = 50) {
  if (bins < 1) throw ConfigError("spectral_density: bins must be >= 1");
  if (eigenvalues.size() == 0) throw ConfigError("spectral_density: no eigenvalues");
  const double gamma = band_edge(sigma, n);
  if (!(gamma > 0.0)) throw ConfigError("spectral_density: band has zero width");
  SpectralDensity d;
  d.sigma = sigma;
  d.n = n;
  d.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = 2.0 * gamma / bins;
  for (int k = 0; k <= bins; ++k) d.bin_edges[k] = -gamma + k * width;
  d.bin_edges.back() = gamma;
  d.bin_mass.assign(static_cast<std::size_t>(bins), 0.0);
  const double w = 1.0 / static_cast<double>(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const auto k = static_cast<long>(std::floor((eigenvalues(i) + gamma) / width));
    d.bin_mass[static_cast<std::size_t>(std::clamp(k, 0L, static_cast<long>(bins) - 1))] += w;
  }
  d.semicircle_mass.resize(static_cast<std::size_t>(bins));
  for (int k = 0; k < bins; ++k) {
    d.semicircle_mass[k] =
        semicircle_cdf(sigma, n, d.bin_edges[k + 1]) - semicircle_cdf(sigma, n, d.bin_edges[k]);
  }
  return d;
}

inline constexpr double kPoleTolerance = 1e-9;

/// f(lambda) = sum_i 1/(lambda - omega_i) over the eigenvalues omega of X.
/// Throws NumericalError when lambda is within 1e-9 of an eigenvalue.
inline double f_numeric(const Eigen::VectorXd& x_eigenvalues, double lambda) {
  double f = 0.0;
  for (Eigen::Index i = 0; i < x_eigenvalues.size(); ++i) {
    const double gap = lambda - x_eigenvalues(i);
    if (std::abs(gap) < kPoleTolerance) {
      std::ostringstream os;
      os << "f_numeric: lambda = " << lambda << " coincides with eigenvalue " << x_eigenvalues(i);
      throw NumericalError(os.str());
    }
    f += 1.0 / gap;
  }
  return f;
}

inline double f_numeric(const Eigen::MatrixXd& x, double lambda) {
  return f_numeric(eigenvalues_sym(x), lambda);
}

/// Closed-form resolvent trace of the semicircle,
/// (lambda - sign(lambda) sqrt(lambda^2 - 4 n sigma^2)) / (2 sigma^2), |lambda| > gamma.
inline double f_analytic(double sigma, int n, double lambda) {
  const double gamma = band_edge(sigma, n);
  if (!(std::abs(lambda) > gamma)) {
    std::ostringstream os;
    os << "f_analytic: |lambda| = " << std::abs(lambda) << " is inside the band (gamma = " << gamma
       << ")";
    throw ConfigError(os.str());
  }
  if (sigma == 0.0) return n / lambda;
  const double s2 = sigma * sigma;
  const double root = std::sqrt(lambda * lambda - 4.0 * n * s2);
  // Rationalized to avoid cancellation: lambda - root = 4 n s2 / (lambda + root).
  const double mag = 2.0 * n / (std::abs(lambda) + root);
  return std::copysign(mag, lambda);
}

namespace detail {

// Bisection for a decreasing function on [lo, hi] with g(lo) > target > g(hi).
template <class F>
double bisect_decreasing(F&& g, double lo, double hi, double target) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Outlier eigenvalue predicted by solving f_analytic(lambda) = 1/s for a
/// signal strength s (nu or mu), by bisection on (gamma + 1e-6 gamma,
/// gamma + 10 n sigma]; the upper end is extended if needed. Negative s is
/// solved on the mirrored side. Returns nullopt when the signal is inside
/// the band (no root).
inline std::optional<double> solve_signal_root(double sigma, int n, double strength) {
  if (strength == 0.0) return std::nullopt;
  const double s = std::abs(strength);
  const double target = 1.0 / s;
  const double gamma = band_edge(sigma, n);
  const double eps = gamma > 0.0 ? 1e-6 * gamma : 1e-12;
  const double lo = gamma + eps;
  auto g = [&](double x) { return f_analytic(sigma, n, x); };
  if (!(g(lo) > target)) return std::nullopt;
  double hi = gamma + 10.0 * n * std::max(sigma, 1e-3);
  while (g(hi) > target) hi *= 2.0;
  const double root = detail::bisect_decreasing(g, lo, hi, target);
  return strength > 0.0 ? root : -root;
}

/// Largest root of f_numeric(lambda) = 1/nu above the top eigenvalue of X.
/// This uses the equal-overlap approximation (x_i . u_C)^2 = 1/n, so it
/// approximates the outlier of X + nu n u_C u_C^T rather than reproducing it.
inline double largest_root_f_numeric(const Eigen::VectorXd& x_eigenvalues, double nu) {
  if (!(nu > 0.0)) throw ConfigError("largest_root_f_numeric: nu must be > 0");
  const double top = x_eigenvalues.maxCoeff();
  const double target = 1.0 / nu;
  const double span = std::max(1.0, x_eigenvalues.cwiseAbs().maxCoeff());
  const double lo = top + 1e-8 * span;
  double hi = top + span + x_eigenvalues.size() * nu * 2.0;
  auto g = [&](double x) { return f_numeric(x_eigenvalues, x); };
  while (g(hi) > target) hi = top + 2.0 * (hi - top);
  return detail::bisect_decreasing(g, lo, hi, target);
}

/// Secular function sum_i (x_i . u)^2 / (lambda - omega_i) of a symmetric X
/// with eigenpairs (omega_i, x_i). Its roots at 1/theta are exactly the
/// eigenvalues of X + theta u u^T.
class SecularFunction {
 public:
  SecularFunction(const Eigen::MatrixXd& x, const Eigen::VectorXd& u) {
    signet::detail::require_symmetric(x, "SecularFunction");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(x);
    omega_ = solver.eigenvalues();
    weight_ = (solver.eigenvectors().transpose() * u).array().square().matrix();
  }

  double operator()(double lambda) const {
    return (weight_.array() / (lambda - omega_.array())).sum();
  }

  /// Largest root of secular(lambda) = 1/theta for theta > 0, located above
  /// the top eigenvalue of X.
  double largest_root(double theta) const {
    if (!(theta > 0.0)) throw ConfigError("SecularFunction::largest_root: theta must be > 0");
    const double top = omega_.maxCoeff();
    const double target = 1.0 / theta;
    // The root lies in (top, top + theta * sum(weights)].
    const double lo = top;
    const double hi = top + theta * weight_.sum() + 1e-12 * std::max(1.0, std::abs(top));
    auto g = [&](double x) { return x <= top ? std::numeric_limits<double>::infinity() : (*this)(x); };
    return detail::bisect_decreasing(g, lo, hi, target);
  }

  const Eigen::VectorXd& omega() const { return omega_; }
  const Eigen::VectorXd& weights() const { return weight_; }

 private:
  Eigen::VectorXd omega_;   // ascending
  Eigen::VectorXd weight_;
};

struct InterlacingReport {
  bool interlaced = true;
  int violations = 0;
  Eigen::VectorXd base;     // eigenvalues of X, descending
  Eigen::VectorXd updated;  // eigenvalues of X + nu n u_C u_C^T, descending
};

/// Checks that the eigenvalues of X + nu n u_C u_C^T interlace those of X:
/// z_1 >= w_1 >= z_2 >= ... for nu > 0, and w_1 >= z_1 >= w_2 >= ... for nu < 0.
inline InterlacingReport interlacing_report(const Eigen::MatrixXd& x, double nu) {
  const int n = static_cast<int>(x.rows());
  InterlacingReport rep;
  rep.base = eigenvalues_sym(x);
  const Eigen::VectorXd uc = contrast_vector(n);
  const Eigen::MatrixXd updated = x + nu * n * uc * uc.transpose();
  rep.updated = eigenvalues_sym(0.5 * (updated + updated.transpose()));
  const double tol = 1e-10 * std::max(1.0, rep.base.cwiseAbs().maxCoeff() + std::abs(nu) * n);
  const Eigen::VectorXd& hi = nu >= 0.0 ? rep.updated : rep.base;
  const Eigen::VectorXd& lo = nu >= 0.0 ? rep.base : rep.updated;
  for (int i = 0; i < n; ++i) {
    if (hi(i) < lo(i) - tol) ++rep.violations;
    if (i + 1 < n && lo(i) < hi(i + 1) - tol) ++rep.violations;
  }
  rep.interlaced = rep.violations == 0;
  return rep;
}

inline bool interlacing_check(const Eigen::MatrixXd& x, double nu) {
  return interlacing_report(x, nu).interlaced;
}

struct FluctuationStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double expected_variance = 0.0;  // 2 sigma^2
  int trials = 0;
};

/// Sample statistics of the first-order contrast eigenvalue shift u_C^T X u_C
/// over independent noise draws. Trial k uses seed stable_hash(params.seed, {k}).
inline FluctuationStats lambda1_variance_test(const BlockParams& params, int trials) {
  if (trials < 100) throw ConfigError("lambda1_variance_test: trials must be >= 100");
  const DerivedParams dp = derive(params);
  const Eigen::VectorXd uc = contrast_vector(params.n);
  const Eigen::MatrixXd mean_matrix = expected_matrix(params);
  std::vector<double> samples(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) {
    const BlockParams pk = params.with_seed(stable_hash(params.seed, {static_cast<std::uint64_t>(k)}));
    const Eigen::MatrixXd x = generate(pk).to_dense() - mean_matrix;
    samples[static_cast<std::size_t>(k)] = uc.dot(x * uc);
  }
  FluctuationStats st;
  st.trials = trials;
  double sum = 0.0;
  for (double v : samples) sum += v;
  st.mean = sum / trials;
  double ss = 0.0;
  for (double v : samples) ss += (v - st.mean) * (v - st.mean);
  st.variance = ss / (trials - 1);
  st.expected_variance = 2.0 * dp.var_avg;
  return st;
}

}  // namespace signet::rmt
