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

// Structural balance dynamics dY/dt = Y^2: closed-form solution, an RK4
// integrator for cross-checking it, blow-up time and the limiting sign state.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>

#include "signet/error.hpp"
#include "signet/netgen.hpp"
#include "signet/spectral.hpp"

namespace signet {

struct ConnectivityState {
  Eigen::MatrixXd y;
  double t = 0.0;
};

struct BlowupInfo {
  double t_star = std::numeric_limits<double>::infinity();
  double lambda_max = 0.0;
};

/// t* = 1/lambda_1(Y0). Throws NumericalError when lambda_1 <= 0, since the
/// trajectory then has no finite-time singularity.
inline BlowupInfo blowup_time(const Eigen::MatrixXd& y0) {
  const Eigen::VectorXd ev = eigenvalues_sym(y0);
  BlowupInfo info;
  info.lambda_max = ev(0);
  if (!(info.lambda_max > 0.0)) {
    std::ostringstream os;
    os << "blowup_time: leading eigenvalue " << info.lambda_max << " <= 0, no finite blow-up";
    throw NumericalError(os.str());
  }
  info.t_star = 1.0 / info.lambda_max;
  return info;
}

inline constexpr double kMaxResolventCondition = 1e12;

/// Y(t) = Y0 (I - Y0 t)^{-1} for 0 <= t < t*.
inline Eigen::MatrixXd closed_form(const Eigen::MatrixXd& y0, double t) {
  const Eigen::VectorXd ev = eigenvalues_sym(y0);
  if (!(t >= 0.0)) throw ConfigError("closed_form: t must be >= 0");
  const double lmax = ev(0);
  const double t_star = lmax > 0.0 ? 1.0 / lmax : std::numeric_limits<double>::infinity();
  if (t >= t_star) {
    std::ostringstream os;
    os << "closed_form: t = " << t << " is at or past blow-up time " << t_star;
    throw BlowupError(os.str(), t_star);
  }
  if (t == 0.0) return y0;
  // I - t Y0 shares eigenvectors with Y0, so its condition number follows from ev.
  const Eigen::ArrayXd resolvent_ev = (1.0 - t * ev.array()).abs();
  const double cond = resolvent_ev.maxCoeff() / resolvent_ev.minCoeff();
  if (!(cond < kMaxResolventCondition)) {
    std::ostringstream os;
    os << "closed_form: resolvent condition number " << cond << " too large at t = " << t;
    throw BlowupError(os.str(), t_star);
  }
  const Eigen::Index n = y0.rows();
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - t * y0;
  // Y0 and (I - t Y0) commute, so Y0 M^{-1} = M^{-1} Y0.
  Eigen::MatrixXd y = m.partialPivLu().solve(y0);
  return 0.5 * (y + y.transpose());
}

inline constexpr double kOverflowLimit = 1e12;

/// Classical fixed-step RK4 for dY/dt = Y^2 from t = 0 to t_end. The last step
/// is shortened to land on t_end. The observer, if given, is called as
/// observer(t, Y) at t = 0 and after every step.
template <class Observer>
Eigen::MatrixXd integrate_numeric(const Eigen::MatrixXd& y0, double t_end, double dt,
                                  Observer&& observer) {
  detail::require_symmetric(y0, "integrate_numeric");
  if (!(dt > 0.0)) throw ConfigError("integrate_numeric: dt must be > 0");
  if (!(t_end >= 0.0)) throw ConfigError("integrate_numeric: t_end must be >= 0");
  const Eigen::VectorXd ev = eigenvalues_sym(y0);
  if (ev(0) > 0.0 && t_end >= 1.0 / ev(0)) {
    std::ostringstream os;
    os << "integrate_numeric: t_end = " << t_end << " is at or past blow-up time " << 1.0 / ev(0);
    throw BlowupError(os.str(), 1.0 / ev(0));
  }

  Eigen::MatrixXd y = y0;
  observer(0.0, static_cast<const Eigen::MatrixXd&>(y));
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  double t = 0.0;
  for (long long s = 0; s < steps; ++s) {
    const double t_next = (s + 1 == steps) ? t_end : static_cast<double>(s + 1) * dt;
    const double h = t_next - t;
    const Eigen::MatrixXd k1 = y * y;
    Eigen::MatrixXd tmp = y + 0.5 * h * k1;
    const Eigen::MatrixXd k2 = tmp * tmp;
    tmp = y + 0.5 * h * k2;
    const Eigen::MatrixXd k3 = tmp * tmp;
    tmp = y + h * k3;
    const Eigen::MatrixXd k4 = tmp * tmp;
    Eigen::MatrixXd next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite() || next.cwiseAbs().maxCoeff() > kOverflowLimit) {
      std::ostringstream os;
      os << "integrate_numeric: overflow after t = " << t;
      throw OverflowError(os.str(), t);
    }
    y = 0.5 * (next + next.transpose());
    t = t_next;
    observer(t, static_cast<const Eigen::MatrixXd&>(y));
  }
  return y;
}

inline Eigen::MatrixXd integrate_numeric(const Eigen::MatrixXd& y0, double t_end, double dt) {
  return integrate_numeric(y0, t_end, dt, [](double, const Eigen::MatrixXd&) {});
}

/// Default RK4 step: t* / 10^4.
inline double default_step(const Eigen::MatrixXd& y0) { return blowup_time(y0).t_star * 1e-4; }

inline constexpr double kMinRelativeGap = 1e-10;

/// Signs of u_1 with zero components mapped to +1, from a precomputed spectrum.
/// Throws NumericalError if lambda_1 <= 0 or lambda_1 is numerically degenerate.
inline Eigen::VectorXi leading_signs(const Spectrum& spec) {
  const double l1 = spec.lambda1();
  if (!(l1 > 0.0)) {
    std::ostringstream os;
    os << "leading eigenvalue " << l1 << " <= 0, no finite-time blow-up";
    throw NumericalError(os.str());
  }
  if (spec.eigenvalues.size() > 1 && (l1 - spec.eigenvalues(1)) <= kMinRelativeGap * l1) {
    throw NumericalError("leading eigenvalue is degenerate, final state undefined");
  }
  Eigen::VectorXi s(spec.leading_vector.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = spec.leading_vector(i) >= 0.0 ? 1 : -1;
  return s;
}

/// Complete +-1 matrix s s^T for a sign vector s.
inline SignedAdjacency sign_outer_product(const Eigen::VectorXi& s) {
  const int n = static_cast<int>(s.size());
  SignedAdjacency a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a.set(i, j, s(i) * s(j));
  }
  return a;
}

/// Limit of sign(Y(t)) as t -> t*: sign(u_1) sign(u_1)^T, u_1 the leading
/// eigenvector of Y0.
inline SignedAdjacency final_state(const Spectrum& spec) {
  return sign_outer_product(leading_signs(spec));
}

inline SignedAdjacency final_state(const Eigen::MatrixXd& y0) { return final_state(eigen_sym(y0)); }

/// Entrywise sign of a real matrix, zeros kept as 0. Used to read tie signs
/// off a connectivity state.
inline SignedAdjacency sign_matrix(const Eigen::MatrixXd& y) {
  detail::require_symmetric(y, "sign_matrix");
  const int n = static_cast<int>(y.rows());
  SignedAdjacency a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = 0.5 * (y(i, j) + y(j, i));
      a.set(i, j, v > 0.0 ? 1 : (v < 0.0 ? -1 : 0));
    }
  }
  return a;
}

/// Initial connectivity Y0 = A / n for a generated network.
inline Eigen::MatrixXd initial_connectivity(const SignedAdjacency& a) {
  return a.to_dense() / static_cast<double>(a.n());
}

}  // namespace signet
