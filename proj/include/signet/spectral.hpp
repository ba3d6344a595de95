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

// Dense symmetric eigendecomposition and the analytic spectral predictions
// for the two-community signed block model: signal eigenvalues, the noise
// band edge, transition boundaries and regime classification.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "signet/error.hpp"
#include "signet/netgen.hpp"

namespace signet {

struct Spectrum {
  Eigen::VectorXd eigenvalues;     // descending
  Eigen::VectorXd leading_vector;  // unit eigenvector of eigenvalues[0]
  Eigen::VectorXd trailing_vector; // unit eigenvector of eigenvalues[n-1]

  double lambda1() const { return eigenvalues(0); }
  double lambda_n() const { return eigenvalues(eigenvalues.size() - 1); }
};

namespace detail {

inline void require_symmetric(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw ConfigError(std::string(who) + ": matrix must be square");
  }
  if (m.rows() == 0) throw ConfigError(std::string(who) + ": empty matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-10 * scale)) {
    std::ostringstream os;
    os << who << ": matrix is not symmetric (max |A - A^T| = " << asym << ")";
    throw ConfigError(os.str());
  }
}

// Fixes the arbitrary global sign: component sum non-negative, and when the
// sum vanishes the first nonzero component is positive.
inline Eigen::VectorXd canonical_sign(Eigen::VectorXd v) {
  const double s = v.sum();
  const double tol = 1e-12 * std::sqrt(static_cast<double>(v.size()));
  if (s < -tol) {
    v = -v;
  } else if (std::abs(s) <= tol) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-14) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
  }
  return v;
}

}  // namespace detail

/// Full symmetric eigendecomposition (Householder tridiagonalization followed by
/// implicit-shift QR iteration). Throws ConfigError on non-symmetric input.
inline Spectrum eigen_sym(const Eigen::MatrixXd& a) {
  detail::require_symmetric(a, "eigen_sym");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen_sym: no convergence");
  const Eigen::Index n = a.rows();
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.leading_vector = detail::canonical_sign(solver.eigenvectors().col(n - 1));
  s.trailing_vector = detail::canonical_sign(solver.eigenvectors().col(0));
  return s;
}

/// Eigenvalues only, descending.
inline Eigen::VectorXd eigenvalues_sym(const Eigen::MatrixXd& a) {
  detail::require_symmetric(a, "eigenvalues_sym");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues_sym: no convergence");
  return solver.eigenvalues().reverse();
}

struct SpectralPrediction {
  std::optional<double> lambda_C;  // absent when nu == 0
  std::optional<double> lambda_H;  // absent when mu == 0
  double gamma = 0.0;
  double nu_crit = 0.0;
  double mu_crit = 0.0;
  bool detect_contrast = false;
  bool detect_homog = false;
};

/// Signal eigenvalues nu*n + sigma^2/nu and mu*n + sigma^2/mu, band edge
/// 2*sigma*sqrt(n), and the critical signal strength sigma/sqrt(n). A signal at
/// exactly the critical strength counts as detectable.
inline SpectralPrediction predict_signal(const DerivedParams& dp, int n) {
  if (n <= 0) throw ConfigError("predict_signal: n must be positive");
  const double sigma = dp.sigma();
  const double rn = std::sqrt(static_cast<double>(n));
  SpectralPrediction p;
  p.gamma = 2.0 * sigma * rn;
  p.nu_crit = sigma / rn;
  p.mu_crit = sigma / rn;
  if (dp.nu != 0.0) {
    p.lambda_C = dp.nu * n + dp.var_avg / dp.nu;
    p.detect_contrast = std::abs(dp.nu) >= p.nu_crit;
  }
  if (dp.mu != 0.0) {
    p.lambda_H = dp.mu * n + dp.var_avg / dp.mu;
    p.detect_homog = std::abs(dp.mu) >= p.mu_crit;
  }
  return p;
}

/// Sparse-network approximation of the critical contrast strength, neglecting
/// mu^2 and nu^2 against the density.
inline double nu_crit_sparse(double d_in, double d_out, int n) {
  return std::sqrt((d_in + d_out) / (2.0 * n));
}

/// Sparse-network approximation of the critical homogeneous strength.
inline double mu_crit_sparse(double d_in, double d_out, int n) {
  return std::sqrt((d_in + d_out) / (2.0 * n));
}

enum class TransitionKind { Assortative, Disassortative, Prosocial, Antisocial };

inline std::string_view to_string(TransitionKind k) {
  switch (k) {
    case TransitionKind::Assortative: return "assortative";
    case TransitionKind::Disassortative: return "disassortative";
    case TransitionKind::Prosocial: return "prosocial";
    case TransitionKind::Antisocial: return "antisocial";
  }
  return "unknown";
}

inline TransitionKind transition_kind_from_string(std::string_view s) {
  if (s == "assortative") return TransitionKind::Assortative;
  if (s == "disassortative") return TransitionKind::Disassortative;
  if (s == "prosocial") return TransitionKind::Prosocial;
  if (s == "antisocial") return TransitionKind::Antisocial;
  throw ConfigError("unknown transition kind: " + std::string(s));
}

struct BoundaryValue {
  double value = 0.0;  // clipped to [0, 1]
  double raw = 0.0;
  bool out_of_range = false;
};

namespace detail {

inline BoundaryValue clip_boundary(double raw) {
  BoundaryValue b;
  b.raw = raw;
  b.value = std::clamp(raw, 0.0, 1.0);
  b.out_of_range = raw < 0.0 || raw > 1.0;
  return b;
}

inline bool is_contrast(TransitionKind k) {
  return k == TransitionKind::Assortative || k == TransitionKind::Disassortative;
}

}  // namespace detail

/// Critical outgroup animosity p_out^- for the given transition, large-n form:
///
///   contrast:     1/2 - (d_in/d_out)(p_in+ - 1/2) +/- D
///   homogeneous:  1/2 + (d_in/d_out)(p_in+ - 1/2) -/+ D
///   D = sqrt((d_in + d_out - 8 d_in^2 (p_in+ - 1/2)^2) / (2n)) / d_out
///
/// with + for assortative and antisocial, - for disassortative and prosocial.
inline BoundaryValue boundary_outgroup_animosity(double d_in, double d_out, double p_in_pos,
                                                 int n, TransitionKind kind) {
  if (!(d_out > 0.0)) throw ConfigError("boundary_outgroup_animosity: d_out must be > 0");
  if (n <= 0) throw ConfigError("boundary_outgroup_animosity: n must be positive");
  const double shift = p_in_pos - 0.5;
  const double disc = d_in + d_out - 8.0 * d_in * d_in * shift * shift;
  if (disc < 0.0) {
    std::ostringstream os;
    os << "infeasible " << to_string(kind) << " boundary: discriminant " << disc << " < 0";
    throw InfeasibleBoundary(os.str(), disc);
  }
  const double margin = std::sqrt(disc / (2.0 * n)) / d_out;
  const double ratio = d_in / d_out * shift;
  switch (kind) {
    case TransitionKind::Assortative: return detail::clip_boundary(0.5 - ratio + margin);
    case TransitionKind::Disassortative: return detail::clip_boundary(0.5 - ratio - margin);
    case TransitionKind::Prosocial: return detail::clip_boundary(0.5 + ratio - margin);
    case TransitionKind::Antisocial: return detail::clip_boundary(0.5 + ratio + margin);
  }
  return {};
}

/// Finite-n boundary: solves (n+1)s^2 + t^2 = d exactly, where s is the signal
/// (nu or mu) undergoing the transition and t the other one. At the returned
/// point the predicted signal eigenvalue equals the band edge.
inline BoundaryValue boundary_outgroup_animosity_exact(double d_in, double d_out,
                                                       double p_in_pos, int n,
                                                       TransitionKind kind) {
  if (!(d_out > 0.0)) throw ConfigError("boundary_outgroup_animosity_exact: d_out must be > 0");
  if (n <= 0) throw ConfigError("boundary_outgroup_animosity_exact: n must be positive");
  const double a_in = d_in * (2.0 * p_in_pos - 1.0);
  const double np2 = n + 2.0;
  const double disc = 2.0 / np2 * (d_in + d_out) - 4.0 * (n + 1.0) / (np2 * np2) * a_in * a_in;
  if (disc < 0.0) {
    std::ostringstream os;
    os << "infeasible " << to_string(kind) << " boundary: discriminant " << disc << " < 0";
    throw InfeasibleBoundary(os.str(), disc);
  }
  const double root = std::sqrt(disc);
  const double centre = (detail::is_contrast(kind) ? 1.0 : -1.0) * n / np2 * a_in;
  double a_out = 0.0;
  switch (kind) {
    case TransitionKind::Assortative: a_out = centre - root; break;
    case TransitionKind::Disassortative: a_out = centre + root; break;
    case TransitionKind::Prosocial: a_out = centre + root; break;
    case TransitionKind::Antisocial: a_out = centre - root; break;
  }
  return detail::clip_boundary(0.5 * (1.0 - a_out / d_out));
}

/// Assortative boundary on the slice p_in+ = p_out^-, d_in = d_out = d:
/// (1 + sqrt(1/(d n)))/2.
inline double boundary_symmetric_case(double d, int n) {
  if (!(d > 0.0)) throw ConfigError("boundary_symmetric_case: d must be > 0");
  if (n <= 0) throw ConfigError("boundary_symmetric_case: n must be positive");
  return 0.5 * (1.0 + std::sqrt(1.0 / (d * n)));
}

/// Finite-n version of boundary_symmetric_case: (1 + sqrt(1/(d (n+1))))/2.
inline double boundary_symmetric_case_exact(double d, int n) {
  if (!(d > 0.0)) throw ConfigError("boundary_symmetric_case_exact: d must be > 0");
  if (n <= 0) throw ConfigError("boundary_symmetric_case_exact: n must be positive");
  return 0.5 * (1.0 + std::sqrt(1.0 / (d * (n + 1.0))));
}

enum class RegimeLabel { AssortativeTwoFaction, MixedTwoFaction, Harmonious };

inline std::string_view to_string(RegimeLabel r) {
  switch (r) {
    case RegimeLabel::AssortativeTwoFaction: return "assortative_two_faction";
    case RegimeLabel::MixedTwoFaction: return "mixed_two_faction";
    case RegimeLabel::Harmonious: return "harmonious";
  }
  return "unknown";
}

inline RegimeLabel regime_from_string(std::string_view s) {
  if (s == "assortative_two_faction") return RegimeLabel::AssortativeTwoFaction;
  if (s == "mixed_two_faction") return RegimeLabel::MixedTwoFaction;
  if (s == "harmonious") return RegimeLabel::Harmonious;
  throw ConfigError("unknown regime: " + std::string(s));
}

/// Regime predicted from the parameters alone. The critical strength uses
/// sigma from the exact variance (self-consistent in mu and nu). A nu == mu tie
/// resolves to Harmonious.
inline RegimeLabel classify_params(const DerivedParams& dp, int n) {
  if (n <= 0) throw ConfigError("classify_params: n must be positive");
  const double crit = dp.sigma() / std::sqrt(static_cast<double>(n));
  if (dp.nu > 0.0 && dp.nu >= crit && dp.nu > dp.mu) return RegimeLabel::AssortativeTwoFaction;
  if (dp.mu > 0.0 && dp.mu >= crit && dp.mu >= dp.nu) return RegimeLabel::Harmonious;
  return RegimeLabel::MixedTwoFaction;
}

enum class VectorPattern { Contrast, Homogeneous, Noise };

inline std::string_view to_string(VectorPattern p) {
  switch (p) {
    case VectorPattern::Contrast: return "contrast";
    case VectorPattern::Homogeneous: return "homogeneous";
    case VectorPattern::Noise: return "noise";
  }
  return "unknown";
}

struct VectorDiagnosis {
  VectorPattern pattern = VectorPattern::Noise;
  double contrast_agreement = 0.0;  // sign agreement with u_C, up to global sign
  double majority_fraction = 0.0;   // share of the majority sign, zeros positive
};

inline constexpr double kPatternThreshold = 0.9;

/// Labels an eigenvector by its sign pattern against the A/B block labeling.
inline VectorDiagnosis diagnose_vector(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw ConfigError("diagnose_vector: empty vector");
  const Eigen::Index half = n / 2;
  Eigen::Index positive = 0;
  Eigen::Index agree = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool pos = v(i) >= 0.0;
    positive += pos ? 1 : 0;
    agree += (pos == (i < half)) ? 1 : 0;
  }
  VectorDiagnosis d;
  const double nd = static_cast<double>(n);
  d.contrast_agreement = static_cast<double>(std::max(agree, n - agree)) / nd;
  d.majority_fraction = static_cast<double>(std::max(positive, n - positive)) / nd;
  if (d.contrast_agreement >= kPatternThreshold) {
    d.pattern = VectorPattern::Contrast;
  } else if (d.majority_fraction >= kPatternThreshold) {
    d.pattern = VectorPattern::Homogeneous;
  } else {
    d.pattern = VectorPattern::Noise;
  }
  return d;
}

struct SpectrumClassification {
  RegimeLabel regime = RegimeLabel::MixedTwoFaction;
  VectorDiagnosis leading;
  VectorDiagnosis trailing;
  bool leading_outside_band = false;  // lambda_1 >= gamma
  bool trailing_outside_band = false; // lambda_n <= -gamma
};

/// Regime implied by the leading eigenvector: it fixes the final balanced
/// state, so a contrast-like u_1 gives identity-aligned factions, a
/// homogeneous-like u_1 a single faction, and anything else mixed factions.
inline SpectrumClassification classify_spectrum(const Spectrum& spec,
                                                const SpectralPrediction& prediction) {
  SpectrumClassification c;
  c.leading = diagnose_vector(spec.leading_vector);
  c.trailing = diagnose_vector(spec.trailing_vector);
  c.leading_outside_band = spec.lambda1() >= prediction.gamma;
  c.trailing_outside_band = spec.lambda_n() <= -prediction.gamma;
  switch (c.leading.pattern) {
    case VectorPattern::Contrast: c.regime = RegimeLabel::AssortativeTwoFaction; break;
    case VectorPattern::Homogeneous: c.regime = RegimeLabel::Harmonious; break;
    case VectorPattern::Noise: c.regime = RegimeLabel::MixedTwoFaction; break;
  }
  return c;
}

}  // namespace signet
