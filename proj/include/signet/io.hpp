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

// File formats: JSON for parameters, sweep configs and spectrum reports;
// CSV for edge lists, outcome rows, sweep grids, boundary curves, oracle
// tables and trajectories.

#include <Eigen/Dense>
#include <json.hpp>

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "signet/balance.hpp"
#include "signet/error.hpp"
#include "signet/metrics.hpp"
#include "signet/netgen.hpp"
#include "signet/rmt.hpp"
#include "signet/spectral.hpp"
#include "signet/sweep.hpp"

namespace signet {

using json = nlohmann::json;

/// Shortest round-trip-safe rendering used in every CSV this library writes.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double back = 0.0;
  for (int prec = 10; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

// --- parameters ------------------------------------------------------------

inline void to_json(json& j, const BlockParams& p) {
  j = json{{"n", p.n},
           {"d_in", p.d_in},
           {"d_out", p.d_out},
           {"p_in_pos", p.p_in_pos},
           {"p_out_pos", p.p_out_pos},
           {"zero_diagonal", p.zero_diagonal},
           {"seed", p.seed}};
}

/// Missing fields keep their defaults. Unknown keys are rejected so that typos
/// do not silently fall back to defaults.
inline void from_json(const json& j, BlockParams& p) {
  if (!j.is_object()) throw ConfigError("params must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "n" && key != "d_in" && key != "d_out" && key != "p_in_pos" && key != "p_out_pos" &&
        key != "zero_diagonal" && key != "seed") {
      throw ConfigError("unknown params field: " + key);
    }
  }
  try {
    if (j.contains("n")) p.n = j.at("n").get<int>();
    if (j.contains("d_in")) p.d_in = j.at("d_in").get<double>();
    if (j.contains("d_out")) p.d_out = j.at("d_out").get<double>();
    if (j.contains("p_in_pos")) p.p_in_pos = j.at("p_in_pos").get<double>();
    if (j.contains("p_out_pos")) p.p_out_pos = j.at("p_out_pos").get<double>();
    if (j.contains("zero_diagonal")) p.zero_diagonal = j.at("zero_diagonal").get<bool>();
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad params field: ") + e.what());
  }
}

inline void to_json(json& j, const DerivedParams& d) {
  j = json{{"avg_in", d.avg_in},   {"avg_out", d.avg_out}, {"mu", d.mu},
           {"nu", d.nu},           {"var_in", d.var_in},   {"var_out", d.var_out},
           {"var_avg", d.var_avg}, {"density", d.density}};
}

inline json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

inline void to_json(json& j, const SpectralPrediction& p) {
  j = json{{"lambda_C", optional_json(p.lambda_C)},
           {"lambda_H", optional_json(p.lambda_H)},
           {"gamma", p.gamma},
           {"nu_crit", p.nu_crit},
           {"mu_crit", p.mu_crit},
           {"detect_contrast", p.detect_contrast},
           {"detect_homog", p.detect_homog}};
}

/// {"eigenvalues": [...], "lambda_C": ..., "lambda_H": ..., "gamma": ..., "regime": "..."}
/// Prediction fields are null when no prediction is supplied.
inline json spectrum_report(const Spectrum& spec, const std::optional<SpectralPrediction>& prediction,
                            RegimeLabel regime) {
  json j;
  j["eigenvalues"] = std::vector<double>(spec.eigenvalues.data(),
                                         spec.eigenvalues.data() + spec.eigenvalues.size());
  j["lambda_C"] = prediction ? optional_json(prediction->lambda_C) : json(nullptr);
  j["lambda_H"] = prediction ? optional_json(prediction->lambda_H) : json(nullptr);
  j["gamma"] = prediction ? json(prediction->gamma) : json(nullptr);
  j["regime"] = std::string(to_string(regime));
  return j;
}

// --- sweep config ----------------------------------------------------------

inline SweepMetric metric_from_string(const std::string& s) {
  if (s == "r") return SweepMetric::R;
  if (s == "h") return SweepMetric::H;
  if (s == "z") return SweepMetric::Z;
  if (s == "lambda1") return SweepMetric::Lambda1;
  if (s == "regime") return SweepMetric::Regime;
  throw ConfigError("unknown sweep output metric: " + s);
}

inline std::string to_string(SweepMetric m) {
  switch (m) {
    case SweepMetric::R: return "r";
    case SweepMetric::H: return "h";
    case SweepMetric::Z: return "z";
    case SweepMetric::Lambda1: return "lambda1";
    case SweepMetric::Regime: return "regime";
  }
  return "unknown";
}

inline SweepAxis axis_from_json(const json& j, const char* which) {
  if (!j.is_object()) throw ConfigError(std::string(which) + " must be an object");
  try {
    SweepAxis a;
    a.name = j.at("name").get<std::string>();
    a.start = j.at("start").get<double>();
    a.stop = j.at("stop").get<double>();
    a.step = j.at("step").get<double>();
    return a;
  } catch (const json::exception& e) {
    throw ConfigError(std::string(which) + ": " + e.what());
  }
}

inline json axis_to_json(const SweepAxis& a) {
  return json{{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"step", a.step}};
}

/// Parses and validates a sweep config. "workers" and "output" keys are
/// accepted for the CLI and ignored here.
inline SweepConfig sweep_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  SweepConfig cfg;
  if (!j.contains("axis1") || !j.contains("axis2")) {
    throw ConfigError("sweep config needs axis1 and axis2");
  }
  cfg.axis1 = axis_from_json(j.at("axis1"), "axis1");
  cfg.axis2 = axis_from_json(j.at("axis2"), "axis2");
  try {
    if (j.contains("fixed")) cfg.fixed = j.at("fixed").get<BlockParams>();
    if (j.contains("sign_symmetric")) cfg.sign_symmetric = j.at("sign_symmetric").get<bool>();
    if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<int>();
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("outputs")) {
      cfg.outputs.clear();
      for (const auto& m : j.at("outputs")) cfg.outputs.push_back(metric_from_string(m.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad sweep config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

inline json sweep_config_to_json(const SweepConfig& cfg) {
  json outputs = json::array();
  for (SweepMetric m : cfg.outputs) outputs.push_back(to_string(m));
  return json{{"axis1", axis_to_json(cfg.axis1)}, {"axis2", axis_to_json(cfg.axis2)},
              {"fixed", cfg.fixed},               {"sign_symmetric", cfg.sign_symmetric},
              {"replicates", cfg.replicates},     {"master_seed", cfg.master_seed},
              {"outputs", outputs}};
}

// --- CSV -------------------------------------------------------------------

/// Header `i,j,w`, one row per nonzero upper-triangle entry (diagonal included).
inline void write_edge_list(std::ostream& os, const SignedAdjacency& a) {
  os << "i,j,w\n";
  for (int i = 0; i < a.n(); ++i) {
    for (int j = i; j < a.n(); ++j) {
      const int w = a.at(i, j);
      if (w != 0) os << i << ',' << j << ',' << w << '\n';
    }
  }
}

/// Reads an edge list. Without an explicit n the size is one more than the
/// largest index, rounded up to even.
inline SignedAdjacency read_edge_list(std::istream& is, std::optional<int> n = std::nullopt) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("edge list: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "i,j,w") throw ConfigError("edge list: expected header 'i,j,w', got '" + line + "'");
  struct Edge {
    int i, j, w;
  };
  std::vector<Edge> edges;
  int max_index = -1;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Edge e{};
    char c1 = 0, c2 = 0;
    std::istringstream ls(line);
    if (!(ls >> e.i >> c1 >> e.j >> c2 >> e.w) || c1 != ',' || c2 != ',' || e.i < 0 || e.j < 0 ||
        (e.w != 1 && e.w != -1)) {
      throw ConfigError("edge list: malformed row " + std::to_string(lineno) + ": '" + line + "'");
    }
    max_index = std::max({max_index, e.i, e.j});
    edges.push_back(e);
  }
  int size = n.value_or(max_index + 1 + ((max_index + 1) % 2));
  if (max_index >= size) throw ConfigError("edge list: index exceeds matrix size");
  SignedAdjacency a(size);
  for (const Edge& e : edges) a.set(e.i, e.j, e.w);
  return a;
}

inline constexpr const char* kOutcomeHeader = "r_pos,r_neg,r,h,z,balanced";

inline void write_outcome_row(std::ostream& os, const OutcomeRecord& rec) {
  os << format_number(rec.r_pos) << ',' << format_number(rec.r_neg) << ',' << format_number(rec.r)
     << ',' << format_number(rec.h) << ',' << format_number(rec.z) << ','
     << (rec.balanced ? "true" : "false") << '\n';
}

/// Columns axis1,axis2,replicates,[mean_r,std_r],[mean_h,std_h],[mean_z],
/// [mean_lambda1],valid_fraction,[regime], bracketed groups present when the
/// corresponding metric is requested.
inline void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const SweepResult& res) {
  os << "axis1,axis2,replicates";
  if (cfg.wants(SweepMetric::R)) os << ",mean_r,std_r";
  if (cfg.wants(SweepMetric::H)) os << ",mean_h,std_h";
  if (cfg.wants(SweepMetric::Z)) os << ",mean_z";
  if (cfg.wants(SweepMetric::Lambda1)) os << ",mean_lambda1";
  os << ",valid_fraction";
  if (cfg.wants(SweepMetric::Regime)) os << ",regime";
  os << '\n';
  for (const SweepCell& c : res.cells) {
    os << format_number(c.axis1) << ',' << format_number(c.axis2) << ',' << c.replicates;
    if (cfg.wants(SweepMetric::R)) os << ',' << format_number(c.mean_r) << ',' << format_number(c.std_r);
    if (cfg.wants(SweepMetric::H)) os << ',' << format_number(c.mean_h) << ',' << format_number(c.std_h);
    if (cfg.wants(SweepMetric::Z)) os << ',' << format_number(c.mean_z);
    if (cfg.wants(SweepMetric::Lambda1)) os << ',' << format_number(c.mean_lambda1);
    os << ',' << format_number(c.valid_fraction());
    if (cfg.wants(SweepMetric::Regime)) os << ',' << to_string(c.regime);
    os << '\n';
  }
}

inline void write_boundaries_csv(std::ostream& os, const std::vector<BoundaryPoint>& pts) {
  os << "curve,x,p_out_neg,status\n";
  for (const BoundaryPoint& b : pts) {
    os << b.curve << ',' << format_number(b.x) << ',';
    if (b.p_out_neg) os << format_number(*b.p_out_neg);
    os << ',' << b.status << '\n';
  }
}

/// `lambda,f_numeric,f_analytic` on a grid of lambda values outside the band.
inline void write_trace_csv(std::ostream& os, const Eigen::VectorXd& x_eigenvalues, double sigma,
                            int n, const std::vector<double>& lambdas) {
  os << "lambda,f_numeric,f_analytic\n";
  for (double l : lambdas) {
    os << format_number(l) << ',' << format_number(rmt::f_numeric(x_eigenvalues, l)) << ','
       << format_number(rmt::f_analytic(sigma, n, l)) << '\n';
  }
}

/// `bin_center,empirical_mass,semicircle_mass`.
inline void write_density_csv(std::ostream& os, const rmt::SpectralDensity& d) {
  os << "bin_center,empirical_mass,semicircle_mass\n";
  for (std::size_t k = 0; k < d.bin_mass.size(); ++k) {
    os << format_number(d.bin_center(k)) << ',' << format_number(d.bin_mass[k]) << ','
       << format_number(d.semicircle_mass[k]) << '\n';
  }
}

/// Observer for integrate_numeric writing `t,i,j,y_ij` rows for selected entries.
class TrajectoryWriter {
 public:
  TrajectoryWriter(std::ostream& os, std::vector<std::pair<int, int>> entries, long every = 1)
      : os_(os), entries_(std::move(entries)), every_(every < 1 ? 1 : every) {
    os_ << "t,i,j,y_ij\n";
  }

  void operator()(double t, const Eigen::MatrixXd& y) {
    if (count_++ % every_ != 0) return;
    for (const auto& [i, j] : entries_) {
      os_ << format_number(t) << ',' << i << ',' << j << ',' << format_number(y(i, j)) << '\n';
    }
  }

 private:
  std::ostream& os_;
  std::vector<std::pair<int, int>> entries_;
  long every_;
  long count_ = 0;
};

}  // namespace signet
