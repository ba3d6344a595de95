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

// Parameter sweeps over the block model: one cell runs the full
// generate -> evolve -> measure pipeline, a sweep repeats it over a 2-D grid
// with deterministic per-replicate seeds on a bounded worker pool.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "signet/balance.hpp"
#include "signet/error.hpp"
#include "signet/metrics.hpp"
#include "signet/netgen.hpp"
#include "signet/rng.hpp"
#include "signet/spectral.hpp"

namespace signet {

struct CellOutcome {
  OutcomeRecord outcome;
  double lambda1 = 0.0;  // leading eigenvalue of A
  RegimeLabel regime_params = RegimeLabel::MixedTwoFaction;
  RegimeLabel regime_spectrum = RegimeLabel::MixedTwoFaction;
  bool valid = false;  // false when the final state is undefined (lambda_1 <= 0 or degenerate)
};

/// Generates A with the given seed, evolves Y0 = A/n to its limiting sign
/// state and measures it. Numerical failures of the final state are reported
/// through valid = false.
inline CellOutcome run_cell(const BlockParams& params, std::uint64_t seed) {
  const BlockParams p = params.with_seed(seed);
  const SignedAdjacency a = generate(p);
  const Eigen::MatrixXd y0 = initial_connectivity(a);
  const Spectrum spec = eigen_sym(y0);
  const DerivedParams dp = derive(p);
  const SpectralPrediction prediction = predict_signal(dp, p.n);

  CellOutcome cell;
  cell.lambda1 = spec.lambda1() * p.n;
  cell.regime_params = classify_params(dp, p.n);
  Spectrum scaled = spec;
  scaled.eigenvalues *= static_cast<double>(p.n);
  cell.regime_spectrum = classify_spectrum(scaled, prediction).regime;
  try {
    const SignedAdjacency final = final_state(spec);
    cell.outcome = measure_outcome(final, spec.leading_vector);
    cell.valid = true;
  } catch (const NumericalError&) {
    cell.valid = false;
  }
  return cell;
}

struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.1;

  std::vector<double> values() const {
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> v(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
      // Snap to a 1e-12 lattice so 0.1 * 3 lands on the double nearest 0.3.
      const double x = std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12;
      v[static_cast<std::size_t>(k)] = std::min(x, stop);
    }
    return v;
  }
};

inline bool is_axis_name(const std::string& name) {
  return name == "d" || name == "d_in" || name == "d_out" || name == "p_in_pos" ||
         name == "p_out_neg" || name == "p_out_pos";
}

/// Sets one named parameter. "d" sets d_in = d_out; "p_out_neg" stores
/// 1 - value in p_out_pos.
inline void apply_axis(BlockParams& p, const std::string& name, double value) {
  if (name == "d") {
    p.d_in = value;
    p.d_out = value;
  } else if (name == "d_in") {
    p.d_in = value;
  } else if (name == "d_out") {
    p.d_out = value;
  } else if (name == "p_in_pos") {
    p.p_in_pos = value;
  } else if (name == "p_out_neg") {
    p.p_out_pos = 1.0 - value;
  } else if (name == "p_out_pos") {
    p.p_out_pos = value;
  } else {
    throw ConfigError("unknown axis parameter: " + name);
  }
}

enum class SweepMetric { R, H, Z, Lambda1, Regime };

struct SweepConfig {
  SweepAxis axis1;
  SweepAxis axis2;
  BlockParams fixed;
  bool sign_symmetric = false;  // after applying axes, p_in_pos := p_out_neg
  int replicates = 1;
  std::uint64_t master_seed = 0;
  std::vector<SweepMetric> outputs{SweepMetric::R, SweepMetric::H, SweepMetric::Z,
                                   SweepMetric::Lambda1};

  bool wants(SweepMetric m) const {
    return std::find(outputs.begin(), outputs.end(), m) != outputs.end();
  }

  BlockParams params_at(double v1, double v2) const {
    BlockParams p = fixed;
    apply_axis(p, axis1.name, v1);
    apply_axis(p, axis2.name, v2);
    if (sign_symmetric) p.p_in_pos = p.p_out_neg();
    return p;
  }

  /// Rejects bad axis names or ranges and every grid point with invalid
  /// parameters, before any work is done.
  void validate() const {
    for (const SweepAxis* ax : {&axis1, &axis2}) {
      if (!is_axis_name(ax->name)) throw ConfigError("unknown axis parameter: " + ax->name);
      if (!(ax->start >= 0.0 && ax->start <= 1.0 && ax->stop >= 0.0 && ax->stop <= 1.0)) {
        throw ConfigError("axis " + ax->name + " range must lie within [0, 1]");
      }
      if (ax->stop < ax->start) throw ConfigError("axis " + ax->name + " has stop < start");
      if (!(ax->step > 0.0)) throw ConfigError("axis " + ax->name + " step must be > 0");
    }
    if (axis1.name == axis2.name) throw ConfigError("axis1 and axis2 must differ");
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    if (outputs.empty()) throw ConfigError("outputs must not be empty");
    for (double v1 : axis1.values()) {
      for (double v2 : axis2.values()) params_at(v1, v2).validate();
    }
  }
};

inline std::uint64_t replicate_seed(std::uint64_t master, std::size_t i, std::size_t j,
                                    std::size_t k) {
  return stable_hash(master, {i, j, k});
}

struct SweepCell {
  double axis1 = 0.0;
  double axis2 = 0.0;
  int replicates = 0;
  int valid = 0;
  double mean_r = 0.0, std_r = 0.0;
  double mean_h = 0.0, std_h = 0.0;
  double mean_z = 0.0;
  double mean_lambda1 = 0.0;
  RegimeLabel regime = RegimeLabel::MixedTwoFaction;  // predicted from parameters

  double valid_fraction() const { return replicates > 0 ? static_cast<double>(valid) / replicates : 0.0; }
};

struct SweepResult {
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;
  std::vector<SweepCell> cells;  // row-major: axis1 outer, axis2 inner

  const SweepCell& at(std::size_t i, std::size_t j) const { return cells[i * axis2_values.size() + j]; }
};

/// Runs task(0..count-1) on up to `workers` threads. The first exception
/// thrown by any task is rethrown after all threads join.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= count) return;
      try {
        task(idx);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

inline unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

namespace detail {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

// Two-pass mean and unbiased standard deviation, summed in index order.
inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

}  // namespace detail

/// Every (cell, replicate) pair is an independent task seeded by
/// replicate_seed(master_seed, i, j, k); results are reduced in grid order,
/// so the output does not depend on the worker count.
inline SweepResult run_sweep(const SweepConfig& cfg, unsigned workers = default_workers()) {
  cfg.validate();
  SweepResult res;
  res.axis1_values = cfg.axis1.values();
  res.axis2_values = cfg.axis2.values();
  const std::size_t n1 = res.axis1_values.size();
  const std::size_t n2 = res.axis2_values.size();
  const auto reps = static_cast<std::size_t>(cfg.replicates);
  std::vector<CellOutcome> runs(n1 * n2 * reps);

  parallel_for(runs.size(), workers, [&](std::size_t idx) {
    const std::size_t k = idx % reps;
    const std::size_t cell = idx / reps;
    const std::size_t i = cell / n2;
    const std::size_t j = cell % n2;
    const BlockParams p = cfg.params_at(res.axis1_values[i], res.axis2_values[j]);
    runs[idx] = run_cell(p, replicate_seed(cfg.master_seed, i, j, k));
  });

  res.cells.resize(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      SweepCell& c = res.cells[i * n2 + j];
      c.axis1 = res.axis1_values[i];
      c.axis2 = res.axis2_values[j];
      c.replicates = cfg.replicates;
      const BlockParams p = cfg.params_at(c.axis1, c.axis2);
      c.regime = classify_params(derive(p), p.n);
      std::vector<double> r, h, z, l1;
      for (std::size_t k = 0; k < reps; ++k) {
        const CellOutcome& run = runs[(i * n2 + j) * reps + k];
        l1.push_back(run.lambda1);
        if (!run.valid) continue;
        ++c.valid;
        r.push_back(run.outcome.r);
        h.push_back(run.outcome.h);
        z.push_back(run.outcome.z);
      }
      const auto mr = detail::moments(r);
      const auto mh = detail::moments(h);
      c.mean_r = mr.mean;
      c.std_r = mr.stddev;
      c.mean_h = mh.mean;
      c.std_h = mh.stddev;
      c.mean_z = detail::moments(z).mean;
      c.mean_lambda1 = detail::moments(l1).mean;
    }
  }
  return res;
}

/// One sample of a theoretical transition curve in the (x, p_out^-) plane.
struct BoundaryPoint {
  std::string curve;
  double x = 0.0;
  std::optional<double> p_out_neg;  // empty when the discriminant is negative
  std::string status;               // ok, out_of_range or infeasible
};

/// Samples the theoretical transition curves over the sweep's non-animosity
/// axis. One axis must be p_out_neg or p_out_pos. With sign_symmetric the
/// other axis must be d and the curve is the symmetric-slice boundary;
/// otherwise the four signal boundaries plus the p_out^- = 1/2 line where the
/// contrast and homogeneous eigenvalues swap order are emitted.
inline std::vector<BoundaryPoint> emit_boundaries(const SweepConfig& cfg, int samples = 101) {
  if (samples < 2) throw ConfigError("emit_boundaries: samples must be >= 2");
  auto is_animosity = [](const std::string& s) { return s == "p_out_neg" || s == "p_out_pos"; };
  const SweepAxis* x_axis = nullptr;
  if (is_animosity(cfg.axis2.name)) {
    x_axis = &cfg.axis1;
  } else if (is_animosity(cfg.axis1.name)) {
    x_axis = &cfg.axis2;
  } else {
    throw ConfigError("emit_boundaries: one axis must be p_out_neg or p_out_pos");
  }
  if (!is_axis_name(x_axis->name) || is_animosity(x_axis->name)) {
    throw ConfigError("emit_boundaries: invalid x axis " + x_axis->name);
  }
  if (cfg.sign_symmetric && x_axis->name != "d") {
    throw ConfigError("emit_boundaries: sign_symmetric sweeps need d as the other axis");
  }
  const int n = cfg.fixed.n;
  std::vector<BoundaryPoint> out;
  auto push = [&](const std::string& curve, double x, double raw) {
    BoundaryPoint b{curve, x, raw, "ok"};
    if (raw < 0.0 || raw > 1.0) b.status = "out_of_range";
    out.push_back(std::move(b));
  };
  for (int s = 0; s < samples; ++s) {
    const double x = x_axis->start + (x_axis->stop - x_axis->start) * s / (samples - 1);
    BlockParams p = cfg.fixed;
    apply_axis(p, x_axis->name, x);
    if (cfg.sign_symmetric) {
      if (p.d_in > 0.0) {
        push("symmetric", x, boundary_symmetric_case(p.d_in, n));
      } else {
        out.push_back({"symmetric", x, std::nullopt, "infeasible"});
      }
      continue;
    }
    for (TransitionKind kind : {TransitionKind::Assortative, TransitionKind::Disassortative,
                                TransitionKind::Prosocial, TransitionKind::Antisocial}) {
      const std::string name(to_string(kind));
      if (!(p.d_out > 0.0)) {
        out.push_back({name, x, std::nullopt, "infeasible"});
        continue;
      }
      try {
        push(name, x, boundary_outgroup_animosity(p.d_in, p.d_out, p.p_in_pos, n, kind).raw);
      } catch (const InfeasibleBoundary&) {
        out.push_back({name, x, std::nullopt, "infeasible"});
      }
    }
    push("signal_swap", x, 0.5);
  }
  return out;
}

}  // namespace signet
