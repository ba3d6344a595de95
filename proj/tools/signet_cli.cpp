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

// signet: command-line front end.
//
//   signet generate  --params p.json -o a.csv
//   signet spectrum  --params p.json            (or --input a.csv)
//   signet predict   --params p.json
//   signet evolve    --params p.json --t-frac 0.9 --trajectory traj.csv --entry 0,1
//   signet classify  --params p.json
//   signet oracle    trace|density|variance|interlacing --params p.json
//   signet sweep     --config sweep.json -o grid.csv --boundaries curves.csv
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "signet/signet.hpp"

namespace {

using namespace signet;

// Flags shared by every subcommand that builds a network from parameters.
struct ParamFlags {
  std::string file;
  std::optional<int> n;
  std::optional<double> d, d_in, d_out, p_in_pos, p_out_pos, p_out_neg;
  std::optional<std::uint64_t> seed;
  bool self_ties = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--params", file, "JSON file with block-model parameters");
    cmd->add_option("--n", n, "number of nodes (even)");
    cmd->add_option("--d", d, "set d_in and d_out together");
    cmd->add_option("--d-in", d_in, "ingroup tie density");
    cmd->add_option("--d-out", d_out, "outgroup tie density");
    cmd->add_option("--p-in-pos", p_in_pos, "P(+1) for an ingroup tie");
    cmd->add_option("--p-out-pos", p_out_pos, "P(+1) for an outgroup tie");
    cmd->add_option("--p-out-neg", p_out_neg, "outgroup animosity, 1 - p_out_pos");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_flag("--self-ties", self_ties, "draw diagonal entries too");
  }

  bool given() const {
    return !file.empty() || n || d || d_in || d_out || p_in_pos || p_out_pos || p_out_neg || seed;
  }

  BlockParams resolve() const {
    BlockParams p;
    if (!file.empty()) p = read_json(file).get<BlockParams>();
    if (n) p.n = *n;
    if (d) p.d_in = p.d_out = *d;
    if (d_in) p.d_in = *d_in;
    if (d_out) p.d_out = *d_out;
    if (p_in_pos) p.p_in_pos = *p_in_pos;
    if (p_out_pos && p_out_neg) throw ConfigError("give only one of --p-out-pos and --p-out-neg");
    if (p_out_pos) p.p_out_pos = *p_out_pos;
    if (p_out_neg) p.p_out_pos = 1.0 - *p_out_neg;
    if (seed) p.seed = *seed;
    if (self_ties) p.zero_diagonal = false;
    p.validate();
    return p;
  }

  static json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
      return json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
};

// Output path handling: "-" is stdout; relative paths go under SIGNET_OUTPUT_DIR if set.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    std::filesystem::path p(path);
    if (const char* dir = std::getenv("SIGNET_OUTPUT_DIR"); dir && *dir && p.is_relative()) {
      p = std::filesystem::path(dir) / p;
    }
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    file_ = std::make_unique<std::ofstream>(p);
    if (!*file_) throw ConfigError("cannot write " + p.string());
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

SignedAdjacency load_network(const std::string& input, const ParamFlags& pf) {
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw ConfigError("cannot open " + input);
    return read_edge_list(in, pf.n);
  }
  return generate(pf.resolve());
}

unsigned workers_from_env(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SIGNET_WORKERS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v < 1) throw ConfigError("SIGNET_WORKERS must be >= 1");
      return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
      throw ConfigError(std::string("SIGNET_WORKERS is not a number: ") + env);
    }
  }
  return default_workers();
}

std::vector<std::pair<int, int>> parse_entries(const std::vector<std::string>& items, int n) {
  std::vector<std::pair<int, int>> out;
  for (const std::string& item : items) {
    int i = -1, j = -1;
    char comma = 0;
    std::istringstream ls(item);
    if (!(ls >> i >> comma >> j) || comma != ',' || i < 0 || j < 0 || i >= n || j >= n) {
      throw ConfigError("bad --entry '" + item + "', expected i,j within the matrix");
    }
    out.emplace_back(i, j);
  }
  if (out.empty()) out.emplace_back(0, 1);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed-network block model: spectra, balance dynamics and parameter sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "signet 1.0.0");

  std::string output = "-";
  std::string input;

  auto* gen = app.add_subcommand("generate", "draw a network and write its edge list");
  ParamFlags gen_p;
  gen_p.attach(gen);
  gen->add_option("-o,--output", output, "edge list CSV (default stdout)");

  auto* spec = app.add_subcommand("spectrum", "eigenvalues of A with signal predictions");
  ParamFlags spec_p;
  spec_p.attach(spec);
  spec->add_option("--input", input, "edge list CSV instead of generating");
  spec->add_option("-o,--output", output, "JSON report (default stdout)");

  auto* pred = app.add_subcommand("predict", "derived parameters, signal eigenvalues, boundaries");
  ParamFlags pred_p;
  pred_p.attach(pred);
  pred->add_option("-o,--output", output, "JSON report (default stdout)");

  auto* evo = app.add_subcommand("evolve", "balance dynamics from Y0 = A/N to the final state");
  ParamFlags evo_p;
  evo_p.attach(evo);
  std::string trajectory, final_path;
  std::vector<std::string> entries;
  double t_frac = 0.0, dt = 0.0;
  long every = 1;
  evo->add_option("--input", input, "edge list CSV instead of generating");
  evo->add_option("-o,--output", output, "outcome CSV row (default stdout)");
  evo->add_option("--final", final_path, "write the final sign state as an edge list");
  evo->add_option("--trajectory", trajectory, "integrate with RK4 and dump t,i,j,y_ij");
  evo->add_option("--t-frac", t_frac, "integrate up to this fraction of t* (with --trajectory)")
      ->check(CLI::Range(0.0, 1.0));
  evo->add_option("--dt", dt, "RK4 step (default t* / 1e4)");
  evo->add_option("--entry", entries, "entry i,j to dump (repeatable, default 0,1)");
  evo->add_option("--every", every, "dump every k-th step")->check(CLI::PositiveNumber);

  auto* cls = app.add_subcommand("classify", "regime from parameters and from a sampled spectrum");
  ParamFlags cls_p;
  cls_p.attach(cls);
  cls->add_option("-o,--output", output, "JSON report (default stdout)");

  auto* orc = app.add_subcommand("oracle", "random-matrix checks on the noise matrix X = A - <A>");
  ParamFlags orc_p;
  orc_p.attach(orc);
  std::string report;
  int points = 46, bins = 50, trials = 200;
  double lo_frac = 1.1, hi_frac = 2.0, nu = 0.3;
  orc->add_option("report", report, "trace | density | variance | interlacing")
      ->required()
      ->check(CLI::IsMember({"trace", "density", "variance", "interlacing"}));
  orc->add_option("-o,--output", output, "CSV or JSON (default stdout)");
  orc->add_option("--points", points, "trace: number of lambda values")->check(CLI::Range(2, 100000));
  orc->add_option("--from", lo_frac, "trace: first lambda / gamma");
  orc->add_option("--to", hi_frac, "trace: last lambda / gamma");
  orc->add_option("--bins", bins, "density: histogram bins")->check(CLI::PositiveNumber);
  orc->add_option("--trials", trials, "variance: number of draws (>= 100)");
  orc->add_option("--nu", nu, "interlacing: rank-one strength");

  auto* swp = app.add_subcommand("sweep", "parameter grid with replicates");
  std::string config, boundaries;
  unsigned workers = 0;
  int samples = 101;
  swp->add_option("--config", config, "sweep JSON config")->required();
  swp->add_option("-o,--output", output, "grid CSV (default stdout, or config \"output\")");
  swp->add_option("--workers", workers, "worker threads (default SIGNET_WORKERS or all cores)");
  swp->add_option("--boundaries", boundaries, "also write theoretical curves CSV");
  swp->add_option("--samples", samples, "points per boundary curve")->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      Output out(output);
      write_edge_list(out.stream(), generate(gen_p.resolve()));
    } else if (*spec) {
      const SignedAdjacency a = load_network(input, spec_p);
      const Spectrum s = eigen_sym(a.to_dense());
      std::optional<SpectralPrediction> prediction;
      if (input.empty() || spec_p.given()) {
        const BlockParams p = spec_p.resolve();
        if (p.n != a.n()) throw ConfigError("--n does not match the edge list size");
        prediction = predict_signal(derive(p), p.n);
      }
      SpectralPrediction band = prediction.value_or(SpectralPrediction{});
      const RegimeLabel regime = classify_spectrum(s, band).regime;
      Output out(output);
      out.stream() << spectrum_report(s, prediction, regime).dump(2) << '\n';
    } else if (*pred) {
      const BlockParams p = pred_p.resolve();
      const DerivedParams dp = derive(p);
      json j;
      j["params"] = p;
      j["derived"] = dp;
      j["prediction"] = predict_signal(dp, p.n);
      j["regime"] = std::string(to_string(classify_params(dp, p.n)));
      json curves = json::object();
      for (TransitionKind k : {TransitionKind::Assortative, TransitionKind::Disassortative,
                               TransitionKind::Prosocial, TransitionKind::Antisocial}) {
        try {
          const BoundaryValue b = boundary_outgroup_animosity(p.d_in, p.d_out, p.p_in_pos, p.n, k);
          curves[std::string(to_string(k))] = {{"p_out_neg", b.raw}, {"out_of_range", b.out_of_range}};
        } catch (const ConfigError&) {
          curves[std::string(to_string(k))] = nullptr;
        } catch (const InfeasibleBoundary&) {
          curves[std::string(to_string(k))] = nullptr;
        }
      }
      j["boundaries"] = curves;
      Output out(output);
      out.stream() << j.dump(2) << '\n';
    } else if (*evo) {
      const SignedAdjacency a = load_network(input, evo_p);
      const Eigen::MatrixXd y0 = initial_connectivity(a);
      const Spectrum s = eigen_sym(y0);
      const SignedAdjacency final = final_state(s);
      if (!trajectory.empty()) {
        const double t_star = blowup_time(y0).t_star;
        const double frac = t_frac > 0.0 ? t_frac : 0.9;
        if (frac >= 1.0) throw ConfigError("--t-frac must be < 1");
        Output traj(trajectory);
        TrajectoryWriter writer(traj.stream(), parse_entries(entries, a.n()), every);
        integrate_numeric(y0, frac * t_star, dt > 0.0 ? dt : default_step(y0), writer);
      }
      if (!final_path.empty()) {
        Output f(final_path);
        write_edge_list(f.stream(), final);
      }
      Output out(output);
      out.stream() << kOutcomeHeader << '\n';
      write_outcome_row(out.stream(), measure_outcome(final, s.leading_vector));
    } else if (*cls) {
      const BlockParams p = cls_p.resolve();
      const DerivedParams dp = derive(p);
      const SpectralPrediction pr = predict_signal(dp, p.n);
      const SpectrumClassification c = classify_spectrum(eigen_sym(generate(p).to_dense()), pr);
      json j;
      j["regime_params"] = std::string(to_string(classify_params(dp, p.n)));
      j["regime_spectrum"] = std::string(to_string(c.regime));
      j["leading_pattern"] = std::string(to_string(c.leading.pattern));
      j["trailing_pattern"] = std::string(to_string(c.trailing.pattern));
      j["leading_outside_band"] = c.leading_outside_band;
      j["trailing_outside_band"] = c.trailing_outside_band;
      Output out(output);
      out.stream() << j.dump(2) << '\n';
    } else if (*orc) {
      const BlockParams p = orc_p.resolve();
      const double sigma = derive(p).sigma();
      Output out(output);
      if (report == "trace") {
        if (!(lo_frac > 1.0 && hi_frac > lo_frac)) throw ConfigError("need 1 < --from < --to");
        const double gamma = rmt::band_edge(sigma, p.n);
        std::vector<double> lambdas;
        for (int k = 0; k < points; ++k) lambdas.push_back(gamma * (lo_frac + (hi_frac - lo_frac) * k / (points - 1)));
        write_trace_csv(out.stream(), eigenvalues_sym(noise_matrix(p)), sigma, p.n, lambdas);
      } else if (report == "density") {
        write_density_csv(out.stream(), rmt::spectral_density(eigenvalues_sym(noise_matrix(p)), sigma, p.n, bins));
      } else if (report == "variance") {
        const rmt::FluctuationStats st = rmt::lambda1_variance_test(p, trials);
        out.stream() << json{{"mean", st.mean},
                             {"variance", st.variance},
                             {"expected_variance", st.expected_variance},
                             {"trials", st.trials}}
                            .dump(2)
                     << '\n';
      } else {
        const rmt::InterlacingReport r = rmt::interlacing_report(noise_matrix(p), nu);
        out.stream() << json{{"interlaced", r.interlaced}, {"violations", r.violations}}.dump(2) << '\n';
      }
    } else if (*swp) {
      const json j = ParamFlags::read_json(config);
      const SweepConfig cfg = sweep_config_from_json(j);
      unsigned w = workers;
      if (w == 0 && j.contains("workers")) w = j.at("workers").get<unsigned>();
      if (output == "-" && j.contains("output")) output = j.at("output").get<std::string>();
      const SweepResult res = run_sweep(cfg, workers_from_env(w));
      Output out(output);
      write_sweep_csv(out.stream(), cfg, res);
      if (!boundaries.empty()) {
        Output b(boundaries);
        write_boundaries_csv(b.stream(), emit_boundaries(cfg, samples));
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "signet: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "signet: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "signet: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "signet: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
