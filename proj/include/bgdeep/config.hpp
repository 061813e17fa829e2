#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bgdeep/diffusion.hpp"

namespace bgdeep {

/// Raised on invalid or unparsable configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  // window geometry and split (paper-faithful defaults)
  int d = 7;
  int m = 6;
  double train_percent = 30.0;
  std::uint64_t seed = 42;
  int trials = 100;

  // ingestion
  double nominal_step = 5.0;
  double gap_slack = 0.01;
  bool smoothing_enabled = false;
  double smoothing_cutoff = 0.8;

  // derivative estimation
  double legendre_kappa_max = 1e6;

  // diffusion geometry
  std::optional<double> diffusion_epsilon;  // absent: median heuristic
  LaplacianMode diffusion_mode = LaplacianMode::random_walk;
  double diffusion_kappa_max = 1e6;
  int diffusion_k_max = 50;

  // baseline
  double krr_sigma = 100.0;
  double krr_gamma = 1e-4;
  bool krr_scale_by_m = true;

  // evaluation
  double rate_denominator_factor = 2.0;
  bool eval_test_only = false;

  void validate() const;  // throws ConfigError
};

/// Load a JSON config file; unknown keys are rejected so typos surface early.
ExperimentConfig load_config(const std::string& path);

/// Config as JSON (echoed into reports).
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace bgdeep
