#pragma once

#include <cstdint>
#include <functional>

#include <json.hpp>

#include "checks.hpp"
#include "family.hpp"
#include "rng.hpp"

namespace ncagm {

enum class EnsembleKind {
  wishart,          // x_i = G_i G_i^T, G_i a d x m matrix of N(0,1)/sqrt(m)
  logconcave_cube,  // x_i = y y^T, y uniform on [-sqrt(3), sqrt(3)]^d
  logconcave_ball,  // x_i = y y^T, y uniform on the ball of radius sqrt(d+2)
  identity,         // x_i = 1     (degenerate, for calibration and tests)
  zero,             // x_i = 0     (degenerate boundary case)
};

EnsembleKind ensemble_kind_from_name(const std::string& name);
const char* ensemble_kind_name(EnsembleKind k);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::wishart;
  int d = 3;             // matrix dimension
  int m = 64;            // Wishart inner dimension (ignored by other kinds)
  int n = 48;            // family size
  double p = 6.0;        // moment order
  int samples = 400;     // Monte Carlo replicates
  std::uint64_t seed = 1;
  bool split = false;    // halve the stream: first half estimates the mean

  void validate() const;
  nlohmann::json to_json() const;
  static EnsembleSpec from_json(const nlohmann::json& j);
};

/// The family for one replicate; deterministic in (spec.seed, replicate) and
/// independent of evaluation order. Every sample is PSD by construction.
OperatorFamily sample_family(const EnsembleSpec& spec, std::uint64_t replicate);

struct MomentEstimate {
  double value = 0;
  double se = 0;
  int n = 0;
  double p = 2;
  nlohmann::json to_json() const;
};

/// Plug-in estimator of (E ||X||^p)^{1/p} with a nonparametric bootstrap
/// standard error (200 resamples).
MomentEstimate mc_moment_norm(const std::function<Matrix(std::uint64_t)>& sampler, double p, int N,
                              std::uint64_t seed);

/// ((1/N) sum v^p)^{1/p} over a frozen value set.
double moment_from_values(const std::vector<double>& values, double p);

struct GammaEstimates {
  MomentEstimate eps;    // ||| (1/n) sum x_i - 1 |||_p  (the population mean is 1 by construction)
  MomentEstimate delta;  // (1/n) ||| (sum x_i^2)^{1/2} |||_p
  MomentEstimate gamma;  // max(eps, 4 delta)
  nlohmann::json to_json() const;
};

GammaEstimates estimate_gamma(const EnsembleSpec& spec);

/// Deviation experiment: estimates ||| P_d - E P_d |||_{p/d} and checks it
/// against 3 d gamma_p when the gate 3 d gamma_p <= 1 holds (hypotheses-unmet
/// otherwise); the families are i.i.d., so ||| P_d |||_{p/d} <= 1 + 3 d
/// gamma_p is checked as well. One-sided comparisons carry a 3-standard-error
/// bootstrap allowance. Returns the full report_v1 document.
nlohmann::json run_deviation_experiment(const EnsembleSpec& spec, int d_prod);

/// Centering bound: ||| (sum (x_i-1)^2)^{1/2} |||_p <= 6 ||| (sum x_i^2)^{1/2} |||_p.
/// A vanishing right side is flagged as a boundary case instead of pass/fail.
nlohmann::json run_centering_experiment(const EnsembleSpec& spec);

/// Moment table: the gamma triple, the entrywise sample-mean consistency
/// check against the identity, and (rank-one kinds) the E||y||^2 = d check.
nlohmann::json run_moment_experiment(const EnsembleSpec& spec);

}  // namespace ncagm
