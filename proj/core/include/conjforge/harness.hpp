#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conjforge/reduce.hpp"

namespace conjforge::harness {

struct ExperimentConfig {
  rootsys::RootSystemKind kind{rootsys::Family::A, 3};
  int trials = 1;
  std::uint64_t seed = 0;
  // Numerators and denominators of generated coordinates are drawn from
  // [1, coeff_bound]; signs are random.
  long coeff_bound = 4;
  // Clamp: every simple coordinate satisfies coord^2 * |e|^2 >= delta_min^2.
  Rat delta_min = Rat(1, 2);
  int scramble_len = 4;
};

struct Instance {
  unipotent::UnipotentCoords u, v;
  unipotent::ConjugatorWord w_true;
};

// Deterministic in (cfg.seed, trial_index). v = conj_word(u, w_true).
Instance gen_instance(const liealg::ChevalleyBasis& cb, const ExperimentConfig& cfg,
                      int trial_index);

struct TrialRow {
  int trial = 0;
  std::string status;
  bool verified = false;
  double len_u = 0, len_v = 0, len_g = 0, bound = 0, ratio = 0;
};

struct ExperimentReport {
  ExperimentConfig cfg;
  std::vector<TrialRow> rows;
  double max_ratio = 0;
  int failures = 0;  // trials with verified == false
};

// Thrown when a generated-conjugate instance fails verification; carries the
// path of the reproducer dump.
struct ExperimentAbort : std::runtime_error {
  explicit ExperimentAbort(const std::string& what, std::string path)
      : std::runtime_error(what), reproducer_path(std::move(path)) {}
  std::string reproducer_path;
};

// Runs the trials (parallel across CONJFORGE_THREADS workers) and aggregates.
ExperimentReport run_experiment(const liealg::ChevalleyBasis& cb,
                                const rootsys::ReductionOrder& order,
                                const ExperimentConfig& cfg);

// Fixed column set: kind,rank,seed,trial,status,len_u,len_v,len_g,bound,ratio,verified
std::string report_csv(const ExperimentReport& report);

}  // namespace conjforge::harness
