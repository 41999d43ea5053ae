#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conjforge/unipotent.hpp"

namespace conjforge::reduce {

// One elimination step: the targeted root, the order's witness, the applied
// factor with its exact squared length, and the Lemma-style bound
// |Y_target|^2 / (c0^2 delta^2). bound_holds records the exact comparison;
// it always holds for single-route steps.
struct StepRecord {
  int target;
  rootsys::Witness witness;
  unipotent::NilFactor factor;
  Rat factor_len_sq;
  Rat bound_sq;
  bool bound_holds = false;
};

struct DiagonalConjugator {
  std::vector<Rat> ratios;        // C_i per simple root, all positive
  std::vector<double> h_coords;   // lambda_i(H0) = ln C_i
  double norm_sq = 0.0;           // sum over all roots of lambda(H0)^2
};

enum class Status { Conjugate, NotConjugate, NotSimpleCase };

struct ConjugacyResult {
  Status status = Status::NotConjugate;
  std::string reason;  // "negative-ratio" or "support" when NotConjugate
  unipotent::ConjugatorWord word;  // g = g2^{-1} g3 g1
  std::vector<StepRecord> steps_u, steps_v;
  std::optional<DiagonalConjugator> diag;
  bool verified = false;
  double delta = 0.0;        // min(Delta(u), Delta(v))
  double k_delta = 0.0;      // K(delta)
  double length_upper = 0.0; // sum of factor lengths
  double linear_bound = 0.0; // K(delta)(|u|+|v|) + certified Cartan term
};

struct ReduceOutcome {
  unipotent::ConjugatorWord word;        // g1 with conj_word(u, g1) = reduced
  unipotent::UnipotentCoords reduced;    // simple-supported
  std::vector<StepRecord> steps;
};

struct StepOutcome {
  enum class Kind { Step, Done, NotSimpleCase } kind;
  std::optional<StepRecord> record;
  unipotent::UnipotentCoords next;
};

// Eliminates the order-least nonzero non-simple entry of u. Single witnesses
// use the one-scalar solve; pair-witnessed targets are eliminated by an exact
// one-factor solve over the root spaces one height below the target (the
// smallest-footprint element that kills the target while fixing every
// order-smaller entry).
StepOutcome reduce_step(const liealg::ChevalleyBasis& cb, const rootsys::ReductionOrder& order,
                        const unipotent::UnipotentCoords& u);

// Runs reduce_step to a simple-supported element. Throws std::logic_error if
// a step fails its exactness postcondition. NotSimpleCase is reported via
// the outcome of conjugate(); here it throws std::invalid_argument.
ReduceOutcome reduce_to_simple(const liealg::ChevalleyBasis& cb,
                               const rootsys::ReductionOrder& order,
                               const unipotent::UnipotentCoords& u);

// K(delta) = sum_{i=2}^{r} R_i/(c0 d) prod_{j=2}^{i-1} (2 R_j/(c0 d) + 1).
// Throws std::invalid_argument when delta <= 0.
double k_delta(const liealg::ChevalleyBasis& cb, double delta);

struct DiagonalOutcome {
  std::optional<DiagonalConjugator> diag;
  std::string reason;  // set when diag is empty
};

// Ratios v'/u' on the simple entries; fails with "negative-ratio" when some
// ratio is nonpositive, "support" when the simple supports differ.
// Both inputs must be supported on simple roots only.
DiagonalOutcome diagonal_conjugator(const liealg::ChevalleyBasis& cb,
                                    const unipotent::UnipotentCoords& u_reduced,
                                    const unipotent::UnipotentCoords& v_reduced);

ConjugacyResult conjugate(const liealg::ChevalleyBasis& cb, const rootsys::ReductionOrder& order,
                          const unipotent::UnipotentCoords& u,
                          const unipotent::UnipotentCoords& v);

}  // namespace conjforge::reduce
