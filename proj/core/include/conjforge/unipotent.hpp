#pragma once

#include <map>
#include <variant>
#include <vector>

#include "conjforge/liealg.hpp"

namespace conjforge::unipotent {

// Exponential coordinates of u in the maximal unipotent subgroup: a finite
// map from positive-root indices to the coefficients of log(u). Absent key
// means zero entry.
struct UnipotentCoords {
  std::map<int, Rat> coords;

  bool is_zero_at(int k) const { return !coords.count(k); }
  const Rat& at(int k) const;
  void set(int k, const Rat& v);
  bool operator==(const UnipotentCoords& o) const { return coords == o.coords; }

  liealg::LieElement log_element(const liealg::ChevalleyBasis& cb) const;
  static UnipotentCoords from_log(const liealg::ChevalleyBasis& cb,
                                  const liealg::LieElement& x);
};

// One exponential factor of a conjugator word.
struct NilFactor {
  liealg::LieElement x;  // nilpotent-positive
  Rat length_sq;         // <x,x>, exact
};
struct CartanFactor {
  // Multiplicative action: the entry at root lambda scales by
  // prod_i ratios[i]^{c_i(lambda)}; exact. h_coords are the float logs,
  // norm_sq the float Killing square.
  std::vector<Rat> ratios;
  std::vector<double> h_coords;
  double norm_sq = 0.0;
};
using Factor = std::variant<NilFactor, CartanFactor>;

struct ConjugatorWord {
  std::vector<Factor> factors;  // group product left to right

  bool empty() const { return factors.empty(); }
  // Sum of factor lengths; the metric surrogate (triangle-inequality upper
  // bound on the conjugator length).
  double length_upper(const liealg::ChevalleyBasis& cb) const;
};

// Conjugation of u by exp(z e_mu): coordinates of exp(Z) u exp(-Z).
UnipotentCoords conj_root_exp(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u,
                              int mu, const Rat& z);

// Conjugation by a general nilpotent-positive exponential exp(X).
UnipotentCoords conj_nil(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u,
                         const liealg::LieElement& x);

// Conjugation by the commutator [exp(Z1), exp(Z2)] with Z1 = z1 e_{mu1},
// Z2 = z2 e_{mu2}, computed as the four-fold exponential composition.
UnipotentCoords conj_commutator(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u,
                                int mu1, const Rat& z1, int mu2, const Rat& z2);

// Conjugation by a Cartan factor (exact, multiplicative).
UnipotentCoords conj_cartan(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u,
                            const CartanFactor& a);

// Applies the word as a conjugation: conj_word(u, w1 . w2) =
// conj_word(conj_word(u, w2), w1).
UnipotentCoords conj_word(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u,
                          const ConjugatorWord& w);

// Delta(u)^2: min over simple roots of |coord|^2 * |e_lambda|^2; zero when a
// simple entry is absent.
Rat delta_sq(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u);
double delta(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u);

// d_G(1, u)^2 = sum over entries of coord^2 * |e_lambda|^2, exact.
Rat length_sq(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u);
double length(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u);

}  // namespace conjforge::unipotent
