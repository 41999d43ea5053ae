#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conjforge/rational.hpp"
#include "conjforge/rootsys.hpp"

namespace conjforge::liealg {

// Basis of the split algebra: e_{+lambda}, e_{-lambda} for each positive root
// lambda, and one Cartan generator per simple root. Indices:
//   [0, P)      e_{+k}   (k-th positive root)
//   [P, 2P)     e_{-k}
//   [2P, 2P+n)  h_i
struct LieElement {
  std::map<int, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(int b, const Rat& c);
  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rat& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(LieElement a, const Rat& c) { return a *= c; }
  bool operator==(const LieElement& o) const { return terms == o.terms; }
};

struct CConstants {
  bool has_pairs = false;  // false when no (simple, positive) pair sums to a root
  Rat c0_sq;
  Rat c1_sq;
};

class ChevalleyBasis {
 public:
  using Sparse = std::vector<std::pair<int, Rat>>;

  // Constructs the basis with integer structure constants, verifies the
  // Jacobi identity on all basis triples and |N| = p+1 on all root pairs;
  // throws std::logic_error if any check fails.
  static ChevalleyBasis build(const rootsys::RootSystem& rs);

  const rootsys::RootSystem& roots() const { return rs_; }
  int pos_count() const { return pos_; }
  int rank() const { return rs_.rank(); }
  int dim() const { return 2 * pos_ + rank(); }

  int idx_pos(int k) const { return k; }
  int idx_neg(int k) const { return pos_ + k; }
  int idx_cartan(int i) const { return 2 * pos_ + i; }
  bool is_pos(int b) const { return b < pos_; }
  bool is_neg(int b) const { return b >= pos_ && b < 2 * pos_; }
  bool is_cartan(int b) const { return b >= 2 * pos_; }

  const Sparse& bracket_basis(int a, int b) const { return table_[a][b]; }
  // N with [e_a, e_b] = N e_{a+b} for positive roots a, b; 0 when a+b is not
  // a root.
  const Rat& struct_const(int a, int b) const;

  LieElement bracket(const LieElement& x, const LieElement& y) const;
  // exp(ad Z) applied to y; Z must be supported on positive root vectors.
  LieElement ad_exp(const LieElement& z, const LieElement& y) const;

  Rat inner_product(const LieElement& x, const LieElement& y) const;
  Rat norm_sq(const LieElement& x) const;
  const Rat& root_norm_sq(int k) const { return norm_sq_pos_[k]; }
  const Rat& cartan_killing(int i, int j) const { return killing_cartan_[i][j]; }

  LieElement e_pos(int k, Rat c = Rat(1)) const;

  CConstants c_constants() const;
  // Certified constant with sum_{Pi} l(H)^2 <= B(H,H) <= S * sum_{Pi} l(H)^2.
  Rat s_lambda() const;
  static std::string s_lambda_method();

  // B(H,H) for H given in Cartan coordinates; exact.
  Rat killing_cartan_form(const std::vector<Rat>& h) const;

 private:
  rootsys::RootSystem rs_;
  int pos_ = 0;
  std::vector<std::vector<Sparse>> table_;
  std::vector<Rat> norm_sq_pos_;
  std::vector<std::vector<Rat>> killing_cartan_;

  void verify_all() const;
};

inline ChevalleyBasis chevalley_basis(const rootsys::RootSystem& rs) {
  return ChevalleyBasis::build(rs);
}
inline LieElement bracket(const ChevalleyBasis& cb, const LieElement& x, const LieElement& y) {
  return cb.bracket(x, y);
}
inline LieElement ad_exp(const ChevalleyBasis& cb, const LieElement& z, const LieElement& y) {
  return cb.ad_exp(z, y);
}
inline Rat inner_product(const ChevalleyBasis& cb, const LieElement& x, const LieElement& y) {
  return cb.inner_product(x, y);
}
inline Rat norm_sq(const ChevalleyBasis& cb, const LieElement& x) { return cb.norm_sq(x); }
inline CConstants c_constants(const ChevalleyBasis& cb) { return cb.c_constants(); }
inline Rat s_lambda(const ChevalleyBasis& cb) { return cb.s_lambda(); }

}  // namespace conjforge::liealg
