#pragma once

#include <array>
#include <optional>
#include <vector>

#include "conjforge/unipotent.hpp"

namespace conjforge::oracle {

// Exact rational square matrix. For unipotent use: unit diagonal, zero below.
struct RationalMatrix {
  int n = 0;
  std::vector<std::vector<Rat>> a;

  static RationalMatrix identity(int n);
  static RationalMatrix zero(int n);
  RationalMatrix operator*(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const = default;
  RationalMatrix inverse() const;  // exact; throws std::invalid_argument if singular

  bool unipotent_upper() const;
};

// exp of a strictly upper-triangular matrix; the series stops at power n.
RationalMatrix nilpotent_exp(const RationalMatrix& x);
// log of a unipotent upper-triangular matrix.
RationalMatrix nilpotent_log(const RationalMatrix& m);

// Standard identification for type A_{n-1}: root lambda_i+...+lambda_j maps
// to the matrix position (i, j+1). Throws for non-A kinds.
RationalMatrix embed_typeA(const liealg::ChevalleyBasis& cb,
                           const unipotent::UnipotentCoords& u);
unipotent::UnipotentCoords extract_typeA(const liealg::ChevalleyBasis& cb,
                                         const RationalMatrix& m);

RationalMatrix oracle_conjugate(const RationalMatrix& m, const RationalMatrix& g);

struct OracleReduceResult {
  bool simple_case = true;  // false when a super-diagonal entry vanishes
  RationalMatrix conjugator;
  RationalMatrix reduced;
};

// Elementary-matrix reduction: removes every above-super-diagonal entry of
// log(m) by elementary conjugations, diagonal distance first, then row.
OracleReduceResult oracle_reduce(const RationalMatrix& m);

struct Sl4Diagonal {
  bool conjugate = true;  // false when a ratio w_i/x_i is nonpositive
  std::array<Rat, 4> alpha_pow4;
  std::array<double, 4> alpha;
};

// The 4x4 diagonal conjugation: alpha_1^4 = w1^3 w2^2 w3 / (x1^3 x2^2 x3)
// and its companions; alpha entries are the positive real fourth roots.
Sl4Diagonal sl4_diagonal(const std::array<Rat, 3>& x, const std::array<Rat, 3>& w);

}  // namespace conjforge::oracle
