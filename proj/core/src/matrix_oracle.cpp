#include "conjforge/matrix_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace conjforge::oracle {

using unipotent::UnipotentCoords;

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m = zero(n);
  for (int i = 0; i < n; ++i) m.a[i][i] = Rat(1);
  return m;
}

RationalMatrix RationalMatrix::zero(int n) {
  RationalMatrix m;
  m.n = n;
  m.a.assign(n, std::vector<Rat>(n, Rat(0)));
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  RationalMatrix out = zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j)
        if (o.a[k][j] != 0) out.a[i][j] += a[i][k] * o.a[k][j];
    }
  return out;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix m = *this;
  RationalMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m.a[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) throw std::invalid_argument("singular matrix");
    std::swap(m.a[p], m.a[c]);
    std::swap(inv.a[p], inv.a[c]);
    Rat d = Rat(1) / m.a[c][c];
    for (int j = 0; j < n; ++j) {
      m.a[c][j] *= d;
      inv.a[c][j] *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.a[r][c] == 0) continue;
      Rat f = m.a[r][c];
      for (int j = 0; j < n; ++j) {
        m.a[r][j] -= f * m.a[c][j];
        inv.a[r][j] -= f * inv.a[c][j];
      }
    }
  }
  return inv;
}

bool RationalMatrix::unipotent_upper() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      if (i == j && a[i][j] != 1) return false;
      if (i != j && a[i][j] != 0) return false;
    }
  return true;
}

RationalMatrix nilpotent_exp(const RationalMatrix& x) {
  RationalMatrix acc = RationalMatrix::identity(x.n);
  RationalMatrix term = RationalMatrix::identity(x.n);
  Rat fact(1);
  for (int r = 1; r < x.n; ++r) {
    term = term * x;
    fact *= Rat(r);
    bool zero = true;
    for (int i = 0; i < x.n && zero; ++i)
      for (int j = 0; j < x.n; ++j)
        if (term.a[i][j] != 0) {
          zero = false;
          break;
        }
    if (zero) break;
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) acc.a[i][j] += term.a[i][j] / fact;
  }
  return acc;
}

RationalMatrix nilpotent_log(const RationalMatrix& m) {
  RationalMatrix nil = m;
  for (int i = 0; i < m.n; ++i) nil.a[i][i] -= 1;
  RationalMatrix acc = RationalMatrix::zero(m.n);
  RationalMatrix term = RationalMatrix::identity(m.n);
  for (int r = 1; r < m.n; ++r) {
    term = term * nil;
    Rat coef = Rat((r % 2) ? 1 : -1, r);
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j) acc.a[i][j] += coef * term.a[i][j];
  }
  return acc;
}

namespace {

// (i, j) matrix position of a type-A root: contiguous ones from i to j-2.
std::pair<int, int> root_span(const rootsys::Root& r) {
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(r.size()); ++i) {
    if (r[i]) {
      if (first < 0) first = i;
      last = i;
    }
  }
  return {first, last + 1};  // row i, column j+1 in 0-based terms
}

}  // namespace

RationalMatrix embed_typeA(const liealg::ChevalleyBasis& cb, const UnipotentCoords& u) {
  const auto& rs = cb.roots();
  if (rs.kind().family != rootsys::Family::A)
    throw std::invalid_argument("embed_typeA: kind is not A");
  int n = rs.rank() + 1;
  RationalMatrix x = RationalMatrix::zero(n);
  for (const auto& [k, c] : u.coords) {
    auto [i, j] = root_span(rs.root(k));
    x.a[i][j] = c;
  }
  return nilpotent_exp(x);
}

UnipotentCoords extract_typeA(const liealg::ChevalleyBasis& cb, const RationalMatrix& m) {
  const auto& rs = cb.roots();
  if (rs.kind().family != rootsys::Family::A)
    throw std::invalid_argument("extract_typeA: kind is not A");
  RationalMatrix x = nilpotent_log(m);
  UnipotentCoords u;
  for (int k = 0; k < rs.size(); ++k) {
    auto [i, j] = root_span(rs.root(k));
    if (x.a[i][j] != 0) u.coords[k] = x.a[i][j];
  }
  return u;
}

RationalMatrix oracle_conjugate(const RationalMatrix& m, const RationalMatrix& g) {
  return g * m * g.inverse();
}

OracleReduceResult oracle_reduce(const RationalMatrix& m) {
  OracleReduceResult out;
  out.conjugator = RationalMatrix::identity(m.n);
  out.reduced = m;
  for (int i = 0; i + 1 < m.n; ++i)
    if (m.a[i][i + 1] == 0) {
      out.simple_case = false;
      return out;
    }
  int n = m.n;
  for (int d = 2; d <= n - 1; ++d) {
    for (int i = 0; i + d < n; ++i) {
      int j = i + d;
      RationalMatrix logm = nilpotent_log(out.reduced);
      if (logm.a[i][j] == 0) continue;
      RationalMatrix c = RationalMatrix::identity(n);
      if (i == 0) {
        // elementary at (i, j-1): shifts alpha * x_{j-1} into the target
        c.a[i][j - 1] = -logm.a[i][j] / logm.a[j - 1][j];
      } else {
        // elementary at (i+1, j): damage stays in later rows of the same
        // diagonal and beyond
        c.a[i + 1][j] = logm.a[i][j] / logm.a[i][i + 1];
      }
      out.reduced = c * out.reduced * c.inverse();
      out.conjugator = c * out.conjugator;
    }
  }
  return out;
}

Sl4Diagonal sl4_diagonal(const std::array<Rat, 3>& x, const std::array<Rat, 3>& w) {
  for (int i = 0; i < 3; ++i)
    if (x[i] == 0 || w[i] == 0)
      throw std::invalid_argument("sl4_diagonal: entries must be nonzero");
  Sl4Diagonal out;
  for (int i = 0; i < 3; ++i) {
    if (w[i] / x[i] <= 0) {
      out.conjugate = false;
      return out;
    }
  }
  const Rat &x1 = x[0], &x2 = x[1], &x3 = x[2], &w1 = w[0], &w2 = w[1], &w3 = w[2];
  out.alpha_pow4[0] = (w1 * w1 * w1 * w2 * w2 * w3) / (x1 * x1 * x1 * x2 * x2 * x3);
  out.alpha_pow4[1] = (x1 * w2 * w2 * w3) / (w1 * x2 * x2 * x3);
  out.alpha_pow4[2] = (x1 * x2 * x2 * w3) / (w1 * w2 * w2 * x3);
  out.alpha_pow4[3] = (x1 * x2 * x2 * x3 * x3 * x3) / (w1 * w2 * w2 * w3 * w3 * w3);
  for (int i = 0; i < 4; ++i)
    out.alpha[i] = std::pow(rat_double(out.alpha_pow4[i]), 0.25);
  return out;
}

}  // namespace conjforge::oracle
