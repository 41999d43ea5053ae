#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conjforge/liealg.hpp"
#include "conjforge/unipotent.hpp"

namespace testutil {

using conjforge::Rat;

// Deterministic generator for property tests (splitmix64).
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  long uniform(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rat rational(long bound, bool allow_zero = false) {
    if (allow_zero && uniform(0, 3) == 0) return Rat(0);
    Rat r(uniform(1, bound), uniform(1, bound));
    r.canonicalize();
    if (next() & 1) r = -r;
    return r;
  }
};

inline conjforge::unipotent::UnipotentCoords random_unipotent(
    const conjforge::liealg::ChevalleyBasis& cb, Rng& rng, long bound = 4,
    bool simple_nonzero = true) {
  conjforge::unipotent::UnipotentCoords u;
  const auto& rs = cb.roots();
  for (int k = 0; k < rs.size(); ++k) {
    bool need = simple_nonzero && rs.is_simple(k);
    Rat c = rng.rational(bound, !need);
    if (need && c == 0) c = Rat(1);
    if (c != 0) u.coords[k] = c;
  }
  return u;
}

inline conjforge::liealg::LieElement random_nilpotent(
    const conjforge::liealg::ChevalleyBasis& cb, Rng& rng, long bound = 3) {
  conjforge::liealg::LieElement z;
  const auto& rs = cb.roots();
  for (int k = 0; k < rs.size(); ++k) {
    Rat c = rng.rational(bound, true);
    if (c != 0) z.add_term(cb.idx_pos(k), c);
  }
  return z;
}

}  // namespace testutil
