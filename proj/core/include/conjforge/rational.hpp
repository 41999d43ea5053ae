#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace conjforge {

// Exact rational scalar used throughout. Every correctness decision is made
// on these; doubles appear only at report boundaries.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline double rat_double(const Rat& r) { return r.get_d(); }

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long n = e > 0 ? e : -e;
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

}  // namespace conjforge
