#include "conjforge/unipotent.hpp"

#include <cmath>
#include <stdexcept>

namespace conjforge::unipotent {

using liealg::ChevalleyBasis;
using liealg::LieElement;

const Rat& UnipotentCoords::at(int k) const {
  static const Rat kZero(0);
  auto it = coords.find(k);
  return it == coords.end() ? kZero : it->second;
}

void UnipotentCoords::set(int k, const Rat& v) {
  if (v == 0)
    coords.erase(k);
  else
    coords[k] = v;
}

LieElement UnipotentCoords::log_element(const ChevalleyBasis& cb) const {
  LieElement x;
  for (const auto& [k, c] : coords) x.add_term(cb.idx_pos(k), c);
  return x;
}

UnipotentCoords UnipotentCoords::from_log(const ChevalleyBasis& cb, const LieElement& x) {
  UnipotentCoords u;
  for (const auto& [b, c] : x.terms) {
    if (!cb.is_pos(b)) throw std::invalid_argument("from_log: element not in n");
    u.coords[b] = c;
  }
  return u;
}

double ConjugatorWord::length_upper(const ChevalleyBasis&) const {
  double acc = 0.0;
  for (const auto& f : factors) {
    if (std::holds_alternative<NilFactor>(f)) {
      acc += std::sqrt(rat_double(std::get<NilFactor>(f).length_sq));
    } else {
      acc += std::sqrt(std::get<CartanFactor>(f).norm_sq);
    }
  }
  return acc;
}

UnipotentCoords conj_nil(const ChevalleyBasis& cb, const UnipotentCoords& u,
                         const LieElement& x) {
  return UnipotentCoords::from_log(cb, cb.ad_exp(x, u.log_element(cb)));
}

UnipotentCoords conj_root_exp(const ChevalleyBasis& cb, const UnipotentCoords& u, int mu,
                              const Rat& z) {
  return conj_nil(cb, u, cb.e_pos(mu, z));
}

UnipotentCoords conj_commutator(const ChevalleyBasis& cb, const UnipotentCoords& u, int mu1,
                                const Rat& z1, int mu2, const Rat& z2) {
  UnipotentCoords v = conj_nil(cb, u, cb.e_pos(mu1, z1));
  v = conj_nil(cb, v, cb.e_pos(mu2, z2));
  v = conj_nil(cb, v, cb.e_pos(mu1, -z1));
  v = conj_nil(cb, v, cb.e_pos(mu2, -z2));
  return v;
}

UnipotentCoords conj_cartan(const ChevalleyBasis& cb, const UnipotentCoords& u,
                            const CartanFactor& a) {
  const auto& rs = cb.roots();
  UnipotentCoords out;
  for (const auto& [k, c] : u.coords) {
    Rat scale(1);
    const auto& root = rs.root(k);
    for (int i = 0; i < rs.rank(); ++i)
      if (root[i]) scale *= rat_pow(a.ratios[i], root[i]);
    out.coords[k] = c * scale;
  }
  return out;
}

UnipotentCoords conj_word(const ChevalleyBasis& cb, const UnipotentCoords& u,
                          const ConjugatorWord& w) {
  UnipotentCoords cur = u;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    if (std::holds_alternative<NilFactor>(*it))
      cur = conj_nil(cb, cur, std::get<NilFactor>(*it).x);
    else
      cur = conj_cartan(cb, cur, std::get<CartanFactor>(*it));
  }
  return cur;
}

Rat delta_sq(const ChevalleyBasis& cb, const UnipotentCoords& u) {
  const auto& rs = cb.roots();
  Rat best;
  bool first = true;
  for (int i = 0; i < rs.rank(); ++i) {
    int k = rs.simple_index(i);
    const Rat& c = u.at(k);
    Rat v = c * c * cb.root_norm_sq(k);
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return first ? Rat(0) : best;
}

double delta(const ChevalleyBasis& cb, const UnipotentCoords& u) {
  return std::sqrt(rat_double(delta_sq(cb, u)));
}

Rat length_sq(const ChevalleyBasis& cb, const UnipotentCoords& u) {
  Rat acc(0);
  for (const auto& [k, c] : u.coords) acc += c * c * cb.root_norm_sq(k);
  return acc;
}

double length(const ChevalleyBasis& cb, const UnipotentCoords& u) {
  return std::sqrt(rat_double(length_sq(cb, u)));
}

}  // namespace conjforge::unipotent
