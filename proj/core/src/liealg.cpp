#include "conjforge/liealg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace conjforge::liealg {

using rootsys::Family;
using rootsys::Root;
using rootsys::RootSystem;
using rootsys::RootSystemKind;

void LieElement::add_term(int b, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  for (const auto& [b, c] : o.terms) add_term(b, c);
  return *this;
}
LieElement& LieElement::operator-=(const LieElement& o) {
  for (const auto& [b, c] : o.terms) add_term(b, -c);
  return *this;
}
LieElement& LieElement::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [b, v] : terms) v *= c;
  return *this;
}

namespace {

// ---------------------------------------------------------------------------
// Signed-root bookkeeping for the raw construction. A signed root is a root
// vector with integer coefficients of uniform sign; represented as (index,
// sign) over the positive list.

struct RawAlgebra {
  // Basis layout identical to ChevalleyBasis but in the "E" convention
  // (E_{-lambda} not yet re-signed).
  const RootSystem* rs;
  int pos;
  std::vector<std::vector<std::vector<std::pair<int, Rat>>>> table;

  int dim() const { return 2 * pos + rs->rank(); }
};

// Bimultiplicative sign cocycle for a simply-laced system, built from an
// orientation of the Dynkin diagram. b0[i][j] parity matrix.
struct Cocycle {
  std::vector<std::vector<int>> b0;  // values mod 2

  int sign(const Root& a, bool aneg, const Root& b, bool bneg) const {
    // epsilon(±a, ±b) = epsilon(a,b): parity is bilinear, signs cancel mod 2
    // only when both flips... parity of (s_a a, s_b b) = s_a s_b * B0(a,b):
    // mod 2 the sign of the product is irrelevant.
    (void)aneg;
    (void)bneg;
    long p = 0;
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (!b[j]) continue;
        p += static_cast<long>(a[i]) * b[j] * b0[i][j];
      }
    }
    return (p % 2 + 2) % 2 ? -1 : 1;
  }
};

// Oriented Dynkin edges per simply-laced kind; `fold_parent` variants carry
// the automorphism-invariant orientations needed for folding.
std::vector<std::pair<int, int>> ade_orientation(const RootSystemKind& kind,
                                                 const std::string& variant) {
  int n = kind.rank;
  std::vector<std::pair<int, int>> o;
  switch (kind.family) {
    case Family::A:
      if (variant == "fold") {
        int mid = (n - 1) / 2;  // 0-based middle node, n odd
        for (int i = 0; i + 1 < n; ++i) {
          if (i + 1 <= mid)
            o.push_back({i, i + 1});
          else
            o.push_back({i + 1, i});
        }
      } else {
        // Downward orientation makes the left-adjacent segment bracket +1,
        // matching the elementary-matrix identification used by the oracle.
        for (int i = 0; i + 1 < n; ++i) o.push_back({i + 1, i});
      }
      break;
    case Family::D:
      if (variant == "triality") {
        // D4 only: all outer nodes point at the centre (node 1).
        o = {{0, 1}, {2, 1}, {3, 1}};
      } else {
        for (int i = 0; i + 1 <= n - 3; ++i) o.push_back({i, i + 1});
        o.push_back({n - 3, n - 2});
        o.push_back({n - 3, n - 1});
      }
      break;
    case Family::E:
      if (variant == "fold") {
        // E6 with the flip 0<->5, 2<->4: orient toward node 3.
        o = {{0, 2}, {2, 3}, {1, 3}, {5, 4}, {4, 3}};
      } else {
        o.push_back({0, 2});
        o.push_back({1, 3});
        for (int i = 2; i + 1 < n; ++i) o.push_back({i, i + 1});
      }
      break;
    default:
      throw std::logic_error("orientation requested for non-ADE kind");
  }
  return o;
}

Cocycle make_cocycle(const RootSystemKind& kind, const std::string& variant) {
  int n = kind.rank;
  Cocycle c;
  c.b0.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c.b0[i][i] = 1;
  for (auto [i, j] : ade_orientation(kind, variant)) c.b0[i][j] = 1;
  return c;
}

// Coroot of a positive root in simple-coroot coordinates:
// d_i = c_i * (a_i, a_i) / (lam, lam); exact integers for any root system.
std::vector<Rat> coroot_coords(const RootSystem& rs, int k) {
  const Root& lam = rs.root(k);
  int n = rs.rank();
  Rat lam_sq(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (lam[i] && lam[j]) lam_sq += Rat(lam[i]) * Rat(lam[j]) * rs.gram()[i][j];
  std::vector<Rat> d(n);
  for (int i = 0; i < n; ++i) d[i] = Rat(lam[i]) * rs.gram()[i][i] / lam_sq;
  return d;
}

// Raw simply-laced algebra in the E convention:
//   [E_u, E_v] = eps(u,v) E_{u+v}        (u+v a root)
//   [E_u, E_{-u}] = -h_{u^vee}
//   [h_i, E_v] = <v, a_i^vee> E_v
RawAlgebra build_ade_raw(const RootSystem& rs, const std::string& variant) {
  RawAlgebra raw;
  raw.rs = &rs;
  raw.pos = rs.size();
  int P = raw.pos, n = rs.rank(), D = raw.dim();
  Cocycle eps = make_cocycle(rs.kind(), variant);
  raw.table.assign(D, std::vector<std::vector<std::pair<int, Rat>>>(D));

  auto set_entry = [&](int a, int b, std::vector<std::pair<int, Rat>> val) {
    raw.table[a][b] = val;
    for (auto& [i, c] : val) c = -c;
    raw.table[b][a] = std::move(val);
  };
  // Signed root for index in [0, 2P).
  auto root_of = [&](int ia) { return rs.root(ia < P ? ia : ia - P); };
  auto sign_of = [&](int ia) { return ia < P ? 1 : -1; };

  // Root-root brackets, each unordered pair once.
  for (int ia = 0; ia < 2 * P; ++ia) {
    const Root& ra = root_of(ia);
    int sa = sign_of(ia);
    for (int ib = ia + 1; ib < 2 * P; ++ib) {
      const Root& rb = root_of(ib);
      int sb = sign_of(ib);
      if (ra == rb && sa != sb) {
        // [E_u, E_{-u}] = -h_{u^vee}
        auto d = coroot_coords(rs, ia < P ? ia : ia - P);
        std::vector<std::pair<int, Rat>> h;
        for (int i = 0; i < n; ++i)
          if (d[i] != 0) h.push_back({2 * P + i, (sa > 0 ? -1 : 1) * d[i]});
        set_entry(ia, ib, std::move(h));
        continue;
      }
      Root sum(n, 0);
      bool allnonneg = true, allnonpos = true;
      for (int i = 0; i < n; ++i) {
        sum[i] = sa * ra[i] + sb * rb[i];
        if (sum[i] > 0) allnonpos = false;
        if (sum[i] < 0) allnonneg = false;
      }
      std::optional<int> target;
      int tsign = 0;
      if (allnonneg) {
        if (auto k = rs.index_of(sum)) {
          target = k;
          tsign = +1;
        }
      } else if (allnonpos) {
        Root neg = sum;
        for (int& x : neg) x = -x;
        if (auto k = rs.index_of(neg)) {
          target = k;
          tsign = -1;
        }
      }
      if (!target) continue;
      int s = eps.sign(ra, sa < 0, rb, sb < 0);
      int tidx = tsign > 0 ? *target : P + *target;
      set_entry(ia, ib, {{tidx, Rat(s)}});
    }
  }
  // Cartan-root brackets.
  for (int i = 0; i < n; ++i) {
    int ih = 2 * P + i;
    for (int b = 0; b < P; ++b) {
      int pr = rs.pairing_with_simple_coroot(rs.root(b), i);
      if (pr != 0) {
        set_entry(ih, b, {{b, Rat(pr)}});
        set_entry(ih, P + b, {{P + b, Rat(-pr)}});
      }
    }
  }
  return raw;
}

struct FoldSpec {
  RootSystemKind parent;
  std::string variant;
  // orbit of parent simple indices per child simple index
  std::vector<std::vector<int>> orbits;
};

FoldSpec fold_spec(const RootSystemKind& kind) {
  int n = kind.rank;
  FoldSpec f;
  switch (kind.family) {
    case Family::B: {
      // B_n from D_{n+1}: tips {n-1, n} (0-based) fold onto the short root.
      f.parent = {Family::D, n + 1};
      f.variant = "default";
      for (int i = 0; i + 1 < n; ++i) f.orbits.push_back({i});
      f.orbits.push_back({n - 1, n});
      break;
    }
    case Family::C: {
      // C_n from A_{2n-1}: orbit {i, 2n-2-i}; middle node stays long.
      f.parent = {Family::A, 2 * n - 1};
      f.variant = "fold";
      for (int i = 0; i + 1 < n; ++i) f.orbits.push_back({i, 2 * n - 2 - i});
      f.orbits.push_back({n - 1});
      break;
    }
    case Family::F: {
      // F4 from E6 (0-based Bourbaki): child = [ {1}, {3}, {2,4}, {0,5} ].
      f.parent = {Family::E, 6};
      f.variant = "fold";
      f.orbits = {{1}, {3}, {2, 4}, {0, 5}};
      break;
    }
    case Family::G: {
      // G2 from D4 triality: short simple = outer orbit, long = centre.
      f.parent = {Family::D, 4};
      f.variant = "triality";
      f.orbits = {{0, 2, 3}, {1}};
      break;
    }
    default:
      throw std::logic_error("fold_spec: not a folded kind");
  }
  return f;
}

// Folds the raw parent algebra onto the child root system. Child basis
// vectors are orbit sums of parent root vectors / Cartan generators.
RawAlgebra fold_raw(const RawAlgebra& parent, const RootSystem& prs, const FoldSpec& spec,
                    const RootSystem& crs, std::vector<std::vector<int>>& pos_orbits) {
  int cn = crs.rank();
  int pn = prs.rank();
  int pP = prs.size(), cP = crs.size();

  // parent simple index -> child simple index
  std::vector<int> child_of_simple(pn, -1);
  for (int ci = 0; ci < cn; ++ci)
    for (int pj : spec.orbits[ci]) child_of_simple[pj] = ci;

  auto fold_root = [&](const Root& pr) {
    Root out(cn, 0);
    for (int j = 0; j < pn; ++j) out[child_of_simple[j]] += pr[j];
    return out;
  };

  // Group parent positive roots into orbits keyed by the folded vector.
  std::map<Root, std::vector<int>> groups;
  for (int k = 0; k < pP; ++k) groups[fold_root(prs.root(k))].push_back(k);
  if (static_cast<int>(groups.size()) != cP)
    throw std::logic_error("folding: orbit count does not match child root count");
  pos_orbits.assign(cP, {});
  for (int k = 0; k < cP; ++k) {
    auto it = groups.find(crs.root(k));
    if (it == groups.end())
      throw std::logic_error("folding: child root missing from folded orbits");
    pos_orbits[k] = it->second;
  }

  // Child basis vectors in parent coordinates.
  int cD = 2 * cP + cn;
  std::vector<LieElement> basis(cD);
  for (int k = 0; k < cP; ++k)
    for (int p : pos_orbits[k]) {
      basis[k].add_term(p, Rat(1));
      basis[cP + k].add_term(pP + p, Rat(1));
    }
  for (int i = 0; i < cn; ++i)
    for (int pj : spec.orbits[i]) basis[2 * cP + i].add_term(2 * pP + pj, Rat(1));

  auto parent_bracket = [&](const LieElement& x, const LieElement& y) {
    LieElement out;
    for (const auto& [a, ca] : x.terms)
      for (const auto& [b, cb] : y.terms)
        for (const auto& [t, ct] : parent.table[a][b]) out.add_term(t, ca * cb * ct);
    return out;
  };

  // Express a sigma-invariant parent element in the child basis; coefficients
  // must be uniform across each orbit.
  auto to_child = [&](const LieElement& x) {
    std::vector<std::pair<int, Rat>> out;
    LieElement rest = x;
    auto take = [&](int cidx) {
      const LieElement& bv = basis[cidx];
      int first = bv.terms.begin()->first;
      auto it = rest.terms.find(first);
      if (it == rest.terms.end()) return;
      Rat c = it->second;
      for (const auto& [pb, pc] : bv.terms) {
        auto jt = rest.terms.find(pb);
        if (jt == rest.terms.end() || jt->second != c * pc)
          throw std::logic_error("folding: non-uniform orbit coefficient");
        rest.terms.erase(jt);
      }
      out.push_back({cidx, c});
    };
    for (int k = 0; k < cP && !rest.is_zero(); ++k) take(k);
    for (int k = 0; k < cP && !rest.is_zero(); ++k) take(cP + k);
    for (int i = 0; i < cn && !rest.is_zero(); ++i) take(2 * cP + i);
    if (!rest.is_zero()) throw std::logic_error("folding: residue outside child algebra");
    return out;
  };

  RawAlgebra child;
  child.rs = &crs;
  child.pos = cP;
  child.table.assign(cD, std::vector<std::vector<std::pair<int, Rat>>>(cD));
  for (int a = 0; a < cD; ++a)
    for (int b = 0; b < cD; ++b) {
      if (a == b) continue;
      child.table[a][b] = to_child(parent_bracket(basis[a], basis[b]));
    }
  return child;
}

}  // namespace

const Rat& ChevalleyBasis::struct_const(int a, int b) const {
  static const Rat kZero(0);
  const auto& v = table_[a][b];
  if (v.size() == 1 && is_pos(v[0].first)) return v[0].second;
  return kZero;
}

LieElement ChevalleyBasis::bracket(const LieElement& x, const LieElement& y) const {
  LieElement out;
  for (const auto& [a, ca] : x.terms)
    for (const auto& [b, cb] : y.terms)
      for (const auto& [t, ct] : table_[a][b]) out.add_term(t, ca * cb * ct);
  return out;
}

LieElement ChevalleyBasis::ad_exp(const LieElement& z, const LieElement& y) const {
  for (const auto& [b, c] : z.terms)
    if (!is_pos(b)) throw std::invalid_argument("ad_exp: Z must be nilpotent-positive");
  LieElement acc = y;
  LieElement term = y;
  // ad Z raises height; the series dies within max_height steps.
  for (long r = 1; !term.is_zero(); ++r) {
    term = bracket(z, term);
    term *= Rat(1, r);
    acc += term;
    if (r > 2 * rs_.max_height() + 2)
      throw std::logic_error("ad_exp series failed to terminate");
  }
  return acc;
}

Rat ChevalleyBasis::inner_product(const LieElement& x, const LieElement& y) const {
  // Root spaces are orthogonal; opposite-sign spaces pair to zero under the
  // theta-twisted form; the Cartan block is the Killing form itself.
  Rat acc(0);
  for (const auto& [a, ca] : x.terms) {
    if (is_cartan(a)) continue;
    auto it = y.terms.find(a);
    if (it == y.terms.end()) continue;
    int k = is_pos(a) ? a : a - pos_;
    acc += ca * it->second * norm_sq_pos_[k];
  }
  for (const auto& [a, ca] : x.terms) {
    if (!is_cartan(a)) continue;
    for (const auto& [b, cb] : y.terms) {
      if (!is_cartan(b)) continue;
      acc += ca * cb * killing_cartan_[a - 2 * pos_][b - 2 * pos_];
    }
  }
  return acc;
}

Rat ChevalleyBasis::norm_sq(const LieElement& x) const { return inner_product(x, x); }

LieElement ChevalleyBasis::e_pos(int k, Rat c) const {
  LieElement e;
  e.add_term(idx_pos(k), c);
  return e;
}

CConstants ChevalleyBasis::c_constants() const {
  CConstants out;
  for (int s = 0; s < rank(); ++s) {
    int lam = rs_.simple_index(s);
    for (int mu = 0; mu < pos_; ++mu) {
      auto sum = rs_.sum(lam, mu);
      if (!sum) continue;
      const Rat& n = struct_const(idx_pos(lam), idx_pos(mu));
      Rat c_sq = n * n * norm_sq_pos_[*sum] / (norm_sq_pos_[lam] * norm_sq_pos_[mu]);
      if (!out.has_pairs) {
        out.has_pairs = true;
        out.c0_sq = c_sq;
        out.c1_sq = c_sq;
      } else {
        out.c0_sq = std::min(out.c0_sq, c_sq);
        out.c1_sq = std::max(out.c1_sq, c_sq);
      }
    }
  }
  return out;
}

Rat ChevalleyBasis::s_lambda() const {
  // Cauchy-Schwarz on the simple-root expansion of each positive root:
  // lam(H)^2 <= (sum_i c_i^2)(sum_i lam_i(H)^2), so
  // B(H,H) = 2 sum_{pos} lam(H)^2 <= [2 sum_{pos} sum_i c_i(lam)^2] sum_Pi.
  Rat s(0);
  for (int k = 0; k < pos_; ++k) {
    Rat csq(0);
    for (int c : rs_.root(k)) csq += Rat(c) * Rat(c);
    s += 2 * csq;
  }
  return s;
}

std::string ChevalleyBasis::s_lambda_method() {
  return "cauchy-schwarz: S = 2*sum_{lam in pos} sum_i c_i(lam)^2, "
         "B(H,H) = sum_{lam in Lambda} lam(H)^2";
}

Rat ChevalleyBasis::killing_cartan_form(const std::vector<Rat>& h) const {
  Rat acc(0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (h[i] != 0 && h[j] != 0) acc += h[i] * h[j] * killing_cartan_[i][j];
  return acc;
}

namespace {

// Chain length p: largest k with mu - k*lam a root (positive or negative).
int chain_down(const RootSystem& rs, int lam, int mu) {
  int n = rs.rank();
  int p = 0;
  Root v = rs.root(mu);
  while (true) {
    bool nonneg = true, nonpos = true;
    for (int i = 0; i < n; ++i) {
      v[i] -= rs.root(lam)[i];
      if (v[i] > 0) nonpos = false;
      if (v[i] < 0) nonneg = false;
    }
    bool isroot = false;
    if (nonneg)
      isroot = rs.is_positive_root(v);
    else if (nonpos) {
      Root neg = v;
      for (int& x : neg) x = -x;
      isroot = rs.is_positive_root(neg);
    }
    if (!isroot) break;
    ++p;
  }
  return p;
}

}  // namespace

void ChevalleyBasis::verify_all() const {
  int D = dim();
  // Antisymmetry.
  for (int a = 0; a < D; ++a)
    for (int b = a; b < D; ++b) {
      LieElement x, y;
      for (const auto& [t, c] : table_[a][b]) x.add_term(t, c);
      for (const auto& [t, c] : table_[b][a]) y.add_term(t, c);
      y *= Rat(-1);
      if (!(x == y)) throw std::logic_error("chevalley: antisymmetry failed");
    }
  // Jacobi on all basis triples.
  auto single = [&](int b) {
    LieElement e;
    e.add_term(b, Rat(1));
    return e;
  };
  for (int a = 0; a < D; ++a) {
    LieElement ea = single(a);
    for (int b = a + 1; b < D; ++b) {
      LieElement eb = single(b);
      LieElement ab;
      for (const auto& [t, c] : table_[a][b]) ab.add_term(t, c);
      for (int c = b + 1; c < D; ++c) {
        LieElement ec = single(c);
        LieElement bc;
        for (const auto& [t, cc] : table_[b][c]) bc.add_term(t, cc);
        LieElement ac;
        for (const auto& [t, cc] : table_[a][c]) ac.add_term(t, cc);
        LieElement j = bracket(ab, ec);
        j += bracket(bc, ea);
        j -= bracket(ac, eb);
        if (!j.is_zero()) throw std::logic_error("chevalley: Jacobi identity failed");
      }
    }
  }
  // |N| = p+1 on positive pairs, and grading sanity.
  for (int a = 0; a < pos_; ++a)
    for (int b = 0; b < pos_; ++b) {
      if (a == b) continue;
      auto sum = rs_.sum(a, b);
      const auto& v = table_[a][b];
      if (sum) {
        if (v.size() != 1 || v[0].first != *sum)
          throw std::logic_error("chevalley: bracket misses the root grading");
        Rat n = v[0].second;
        if (n < 0) n = -n;
        if (n != Rat(chain_down(rs_, a, b) + 1))
          throw std::logic_error("chevalley: |N| != p+1");
      } else if (!v.empty()) {
        throw std::logic_error("chevalley: nonzero bracket at a non-root sum");
      }
    }
  // Positive-definiteness of the root-space norms.
  for (int k = 0; k < pos_; ++k)
    if (!(norm_sq_pos_[k] > 0)) throw std::logic_error("chevalley: nonpositive norm");
}

ChevalleyBasis ChevalleyBasis::build(const RootSystem& rs) {
  ChevalleyBasis cb;
  cb.rs_ = rs;
  cb.pos_ = rs.size();
  const auto kind = rs.kind();

  RawAlgebra raw;
  RootSystem parent_rs;
  std::vector<std::vector<int>> pos_orbits;
  bool simply_laced = kind.family == Family::A || kind.family == Family::D ||
                      kind.family == Family::E;
  if (simply_laced) {
    raw = build_ade_raw(cb.rs_, "default");
    raw.rs = &cb.rs_;
  } else if (kind.family == Family::B || kind.family == Family::C ||
             kind.family == Family::F || kind.family == Family::G) {
    FoldSpec spec = fold_spec(kind);
    parent_rs = RootSystem::build_unchecked(spec.parent);
    RawAlgebra praw = build_ade_raw(parent_rs, spec.variant);
    raw = fold_raw(praw, parent_rs, spec, cb.rs_, pos_orbits);
  } else {
    throw std::logic_error("unsupported kind");
  }

  // Convert from the E convention: e_{-k} = -E_{-k}.
  int P = cb.pos_, n = rs.rank(), D = cb.dim();
  auto sgn = [&](int b) { return (b >= P && b < 2 * P) ? -1 : 1; };
  cb.table_.assign(D, std::vector<Sparse>(D));
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      Sparse v;
      for (const auto& [t, c] : raw.table[a][b]) {
        Rat cc = c * Rat(sgn(a) * sgn(b) * sgn(t));
        v.push_back({t, cc});
      }
      std::sort(v.begin(), v.end());
      cb.table_[a][b] = std::move(v);
    }

  // Killing data from ad traces.
  auto killing = [&](int a, int b) {
    // Tr(ad e_a ad e_b) = sum_x coeff_x([e_a, [e_b, e_x]])
    Rat tr(0);
    for (int x = 0; x < D; ++x) {
      for (const auto& [y, cy] : cb.table_[b][x])
        for (const auto& [z, cz] : cb.table_[a][y])
          if (z == x) tr += cy * cz;
    }
    return tr;
  };
  cb.norm_sq_pos_.resize(P);
  for (int k = 0; k < P; ++k) cb.norm_sq_pos_[k] = killing(cb.idx_neg(k), cb.idx_pos(k));
  cb.killing_cartan_.assign(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rat v = killing(cb.idx_cartan(i), cb.idx_cartan(j));
      cb.killing_cartan_[i][j] = v;
      cb.killing_cartan_[j][i] = v;
    }

  cb.verify_all();
  return cb;
}

}  // namespace conjforge::liealg
