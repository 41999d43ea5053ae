#include "conjforge/json_io.hpp"

#include <stdexcept>

namespace conjforge::io {

using rootsys::ReductionOrder;
using rootsys::Root;
using rootsys::RootSystem;
using rootsys::RootSystemKind;
using rootsys::Witness;
using rootsys::WitnessPair;
using rootsys::WitnessSingle;
using unipotent::CartanFactor;
using unipotent::ConjugatorWord;
using unipotent::NilFactor;
using unipotent::UnipotentCoords;

namespace {

json root_to_json(const Root& r) { return json(r); }

Root root_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("root must be an integer array");
  return j.get<Root>();
}

int root_index(const RootSystem& rs, const json& j) {
  Root r = root_from_json(j);
  auto k = rs.index_of(r);
  if (!k) throw std::invalid_argument("not a positive root: " + rootsys::root_str(r));
  return *k;
}

// Parses a "[c1,...,cn]" coordinate key back into a root.
Root root_from_key(const std::string& key, int rank) {
  Root r;
  std::string body = key;
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw std::invalid_argument("bad root key: " + key);
  body = body.substr(1, body.size() - 2);
  size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
    r.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(r.size()) != rank)
    throw std::invalid_argument("root key has wrong rank: " + key);
  return r;
}

json witness_to_json(const RootSystem& rs, const Witness& w) {
  if (std::holds_alternative<WitnessSingle>(w)) {
    const auto& s = std::get<WitnessSingle>(w);
    return json{{"single", {{"mu", root_to_json(rs.root(s.mu))},
                            {"simple", root_to_json(rs.root(s.simple))}}}};
  }
  const auto& p = std::get<WitnessPair>(w);
  return json{{"pair", {{"mu1", root_to_json(rs.root(p.mu1))},
                        {"mu2", root_to_json(rs.root(p.mu2))},
                        {"simple", root_to_json(rs.root(p.simple))}}}};
}

Witness witness_from_json(const RootSystem& rs, const json& j) {
  if (j.contains("single")) {
    const auto& s = j.at("single");
    return WitnessSingle{root_index(rs, s.at("mu")), root_index(rs, s.at("simple"))};
  }
  if (j.contains("pair")) {
    const auto& p = j.at("pair");
    return WitnessPair{root_index(rs, p.at("mu1")), root_index(rs, p.at("mu2")),
                       root_index(rs, p.at("simple"))};
  }
  throw std::invalid_argument("witness must be tagged single or pair");
}

}  // namespace

json kind_to_json(const RootSystemKind& k) {
  return json{{"family", std::string(1, static_cast<char>(k.family))}, {"rank", k.rank}};
}

RootSystemKind kind_from_json(const json& j) {
  if (j.is_string()) return RootSystemKind::parse(j.get<std::string>());
  std::string fam = j.at("family").get<std::string>();
  int rank = j.at("rank").get<int>();
  if (fam.size() != 1) throw std::invalid_argument("bad family: " + fam);
  RootSystemKind k{static_cast<rootsys::Family>(fam[0]), rank};
  rootsys::validate_kind(k);
  return k;
}

json root_system_to_json(const RootSystem& rs) {
  json roots = json::array();
  for (const auto& r : rs.positives()) roots.push_back(root_to_json(r));
  return json{{"version", 1}, {"kind", kind_to_json(rs.kind())}, {"positives", roots}};
}

json order_to_json(const RootSystem& rs, const ReductionOrder& o) {
  json seq = json::array();
  for (int k : o.sequence) seq.push_back(root_to_json(rs.root(k)));
  json wit = json::array();
  for (const auto& [target, w] : o.witnesses) {
    json entry = witness_to_json(rs, w);
    entry["target"] = root_to_json(rs.root(target));
    wit.push_back(entry);
  }
  return json{{"version", 1},
              {"kind", kind_to_json(rs.kind())},
              {"sequence", seq},
              {"witnesses", wit}};
}

ReductionOrder order_from_json(const RootSystem& rs, const json& j) {
  ReductionOrder o;
  const auto& seq = j.at("sequence");
  for (const auto& r : seq) o.sequence.push_back(root_index(rs, r));
  if (static_cast<int>(o.sequence.size()) != rs.size())
    throw std::invalid_argument("order sequence must cover the positive roots");
  o.position.assign(rs.size(), -1);
  for (int p = 0; p < static_cast<int>(o.sequence.size()); ++p)
    o.position[o.sequence[p]] = p;
  for (const auto& w : j.at("witnesses"))
    o.witnesses[root_index(rs, w.at("target"))] = witness_from_json(rs, w);
  return o;
}

json coords_to_json(const RootSystem& rs, const UnipotentCoords& u) {
  json coords = json::object();
  for (const auto& [k, c] : u.coords) coords[rootsys::root_str(rs.root(k))] = rat_str(c);
  return json{{"kind", kind_to_json(rs.kind())}, {"coords", coords}};
}

UnipotentCoords coords_from_json(const RootSystem& rs, const json& j) {
  if (j.contains("kind")) {
    RootSystemKind k = kind_from_json(j.at("kind"));
    if (!(k == rs.kind()))
      throw std::invalid_argument("coords kind " + k.str() + " does not match " +
                                  rs.kind().str());
  }
  UnipotentCoords u;
  for (const auto& [key, val] : j.at("coords").items()) {
    Root r = root_from_key(key, rs.rank());
    auto idx = rs.index_of(r);
    if (!idx) throw std::invalid_argument("not a positive root: " + key);
    Rat c = rat_parse(val.get<std::string>());
    if (c != 0) u.coords[*idx] = c;
  }
  return u;
}

json word_to_json(const liealg::ChevalleyBasis& cb, const ConjugatorWord& w) {
  const auto& rs = cb.roots();
  json out = json::array();
  for (const auto& f : w.factors) {
    if (std::holds_alternative<NilFactor>(f)) {
      const auto& nf = std::get<NilFactor>(f);
      json x = json::object();
      for (const auto& [b, c] : nf.x.terms) x[rootsys::root_str(rs.root(b))] = rat_str(c);
      out.push_back(json{{"nil", {{"x", x}, {"length_sq", rat_str(nf.length_sq)}}}});
    } else {
      const auto& cf = std::get<CartanFactor>(f);
      json ratios = json::array();
      for (const auto& r : cf.ratios) ratios.push_back(rat_str(r));
      out.push_back(json{{"cartan",
                          {{"ratios", ratios},
                           {"h_coords", cf.h_coords},
                           {"norm_sq", cf.norm_sq}}}});
    }
  }
  return out;
}

ConjugatorWord word_from_json(const liealg::ChevalleyBasis& cb, const json& j) {
  const auto& rs = cb.roots();
  ConjugatorWord w;
  for (const auto& f : j) {
    if (f.contains("nil")) {
      NilFactor nf;
      for (const auto& [key, val] : f.at("nil").at("x").items()) {
        Root r = root_from_key(key, rs.rank());
        auto idx = rs.index_of(r);
        if (!idx) throw std::invalid_argument("not a positive root: " + key);
        nf.x.add_term(cb.idx_pos(*idx), rat_parse(val.get<std::string>()));
      }
      nf.length_sq = cb.norm_sq(nf.x);
      w.factors.push_back(nf);
    } else if (f.contains("cartan")) {
      CartanFactor cf;
      for (const auto& r : f.at("cartan").at("ratios"))
        cf.ratios.push_back(rat_parse(r.get<std::string>()));
      if (static_cast<int>(cf.ratios.size()) != rs.rank())
        throw std::invalid_argument("cartan factor rank mismatch");
      if (f.at("cartan").contains("h_coords"))
        cf.h_coords = f.at("cartan").at("h_coords").get<std::vector<double>>();
      if (f.at("cartan").contains("norm_sq"))
        cf.norm_sq = f.at("cartan").at("norm_sq").get<double>();
      w.factors.push_back(cf);
    } else {
      throw std::invalid_argument("word factor must be tagged nil or cartan");
    }
  }
  return w;
}

json step_to_json(const liealg::ChevalleyBasis& cb, const reduce::StepRecord& s) {
  const auto& rs = cb.roots();
  json factor = json::object();
  for (const auto& [b, c] : s.factor.x.terms)
    factor[rootsys::root_str(rs.root(b))] = rat_str(c);
  return json{{"target", json(rs.root(s.target))},
              {"witness", witness_to_json(rs, s.witness)},
              {"factor", factor},
              {"factor_len_sq", rat_str(s.factor_len_sq)},
              {"bound_sq", rat_str(s.bound_sq)},
              {"bound_holds", s.bound_holds}};
}

json result_to_json(const liealg::ChevalleyBasis& cb, const reduce::ConjugacyResult& r) {
  json out;
  switch (r.status) {
    case reduce::Status::Conjugate: out["status"] = "conjugate"; break;
    case reduce::Status::NotConjugate: out["status"] = "not-conjugate"; break;
    case reduce::Status::NotSimpleCase: out["status"] = "not-simple-case"; break;
  }
  if (!r.reason.empty()) out["reason"] = r.reason;
  out["verified"] = r.verified;
  out["delta"] = r.delta;
  out["k_delta"] = r.k_delta;
  out["length_upper"] = r.length_upper;
  out["linear_bound"] = r.linear_bound;
  json su = json::array(), sv = json::array();
  for (const auto& s : r.steps_u) su.push_back(step_to_json(cb, s));
  for (const auto& s : r.steps_v) sv.push_back(step_to_json(cb, s));
  out["steps_u"] = su;
  out["steps_v"] = sv;
  if (r.diag) {
    json ratios = json::array();
    for (const auto& c : r.diag->ratios) ratios.push_back(rat_str(c));
    out["diagonal"] = json{{"ratios", ratios},
                           {"h_coords", r.diag->h_coords},
                           {"norm_sq", r.diag->norm_sq}};
  }
  out["word"] = word_to_json(cb, r.word);
  return out;
}

json constants_to_json(const liealg::ChevalleyBasis& cb) {
  const auto& rs = cb.roots();
  auto cc = cb.c_constants();
  json norm = json::object();
  for (int k = 0; k < rs.size(); ++k)
    norm[rootsys::root_str(rs.root(k))] = rat_str(cb.root_norm_sq(k));
  json out{{"kind", kind_to_json(rs.kind())},
           {"s_lambda", rat_str(cb.s_lambda())},
           {"s_lambda_method", liealg::ChevalleyBasis::s_lambda_method()},
           {"norm_sq", norm}};
  if (cc.has_pairs) {
    out["c0_sq"] = rat_str(cc.c0_sq);
    out["c1_sq"] = rat_str(cc.c1_sq);
  } else {
    out["c0_sq"] = nullptr;
    out["c1_sq"] = nullptr;
    out["note"] = "no non-simple roots; reduction pipeline short-circuits";
  }
  return out;
}

json matrix_to_json(const oracle::RationalMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.a) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rat_str(v));
    rows.push_back(r);
  }
  return json{{"n", m.n}, {"entries", rows}};
}

oracle::RationalMatrix matrix_from_json(const json& j) {
  oracle::RationalMatrix m;
  m.n = j.at("n").get<int>();
  m.a.assign(m.n, std::vector<Rat>(m.n, Rat(0)));
  const auto& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != m.n)
    throw std::invalid_argument("matrix row count mismatch");
  for (int i = 0; i < m.n; ++i)
    for (int k = 0; k < m.n; ++k) m.a[i][k] = rat_parse(rows[i][k].get<std::string>());
  return m;
}

}  // namespace conjforge::io
