// conjforge: root-system orderings, Chevalley constants, and explicit
// conjugators between unipotent elements of split semisimple Lie groups.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "conjforge/harness.hpp"
#include "conjforge/json_io.hpp"

namespace {

using namespace conjforge;
using rootsys::ReductionOrder;
using rootsys::RootSystem;
using rootsys::RootSystemKind;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // NotConjugate / NotSimpleCase / violations
constexpr int kExitBadInput = 2;

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
}

io::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + " at byte " +
                                std::to_string(e.byte) + ": " + e.what());
  }
}

int cmd_roots(const std::string& kind_str, const std::string& out_path) {
  RootSystem rs = RootSystem::build(RootSystemKind::parse(kind_str));
  write_output(out_path, io::root_system_to_json(rs).dump(2));
  return kExitOk;
}

int cmd_order_verify(const std::string& kind_str, bool use_search,
                     const std::string& out_path) {
  RootSystem rs = RootSystem::build(RootSystemKind::parse(kind_str));
  ReductionOrder order = use_search ? rootsys::search_order(rs) : rootsys::builtin_order(rs);
  auto violations = rootsys::verify_order(rs, order);
  std::cout << rs.size() << " positive roots, " << order.witnesses.size() << " witnesses, "
            << violations.size() << " violations\n";
  for (const auto& v : violations) std::cout << "  " << v.reason << "\n";
  if (!out_path.empty()) write_output(out_path, io::order_to_json(rs, order).dump(2));
  return violations.empty() ? kExitOk : kExitNegative;
}

int cmd_constants(const std::string& kind_str, const std::string& out_path) {
  RootSystem rs = RootSystem::build(RootSystemKind::parse(kind_str));
  auto cb = liealg::ChevalleyBasis::build(rs);
  write_output(out_path, io::constants_to_json(cb).dump(2));
  return kExitOk;
}

int cmd_conjugate(const std::string& u_path, const std::string& v_path,
                  const std::string& out_path) {
  io::json ju = load_json(u_path);
  io::json jv = load_json(v_path);
  RootSystemKind kind = io::kind_from_json(ju.at("kind"));
  RootSystem rs = RootSystem::build(kind);
  auto cb = liealg::ChevalleyBasis::build(rs);
  auto order = rootsys::builtin_order(rs);
  auto u = io::coords_from_json(rs, ju);
  auto v = io::coords_from_json(rs, jv);
  auto res = reduce::conjugate(cb, order, u, v);
  write_output(out_path, io::result_to_json(cb, res).dump(2));
  return res.status == reduce::Status::Conjugate ? kExitOk : kExitNegative;
}

harness::ExperimentConfig config_from_json(const io::json& j) {
  harness::ExperimentConfig cfg;
  cfg.kind = io::kind_from_json(j.at("kind"));
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("coeff_bound")) cfg.coeff_bound = j.at("coeff_bound").get<long>();
  if (j.contains("delta_min")) cfg.delta_min = rat_parse(j.at("delta_min").get<std::string>());
  if (j.contains("scramble_len")) cfg.scramble_len = j.at("scramble_len").get<int>();
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.delta_min <= 0) throw std::invalid_argument("delta_min must be positive");
  return cfg;
}

io::json report_json(const harness::ExperimentReport& r) {
  io::json rows = io::json::array();
  for (const auto& row : r.rows)
    rows.push_back(io::json{{"trial", row.trial},
                            {"status", row.status},
                            {"verified", row.verified},
                            {"len_u", row.len_u},
                            {"len_v", row.len_v},
                            {"len_g", row.len_g},
                            {"bound", row.bound},
                            {"ratio", row.ratio}});
  return io::json{{"kind", io::kind_to_json(r.cfg.kind)},
                  {"seed", r.cfg.seed},
                  {"trials", r.cfg.trials},
                  {"rows", rows},
                  {"max_ratio", r.max_ratio},
                  {"failures", r.failures}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conjugators between unipotent elements of split semisimple Lie groups"};
  app.require_subcommand(1);

  std::string kind_str, out_path, format = "json";
  std::string u_path, v_path, config_path;
  bool use_search = false;

  auto* roots = app.add_subcommand("roots", "enumerate the positive roots of a kind");
  roots->add_option("kind", kind_str, "root system kind, e.g. A2, F4, E8")->required();
  roots->add_option("--out", out_path, "output path (default stdout)");

  auto* order = app.add_subcommand("order", "reduction orderings");
  auto* verify = order->add_subcommand("verify", "construct an ordering and verify it");
  verify->add_option("kind", kind_str, "root system kind")->required();
  verify->add_flag("--search", use_search, "use the search ordering instead of the builtin");
  verify->add_option("--out", out_path, "write the order document to a file");

  auto* constants = app.add_subcommand("constants", "Chevalley constants report");
  constants->add_option("kind", kind_str, "root system kind")->required();
  constants->add_option("--out", out_path, "output path (default stdout)");

  auto* conj = app.add_subcommand("conjugate", "conjugate two unipotent elements");
  conj->add_option("u", u_path, "JSON file with the first element")->required();
  conj->add_option("v", v_path, "JSON file with the second element")->required();
  conj->add_option("--out", out_path, "output path (default stdout)");

  auto* exp = app.add_subcommand("experiment", "run generated-conjugacy trials");
  exp->add_option("config", config_path, "JSON config file");
  std::string e_kind;
  int e_rank = -1, e_trials = -1, e_scramble = -1;
  long e_coeff = -1;
  std::int64_t e_seed = -1;
  std::string e_delta_min;
  exp->add_option("--kind", e_kind, "root system kind: A3, or a family letter with --rank");
  exp->add_option("--rank", e_rank, "rank, combined with a bare --kind family letter");
  exp->add_option("--trials", e_trials, "number of trials");
  exp->add_option("--seed", e_seed, "random seed");
  exp->add_option("--coeff-bound", e_coeff, "numerator/denominator bound");
  exp->add_option("--delta-min", e_delta_min, "simple-entry clamp, rational p/q");
  exp->add_option("--scramble-len", e_scramble, "length of the scrambling word");
  exp->add_option("--out", out_path, "output path (default stdout)");
  exp->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots->parsed()) return cmd_roots(kind_str, out_path);
    if (order->parsed() && verify->parsed())
      return cmd_order_verify(kind_str, use_search, out_path);
    if (constants->parsed()) return cmd_constants(kind_str, out_path);
    if (conj->parsed()) return cmd_conjugate(u_path, v_path, out_path);
    if (exp->parsed()) {
      harness::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = config_from_json(load_json(config_path));
      if (!e_kind.empty()) {
        if (e_kind.size() == 1 && e_rank >= 1)
          e_kind += std::to_string(e_rank);
        cfg.kind = RootSystemKind::parse(e_kind);
      }
      if (e_trials >= 1) cfg.trials = e_trials;
      if (e_seed >= 0) cfg.seed = static_cast<std::uint64_t>(e_seed);
      if (e_coeff >= 1) cfg.coeff_bound = e_coeff;
      if (!e_delta_min.empty()) cfg.delta_min = rat_parse(e_delta_min);
      if (e_scramble >= 0) cfg.scramble_len = e_scramble;
      if (config_path.empty() && e_kind.empty())
        throw std::invalid_argument("experiment needs a config file or --kind");

      RootSystem rs = RootSystem::build(cfg.kind);
      auto cb = liealg::ChevalleyBasis::build(rs);
      auto ord = rootsys::builtin_order(rs);
      try {
        auto report = harness::run_experiment(cb, ord, cfg);
        write_output(out_path,
                     format == "csv" ? harness::report_csv(report) : report_json(report).dump(2));
        return kExitOk;
      } catch (const harness::ExperimentAbort& e) {
        std::cerr << "experiment aborted: " << e.what() << "\n";
        return kExitNegative;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  }
  return kExitBadInput;
}
