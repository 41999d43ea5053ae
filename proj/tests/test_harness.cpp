#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "conjforge/harness.hpp"
#include "conjforge/json_io.hpp"

using namespace conjforge;
using conjforge::harness::ExperimentConfig;
using conjforge::liealg::ChevalleyBasis;
using conjforge::rootsys::RootSystem;
using conjforge::rootsys::RootSystemKind;

namespace {

struct Ctx {
  RootSystem rs;
  ChevalleyBasis cb;
  rootsys::ReductionOrder order;
  explicit Ctx(const std::string& k)
      : rs(RootSystem::build(RootSystemKind::parse(k))),
        cb(ChevalleyBasis::build(rs)),
        order(rootsys::builtin_order(rs)) {}
};

ExperimentConfig config(const std::string& kind, int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.kind = RootSystemKind::parse(kind);
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("gen_instance: scramble_len = 0 gives v = u") {
  Ctx c("A3");
  auto cfg = config("A3", 1, 9);
  cfg.scramble_len = 0;
  auto inst = harness::gen_instance(c.cb, cfg, 0);
  CHECK(inst.u == inst.v);
}

TEST_CASE("gen_instance: deterministic in (seed, trial)") {
  Ctx c("B3");
  auto cfg = config("B3", 1, 1234);
  auto a = harness::gen_instance(c.cb, cfg, 7);
  auto b = harness::gen_instance(c.cb, cfg, 7);
  CHECK(a.u == b.u);
  CHECK(a.v == b.v);
  auto other = harness::gen_instance(c.cb, cfg, 8);
  CHECK_FALSE(a.u == other.u);
}

TEST_CASE("gen_instance: the delta_min clamp holds exactly") {
  Ctx c("C3");
  auto cfg = config("C3", 1, 55);
  cfg.delta_min = Rat(3, 2);
  for (int t = 0; t < 50; ++t) {
    auto inst = harness::gen_instance(c.cb, cfg, t);
    CHECK(unipotent::delta_sq(c.cb, inst.u) >= cfg.delta_min * cfg.delta_min);
    CHECK(inst.v == unipotent::conj_word(c.cb, inst.u, inst.w_true));
  }
}

TEST_CASE("golden instance A3 seed 42 trial 0") {
  Ctx c("A3");
  auto cfg = config("A3", 1, 42);
  auto inst = harness::gen_instance(c.cb, cfg, 0);

  const char* dir = std::getenv("CONJFORGE_TEST_DATA");
  REQUIRE(dir != nullptr);
  std::string path = std::string(dir) + "/a3_seed42_trial0.json";
  std::ifstream in(path);
  REQUIRE(in.good());
  io::json j = io::json::parse(in);
  CHECK(io::coords_from_json(c.rs, j.at("u")) == inst.u);
  CHECK(io::coords_from_json(c.rs, j.at("v")) == inst.v);

  auto res = reduce::conjugate(c.cb, c.order, inst.u, inst.v);
  CHECK(res.status == reduce::Status::Conjugate);
  CHECK(res.verified);
}

TEST_CASE("run_experiment: 100 verified rows on A3") {
  Ctx c("A3");
  auto cfg = config("A3", 100, 42);
  auto report = harness::run_experiment(c.cb, c.order, cfg);
  REQUIRE(report.rows.size() == 100);
  CHECK(report.failures == 0);
  for (const auto& row : report.rows) {
    CHECK(row.status == "conjugate");
    CHECK(row.verified);
    CHECK(row.len_u > 0);
    CHECK(row.len_v > 0);
  }
}

TEST_CASE("aggregate is independent of the thread count") {
  Ctx c("A2");
  auto cfg = config("A2", 40, 3);
#ifdef _WIN32
  return;
#else
  setenv("CONJFORGE_THREADS", "1", 1);
  auto serial = harness::run_experiment(c.cb, c.order, cfg);
  setenv("CONJFORGE_THREADS", "4", 1);
  auto parallel = harness::run_experiment(c.cb, c.order, cfg);
  unsetenv("CONJFORGE_THREADS");
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].len_g == parallel.rows[i].len_g);
    CHECK(serial.rows[i].verified == parallel.rows[i].verified);
  }
  CHECK(serial.max_ratio == parallel.max_ratio);
#endif
}

TEST_CASE("F4 smoke run: 10 trials complete within the desk budget") {
  Ctx c("F4");
  auto cfg = config("F4", 10, 99);
  auto t0 = std::chrono::steady_clock::now();
  auto report = harness::run_experiment(c.cb, c.order, cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(report.failures == 0);
  CHECK(secs < 10.0);
}

TEST_CASE("csv report carries the fixed column set") {
  Ctx c("A2");
  auto cfg = config("A2", 3, 5);
  auto report = harness::run_experiment(c.cb, c.order, cfg);
  std::string csv = harness::report_csv(report);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "kind,rank,seed,trial,status,len_u,len_v,len_g,bound,ratio,verified");
  int lines = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) lines++;
  CHECK(lines == 3);
}

TEST_CASE("json round trips: coords, order, word, matrix") {
  Ctx c("F4");
  auto cfg = config("F4", 1, 17);
  auto inst = harness::gen_instance(c.cb, cfg, 0);

  auto ju = io::coords_to_json(c.rs, inst.u);
  CHECK(io::coords_from_json(c.rs, ju) == inst.u);

  auto jo = io::order_to_json(c.rs, c.order);
  auto o2 = io::order_from_json(c.rs, jo);
  CHECK(o2.sequence == c.order.sequence);
  CHECK(rootsys::verify_order(c.rs, o2).empty());

  auto jw = io::word_to_json(c.cb, inst.w_true);
  auto w2 = io::word_from_json(c.cb, jw);
  CHECK(unipotent::conj_word(c.cb, inst.u, w2) == inst.v);

  oracle::RationalMatrix m = oracle::RationalMatrix::identity(3);
  m.a[0][2] = Rat(22, 7);
  CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);
}

TEST_CASE("malformed rationals and keys are rejected") {
  Ctx c("A2");
  io::json bad{{"kind", io::kind_to_json(c.rs.kind())},
               {"coords", {{"[1,0]", "1/0"}}}};
  CHECK_THROWS_AS(io::coords_from_json(c.rs, bad), std::invalid_argument);
  io::json bad2{{"kind", io::kind_to_json(c.rs.kind())},
                {"coords", {{"[2,0]", "1/2"}}}};
  CHECK_THROWS_AS(io::coords_from_json(c.rs, bad2), std::invalid_argument);
}
