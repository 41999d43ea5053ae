#include "conjforge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "conjforge/json_io.hpp"

namespace conjforge::harness {

using liealg::ChevalleyBasis;
using unipotent::ConjugatorWord;
using unipotent::NilFactor;
using unipotent::UnipotentCoords;

namespace {

// splitmix64: reproducible across platforms, unlike std:: distributions.
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
  long uniform(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return next() & 1; }
};

Rat random_scalar(Rng& rng, long bound) {
  long num = rng.uniform(1, bound);
  long den = rng.uniform(1, bound);
  Rat r(num, den);
  r.canonicalize();
  if (rng.coin()) r = -r;
  return r;
}

}  // namespace

Instance gen_instance(const ChevalleyBasis& cb, const ExperimentConfig& cfg, int trial_index) {
  const auto& rs = cb.roots();
  Rng rng(cfg.seed ^ (0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(trial_index + 1)));
  long b = std::max(1L, cfg.coeff_bound);
  Rat dmin_sq = cfg.delta_min * cfg.delta_min;

  Instance inst;
  for (int k = 0; k < rs.size(); ++k) {
    if (rs.is_simple(k)) {
      Rat c = random_scalar(rng, b);
      // scale up until the delta_min clamp holds, exactly
      while (c * c * cb.root_norm_sq(k) < dmin_sq) c *= 2;
      inst.u.coords[k] = c;
    } else if (rng.uniform(0, 3) != 0) {  // a quarter of the entries stay zero
      inst.u.coords[k] = random_scalar(rng, b);
    }
  }
  for (int i = 0; i < cfg.scramble_len; ++i) {
    int root = static_cast<int>(rng.uniform(0, rs.size() - 1));
    Rat z = random_scalar(rng, b);
    NilFactor f;
    f.x = cb.e_pos(root, z);
    f.length_sq = z * z * cb.root_norm_sq(root);
    inst.w_true.factors.push_back(f);
  }
  inst.v = unipotent::conj_word(cb, inst.u, inst.w_true);
  return inst;
}

namespace {

TrialRow run_one(const ChevalleyBasis& cb, const rootsys::ReductionOrder& order,
                 const ExperimentConfig& cfg, int trial) {
  Instance inst = gen_instance(cb, cfg, trial);
  reduce::ConjugacyResult res = reduce::conjugate(cb, order, inst.u, inst.v);
  TrialRow row;
  row.trial = trial;
  switch (res.status) {
    case reduce::Status::Conjugate: row.status = "conjugate"; break;
    case reduce::Status::NotConjugate: row.status = "not-conjugate"; break;
    case reduce::Status::NotSimpleCase: row.status = "not-simple-case"; break;
  }
  row.verified = res.verified;
  row.len_u = unipotent::length(cb, inst.u);
  row.len_v = unipotent::length(cb, inst.v);
  row.len_g = res.length_upper;
  row.bound = res.linear_bound;
  double denom = row.len_u + row.len_v;
  row.ratio = denom > 0 ? row.len_g / denom : 0.0;
  return row;
}

std::string dump_reproducer(const ChevalleyBasis& cb, const ExperimentConfig& cfg, int trial,
                            const Instance& inst) {
  const auto& rs = cb.roots();
  io::json j{{"kind", io::kind_to_json(rs.kind())},
             {"seed", cfg.seed},
             {"trial", trial},
             {"coeff_bound", cfg.coeff_bound},
             {"delta_min", rat_str(cfg.delta_min)},
             {"scramble_len", cfg.scramble_len},
             {"u", io::coords_to_json(rs, inst.u)},
             {"v", io::coords_to_json(rs, inst.v)},
             {"w_true", io::word_to_json(cb, inst.w_true)}};
  std::string path = "conjforge_failure_" + rs.kind().str() + "_" +
                     std::to_string(cfg.seed) + "_" + std::to_string(trial) + ".json";
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  return path;
}

int thread_budget() {
  if (const char* env = std::getenv("CONJFORGE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

ExperimentReport run_experiment(const ChevalleyBasis& cb, const rootsys::ReductionOrder& order,
                                const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.cfg = cfg;
  report.rows.assign(cfg.trials, TrialRow{});

  int workers = std::min(thread_budget(), std::max(1, cfg.trials));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          int t = next.fetch_add(1);
          if (t >= cfg.trials) break;
          report.rows[t] = run_one(cb, order, cfg, t);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& row : report.rows) {
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    if (!row.verified) report.failures++;
  }
  if (report.failures > 0) {
    // Generated instances are explicit conjugates; a verification failure is
    // a defect. Dump the first failing instance and abort.
    for (const auto& row : report.rows) {
      if (!row.verified) {
        Instance inst = gen_instance(cb, cfg, row.trial);
        std::string path = dump_reproducer(cb, cfg, row.trial, inst);
        throw ExperimentAbort("trial " + std::to_string(row.trial) +
                                  " failed verification; reproducer at " + path,
                              path);
      }
    }
  }
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "kind,rank,seed,trial,status,len_u,len_v,len_g,bound,ratio,verified\n";
  os.precision(12);
  for (const auto& r : report.rows) {
    os << static_cast<char>(report.cfg.kind.family) << "," << report.cfg.kind.rank << ","
       << report.cfg.seed << "," << r.trial << "," << r.status << "," << r.len_u << ","
       << r.len_v << "," << r.len_g << "," << r.bound << "," << r.ratio << ","
       << (r.verified ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace conjforge::harness
