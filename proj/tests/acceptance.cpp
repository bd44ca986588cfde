// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ifi/ifi.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using ifi::Rational;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << " -- " << o.detail << std::endl;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// C1: constant-epsilon layout, d = 256, n = 288, sketch at 1/8.
ifi::ExperimentConfig constant_config() {
  ifi::ExperimentConfig cfg;
  cfg.d = 256;
  cfg.epsilon = Rational(1, 1);
  cfg.n = 288;
  cfg.seed = 1000;
  cfg.trials = 100;
  cfg.sketch = ifi::SketchKind::kExactPairs;
  cfg.sketch_epsilon = Rational(1, 8);
  return cfg;
}

// C2: d = 64, eps = 1/4, 200 rows per block, sketch at 1/32.
ifi::ExperimentConfig general_config() {
  ifi::ExperimentConfig cfg;
  cfg.d = 64;
  cfg.epsilon = Rational(1, 4);
  cfg.rows_per_block = 200;
  cfg.seed = 2000;
  cfg.trials = 100;
  cfg.sketch = ifi::SketchKind::kExactPairs;
  cfg.sketch_epsilon = Rational(1, 32);
  return cfg;
}

std::vector<ifi::TrialRecord> general_records;

}  // namespace

int main() {
  report("C1", "constant-epsilon pipeline (d=256, n=288, 100 trials)", [] {
    const auto cfg = constant_config();
    // Pair accounting for one instance: m matched, every other column pair unmatched.
    const auto rep = ifi::audit(ifi::make_instance(cfg, cfg.seed));
    const std::uint64_t expected_unmatched = 2 * (128 * 127 / 2) + 128 * 127;
    if (rep.matched_pairs != 128 || rep.unmatched_pairs != expected_unmatched) {
      return Outcome{false, "pair accounting " + std::to_string(rep.unmatched_pairs)};
    }
    const auto s = ifi::summarize(ifi::run_experiment(cfg));
    const bool ok = s.gap_passes >= 99 && s.decodes_ok_given_gap == s.gap_passes;
    return Outcome{ok, "gap passes " + std::to_string(s.gap_passes) + "/100 (need >= 99), recovered " +
                           std::to_string(s.decodes_ok_given_gap) + "/" + std::to_string(s.gap_passes) +
                           " of passing; unmatched pairs per instance " + std::to_string(rep.unmatched_pairs)};
  });

  report("C2", "general-epsilon pipeline (d=64, eps=1/4, 16 perms, 100 trials)", [] {
    const auto cfg = general_config();
    general_records = ifi::run_experiment(cfg);
    const auto s = ifi::summarize(general_records);
    const bool ok = s.gap_passes >= 95 && s.decodes_ok_given_gap == s.gap_passes;
    return Outcome{ok, "gap passes " + std::to_string(s.gap_passes) + "/100 (need >= 95), recovered all 16 in " +
                           std::to_string(s.decodes_ok_given_gap) + "/" + std::to_string(s.gap_passes)};
  });

  report("C3", "structural zero over every instance of C1 and C2", [] {
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    for (const auto& cfg : {constant_config(), general_config()}) {
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto inst = ifi::make_instance(cfg, cfg.seed + t);
        const auto scan = inst.blocks() == 1 ? ifi::scan_structural_zero(ifi::as_const(inst))
                                             : ifi::scan_structural_zero(inst);
        checks += scan.checks;
        violations += scan.violations;
      }
    }
    return Outcome{violations == 0 && checks > 0,
                   std::to_string(violations) + " violations in " + std::to_string(checks) + " row x matched-pair checks"};
  });

  report("C4", "unmatched co-occurrence rate (m=16, 1e5 subsets)", [] {
    ifi::Engine eng(404);
    const auto pi = ifi::Permutation::random(16, eng);
    const std::size_t i = 5;
    const std::size_t j = (pi[i] + 7) % 16;
    const double rate = ifi::empirical_co_occurrence(pi, i, j, 100000, 404);
    const double matched = ifi::empirical_co_occurrence(pi, i, pi[i], 100000, 404);
    const bool ok = rate >= 0.24 && rate <= 0.26 && matched == 0.0 &&
                    ifi::theoretical_co_occurrence_probability() == Rational(1, 4);
    return Outcome{ok, "unmatched " + fmt(rate) + " in [0.24, 0.26], matched " + fmt(matched) + ", theory 1/4"};
  });

  report("C5", "oracle equivalence on 50 random databases (d=16)", [] {
    std::mt19937_64 gen(55);
    const Rational eps(1, 4);
    int exact_mismatches = 0;
    int sampling_bad_builds = 0;
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + gen() % 256;
      const auto db = oracle::random_db(n, 16, gen(), 0.3 + 0.05 * (t % 8));
      const auto m = oracle::to_matrix(db);
      const auto exact = ifi::build_exact_pairs(db, {eps, 2, 16});
      const auto sampled = ifi::build_sampling(db, {eps, 2, 16}, static_cast<std::uint64_t>(t));
      bool sampling_bad = false;
      for (std::size_t a = 0; a < 16; ++a) {
        for (std::size_t b = a + 1; b < 16; ++b) {
          const auto hits = oracle::count(m, {a, b});
          const auto pair = ifi::Itemset::pair(a, b);
          const bool bit = oracle::exceeds(hits, n, 1, 8);
          if ((ifi::query_exact(exact, pair) == ifi::IndicatorAnswer::kYes) != bit) ++exact_mismatches;
          const bool must_yes = hits * 4 >= n;
          const bool must_no = hits * 8 <= n;
          const auto got = ifi::query_sampling(sampled, pair);
          if ((must_yes && got != ifi::IndicatorAnswer::kYes) || (must_no && got != ifi::IndicatorAnswer::kNo)) {
            sampling_bad = true;
          }
        }
      }
      sampling_bad_builds += sampling_bad ? 1 : 0;
    }
    const bool ok = exact_mismatches == 0 && sampling_bad_builds * 4 <= 50;
    return Outcome{ok, "exact-pairs mismatches " + std::to_string(exact_mismatches) + "/6000, sampling builds violating promise " +
                           std::to_string(sampling_bad_builds) + "/50 (budget 25%)"};
  });

  report("C6", "entropy accounting and size >= entropy", [] {
    const double e16 = ifi::entropy_bits(16, Rational(1, 2));
    bool ok = std::abs(e16 - 4 * oracle::log2_factorial_bigint(4)) <= 1e-9;
    double worst = 0.0;
    for (unsigned m = 1; m <= 20; ++m) {
      worst = std::max(worst, std::abs(ifi::entropy_bits(2 * m, Rational(1, 1)) - oracle::log2_factorial_bigint(m)));
    }
    ok = ok && worst <= 1e-9;
    if (general_records.empty()) general_records = ifi::run_experiment(general_config());
    const auto s = ifi::summarize(general_records);
    ok = ok && std::abs(s.entropy_bits - 244.8) < 0.05 && s.mean_sketch_bits == 2016.0;
    std::size_t checked = 0;
    for (const auto& r : general_records) {
      if (!r.gap_pass) continue;
      ++checked;
      ok = ok && static_cast<double>(r.sketch_size_bits) >= r.entropy_bits;
    }
    ok = ok && checked > 0;
    return Outcome{ok, "entropy(16,1/2)=" + fmt(e16, 6) + ", max |err| m<=20 " + fmt(worst, 12) + ", d=64 eps=1/4: entropy " +
                           fmt(s.entropy_bits, 3) + " bits vs sketch " + fmt(s.mean_sketch_bits, 0) + " bits over " +
                           std::to_string(checked) + " passing trials"};
  });

  report("C7", "K=1 reduction (d in {4, 8, 16})", [] {
    bool ok = true;
    for (std::size_t d : {4, 8, 16}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto L = ifi::block_layout(d, Rational(1, 1));
        const auto perms = ifi::random_permutations(L, seed);
        const std::size_t n = 120;
        const auto general = ifi::gen_general_instance(d, Rational(1, 1), perms, n, seed);
        const auto constant = ifi::gen_const_instance(d, perms.at(0, 0), n, seed);
        std::stringstream a;
        std::stringstream b;
        ifi::write_db(general.db, a);
        ifi::write_db(constant.db, b);
        ok = ok && a.str() == b.str();
        const auto blob = ifi::build_exact_pairs(constant.db, {Rational(1, 8), 2, d});
        const ifi::SketchOracle oracle(blob);
        ok = ok && ifi::decode_general(oracle, d, Rational(1, 1)).at(0, 0) == ifi::decode_const(oracle, d);
      }
    }
    return Outcome{ok, "15 seeded instances: byte-identical databases and identical decodes"};
  });

  report("C8", "determinism and formats", [] {
    const auto root = fs::temp_directory_path() / "ifi_acceptance_c8";
    fs::remove_all(root);
    ifi::ExperimentConfig cfg;
    cfg.d = 64;
    cfg.epsilon = Rational(1, 4);
    cfg.seed = 2;
    cfg.out = root / "a";
    ifi::cmd_gen(cfg);
    cfg.out = root / "b";
    ifi::cmd_gen(cfg);
    bool ok = slurp(root / "a" / ifi::files::kDatabase) == slurp(root / "b" / ifi::files::kDatabase) &&
              slurp(root / "a" / ifi::files::kManifest) == slurp(root / "b" / ifi::files::kManifest);
    std::mt19937_64 gen(8);
    int round_trips = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t d = 2 + gen() % 127;
      const std::size_t n = 1 + gen() % 64;
      const auto db = oracle::random_db(n, d, gen(), 0.5);
      std::stringstream ss;
      ifi::write_db(db, ss);
      round_trips += ifi::read_db(ss) == db ? 1 : 0;
    }
    ok = ok && round_trips == 1000;
    fs::remove_all(root);
    return Outcome{ok, "gen twice byte-identical; IFDB round-trips " + std::to_string(round_trips) + "/1000"};
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
