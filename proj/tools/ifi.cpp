// ifi: generate hard instances, sketch them, decode them back, run experiments.
//
// Exit codes: 0 success, 1 decode failure, 2 configuration error, 3 I/O or format error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ifi/ifi.hpp"

namespace {

constexpr int kExitDecodeFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct RawOptions {
  std::size_t d = 0;
  std::string eps = "1";
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::optional<std::size_t> rows_per_block;
  std::optional<std::size_t> n;
  std::string sketch = "exact";
  std::optional<std::string> sketch_eps;
  std::string out = ".";
  std::optional<std::string> in;
};

void add_instance_flags(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--d", o.d, "column count")->required();
  cmd->add_option("--eps", o.eps, "instance epsilon as an exact fraction p/q (1 = constant-epsilon layout)")
      ->default_str("1");
  cmd->add_option("--seed", o.seed, "instance seed")->default_str("0");
  auto* rpb = cmd->add_option("--rows-per-block", o.rows_per_block, "rows per block (default ceil(48 ln d))");
  cmd->add_option("--n", o.n, "total rows, a multiple of 1/eps")->excludes(rpb);
}

void add_sketch_flags(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--sketch", o.sketch, "sketch kind")->check(CLI::IsMember({"sampling", "exact"}))->default_str("exact");
  cmd->add_option("--sketch-eps", o.sketch_eps, "sketch epsilon p/q (default: instance epsilon / 8)");
}

ifi::ExperimentConfig to_config(const RawOptions& o) {
  ifi::ExperimentConfig cfg;
  cfg.d = o.d;
  cfg.epsilon = ifi::Rational::parse(o.eps);
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.rows_per_block = o.rows_per_block;
  cfg.n = o.n;
  cfg.sketch = o.sketch == "sampling" ? ifi::SketchKind::kSampling : ifi::SketchKind::kExactPairs;
  if (o.sketch_eps) cfg.sketch_epsilon = ifi::Rational::parse(*o.sketch_eps);
  cfg.out = o.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Itemset-frequency-indicator sketches and permutation-encoding hard instances"};
  app.require_subcommand(1);
  RawOptions o;

  auto* gen = app.add_subcommand("gen", "generate an instance: writes instance.manifest and instance.ifdb");
  add_instance_flags(gen, o);
  gen->add_option("--out", o.out, "output directory")->default_str(".");

  auto* sketch = app.add_subcommand("sketch", "sketch instance.ifdb into sketch.ifsk");
  add_sketch_flags(sketch, o);
  auto* sketch_seed = sketch->add_option("--seed", o.seed, "sampling seed (default: instance seed)");
  sketch->add_option("--in", o.in, "directory holding the instance (default: --out)");
  sketch->add_option("--out", o.out, "output directory")->default_str(".");

  auto* decode = app.add_subcommand("decode", "decode sketch.ifsk into decoded.manifest and compare");
  decode->add_option("--in", o.in, "directory holding instance.manifest and sketch.ifsk (default: --out)");
  decode->add_option("--out", o.out, "output directory")->default_str(".");

  auto* experiment = app.add_subcommand("experiment", "run seeded encode/sketch/decode trials");
  add_instance_flags(experiment, o);
  add_sketch_flags(experiment, o);
  experiment->add_option("--trials", o.trials, "number of trials (trial t uses seed + t)")->default_str("1");
  experiment->add_option("--out", o.out, "output directory for records.jsonl and report.csv")->default_str(".");

  auto* report = app.add_subcommand("report", "print the CSV report of records.jsonl");
  report->add_option("--in", o.in, "directory holding records.jsonl (default: --out)");
  report->add_option("--out", o.out, "directory; report.csv is written here when given")->default_str(".");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    const auto cfg = (gen->parsed() || experiment->parsed()) ? to_config(o) : [&] {
      ifi::ExperimentConfig c;
      c.out = o.out;
      c.sketch = o.sketch == "sampling" ? ifi::SketchKind::kSampling : ifi::SketchKind::kExactPairs;
      if (o.sketch_eps) c.sketch_epsilon = ifi::Rational::parse(*o.sketch_eps);
      return c;
    }();
    const std::filesystem::path in = o.in.value_or(o.out);

    if (gen->parsed()) {
      const auto inst = ifi::cmd_gen(cfg);
      std::cout << "d=" << inst.d() << " eps=" << inst.epsilon << " K=" << inst.blocks() << " m=" << inst.m()
                << " n=" << inst.n << " permutations=" << inst.perms.entries().size()
                << " entropy_bits=" << ifi::entropy_bits(inst.d(), inst.epsilon) << '\n';
    } else if (sketch->parsed()) {
      std::optional<std::uint64_t> seed;
      if (sketch_seed->count() > 0) seed = o.seed;
      const auto blob = ifi::cmd_sketch(cfg, in, seed);
      std::cout << "kind=" << ifi::to_string(blob.kind) << " eps=" << blob.params.epsilon
                << " size_bits=" << ifi::sketch_size_bits(blob) << '\n';
    } else if (decode->parsed()) {
      try {
        const auto res = ifi::cmd_decode(cfg, in);
        std::cout << "queries=" << res.queries << " match=" << (res.matches ? "yes" : "no") << '\n';
        return res.matches ? 0 : kExitDecodeFailed;
      } catch (const ifi::DecodeAmbiguous& e) {
        std::cerr << "decode failed: " << e.what() << '\n';
        return kExitDecodeFailed;
      }
    } else if (experiment->parsed()) {
      const auto records = ifi::cmd_experiment(cfg);
      ifi::write_summary(ifi::summarize(records), std::cout);
    } else if (report->parsed()) {
      ifi::cmd_report(in, std::cout);
      if (report->get_option("--out")->count() > 0) {
        auto os = ifi::detail::open_out(std::filesystem::path(o.out) / ifi::files::kReport);
        ifi::cmd_report(in, os);
        ifi::detail::finish_write(os, std::filesystem::path(o.out) / ifi::files::kReport);
      }
    }
  } catch (const ifi::ParamError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ifi::DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ifi::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ifi::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
