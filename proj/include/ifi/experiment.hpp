#pragma once

// End-to-end pipeline used by the CLI: generate an instance, audit its gap, build
// a sketch, decode through the sketch alone, and compare against the hidden
// permutations. Trial t runs with seed (config.seed + t) so any trial can be
// replayed on its own with `gen --seed <seed + t>`.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ifi/database_io.hpp"
#include "ifi/decoder.hpp"
#include "ifi/entropy.hpp"
#include "ifi/hard_instance.hpp"
#include "ifi/manifest.hpp"
#include "ifi/sketch.hpp"
#include "ifi/sketch_io.hpp"

namespace ifi {

struct ExperimentConfig {
  std::size_t d = 0;
  Rational epsilon{1, 1};
  std::optional<std::size_t> rows_per_block;
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  SketchKind sketch = SketchKind::kExactPairs;
  std::optional<Rational> sketch_epsilon;
  std::filesystem::path out = ".";

  BlockLayout layout() const { return block_layout(d, epsilon); }

  std::size_t resolved_rows_per_block() const {
    if (n) return *n / layout().blocks;
    return rows_per_block.value_or(default_rows_per_block(d));
  }
  Rational resolved_sketch_epsilon() const { return sketch_epsilon.value_or(epsilon.scaled(1, 8)); }

  void validate() const {
    const auto L = layout();
    if (trials < 1) throw ParamError("trials must be >= 1");
    if (n && rows_per_block) throw ParamError("give either --n or --rows-per-block, not both");
    if (n && (*n == 0 || *n % L.blocks != 0)) {
      throw ParamError("n must be a positive multiple of K = " + std::to_string(L.blocks));
    }
    if (rows_per_block && *rows_per_block == 0) throw ParamError("rows_per_block must be >= 1");
    SketchParams{resolved_sketch_epsilon(), 2, d}.validate();
  }
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool gap_pass = false;
  bool decode_ok = false;
  std::uint64_t sketch_size_bits = 0;
  double entropy_bits = 0.0;
  std::uint64_t queries = 0;
  double wall_ms = 0.0;
};

struct ExperimentSummary {
  std::size_t trials = 0;
  std::size_t gap_passes = 0;
  std::size_t decodes_ok = 0;
  std::size_t decodes_ok_given_gap = 0;
  double mean_sketch_bits = 0.0;
  double entropy_bits = 0.0;

  double gap_pass_rate() const { return trials == 0 ? 0.0 : static_cast<double>(gap_passes) / trials; }
  double recovery_rate() const { return trials == 0 ? 0.0 : static_cast<double>(decodes_ok) / trials; }
  /// Recovery rate among trials whose gap audit passed.
  double conditional_recovery_rate() const {
    return gap_passes == 0 ? 0.0 : static_cast<double>(decodes_ok_given_gap) / gap_passes;
  }
};

inline GeneralInstance make_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto layout = cfg.layout();
  return gen_general_instance(cfg.d, cfg.epsilon, random_permutations(layout, seed), cfg.resolved_rows_per_block(),
                              seed);
}

/// The K = 1 instance viewed as a constant-epsilon instance.
inline ConstInstance as_const(const GeneralInstance& inst) {
  if (inst.blocks() != 1) throw ParamError("only K = 1 instances are constant-epsilon instances");
  return {inst.d(), inst.m(), inst.perms.at(0, 0), inst.n, inst.seed, inst.db};
}

/// K = 1 instances are audited over every column pair, larger K over the decoder pairs.
inline GapReport audit(const GeneralInstance& inst) {
  return inst.blocks() == 1 ? verify_gap(as_const(inst)) : verify_gap(inst);
}

inline SketchBlob build_sketch(const Database& db, SketchKind kind, const Rational& sketch_eps, std::uint64_t seed) {
  const SketchParams params{sketch_eps, 2, db.d()};
  return kind == SketchKind::kSampling ? build_sampling(db, params, seed) : build_exact_pairs(db, params);
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = cfg.seed + trial;
  rec.entropy_bits = entropy_bits(cfg.d, cfg.epsilon);

  const auto inst = make_instance(cfg, rec.seed);
  rec.gap_pass = audit(inst).pass;
  const auto blob = build_sketch(inst.db, cfg.sketch, cfg.resolved_sketch_epsilon(), rec.seed);
  rec.sketch_size_bits = sketch_size_bits(blob);
  if (rec.gap_pass) {
    const SketchOracle oracle(blob);
    const CountingOracle counted(oracle);
    try {
      rec.decode_ok = decode_general(counted, cfg.d, cfg.epsilon) == inst.perms;
    } catch (const DecodeAmbiguous&) {
      rec.decode_ok = false;
    }
    rec.queries = counted.queries();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TrialRecord> records;
  records.reserve(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) records.push_back(run_trial(cfg, t));
  return records;
}

inline ExperimentSummary summarize(const std::vector<TrialRecord>& records) {
  ExperimentSummary s;
  s.trials = records.size();
  double bits = 0.0;
  for (const auto& r : records) {
    s.gap_passes += r.gap_pass ? 1 : 0;
    s.decodes_ok += r.decode_ok ? 1 : 0;
    s.decodes_ok_given_gap += (r.gap_pass && r.decode_ok) ? 1 : 0;
    bits += static_cast<double>(r.sketch_size_bits);
    s.entropy_bits = r.entropy_bits;
  }
  s.mean_sketch_bits = records.empty() ? 0.0 : bits / static_cast<double>(records.size());
  return s;
}

inline constexpr const char* kCsvHeader = "trial,seed,gap_pass,decode_ok,sketch_bits,entropy_bits,queries,ms";

inline void write_csv(const std::vector<TrialRecord>& records, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    std::ostringstream line;
    line << r.trial << ',' << r.seed << ',' << (r.gap_pass ? 1 : 0) << ',' << (r.decode_ok ? 1 : 0) << ','
         << r.sketch_size_bits << ',' << std::fixed << std::setprecision(6) << r.entropy_bits << ',' << r.queries
         << ',' << std::setprecision(3) << r.wall_ms;
    os << line.str() << '\n';
  }
}

inline void write_summary(const ExperimentSummary& s, std::ostream& os) {
  os << std::fixed << std::setprecision(4) << "trials            " << s.trials << '\n'
     << "gap pass rate     " << s.gap_pass_rate() << '\n'
     << "recovery rate     " << s.recovery_rate() << '\n'
     << "recovery | gap    " << s.conditional_recovery_rate() << '\n'
     << std::setprecision(1) << "mean sketch bits  " << s.mean_sketch_bits << '\n'
     << "entropy bits      " << s.entropy_bits << '\n';
}

inline nlohmann::json to_json(const TrialRecord& r) {
  return {{"trial", r.trial},         {"seed", r.seed},   {"gap_pass", r.gap_pass},
          {"decode_ok", r.decode_ok}, {"sketch_bits", r.sketch_size_bits},
          {"entropy_bits", r.entropy_bits}, {"queries", r.queries}, {"ms", r.wall_ms}};
}

inline TrialRecord record_from_json(const nlohmann::json& j) {
  try {
    TrialRecord r;
    r.trial = j.at("trial").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.gap_pass = j.at("gap_pass").get<bool>();
    r.decode_ok = j.at("decode_ok").get<bool>();
    r.sketch_size_bits = j.at("sketch_bits").get<std::uint64_t>();
    r.entropy_bits = j.at("entropy_bits").get<double>();
    r.queries = j.at("queries").get<std::uint64_t>();
    r.wall_ms = j.at("ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad trial record: ") + e.what());
  }
}

inline void write_records(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  auto os = detail::open_out(path);
  for (const auto& r : records) os << to_json(r).dump() << '\n';
  detail::finish_write(os, path);
}

inline std::vector<TrialRecord> read_records(const std::filesystem::path& path) {
  auto is = detail::open_in(path);
  std::vector<TrialRecord> records;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("bad trial record line: ") + e.what());
    }
  }
  return records;
}

// File names used inside an output directory.
namespace files {
inline constexpr const char* kManifest = "instance.manifest";
inline constexpr const char* kDatabase = "instance.ifdb";
inline constexpr const char* kSketch = "sketch.ifsk";
inline constexpr const char* kDecoded = "decoded.manifest";
inline constexpr const char* kRecords = "records.jsonl";
inline constexpr const char* kReport = "report.csv";
}  // namespace files

inline void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

/// Writes the manifest and IFDB of the instance for cfg.seed into cfg.out.
inline GeneralInstance cmd_gen(const ExperimentConfig& cfg) {
  cfg.validate();
  auto inst = make_instance(cfg, cfg.seed);
  ensure_dir(cfg.out);
  write_manifest(Manifest::of(inst), cfg.out / files::kManifest);
  write_db(inst.db, cfg.out / files::kDatabase);
  return inst;
}

/// Sketches the database found in `in` and writes it to cfg.out. The sampling seed
/// defaults to the instance seed, matching what `run_trial` does.
inline SketchBlob cmd_sketch(const ExperimentConfig& cfg, const std::filesystem::path& in,
                             std::optional<std::uint64_t> seed = std::nullopt) {
  const auto db = read_db(in / files::kDatabase);
  const auto mf = read_manifest(in / files::kManifest);
  const Rational sketch_eps = cfg.sketch_epsilon.value_or(mf.epsilon.scaled(1, 8));
  auto blob = build_sketch(db, cfg.sketch, sketch_eps, seed.value_or(mf.seed));
  ensure_dir(cfg.out);
  write_sketch(blob, cfg.out / files::kSketch);
  return blob;
}

struct DecodeOutcome {
  Manifest decoded;
  bool matches = false;
  std::uint64_t queries = 0;
};

/// Decodes the sketch in `in` using the layout of the manifest in `in`, writes the
/// decoded manifest to cfg.out and reports whether it equals the original.
inline DecodeOutcome cmd_decode(const ExperimentConfig& cfg, const std::filesystem::path& in) {
  const auto mf = read_manifest(in / files::kManifest);
  const auto blob = read_sketch(in / files::kSketch);
  if (blob.params.d != mf.d) throw DimensionError("sketch d does not match manifest d");
  const SketchOracle oracle(blob);
  const CountingOracle counted(oracle);
  DecodeOutcome out;
  out.decoded = mf;
  out.decoded.perms = decode_general(counted, mf.d, mf.epsilon);
  out.queries = counted.queries();
  out.matches = out.decoded == mf;
  ensure_dir(cfg.out);
  write_manifest(out.decoded, cfg.out / files::kDecoded);
  return out;
}

inline std::vector<TrialRecord> cmd_experiment(const ExperimentConfig& cfg) {
  auto records = run_experiment(cfg);
  ensure_dir(cfg.out);
  write_records(records, cfg.out / files::kRecords);
  auto os = detail::open_out(cfg.out / files::kReport);
  write_csv(records, os);
  detail::finish_write(os, cfg.out / files::kReport);
  return records;
}

inline void cmd_report(const std::filesystem::path& in, std::ostream& csv) { write_csv(read_records(in / files::kRecords), csv); }

}  // namespace ifi
