#pragma once

// Growth experiments: a module, a sequence of finite-index subgroups, the torsion
// growth statistic along it, and the Mahler measure of Delta(M) as the target.

#include "torsionlab/json_io.hpp"
#include "torsionlab/mahler.hpp"
#include "torsionlab/presmod.hpp"
#include "torsionlab/torsion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsionlab {

struct SequenceSpec {
  std::string type;  // cyclic | diagonal | gamma_sj | explicit
  std::int64_t from = 1, to = 1, step = 1;
  // gamma_sj: one subgroup per s, with j taken from j_values (cycled) or j_factor * s.
  std::vector<double> kappa;
  std::vector<std::int64_t> s_values;
  std::vector<std::int64_t> j_values;
  std::int64_t j_factor = 0;
  std::int64_t max_entry = 2000;
  std::vector<Subgroup> subgroups;  // explicit
};

struct ExperimentConfig {
  // Exactly one module source.
  std::optional<PolyMatrix> matrix;
  std::optional<std::string> presentation_path;
  std::optional<std::string> presentation_text;
  bool branched = false;

  SequenceSpec sequence;
  MahlerOptions mahler;
  std::string output_dir;  // empty: no files written
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool force = false;

  /// Parses the JSON config; relative presentation paths resolve against base_dir.
  static ExperimentConfig from_json(const Json& j, const std::string& base_dir = "");
  static ExperimentConfig load(const std::string& path);
};

struct SampleRecord {
  GrowthSample sample;
  std::optional<BigInt> oracle;  // n = 1 branched runs where the product formula applies
  std::string oracle_note;
  double seconds = 0;
};

struct ExperimentReport {
  std::string delta;  // Delta(M) as text
  MahlerEstimate target;
  std::vector<SampleRecord> samples;
  double final_gap = 0;
  Json metadata = Json::object();

  Json to_json(bool with_timings = true) const;
  std::string csv() const;
};

/// The module selected by the config (branched or not).
PresentedModule build_module(const ExperimentConfig& config);
/// Subgroups of the sequence, in config order.
std::vector<Subgroup> build_sequence(const SequenceSpec& spec, std::size_t nvars);

/// Computes every sample; writes samples.csv and report.json when output_dir is set.
ExperimentReport run(const ExperimentConfig& config);

}  // namespace torsionlab
