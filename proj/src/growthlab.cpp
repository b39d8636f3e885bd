#include "torsionlab/growthlab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace torsionlab {

namespace fs = std::filesystem;

namespace {

std::vector<std::int64_t> int_list(const Json& j) {
  if (j.is_number_integer()) return {j.get<std::int64_t>()};
  return j.get<std::vector<std::int64_t>>();
}

SequenceSpec parse_sequence(const Json& j) {
  SequenceSpec s;
  s.type = j.at("type").get<std::string>();
  if (s.type == "cyclic" || s.type == "diagonal") {
    s.from = j.value("from", std::int64_t{1});
    s.to = j.at("to").get<std::int64_t>();
    s.step = j.value("step", std::int64_t{1});
    if (s.from < 1 || s.to < s.from || s.step < 1) throw std::invalid_argument("sequence: need 1 <= from <= to and step >= 1");
  } else if (s.type == "gamma_sj") {
    s.kappa = j.at("kappa").get<std::vector<double>>();
    s.s_values = int_list(j.at("s"));
    if (j.contains("j")) s.j_values = int_list(j.at("j"));
    s.j_factor = j.value("j_factor", std::int64_t{0});
    s.max_entry = j.value("max_entry", std::int64_t{2000});
    if (s.j_values.empty() && s.j_factor <= 0) throw std::invalid_argument("gamma_sj sequence needs 'j' values or a positive 'j_factor'");
  } else if (s.type == "explicit") {
    for (const auto& g : j.at("subgroups")) s.subgroups.push_back(subgroup_from_json(g));
  } else {
    throw std::invalid_argument("unknown sequence type '" + s.type + "'");
  }
  return s;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j, const std::string& base_dir) {
  ExperimentConfig c;
  const Json& m = j.at("module");
  int sources = 0;
  if (m.contains("matrix")) {
    c.matrix = matrix_from_json(m.at("matrix"));
    ++sources;
  }
  if (m.contains("poly")) {
    LaurentPoly f = poly_from_json(m.at("poly"));
    PolyMatrix p(1, 1, f.nvars());
    p(0, 0) = f;
    c.matrix = p;
    ++sources;
  }
  if (m.contains("presentation")) {
    fs::path p = m.at("presentation").get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
    c.presentation_path = p.string();
    ++sources;
  }
  if (m.contains("presentation_text")) {
    c.presentation_text = m.at("presentation_text").get<std::string>();
    ++sources;
  }
  if (sources != 1) throw std::invalid_argument("config: module needs exactly one of matrix, poly, presentation, presentation_text");
  c.branched = m.value("branched", false);

  c.sequence = parse_sequence(j.at("sequence"));
  c.seed = j.value("seed", std::uint64_t{1});
  c.mahler.seed = c.seed;
  if (j.contains("mahler")) {
    const Json& mj = j.at("mahler");
    c.mahler.method = mj.value("method", std::string("auto"));
    c.mahler.samples = mj.value("samples", c.mahler.samples);
    c.mahler.seed = mj.value("seed", c.seed);
    c.mahler.tol = mj.value("tol", c.mahler.tol);
    if (mj.contains("schedule")) c.mahler.schedule = mj.at("schedule").get<std::vector<IntVec>>();
  }
  c.output_dir = j.value("output", std::string());
  c.jobs = j.value("jobs", 1u);
  c.force = j.value("force", false);
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  return from_json(read_json_file(path), fs::path(path).parent_path().string());
}

namespace {

/// The unbranched module and, when a presentation is the source, the meridian choice.
struct Source {
  PolyMatrix base;
  std::size_t nvars;
  std::optional<GroupPresentation> presentation;
};

Source load_source(const ExperimentConfig& c) {
  if (c.matrix) return {*c.matrix, c.matrix->nvars(), std::nullopt};
  GroupPresentation p = c.presentation_path ? GroupPresentation::load(*c.presentation_path) : GroupPresentation::parse(*c.presentation_text);
  PolyMatrix d2 = alexander_complex(p).boundary(2);
  return {d2, p.nvars, p};
}

PresentedModule module_from(const Source& s, bool branched) {
  if (!branched) return PresentedModule(s.base);
  if (s.presentation) return branched_module(*s.presentation);
  return branched_module(s.base, s.nvars);
}

}  // namespace

PresentedModule build_module(const ExperimentConfig& config) { return module_from(load_source(config), config.branched); }

std::vector<Subgroup> build_sequence(const SequenceSpec& spec, std::size_t nvars) {
  std::vector<Subgroup> out;
  if (spec.type == "cyclic") {
    if (nvars != 1) throw std::invalid_argument("cyclic sequences need a one-variable module; use diagonal or gamma_sj");
    for (std::int64_t l = spec.from; l <= spec.to; l += spec.step) out.push_back(Subgroup::cyclic(l));
  } else if (spec.type == "diagonal") {
    for (std::int64_t d = spec.from; d <= spec.to; d += spec.step) out.push_back(Subgroup::diagonal(IntVec(nvars, d)));
  } else if (spec.type == "gamma_sj") {
    if (spec.kappa.size() != nvars) throw std::invalid_argument("gamma_sj: kappa must have one entry per variable");
    Direction kappa(unit_direction(spec.kappa));
    for (std::size_t i = 0; i < spec.s_values.size(); ++i) {
      const std::int64_t s = spec.s_values[i];
      IntVec k = converging_k_sequence(kappa, s, SearchBudget{spec.max_entry});
      const std::int64_t j = spec.j_values.empty() ? spec.j_factor * s : spec.j_values[i % spec.j_values.size()];
      out.push_back(gamma_sj(k, j));
    }
  } else if (spec.type == "explicit") {
    for (const auto& g : spec.subgroups) {
      if (g.nvars() != nvars) throw std::invalid_argument("explicit subgroup has the wrong dimension");
      out.push_back(g);
    }
  } else {
    throw std::invalid_argument("unknown sequence type '" + spec.type + "'");
  }
  return out;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ExperimentReport run(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  Source src = load_source(config);
  PresentedModule module = module_from(src, config.branched);
  ExperimentReport report;
  UnitNormalForm d = delta(module);
  report.delta = d.to_string();
  report.target = mahler(d.poly(), config.mahler);
  const double t_target = seconds_since(t_start);

  std::vector<Subgroup> seq = build_sequence(config.sequence, module.nvars());
  std::vector<FinAbGroup> groups;
  groups.reserve(seq.size());
  for (const auto& g : seq) {
    groups.emplace_back(g);
    check_size(groups.back().order(), module.generators(), config.force);
  }

  // The product formula cross-check applies to knots in branched mode.
  std::optional<LaurentPoly> oracle_poly;
  if (config.branched && module.nvars() == 1) oracle_poly = delta(PresentedModule(src.base)).poly();

  std::vector<SampleRecord> records(seq.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < seq.size();) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        TorsionResult r = analyze(module, groups[i]);
        SampleRecord rec;
        rec.sample = make_sample(seq[i], groups[i], r.torsion_order, r.betti);
        if (oracle_poly) {
          try {
            rec.oracle = cyclic_branched_oracle(*oracle_poly, static_cast<std::int64_t>(groups[i].order()));
            rec.oracle_note = *rec.oracle == r.torsion_order ? "agrees" : "DISAGREES";
          } catch (const std::domain_error& e) {
            rec.oracle_note = "undefined: root-of-unity zero, SNF only";
          }
        }
        rec.seconds = seconds_since(t0);
        records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(std::max<std::size_t>(seq.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(records.begin(), records.end(), [](const SampleRecord& a, const SampleRecord& b) { return a.sample.index < b.sample.index; });
  report.samples = std::move(records);
  if (!report.samples.empty()) report.final_gap = std::fabs(report.samples.back().sample.growth_stat - report.target.value);

  report.metadata["version"] = "0.1.0";
  report.metadata["module"] = {{"nvars", module.nvars()}, {"generators", module.generators()}, {"relations", module.relations()}, {"branched", config.branched}};
  report.metadata["sequence"] = config.sequence.type;
  report.metadata["final_gap_label"] = "gap at largest index";
  report.metadata["timings"] = {{"target_seconds", t_target}, {"total_seconds", seconds_since(t_start)}};

  if (!config.output_dir.empty()) {
    fs::create_directories(config.output_dir);
    std::ofstream csv(fs::path(config.output_dir) / "samples.csv");
    csv << report.csv();
    std::ofstream js(fs::path(config.output_dir) / "report.json");
    js << report.to_json().dump(2) << "\n";
    if (!csv || !js) throw std::runtime_error("failed to write results to " + config.output_dir);
  }
  return report;
}

Json ExperimentReport::to_json(bool with_timings) const {
  Json samples_json = Json::array();
  for (const auto& r : samples) {
    const GrowthSample& s = r.sample;
    Json e = {{"gamma", Json::parse(s.gamma)},
              {"index", s.index},
              {"min_norm", s.min_norm},
              {"torsion_order", to_decimal(s.torsion_order)},
              {"log_torsion", s.log_torsion},
              {"growth_stat", s.growth_stat},
              {"betti", s.betti},
              {"direction", s.direction},
              {"source", s.source}};
    if (r.oracle) e["oracle"] = to_decimal(*r.oracle);
    if (!r.oracle_note.empty()) e["oracle_note"] = r.oracle_note;
    if (with_timings) e["seconds"] = r.seconds;
    samples_json.push_back(e);
  }
  Json meta = metadata;
  if (!with_timings) meta.erase("timings");
  Json target_json = target.to_json();
  target_json["delta"] = delta;
  return {{"target", target_json}, {"samples", samples_json}, {"final_gap", final_gap}, {"metadata", meta}};
}

std::string ExperimentReport::csv() const {
  std::ostringstream os;
  os << GrowthSample::csv_header() << "\n";
  for (const auto& r : samples) os << r.sample.csv_row() << "\n";
  return os.str();
}

}  // namespace torsionlab
