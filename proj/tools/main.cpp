#include "torsionlab/checks.hpp"
#include "torsionlab/growthlab.hpp"
#include "torsionlab/json_io.hpp"
#include "torsionlab/mahler.hpp"
#include "torsionlab/presmod.hpp"
#include "torsionlab/torsion.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace torsionlab;

namespace {

struct ModuleArgs {
  std::string poly;
  std::string matrix_file;
  std::string presentation_file;
  bool branched = false;

  void add_to(CLI::App* app, bool allow_branched = true) {
    auto* g = app->add_option_group("module", "module source (exactly one)");
    g->add_option("--poly", poly, "cyclic module R/(f), e.g. \"3 + t1 + t2\"");
    g->add_option("--matrix", matrix_file, "presentation matrix JSON file");
    g->add_option("--presentation", presentation_file, "group presentation file (Fox calculus)");
    g->require_option(1);
    if (allow_branched) app->add_flag("--branched", branched, "use the branched-cover module");
  }

  std::optional<GroupPresentation> presentation() const {
    if (presentation_file.empty()) return std::nullopt;
    return GroupPresentation::load(presentation_file);
  }

  PolyMatrix base_matrix() const {
    if (!poly.empty()) {
      LaurentPoly f = parse_poly(poly);
      PolyMatrix m(1, 1, f.nvars());
      m(0, 0) = f;
      return m;
    }
    if (!matrix_file.empty()) return matrix_from_json(read_json_file(matrix_file));
    return alexander_complex(*presentation()).boundary(2);
  }

  PresentedModule module() const {
    if (!branched) return PresentedModule(base_matrix());
    if (auto p = presentation()) return branched_module(*p);
    PolyMatrix m = base_matrix();
    return branched_module(m, m.nvars());
  }
};

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoll(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torsionlab: torsion growth of modules over Laurent polynomial rings"};
  app.require_subcommand(1);

  // alexander
  ModuleArgs alex_args;
  auto* alex = app.add_subcommand("alexander", "Alexander polynomials Delta_j and Delta(M)");
  alex_args.add_to(alex);

  // mahler
  std::string m_poly, m_method = "auto", m_schedule;
  std::uint64_t m_samples = 1'000'000, m_seed = 1;
  double m_tol = 1e-9;
  bool m_kronecker = false;
  auto* mah = app.add_subcommand("mahler", "Mahler measure of a polynomial");
  mah->add_option("--poly", m_poly, "polynomial, e.g. \"1 + t1 + t2\"")->required();
  mah->add_option("--method", m_method, "auto | jensen | lawton | quadrature")->check(CLI::IsMember({"auto", "jensen", "lawton", "quadrature"}));
  mah->add_option("--samples", m_samples, "quadrature sample count");
  mah->add_option("--seed", m_seed, "quadrature seed");
  mah->add_option("--schedule", m_schedule, "Lawton k-vectors, e.g. \"1,10;1,20;1,40\"");
  mah->add_option("--tol", m_tol, "Jensen tolerance");
  mah->add_flag("--kronecker", m_kronecker, "also report whether f is a product of cyclotomic polynomials");

  // torsion
  ModuleArgs tor_args;
  std::int64_t t_cyclic = 0;
  std::string t_diagonal, t_gamma, t_gamma_k;
  std::int64_t t_j = 1;
  bool t_force = false;
  auto* tor = app.add_subcommand("torsion", "torsion order and Betti number over one finite quotient");
  tor_args.add_to(tor);
  auto* sub = tor->add_option_group("subgroup", "finite-index subgroup (exactly one)");
  sub->add_option("--cyclic", t_cyclic, "Gamma = l Z (one variable)");
  sub->add_option("--diagonal", t_diagonal, "Gamma = d1 Z x ... x dn Z, e.g. \"4,4\"");
  sub->add_option("--gamma", t_gamma, "generator matrix JSON, columns = generators");
  sub->add_option("--gamma-sj", t_gamma_k, "Gamma = k^perp + j k for coprime k, e.g. \"1,2\" (with --j)");
  sub->require_option(1);
  tor->add_option("--j", t_j, "j for --gamma-sj");
  tor->add_flag("--force", t_force, "skip the size guard");

  // growth
  std::string g_config, g_out;
  std::uint64_t g_seed = 0;
  unsigned g_jobs = 0;
  bool g_force = false;
  auto* gro = app.add_subcommand("growth", "run a growth experiment from a JSON config");
  gro->add_option("--config", g_config, "experiment config JSON")->required()->check(CLI::ExistingFile);
  gro->add_option("--out", g_out, "output directory (overrides the config)");
  gro->add_option("--seed", g_seed, "seed (overrides the config)");
  gro->add_option("--jobs", g_jobs, "parallel samples (overrides the config)");
  gro->add_flag("--force", g_force, "skip the size guard");

  // fox
  std::string f_presentation;
  auto* fox = app.add_subcommand("fox", "chain complex and module of a group presentation");
  fox->add_option("--presentation", f_presentation, "presentation file")->required()->check(CLI::ExistingFile);

  // branched
  ModuleArgs br_args;
  auto* bra = app.add_subcommand("branched", "branched-cover presentation [[d2, 0], [I, T]]");
  br_args.add_to(bra, false);

  // groupalg-check
  CheckOptions c_opts;
  auto* chk = app.add_subcommand("groupalg-check", "randomized identity and property batteries");
  chk->add_option("--max-order", c_opts.max_order, "largest |A| in the group-algebra batteries");
  chk->add_option("--cases", c_opts.cases, "cases per battery");
  chk->add_option("--seed", c_opts.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (alex->parsed()) {
      PresentedModule m = alex_args.module();
      Json out;
      out["rank"] = rank(m);
      Json list = Json::array();
      for (std::size_t j = 0; j <= m.generators(); ++j) list.push_back(alexander(m, j).to_string());
      out["delta_j"] = list;
      out["delta"] = delta(m).to_string();
      if (!alex_args.presentation_file.empty() && !alex_args.branched) {
        // Link convention: Delta_i(link) = Delta_{i+1}(module of the Fox matrix).
        Json shifted = Json::array();
        for (std::size_t j = 1; j < list.size(); ++j) shifted.push_back(list[j]);
        out["link_convention"] = shifted;
      }
      print(out);
    } else if (mah->parsed()) {
      LaurentPoly f = parse_poly(m_poly);
      MahlerOptions o;
      o.method = m_method;
      o.samples = m_samples;
      o.seed = m_seed;
      o.tol = m_tol;
      if (!m_schedule.empty()) {
        std::stringstream ss(m_schedule);
        for (std::string k; std::getline(ss, k, ';');) o.schedule.push_back(parse_int_list(k));
      }
      Json out = mahler(f, o).to_json();
      if (m_kronecker) out["kronecker"] = is_kronecker(f);
      print(out);
    } else if (tor->parsed()) {
      PresentedModule m = tor_args.module();
      const std::size_t n = m.nvars();
      std::optional<Subgroup> g;
      if (t_cyclic > 0) g = Subgroup::cyclic(t_cyclic);
      if (!t_diagonal.empty()) g = Subgroup::diagonal(parse_int_list(t_diagonal));
      if (!t_gamma.empty()) g = subgroup_from_json(Json::parse(t_gamma));
      if (!t_gamma_k.empty()) g = gamma_sj(parse_int_list(t_gamma_k), t_j);
      if (!g) throw std::invalid_argument("no subgroup given");
      if (g->nvars() != n) throw std::invalid_argument("subgroup dimension does not match the module's variable count");
      FinAbGroup a(*g);
      check_size(a.order(), m.generators(), t_force);
      TorsionResult r = analyze(m, a);
      Json factors = Json::array();
      for (const auto& f : r.invariant_factors) factors.push_back(to_decimal(f));
      print({{"gamma", subgroup_to_json(*g)},
             {"index", r.index},
             {"torsion_order", to_decimal(r.torsion_order)},
             {"betti", r.betti},
             {"invariant_factors", factors},
             {"growth_stat", log_abs(r.torsion_order) / static_cast<double>(r.index)}});
    } else if (gro->parsed()) {
      ExperimentConfig c = ExperimentConfig::load(g_config);
      if (!g_out.empty()) c.output_dir = g_out;
      if (g_seed != 0) c.seed = c.mahler.seed = g_seed;
      if (g_jobs != 0) c.jobs = g_jobs;
      if (g_force) c.force = true;
      ExperimentReport r = run(c);
      Json out = r.to_json();
      out.erase("samples");
      out["sample_count"] = r.samples.size();
      if (!r.samples.empty()) out["last_growth_stat"] = r.samples.back().sample.growth_stat;
      if (!c.output_dir.empty()) out["output"] = c.output_dir;
      print(out);
    } else if (fox->parsed()) {
      GroupPresentation p = GroupPresentation::load(f_presentation);
      ChainComplex cc = alexander_complex(p);
      Json rels = Json::array();
      for (const auto& w : p.relators) rels.push_back(p.word_to_string(w));
      print({{"generators", p.gens},
             {"relators", rels},
             {"d1", matrix_to_json(cc.boundary(1))},
             {"d2", matrix_to_json(cc.boundary(2))},
             {"d2_text", cc.boundary(2).to_string()}});
    } else if (bra->parsed()) {
      br_args.branched = true;
      PresentedModule m = br_args.module();
      print({{"matrix", matrix_to_json(m.matrix())},
             {"matrix_text", m.matrix().to_string()},
             {"delta", delta(m).to_string()},
             {"delta_unbranched", delta(PresentedModule(br_args.base_matrix())).to_string()}});
    } else if (chk->parsed()) {
      std::size_t failed = 0;
      for (const auto& r : run_all_checks(c_opts)) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases - r.failures << "/" << r.cases << " passed";
        if (!r.passed()) std::cout << " (" << r.first_failure << ")";
        std::cout << "\n";
        failed += r.passed() ? 0 : 1;
      }
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "failure"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
