#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "virfuse/virfuse.hpp"

namespace {

using virfuse::Rational;

std::filesystem::path resolve_cache(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("VIRFUSE_CACHE"); env && *env) return env;
  return ".virfuse-cache";
}

void emit(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonOpts {
  std::string cache;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--cache", opts.cache, "singular-vector cache directory");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
}

int run_singular(int p, int q, const std::string& t_str, int max_level, const CommonOpts& opts) {
  Rational t = Rational::parse(t_str);
  virfuse::SingularSolver solver(max_level, resolve_cache(opts.cache));
  virfuse::Operator op = solver.solve(p, q, t);
  auto [c, h] = virfuse::kac_weight(p, q, t);
  if (opts.format == "table") {
    std::cout << "p = " << p << "\nq = " << q << "\nt = " << t.str() << "\nc = " << c.str()
              << "\nh = " << h.str() << "\nO = " << op.str() << "\n";
    return 0;
  }
  nlohmann::ordered_json j;
  j["p"] = p;
  j["q"] = q;
  j["t"] = t.str();
  j["c"] = c.str();
  j["h"] = h.str();
  j["terms"] = op;
  emit(j);
  return 0;
}

int run_project_generator(int m, int n, const std::string& t_str, const CommonOpts& opts) {
  Rational t = Rational::parse(t_str);
  virfuse::SingularSolver solver(std::max(12, m - 1), resolve_cache(opts.cache));
  virfuse::IdealGenerator gen = virfuse::fusion_generator(m, n, t, solver);
  if (opts.format == "table") {
    std::cout << "m = " << m << "\nn = " << n << "\nt = " << t.str()
              << "\ngen = " << gen.gen.str() << "\nlabels =";
    for (const auto& [label, mult] : gen.labels) std::cout << " " << label << ":" << mult;
    std::cout << "\ncomplete = " << (gen.complete ? "true" : "false") << "\n";
    return 0;
  }
  nlohmann::ordered_json j = gen;
  emit(j);
  return 0;
}

int run_project_raw(int p, int q, const std::string& t_str, const std::string& lambda_str,
                    const CommonOpts& opts) {
  Rational t = Rational::parse(t_str);
  Rational lambda = Rational::parse(lambda_str);
  virfuse::SingularSolver solver(12, resolve_cache(opts.cache));
  virfuse::Operator op = solver.solve(p, q, t);
  virfuse::DensityParams params{virfuse::Poly(lambda), virfuse::Poly::x()};
  virfuse::Poly f = virfuse::project_f(op, params);
  if (opts.format == "table") {
    std::cout << "f = " << f.str() << "\n";
    return 0;
  }
  nlohmann::ordered_json j = f;
  emit(j);
  return 0;
}

int run_fusion(int max_label, const std::string& t_str, int jobs, const CommonOpts& opts) {
  Rational t = Rational::parse(t_str);
  virfuse::SingularSolver solver(std::max(12, max_label - 1), resolve_cache(opts.cache));
  virfuse::FusionTable table = virfuse::fusion_table(max_label, t, jobs, solver);
  if (opts.format == "table") {
    std::cout << table.grid();
    return 0;
  }
  nlohmann::ordered_json j = table;
  emit(j);
  return 0;
}

int run_verify(const std::string& suite, int max_level, int max_label, unsigned long seed,
               int jobs, const CommonOpts& opts) {
  virfuse::SingularSolver solver(std::max(max_level, max_label - 1), resolve_cache(opts.cache));
  std::vector<virfuse::SuiteReport> reports;
  if (suite == "ff") {
    reports.push_back(virfuse::verify_ff(max_level, seed, solver));
  } else if (suite == "zhu") {
    reports.push_back(virfuse::verify_zhu(200, max_level, seed));
  } else if (suite == "fusion") {
    reports.push_back(virfuse::verify_fusion(max_label, seed, jobs, solver));
  } else {
    reports = virfuse::verify_all(max_level, max_label, seed, jobs, solver);
  }

  bool ok = true;
  if (opts.format == "table") {
    for (const auto& r : reports) {
      std::cout << r.summary() << "\n";
      for (const auto& note : r.notes) std::cout << "  " << note << "\n";
      ok = ok && r.ok();
    }
  } else {
    nlohmann::ordered_json j;
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      j["suites"].push_back(r);
      ok = ok && r.ok();
    }
    emit(j);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Virasoro singular vectors, density projections, and fusion tables"};
  app.require_subcommand(1);

  CommonOpts sing_opts;
  int sing_p = 0, sing_q = 0, sing_cap = 12;
  std::string sing_t;
  CLI::App* sing = app.add_subcommand("singular", "solve a singular vector at the Kac point");
  sing->add_option("--p", sing_p, "first Kac index")->required();
  sing->add_option("--q", sing_q, "second Kac index")->required();
  sing->add_option("--t", sing_t, "parameter t as an exact rational")->required();
  sing->add_option("--max-level", sing_cap, "solver level cap");
  add_common(sing, sing_opts);

  CommonOpts proj_opts;
  int proj_m = 0, proj_n = 0, proj_p = 0, proj_q = 0;
  std::string proj_t, proj_lambda = "0";
  CLI::App* proj = app.add_subcommand("project", "project a singular operator onto the density module");
  auto* opt_m = proj->add_option("--m", proj_m, "first label (ideal-generator mode)");
  auto* opt_n = proj->add_option("--n", proj_n, "second label (ideal-generator mode)");
  auto* opt_p = proj->add_option("--p", proj_p, "first Kac index (raw mode)");
  auto* opt_q = proj->add_option("--q", proj_q, "second Kac index (raw mode)");
  proj->add_option("--lambda", proj_lambda, "density parameter lambda (raw mode, mu = x)");
  proj->add_option("--t", proj_t, "parameter t as an exact rational")->required();
  add_common(proj, proj_opts);

  CommonOpts fus_opts;
  int fus_max = 9, fus_jobs = 1;
  std::string fus_t;
  CLI::App* fus = app.add_subcommand("fusion", "assemble the fusion-rule table");
  fus->add_option("--t", fus_t, "parameter t as an exact rational")->required();
  fus->add_option("--max-label", fus_max, "largest module label");
  fus->add_option("--jobs", fus_jobs, "parallel workers over label pairs");
  add_common(fus, fus_opts);

  CommonOpts ver_opts;
  int ver_level = 8, ver_label = 9, ver_jobs = 1;
  unsigned long ver_seed = 42;
  std::string ver_suite = "all";
  CLI::App* ver = app.add_subcommand("verify", "run the verification suites");
  ver->add_option("--suite", ver_suite, "suite to run")
      ->check(CLI::IsMember({"ff", "zhu", "fusion", "all"}));
  ver->add_option("--max-level", ver_level, "largest singular-vector level");
  ver->add_option("--max-label", ver_label, "largest table label");
  ver->add_option("--seed", ver_seed, "random seed");
  ver->add_option("--jobs", ver_jobs, "parallel workers");
  add_common(ver, ver_opts);

  try {
    app.parse(argc, argv);

    if (sing->parsed()) return run_singular(sing_p, sing_q, sing_t, sing_cap, sing_opts);
    if (proj->parsed()) {
      bool gen_mode = opt_m->count() > 0 || opt_n->count() > 0;
      bool raw_mode = opt_p->count() > 0 || opt_q->count() > 0;
      if (gen_mode == raw_mode) {
        std::cerr << "project: give either --m and --n, or --p and --q\n";
        return 2;
      }
      if (gen_mode) {
        if (opt_m->count() == 0 || opt_n->count() == 0) {
          std::cerr << "project: ideal-generator mode needs both --m and --n\n";
          return 2;
        }
        return run_project_generator(proj_m, proj_n, proj_t, proj_opts);
      }
      if (opt_p->count() == 0 || opt_q->count() == 0) {
        std::cerr << "project: raw mode needs both --p and --q\n";
        return 2;
      }
      return run_project_raw(proj_p, proj_q, proj_t, proj_lambda, proj_opts);
    }
    if (fus->parsed()) return run_fusion(fus_max, fus_t, fus_jobs, fus_opts);
    if (ver->parsed()) return run_verify(ver_suite, ver_level, ver_label, ver_seed, ver_jobs, ver_opts);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const virfuse::LevelCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const virfuse::SolveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
