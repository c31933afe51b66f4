// euler-bench: run benchmark cases, emit reference fields, compare outputs.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ebench/driver.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kTolerance = 3 };

// Flags shared by the commands that configure a run.  Each flag's long name
// is also its config-file key.
struct RunFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  std::string config_file;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    opts[key] = app->add_option("--" + key, values[key], help);
  }

  void add_scheme(CLI::App* app) {
    add(app, "case", "case id, e.g. four-shocks or vortex-sheets-same:p0=0.1");
    add(app, "cells", "cells along x (y follows the domain aspect ratio)");
    add(app, "mesh", "mesh spacing as 1/N");
    add(app, "weno", "js | z | z+");
    add(app, "lambda", "Z+ lambda: dx^<a> or a number");
    add(app, "weno-eps", "WENO epsilon");
    add(app, "recon", "char | comp");
    add(app, "cfl", "Courant number");
    add(app, "threads", "worker threads (capped by EULER_BENCH_THREADS)");
    add(app, "tau-eps", "collision time: base coefficient");
    add(app, "tau-c", "collision time: pressure-jump coefficient");
    add(app, "gauss", "Gauss points per 2D interface: 1 | 2");
    add(app, "relaxation", "euler | single-tau");
    add(app, "stage-horizon", "full | half");
    add(app, "format", "csv | bin");
    app->add_option("--config", config_file, "key=value file; flags override it");
  }

  ebench::RunConfig resolve() const {
    ebench::RunConfig cfg;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw std::invalid_argument("cannot read config file " + config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      ebench::apply_config_text(cfg, ss.str());
    }
    for (const auto& [key, opt] : opts)
      if (opt->count() > 0) ebench::apply_config_entry(cfg, key, values.at(key));
    if (cfg.case_id.empty()) throw std::invalid_argument("--case is required");
    return cfg;
  }
};

void print_norms(const ebench::CompareResult& r) {
  auto row = [](const char* name, const ebench::ComponentNorms& n) {
    std::printf("%-4s L1=%.6e Linf=%.6e\n", name, n.l1, n.linf);
  };
  row("rho", r.rho);
  row("u", r.u);
  row("v", r.v);
  row("p", r.p);
}

std::vector<int> parse_meshes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int n = std::stoi(item);
    if (n <= 0) throw std::invalid_argument("meshes must be positive");
    out.push_back(n);
  }
  if (out.size() < 2) throw std::invalid_argument("--meshes needs at least two meshes");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark driver for the fourth-order gas-kinetic Euler solver"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a case and write snapshots, diagnostics, manifest");
  RunFlags run_flags;
  run_flags.add_scheme(run);
  run_flags.add(run, "t-end", "end time");
  run_flags.add(run, "output-times", "comma-separated output times");
  run_flags.add(run, "out", "output directory");

  auto* ref = app.add_subcommand("reference", "write the oracle field of a case");
  RunFlags ref_flags;
  ref_flags.add(ref, "case", "oracle-backed case id");
  ref_flags.add(ref, "cells", "cells along x");
  ref_flags.add(ref, "mesh", "mesh spacing as 1/N");
  ref_flags.add(ref, "format", "csv | bin");
  double ref_t = -1.0;
  std::string ref_out;
  ref->add_option("--t", ref_t, "time (default: the case end time)");
  ref->add_option("--out", ref_out, "output file")->required();

  auto* cmp = app.add_subcommand("compare", "error norms between two field files");
  std::string file_a, file_b;
  double tol = -1.0;
  cmp->add_option("a", file_a, "first file")->required();
  cmp->add_option("b", file_b, "second file")->required();
  auto* tol_opt = cmp->add_option("--tol", tol, "fail (exit 3) if any L1 norm exceeds this");

  auto* list = app.add_subcommand("list-cases", "print registered case ids");

  auto* conv = app.add_subcommand("convergence", "run a mesh sequence and print observed orders");
  RunFlags conv_flags;
  conv_flags.add_scheme(conv);
  conv_flags.add(conv, "t-end", "end time");
  std::string meshes = "32,64,128";
  conv->add_option("--meshes", meshes, "comma-separated cells along x");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*list) {
      for (const auto& n : ebench::list_cases()) std::cout << n << "\n";
      return kOk;
    }
    if (*run) {
      ebench::RunConfig cfg = run_flags.resolve();
      ebench::RunManifest m = ebench::run(cfg, &std::cerr);
      std::cout << "case " << m.case_id << " grid " << m.nx << "x" << m.ny << " steps " << m.steps
                << " t " << m.t_final << " fallbacks " << m.fallbacks << "\n";
      std::cout << "output " << cfg.out_dir.string() << "\n";
      if (m.failure) {
        std::cerr << "numerical failure: " << m.failure->message << "\n";
        return kNumerical;
      }
      return kOk;
    }
    if (*ref) {
      ebench::RunConfig cfg = ref_flags.resolve();
      double t = ref_t;
      if (t <= 0.0) t = ebench::make_case(cfg.case_id).t_end;
      ebench::FieldFile f = ebench::emit_reference(cfg, t, ref_out);
      std::cout << "reference " << f.case_id << " t " << f.t << " grid " << f.nx << "x" << f.ny
                << " -> " << ref_out << "\n";
      return kOk;
    }
    if (*cmp) {
      ebench::CompareResult r =
          ebench::compare_fields(ebench::read_field(file_a), ebench::read_field(file_b));
      print_norms(r);
      if (tol_opt->count() > 0 && r.max_l1() > tol) {
        std::cerr << "tolerance exceeded: max L1 " << r.max_l1() << " > " << tol << "\n";
        return kTolerance;
      }
      return kOk;
    }
    if (*conv) {
      ebench::RunConfig cfg = conv_flags.resolve();
      auto rows = ebench::convergence(cfg, parse_meshes(meshes));
      std::printf("%8s %14s %8s\n", "nx", "rel_L1", "order");
      for (const auto& r : rows) std::printf("%8d %14.6e %8.3f\n", r.nx, r.error, r.order);
      return kOk;
    }
  } catch (const ebench::AdmissibilityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ebench::GridMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ebench::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
