// Run orchestration shared by the command-line tool and the acceptance suite.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebench/cases.hpp"
#include "ebench/integrator.hpp"
#include "ebench/io.hpp"

namespace ebench {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string case_id;
  int cells = 0;          // cells along x (y scaled by the aspect ratio); 0 = case default
  double inv_h = 0.0;     // mesh spacing 1/inv_h in both directions; 0 = unset
  WenoVariant weno = WenoVariant::js;
  std::string lambda_rule = "dx^0.75";  // "dx^<a>" or a number
  double weno_eps = 1e-6;
  std::optional<ReconMode> recon;  // unset: the case's default
  double cfl = 0.4;
  std::optional<double> t_end;
  std::vector<double> output_times;  // empty: the case's
  std::filesystem::path out_dir = "out";
  int threads = 1;
  double tau_eps = 0.05;
  double tau_c = 1.0;
  FieldFormat format = FieldFormat::csv;
  int gauss_points = 2;
  RelaxationForm relaxation = RelaxationForm::euler;
  StageHorizon stage_horizon = StageHorizon::full;
};

double lambda_from_rule(const std::string& rule, double dx);

// Grid and scheme implied by a configuration.
Grid run_grid(const CaseSpec& c, const RunConfig& cfg);
SchemeConfig scheme_config(const RunConfig& cfg, const CaseSpec& c, const Grid& g);
// Case with the configuration's end time and output times applied.
CaseSpec configured_case(const RunConfig& cfg);

struct FailureRecord {
  std::string message;
  double t = 0.0;
  int i = -1, j = -1;
};

struct RunManifest {
  RunConfig config;
  std::string case_id;
  int nx = 0, ny = 0;
  std::map<std::string, double> wall_seconds;  // per phase
  std::int64_t steps = 0;
  std::int64_t fallbacks = 0;
  std::int64_t redone_steps = 0;  // steps recomputed with first-order cells
  Vec4 conservation_drift{};  // relative, per component
  std::map<std::string, std::string> checksums;  // output file name -> sha256
  std::optional<FailureRecord> failure;
  double t_final = 0.0;

  std::string to_json() const;
};

// Runs a case and writes snapshots, diagnostics and manifest.json into
// cfg.out_dir.  Throws std::invalid_argument for bad configurations; step
// failures are reported through the manifest.
RunManifest run(const RunConfig& cfg, std::ostream* log = nullptr);

// Writes the oracle field for a case at time t in the solver's file format.
// Throws std::invalid_argument for cases without an oracle.
FieldFile emit_reference(const RunConfig& cfg, double t, const std::filesystem::path& path);
std::vector<std::string> oracle_cases();

struct ConvergenceRow {
  int nx = 0;
  double error = 0.0;  // relative L1 density error
  double order = 0.0;  // observed order against the previous row
};
// Runs the oracle-backed case on each mesh (cells along x) to its end time.
std::vector<ConvergenceRow> convergence(const RunConfig& cfg, const std::vector<int>& meshes,
                                        std::ostream* log = nullptr);

// Flat key=value text of the configuration (the CLI's config-file format;
// keys are the long flag names).
std::string config_text(const RunConfig& cfg);
// Applies one key=value entry; throws std::invalid_argument for unknown keys
// or bad values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);
// Applies every entry of a config file's text ('#' comments allowed).
void apply_config_text(RunConfig& cfg, const std::string& text);

std::string to_string(WenoVariant v);
WenoVariant weno_from_string(const std::string& s);

}  // namespace ebench
