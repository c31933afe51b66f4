// Field snapshot files (CSV and binary), comparison, checksums and the
// per-kind diagnostics streams.
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebench/state.hpp"

namespace ebench {

enum class FieldFormat { csv, binary };

// One snapshot: primitive values at cell centers, rows ordered with y outer
// and x inner.
struct FieldFile {
  std::string case_id;
  double t = 0.0;
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  double gamma = 1.4;
  std::vector<double> x, y, rho, u, v, p;

  std::size_t size() const { return rho.size(); }
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Snapshot of a conserved-variable field.
FieldFile snapshot(const Field& f, const GasModel& gas, const std::string& case_id, double t);
// Snapshot of a field whose components already hold (rho, u, v, p).
FieldFile snapshot_primitive(const Field& f, double gamma, const std::string& case_id, double t);

std::string header_line(const FieldFile& f);

void write_field(const FieldFile& f, const std::filesystem::path& path, FieldFormat fmt);
// Detects the format from the leading bytes.
FieldFile read_field(const std::filesystem::path& path);

struct ComponentNorms {
  double l1 = 0.0;    // mean absolute difference
  double linf = 0.0;  // max absolute difference
};

struct CompareResult {
  ComponentNorms rho, u, v, p;
  double max_l1() const;
  double max_linf() const;
};

class GridMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CompareResult compare_fields(const FieldFile& a, const FieldFile& b);

std::string sha256_file(const std::filesystem::path& path);

// Writes `text` to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& text);

// Appends rows to diag_<kind>.csv files in one directory.
class DiagnosticsStream {
 public:
  explicit DiagnosticsStream(std::filesystem::path dir);
  void record(const std::string& kind, const std::vector<std::string>& columns, double t,
              const std::vector<double>& values);
  std::vector<std::filesystem::path> files() const;

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::unique_ptr<std::ofstream>> streams_;
};

}  // namespace ebench
