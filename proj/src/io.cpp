#include "ebench/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace ebench {

namespace {

constexpr char kMagic[16] = {'E', 'U', 'L', 'E', 'R', 'B', 'E', 'N',
                             'C', 'H', '-', 'F', 'L', 'D', '1', '\0'};
constexpr const char* kColumns = "x,y,rho,u,v,p";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& where) {
  const char* b = s.c_str();
  char* e = nullptr;
  double v = std::strtod(b, &e);
  if (e == b || *e != '\0') throw FormatError(where + ": bad number '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

void parse_header(const std::string& line, FieldFile& f) {
  const std::string prefix = "# euler-bench v1;";
  if (line.rfind(prefix, 0) != 0) throw FormatError("line 1: missing '# euler-bench v1' header");
  std::istringstream is(line.substr(prefix.size()));
  std::string item;
  bool have_nx = false, have_ny = false;
  while (std::getline(is, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw FormatError("line 1: bad header item '" + item + "'");
    std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    if (k == "case") {
      f.case_id = v;
    } else if (k == "t") {
      f.t = parse_double(v, "line 1");
    } else if (k == "nx") {
      f.nx = static_cast<int>(parse_double(v, "line 1"));
      have_nx = true;
    } else if (k == "ny") {
      f.ny = static_cast<int>(parse_double(v, "line 1"));
      have_ny = true;
    } else if (k == "dx") {
      f.dx = parse_double(v, "line 1");
    } else if (k == "dy") {
      f.dy = parse_double(v, "line 1");
    } else if (k == "gamma") {
      f.gamma = parse_double(v, "line 1");
    }
  }
  if (!have_nx || !have_ny || f.nx <= 0 || f.ny <= 0)
    throw FormatError("line 1: header needs positive nx and ny");
}

void reserve(FieldFile& f) {
  std::size_t n = static_cast<std::size_t>(f.nx) * f.ny;
  for (auto* c : {&f.x, &f.y, &f.rho, &f.u, &f.v, &f.p}) {
    c->clear();
    c->reserve(n);
  }
}

FieldFile read_csv(std::istream& in) {
  FieldFile f;
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file");
  parse_header(line, f);
  if (!std::getline(in, line) || trim(line) != kColumns)
    throw FormatError("line 2: expected column line 'x,y,rho,u,v,p'");
  reserve(f);
  int lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::array<double, 6> r{};
    std::istringstream ls(line);
    std::string cell;
    int k = 0;
    const std::string where = "line " + std::to_string(lineno);
    while (std::getline(ls, cell, ',')) {
      if (k >= 6) throw FormatError(where + ": too many columns");
      r[k++] = parse_double(trim(cell), where);
    }
    if (k != 6) throw FormatError(where + ": expected 6 columns");
    f.x.push_back(r[0]);
    f.y.push_back(r[1]);
    f.rho.push_back(r[2]);
    f.u.push_back(r[3]);
    f.v.push_back(r[4]);
    f.p.push_back(r[5]);
  }
  if (f.size() != static_cast<std::size_t>(f.nx) * f.ny)
    throw FormatError("row count " + std::to_string(f.size()) + " does not match nx*ny");
  return f;
}

template <class T>
void put_le(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get_le(std::istream& is) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw FormatError("truncated binary file");
  return v;
}

FieldFile read_binary(std::istream& in) {
  char magic[16];
  in.read(magic, 16);
  if (std::memcmp(magic, kMagic, 16) != 0) throw FormatError("bad binary magic");
  auto hlen = get_le<std::uint32_t>(in);
  if (hlen > (1u << 20)) throw FormatError("binary header too long");
  std::string header(hlen, '\0');
  if (!in.read(header.data(), hlen)) throw FormatError("truncated binary header");
  FieldFile f;
  parse_header(header, f);
  auto nx = get_le<std::uint64_t>(in), ny = get_le<std::uint64_t>(in);
  if (nx != static_cast<std::uint64_t>(f.nx) || ny != static_cast<std::uint64_t>(f.ny))
    throw FormatError("binary dimensions disagree with header");
  reserve(f);
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  for (std::size_t k = 0; k < n; ++k) {
    f.x.push_back(get_le<double>(in));
    f.y.push_back(get_le<double>(in));
    f.rho.push_back(get_le<double>(in));
    f.u.push_back(get_le<double>(in));
    f.v.push_back(get_le<double>(in));
    f.p.push_back(get_le<double>(in));
  }
  return f;
}

}  // namespace

FieldFile snapshot_primitive(const Field& fld, double gamma, const std::string& case_id, double t) {
  const Grid& g = fld.grid();
  FieldFile f;
  f.case_id = case_id;
  f.t = t;
  f.nx = g.nx;
  f.ny = g.ny;
  f.dx = g.dx;
  f.dy = g.dy;
  f.gamma = gamma;
  reserve(f);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      Vec4 q = fld.get(i, j);
      f.x.push_back(g.xc(i));
      f.y.push_back(g.dims() == 2 ? g.yc(j) : 0.0);
      f.rho.push_back(q[0]);
      f.u.push_back(q[1]);
      f.v.push_back(q[2]);
      f.p.push_back(q[3]);
    }
  return f;
}

FieldFile snapshot(const Field& fld, const GasModel& gas, const std::string& case_id, double t) {
  const Grid& g = fld.grid();
  Field prim(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      PrimitiveState q = to_primitive(fld.at(i, j), gas);
      prim.set(i, j, {q.rho, q.u, q.v, q.p});
    }
  return snapshot_primitive(prim, gas.gamma, case_id, t);
}

std::string header_line(const FieldFile& f) {
  return "# euler-bench v1; case=" + f.case_id + "; t=" + num(f.t) +
         "; nx=" + std::to_string(f.nx) + "; ny=" + std::to_string(f.ny) + "; dx=" + num(f.dx) +
         "; dy=" + num(f.dy) + "; gamma=" + num(f.gamma);
}

void write_field(const FieldFile& f, const std::filesystem::path& path, FieldFormat fmt) {
  std::ostringstream os;
  if (fmt == FieldFormat::csv) {
    os << header_line(f) << "\n" << kColumns << "\n";
    for (std::size_t k = 0; k < f.size(); ++k)
      os << num(f.x[k]) << ',' << num(f.y[k]) << ',' << num(f.rho[k]) << ',' << num(f.u[k]) << ','
         << num(f.v[k]) << ',' << num(f.p[k]) << '\n';
  } else {
    os.write(kMagic, 16);
    std::string h = header_line(f);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(h.size()));
    os.write(h.data(), static_cast<std::streamsize>(h.size()));
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(f.nx));
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(f.ny));
    for (std::size_t k = 0; k < f.size(); ++k)
      for (double v : {f.x[k], f.y[k], f.rho[k], f.u[k], f.v[k], f.p[k]}) put_le<double>(os, v);
  }
  write_atomic(path, os.str());
}

FieldFile read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  char first = 0;
  in.get(first);
  in.seekg(0);
  try {
    return first == 'E' ? read_binary(in) : read_csv(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

double CompareResult::max_l1() const { return std::max({rho.l1, u.l1, v.l1, p.l1}); }
double CompareResult::max_linf() const { return std::max({rho.linf, u.linf, v.linf, p.linf}); }

CompareResult compare_fields(const FieldFile& a, const FieldFile& b) {
  if (a.nx != b.nx || a.ny != b.ny)
    throw GridMismatch("grid mismatch: " + std::to_string(a.nx) + "x" + std::to_string(a.ny) +
                       " vs " + std::to_string(b.nx) + "x" + std::to_string(b.ny));
  const double tol = 1e-9 * std::max({std::fabs(a.dx), std::fabs(a.dy), 1e-300});
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::fabs(a.x[k] - b.x[k]) > tol || std::fabs(a.y[k] - b.y[k]) > tol)
      throw GridMismatch("grid mismatch: cell centers differ at row " + std::to_string(k));
  auto norms = [&](const std::vector<double>& p, const std::vector<double>& q) {
    ComponentNorms n;
    std::vector<double> d(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      d[k] = std::fabs(p[k] - q[k]);
      n.linf = std::max(n.linf, d[k]);
    }
    n.l1 = d.empty() ? 0.0 : pairwise_sum(d.data(), d.size()) / static_cast<double>(d.size());
    return n;
  };
  return {norms(a.rho, b.rho), norms(a.u, b.u), norms(a.v, b.v), norms(a.p, b.p)};
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 init failed");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

DiagnosticsStream::DiagnosticsStream(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void DiagnosticsStream::record(const std::string& kind, const std::vector<std::string>& columns,
                               double t, const std::vector<double>& values) {
  auto it = streams_.find(kind);
  if (it == streams_.end()) {
    auto os = std::make_unique<std::ofstream>(dir_ / ("diag_" + kind + ".csv"), std::ios::trunc);
    if (!*os) throw std::runtime_error("cannot write diagnostics for " + kind);
    *os << "t";
    for (const auto& c : columns) *os << ',' << c;
    *os << '\n';
    it = streams_.emplace(kind, std::move(os)).first;
  }
  std::ostream& os = *it->second;
  os << num(t);
  for (double v : values) os << ',' << num(v);
  os << '\n';
  os.flush();
}

std::vector<std::filesystem::path> DiagnosticsStream::files() const {
  std::vector<std::filesystem::path> out;
  for (const auto& [k, s] : streams_) out.push_back(dir_ / ("diag_" + k + ".csv"));
  return out;
}

}  // namespace ebench
