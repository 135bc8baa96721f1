#include "curvlayer/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curvlayer {
namespace {

static_assert(std::endian::native == std::endian::little, "binary field format assumes little-endian doubles");

void write_header(std::ostream& os, const Grid2D& g) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "nx %d\nny %d\nhx %.17g\nhy %.17g\norigin %.17g %.17g\n", g.nx, g.ny, g.hx, g.hy,
                g.x0, g.y0);
  os << buf;
}

template <typename T>
T expect_key(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("field header: missing line '" + key + "'");
  std::istringstream ls(line);
  std::string k;
  T v{};
  if (!(ls >> k >> v) || k != key) throw std::runtime_error("field header: expected '" + key + "', got '" + line + "'");
  return v;
}

Grid2D read_header(std::istream& is) {
  const int nx = expect_key<int>(is, "nx");
  const int ny = expect_key<int>(is, "ny");
  const double hx = expect_key<double>(is, "hx");
  const double hy = expect_key<double>(is, "hy");
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("field header: missing origin line");
  std::istringstream ls(line);
  std::string k;
  double x0 = 0.0, y0 = 0.0;
  if (!(ls >> k >> x0 >> y0) || k != "origin") throw std::runtime_error("field header: bad origin line '" + line + "'");
  return Grid2D(nx, ny, hx, hy, x0, y0);
}

}  // namespace

void write_field_csv(const std::string& path, const Field2D& field) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const Grid2D& g = field.grid();
  write_header(os, g);
  char buf[32];
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", field(i, j));
      os << buf << (i + 1 < g.nx ? ',' : '\n');
    }
  }
}

Field2D read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  const Grid2D g = read_header(is);
  Field2D f(g);
  std::string line;
  for (int j = 0; j < g.ny; ++j) {
    if (!std::getline(is, line)) throw std::runtime_error(path + ": too few data rows");
    std::istringstream ls(line);
    std::string cell;
    for (int i = 0; i < g.nx; ++i) {
      if (!std::getline(ls, cell, ',')) throw std::runtime_error(path + ": short data row");
      f(i, j) = std::stod(cell);
    }
  }
  return f;
}

void write_field_binary(const std::string& path, const Field2D& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_header(os, field.grid());
  os.write(reinterpret_cast<const char*>(field.values().data()),
           static_cast<std::streamsize>(field.size() * sizeof(double)));
}

Field2D read_field_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  const Grid2D g = read_header(is);
  Field2D f(g);
  is.read(reinterpret_cast<char*>(f.values().data()), static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!is) throw std::runtime_error(path + ": truncated binary payload");
  return f;
}

Field2D read_field(const std::string& path) {
  const bool binary = path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
  return binary ? read_field_binary(path) : read_field_csv(path);
}

}  // namespace curvlayer
