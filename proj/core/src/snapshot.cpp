#include "fslbm/snapshot.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fslbm {

bool SnapshotData::operator==(const SnapshotData& other) const {
  return extent.nx == other.extent.nx && extent.ny == other.extent.ny && extent.nz == other.extent.nz &&
         density == other.density && velocity == other.velocity && fill == other.fill && flag == other.flag;
}

SnapshotData capture(const Simulation& sim) {
  SnapshotData d;
  d.extent = sim.grid().extent();
  const auto n = sim.grid().size();
  d.density.assign(sim.rho().begin(), sim.rho().end());
  d.velocity.assign(sim.u().begin(), sim.u().end());
  d.fill.assign(sim.fill().begin(), sim.fill().end());
  d.flag.resize(n);
  for (CellIndex c = 0; c < n; ++c) d.flag[c] = static_cast<int>(sim.flags()[c]);
  return d;
}

void write_vtk(std::ostream& os, const SnapshotData& data, const std::string& title) {
  const auto n = static_cast<std::size_t>(data.extent.nx) * data.extent.ny * data.extent.nz;
  if (data.density.size() != n || data.velocity.size() != n || data.fill.size() != n || data.flag.size() != n) {
    throw IoError("snapshot arrays do not match the extent");
  }
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << data.extent.nx << ' ' << data.extent.ny << ' ' << data.extent.nz << '\n';
  os << "ORIGIN 0.5 0.5 0.5\nSPACING 1 1 1\n";
  os << "POINT_DATA " << n << '\n';
  os << std::setprecision(17);
  os << "SCALARS density double 1\nLOOKUP_TABLE default\n";
  for (double v : data.density) os << v << '\n';
  os << "VECTORS velocity double\n";
  for (const auto& v : data.velocity) os << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  os << "SCALARS fill double 1\nLOOKUP_TABLE default\n";
  for (double v : data.fill) os << v << '\n';
  os << "SCALARS flag int 1\nLOOKUP_TABLE default\n";
  for (int v : data.flag) os << v << '\n';
}

void write_vtk(const std::filesystem::path& path, const SnapshotData& data) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_vtk(os, data, "fslbm snapshot");
  if (!os) throw IoError("failed writing " + path.string());
}

namespace {

void expect(std::istream& is, const std::string& word) {
  std::string token;
  if (!(is >> token) || token != word) {
    throw IoError("malformed snapshot: expected '" + word + "', found '" + token + "'");
  }
}

template <typename T>
T read_value(std::istream& is) {
  T v{};
  if (!(is >> v)) throw IoError("malformed snapshot: truncated data");
  return v;
}

// operator>> rejects "inf"/"nan"; parse through strtod instead.
double read_double(std::istream& is) {
  std::string token;
  if (!(is >> token)) throw IoError("malformed snapshot: truncated data");
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') throw IoError("malformed snapshot: bad number '" + token + "'");
  return v;
}

}  // namespace

SnapshotData read_vtk(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# vtk DataFile", 0) != 0) throw IoError("not a legacy VTK file");
  std::getline(is, line);  // title
  expect(is, "ASCII");
  expect(is, "DATASET");
  expect(is, "STRUCTURED_POINTS");
  expect(is, "DIMENSIONS");
  SnapshotData d;
  d.extent.nx = read_value<int>(is);
  d.extent.ny = read_value<int>(is);
  d.extent.nz = read_value<int>(is);
  if (d.extent.nx < 1 || d.extent.ny < 1 || d.extent.nz < 1) throw IoError("malformed snapshot: bad dimensions");
  expect(is, "ORIGIN");
  for (int i = 0; i < 3; ++i) read_double(is);
  expect(is, "SPACING");
  for (int i = 0; i < 3; ++i) read_double(is);
  expect(is, "POINT_DATA");
  const auto n = read_value<std::size_t>(is);
  if (n != static_cast<std::size_t>(d.extent.nx) * d.extent.ny * d.extent.nz) {
    throw IoError("malformed snapshot: point count does not match dimensions");
  }

  std::string kind;
  while (is >> kind) {
    std::string name, type;
    is >> name >> type;
    if (kind == "SCALARS") {
      int components = read_value<int>(is);
      if (components != 1) throw IoError("malformed snapshot: multi-component scalars");
      expect(is, "LOOKUP_TABLE");
      read_value<std::string>(is);
      if (name == "flag") {
        d.flag.resize(n);
        for (auto& v : d.flag) v = read_value<int>(is);
      } else {
        std::vector<double> values(n);
        for (auto& v : values) v = read_double(is);
        if (name == "density") {
          d.density = std::move(values);
        } else if (name == "fill") {
          d.fill = std::move(values);
        }
      }
    } else if (kind == "VECTORS") {
      std::vector<Vec3> values(n);
      for (auto& v : values) {
        for (int a = 0; a < 3; ++a) v[a] = read_double(is);
      }
      if (name == "velocity") d.velocity = std::move(values);
    } else {
      throw IoError("malformed snapshot: unexpected section '" + kind + "'");
    }
  }
  if (d.density.size() != n || d.velocity.size() != n || d.fill.size() != n || d.flag.size() != n) {
    throw IoError("malformed snapshot: missing arrays");
  }
  return d;
}

SnapshotData read_vtk(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  return read_vtk(is);
}

void write_profile_csv(std::ostream& os, const Simulation& sim, int axis, const IntVec3& origin) {
  if (axis < 0 || axis > 2) throw ParameterError("profile axis must be 0, 1 or 2");
  const Grid& grid = sim.grid();
  const Extent& e = grid.extent();
  const int n[3] = {e.nx, e.ny, e.nz};
  for (int a = 0; a < 3; ++a) {
    if (origin[a] < 0 || origin[a] >= n[a]) throw ParameterError("profile origin outside the grid");
  }
  static const char* names[3] = {"x", "y", "z"};
  os << "index," << names[axis] << ",rho,u_x,u_y,u_z,fill,flag\n" << std::setprecision(17);
  IntVec3 ijk = origin;
  for (int i = 0; i < n[axis]; ++i) {
    ijk[axis] = i;
    const CellIndex c = grid.index(ijk[0], ijk[1], ijk[2]);
    const Vec3& u = sim.u()[c];
    os << i << ',' << grid.center(c)[axis] << ',' << sim.rho()[c] << ',' << u[0] << ',' << u[1] << ',' << u[2] << ','
       << sim.fill()[c] << ',' << to_string(sim.flags()[c]) << '\n';
  }
}

void write_profile_csv(const std::filesystem::path& path, const Simulation& sim, int axis, const IntVec3& origin) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_profile_csv(os, sim, axis, origin);
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace fslbm
