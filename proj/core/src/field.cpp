#include "hypopinn/field.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hypopinn/velocity.hpp"

namespace hypopinn {

double TraveltimeField::interp(Point p) const {
  return bilinear(grid, values, p);
}

void save_field(std::ostream& os, const GridField& field) {
  if (field.values.size() != field.grid.node_count()) {
    throw std::invalid_argument("save_field: value count != node count");
  }
  os << std::setprecision(17);
  if (field.seed) os << "# seed " << *field.seed << "\n";
  if (field.source) os << "# source " << field.source->x << " " << field.source->z << "\n";
  const auto& d = field.grid.domain;
  os << field.grid.nx << " " << field.grid.nz << " "
     << d.x_min << " " << d.x_max << " " << d.z_min << " " << d.z_max << "\n";
  for (int j = 0; j < field.grid.nz; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      if (i) os << " ";
      os << field.values[field.grid.flat(i, j)];
    }
    os << "\n";
  }
}

void save_field(const std::string& path, const GridField& field) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  save_field(os, field);
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& what) {
  std::ostringstream msg;
  msg << name << ":" << line << ": " << what;
  throw std::runtime_error(msg.str());
}

}  // namespace

GridField load_field(std::istream& is, const std::string& name) {
  GridField field;
  std::string line;
  int lineno = 0;
  // comments, then the header line
  bool have_header = false;
  int nx = 0, nz = 0;
  Domain2D dom;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tag;
      ls >> tag;
      if (tag == "source") {
        Point s;
        if (ls >> s.x >> s.z) field.source = s;
      } else if (tag == "seed") {
        std::uint64_t sd;
        if (ls >> sd) field.seed = sd;
      }
      continue;
    }
    std::istringstream ls(line);
    double x0, x1, z0, z1;
    if (!(ls >> nx >> nz >> x0 >> x1 >> z0 >> z1)) {
      parse_fail(name, lineno, "malformed header, expected 'nx nz x_min x_max z_min z_max'");
    }
    if (nx < 2 || nz < 2) parse_fail(name, lineno, "grid must have nx, nz >= 2");
    if (!(x1 > x0) || !(z1 > z0)) parse_fail(name, lineno, "empty domain extent");
    dom = Domain2D(x0, x1, z0, z1);
    have_header = true;
    break;
  }
  if (!have_header) parse_fail(name, lineno, "missing header line");
  field.grid = Grid2D(dom, nx, nz);
  field.values.reserve(field.grid.node_count());
  int rows = 0;
  while (rows < nz && std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double v;
    int count = 0;
    while (ls >> v) {
      field.values.push_back(v);
      ++count;
    }
    if (count != nx) {
      parse_fail(name, lineno, "expected " + std::to_string(nx) + " values, got " +
                                   std::to_string(count));
    }
    ++rows;
  }
  if (rows != nz) {
    parse_fail(name, lineno, "expected " + std::to_string(nz) + " rows, got " +
                                 std::to_string(rows));
  }
  return field;
}

GridField load_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  return load_field(is, path);
}

ReceiverSet sample_receivers(const TraveltimeField& field, const ReceiverSet& receivers) {
  ReceiverSet out;
  out.positions = receivers.positions;
  out.times.reserve(receivers.positions.size());
  for (Point p : receivers.positions) {
    out.times.push_back(field.interp(p));  // throws std::domain_error outside grid
  }
  return out;
}

}  // namespace hypopinn
