#include "wavectrl/csv.hpp"

#include <cstdio>
#include <fstream>

#include "wavectrl/errors.hpp"

namespace wavectrl {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  return out;
}

}  // namespace

void write_spacetime_csv(const std::string& path, const SpatialGrid& g, const TimeGrid& tg,
                         const std::vector<std::string>& names,
                         const std::vector<const SpaceTimeField*>& fields, int stride) {
  if (stride < 1) throw ValidationError("csv stride must be >= 1");
  if (names.size() != fields.size()) throw ValidationError("csv: names/fields size mismatch");
  for (const auto* f : fields) f->check_grids(g, tg);

  std::ofstream out = open_csv(path);
  out << "t,x";
  if (g.dimension == 2) out << ",y_coord";
  for (const auto& name : names) out << ',' << name;
  out << '\n';

  for (int k = 0; k < tg.node_count(); ++k) {
    if (k % stride != 0 && k != tg.steps) continue;
    const std::string t = format_double(tg.node(k));
    std::size_t idx = 0;
    const int ny = g.dimension == 2 ? g.n[1] : 1;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < g.n[0]; ++i, ++idx) {
        out << t << ',' << format_double(g.coord(0, i));
        if (g.dimension == 2) out << ',' << format_double(g.coord(1, j));
        for (const auto* f : fields) out << ',' << format_double(f->slice(k)[idx]);
        out << '\n';
      }
    }
  }
}

void write_state_csv(const std::string& path, const SpatialGrid& g, const TimeGrid& tg,
                     const StateTrajectory& tr, int stride) {
  write_spacetime_csv(path, g, tg, {"y", "v"}, {&tr.y, &tr.v}, stride);
}

void write_adjoint_csv(const std::string& path, const SpatialGrid& g, const TimeGrid& tg,
                       const AdjointTrajectory& adj, int stride) {
  write_spacetime_csv(path, g, tg, {"phi", "phidot"}, {&adj.phi, &adj.phidot}, stride);
}

void write_iterates_csv(const std::string& path, const std::vector<IterateRecord>& log) {
  std::ofstream out = open_csv(path);
  out << "iter,j,tracking,control,grad_norm,kkt_residual,step,backtracks\n";
  for (const auto& rec : log) {
    out << rec.iter << ',' << format_double(rec.j) << ',' << format_double(rec.tracking_part) << ','
        << format_double(rec.control_part) << ',' << format_double(rec.grad_norm) << ','
        << format_double(rec.kkt_residual) << ',' << format_double(rec.step) << ','
        << rec.backtracks << '\n';
  }
}

}  // namespace wavectrl
