#include "wavectrl/banded.hpp"

#include <lapacke.h>

#include <cstdlib>
#include <stdexcept>

#include "wavectrl/errors.hpp"

namespace wavectrl {

BandedSystem::BandedSystem(int n, int bandwidth)
    : n_(n),
      kl_(bandwidth),
      ku_(bandwidth),
      ldab_(2 * bandwidth + bandwidth + 1),
      ab_(static_cast<std::size_t>(ldab_) * n, 0.0),
      ipiv_(n, 0) {
  if (n < 1 || bandwidth < 0) throw std::invalid_argument("bad banded system shape");
}

// Column-major band storage: AB(kl + ku + i - j, j) holds A(i,j).
void BandedSystem::set(int i, int j, double value) {
  ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] = value;
}

double BandedSystem::get(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || std::abs(i - j) > kl_) return 0.0;
  return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
}

void BandedSystem::factor() {
  lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab_, ipiv_.data());
  if (info != 0) throw SingularStep("banded factorization failed (singular pivot)");
  factored_ = true;
}

void BandedSystem::solve(double* rhs) const {
  if (!factored_) throw std::logic_error("BandedSystem::solve before factor");
  lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(), ldab_,
                                   ipiv_.data(), rhs, n_);
  if (info != 0) throw SingularStep("banded triangular solve failed");
}

void BandedSystem::solve(std::vector<double>& rhs) const {
  if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("rhs size mismatch");
  solve(rhs.data());
}

BandedSystem assemble_shifted_laplacian(const SpatialGrid& g, double shift, const double* diag_var,
                                        double lap_scale) {
  g.validate();
  const int nx = g.n[0];
  const int ny = g.dimension == 2 ? g.n[1] : 1;
  const int n = nx * ny;
  const double ix2 = 1.0 / (g.dx(0) * g.dx(0));
  const double iy2 = g.dimension == 2 ? 1.0 / (g.dx(1) * g.dx(1)) : 0.0;
  const int bw = g.dimension == 2 ? nx : 1;

  BandedSystem sys(n, bw);
  const double diag_lap = g.dimension == 2 ? 2.0 * (ix2 + iy2) : 2.0 * ix2;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int p = j * nx + i;
      double d = shift + lap_scale * diag_lap;
      if (diag_var) d += diag_var[p];
      sys.set(p, p, d);
      if (i > 0) sys.set(p, p - 1, -lap_scale * ix2);
      if (i + 1 < nx) sys.set(p, p + 1, -lap_scale * ix2);
      if (g.dimension == 2) {
        if (j > 0) sys.set(p, p - nx, -lap_scale * iy2);
        if (j + 1 < ny) sys.set(p, p + nx, -lap_scale * iy2);
      }
    }
  }
  return sys;
}

}  // namespace wavectrl
