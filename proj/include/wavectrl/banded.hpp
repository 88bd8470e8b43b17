#pragma once

#include <vector>

#include "wavectrl/grid.hpp"

namespace wavectrl {

// Banded linear system in LAPACK general-band storage, factored once with
// dgbtrf and then reusable for repeated right-hand sides. Bandwidth is 1 in
// 1D and n_x in 2D (row-major interior numbering).
class BandedSystem {
 public:
  BandedSystem(int n, int bandwidth);

  // A(i,j) for |i-j| <= bandwidth; other entries are structurally zero.
  void set(int i, int j, double value);
  double get(int i, int j) const;

  // LU-factor in place. Throws SingularStep on a singular pivot.
  void factor();

  // Solve A x = rhs, overwriting rhs with x. Requires factor() first.
  void solve(std::vector<double>& rhs) const;
  void solve(double* rhs) const;

  int size() const { return n_; }

 private:
  int n_;
  int kl_;
  int ku_;
  int ldab_;
  bool factored_ = false;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
};

// M = shift * I + diag(diag_var) + lap_scale * (-Laplacian_h) on the grid.
// diag_var may be null (treated as zero).
BandedSystem assemble_shifted_laplacian(const SpatialGrid& g, double shift, const double* diag_var,
                                        double lap_scale);

}  // namespace wavectrl
