#pragma once

// Vector kernels used by the inner loops of the solvers: reductions,
// elementwise updates and box clamping. Each kernel has a scalar reference
// implementation and an AVX2 variant; the dispatched entry points pick the
// best ISA available on the running CPU once at startup.

#include <cstddef>

namespace wavectrl::kernels {

enum class Isa { scalar, avx2 };

// ISA selected by the dispatcher for the current process.
Isa active_isa();

// Override dispatch (used by the equivalence tests). Selecting an ISA the
// CPU does not support falls back to scalar.
void force_isa(Isa isa);

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void mul_axpy(double alpha, const double* a, const double* b, double* y, std::size_t n);
void clamp(const double* w, const double* lo, const double* hi, double* out, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void mul_axpy(double alpha, const double* a, const double* b, double* y, std::size_t n);
void clamp(const double* w, const double* lo, const double* hi, double* out, std::size_t n);
}  // namespace scalar

#ifdef WAVECTRL_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void mul_axpy(double alpha, const double* a, const double* b, double* y, std::size_t n);
void clamp(const double* w, const double* lo, const double* hi, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace wavectrl::kernels
