#include "wavectrl/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace wavectrl::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_axpy(double alpha, const double* a, const double* b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * a[i] * b[i];
}

void clamp(const double* w, const double* lo, const double* hi, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::min(std::max(w[i], lo[i]), hi[i]);
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(WAVECTRL_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa> g_isa{cpu_has_avx2() ? Isa::avx2 : Isa::scalar};

}  // namespace

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) isa = Isa::scalar;
  g_isa.store(isa, std::memory_order_relaxed);
}

#ifdef WAVECTRL_HAVE_AVX2
#define WAVECTRL_DISPATCH(call_scalar, call_avx2) \
  return active_isa() == Isa::avx2 ? call_avx2 : call_scalar
#else
#define WAVECTRL_DISPATCH(call_scalar, call_avx2) return call_scalar
#endif

double dot(const double* a, const double* b, std::size_t n) {
  WAVECTRL_DISPATCH(scalar::dot(a, b, n), avx2::dot(a, b, n));
}

double sum_squares(const double* a, std::size_t n) {
  WAVECTRL_DISPATCH(scalar::sum_squares(a, n), avx2::sum_squares(a, n));
}

double max_abs(const double* a, std::size_t n) {
  WAVECTRL_DISPATCH(scalar::max_abs(a, n), avx2::max_abs(a, n));
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  WAVECTRL_DISPATCH(scalar::axpy(alpha, x, y, n), avx2::axpy(alpha, x, y, n));
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  WAVECTRL_DISPATCH(scalar::mul(a, b, out, n), avx2::mul(a, b, out, n));
}

void mul_axpy(double alpha, const double* a, const double* b, double* y, std::size_t n) {
  WAVECTRL_DISPATCH(scalar::mul_axpy(alpha, a, b, y, n), avx2::mul_axpy(alpha, a, b, y, n));
}

void clamp(const double* w, const double* lo, const double* hi, double* out, std::size_t n) {
  WAVECTRL_DISPATCH(scalar::clamp(w, lo, hi, out, n), avx2::clamp(w, lo, hi, out, n));
}

#undef WAVECTRL_DISPATCH

}  // namespace wavectrl::kernels
