#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops. Every kernel exists as a scalar reference and,
// where the target supports it, an AVX2+FMA variant. The active table is
// chosen once at startup from CPUID and can be overridden with OTA_SIMD=scalar
// or set_isa(). All kernels take raw split-complex planes so that the vector
// translation units never instantiate shared templates.

namespace ota::simd {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  /// re + i*im = scale * sqrt(-ln u1) * exp(2*pi*i*u2), u1 in (0, 1].
  /// With scale = sqrt(v) the outputs are CN(0, v).
  void (*box_muller)(const double* u1, const double* u2, double* re,
                     double* im, std::size_t n, double scale);

  /// sum_i |x_i|^2
  double (*sum_abs2)(const double* re, const double* im, std::size_t n);

  /// max_i |x_i|^2 (0 for n == 0)
  double (*max_abs2)(const double* re, const double* im, std::size_t n);

  /// y += a * x
  void (*caxpy)(std::size_t n, double a_re, double a_im, const double* x_re,
                const double* x_im, double* y_re, double* y_im);

  /// sum_i conj(x_i) * y_i
  void (*cdotc)(std::size_t n, const double* x_re, const double* x_im,
                const double* y_re, const double* y_im, double* out_re,
                double* out_im);

  /// x *= a (complex scalar)
  void (*cscal)(std::size_t n, double a_re, double a_im, double* x_re,
                double* x_im);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2_kernels();

/// The table used by the library.
const KernelTable& active();

/// Forces a kernel set. Throws ParameterError if `isa` is unavailable.
void set_isa(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace ota::simd
