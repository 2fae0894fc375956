#include <atomic>
#include <cstdlib>
#include <string>

#include "ota/errors.hpp"
#include "ota/simd/kernels.hpp"

namespace ota::simd {

#if defined(OTA_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

namespace {

bool cpu_has_avx2() {
#if defined(OTA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const char* env = std::getenv("OTA_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return &scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(OTA_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void set_isa(Isa isa) {
  const KernelTable* t = isa == Isa::kScalar ? &scalar_kernels() : avx2_kernels();
  if (t == nullptr)
    throw ParameterError(std::string("kernel set unavailable: ") +
                         std::string(isa_name(isa)));
  current().store(t, std::memory_order_release);
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::kScalar ? "scalar" : "avx2";
}

}  // namespace ota::simd
