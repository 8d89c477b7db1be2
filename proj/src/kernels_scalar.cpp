#include <atomic>
#include <cstdlib>
#include <string>

#include "cotr/kernels.hpp"

namespace cotr::kernels {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
                 std::uint32_t p) {
  if (c == 0) return;
  if (p == 2) {
    for (std::size_t j = 0; j < n; ++j) dst[j] ^= src[j];
    return;
  }
  for (std::size_t j = 0; j < n; ++j)
    dst[j] = std::uint32_t((std::uint64_t(dst[j]) + std::uint64_t(c) * src[j]) % p);
}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

AxpyFn initial() {
  const char* env = std::getenv("COTR_KERNEL");
  if (env && std::string(env) == "scalar") return axpy_scalar;
#if defined(__x86_64__) || defined(__i386__)
  if (avx2_available()) return axpy_avx2;
#endif
  return axpy_scalar;
}

std::atomic<AxpyFn>& slot() {
  static std::atomic<AxpyFn> fn{initial()};
  return fn;
}

}  // namespace

AxpyFn axpy() { return slot().load(std::memory_order_relaxed); }

std::string active_kernel() { return axpy() == axpy_scalar ? "scalar" : "avx2"; }

bool select_kernel(const std::string& name) {
  if (name == "scalar") {
    slot().store(axpy_scalar);
    return true;
  }
#if defined(__x86_64__) || defined(__i386__)
  if (name == "avx2" && avx2_available()) {
    slot().store(axpy_avx2);
    return true;
  }
#endif
  return false;
}

}  // namespace cotr::kernels
