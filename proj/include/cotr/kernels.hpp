#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace cotr::kernels {

// dst[j] = (dst[j] + c * src[j]) mod p for j < n. Entries lie in [0, p).
using AxpyFn = void (*)(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c,
                        std::size_t n, std::uint32_t p);

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
                 std::uint32_t p);
#if defined(__x86_64__) || defined(__i386__)
void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
               std::uint32_t p);
#endif

bool avx2_available();

// Selected once from the CPU and COTR_KERNEL ("scalar" or "avx2").
AxpyFn axpy();
std::string active_kernel();
// Overrides the selection; returns false when the named kernel is unavailable.
bool select_kernel(const std::string& name);

}  // namespace cotr::kernels
