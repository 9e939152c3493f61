#include <atomic>
#include <cstdlib>
#include <string>

#include "qfreq/errors.hpp"
#include "qfreq/kernels.hpp"

namespace qfreq::kernels {

bool avx2_compiled_in();  // defined in kernels_avx2.cpp

bool avx2_available() {
  if (!avx2_compiled_in()) return false;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

const Backend* pick(std::string_view name) {
  if (name == "scalar") return &scalar_backend();
  if (name == "avx2") {
    if (!avx2_available())
      throw config_error("simd backend 'avx2' not available on this machine");
    return &avx2_backend();
  }
  if (name == "auto")
    return avx2_available() ? &avx2_backend() : &scalar_backend();
  throw config_error("unknown simd backend '" + std::string(name) +
                     "' (expected auto, scalar or avx2)");
}

std::atomic<const Backend*>& slot() {
  static std::atomic<const Backend*> current{nullptr};
  return current;
}

const Backend* initial() {
  const char* env = std::getenv("QFREQ_SIMD");
  return pick(env != nullptr ? std::string_view(env) : std::string_view("auto"));
}

}  // namespace

const Backend& active() {
  const Backend* b = slot().load(std::memory_order_acquire);
  if (b == nullptr) {
    b = initial();
    slot().store(b, std::memory_order_release);
  }
  return *b;
}

void select(std::string_view name) {
  slot().store(pick(name), std::memory_order_release);
}

}  // namespace qfreq::kernels
