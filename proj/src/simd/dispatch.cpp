#include <atomic>
#include <cstdlib>
#include <string>

#include <fmt/core.h>

#include "acv/error.hpp"
#include "acv/simd/kernels.hpp"

namespace acv::simd {
namespace {

const KernelTable* best_available() {
  if (const auto* t = avx2_kernels()) return t;
  if (const auto* t = neon_kernels()) return t;
  return &scalar_kernels();
}

const KernelTable* from_environment() {
  const char* env = std::getenv("ACV_SIMD");
  if (env == nullptr || std::string(env).empty() || std::string(env) == "auto") {
    return best_available();
  }
  const std::string want(env);
  if (want == "scalar") return &scalar_kernels();
  const KernelTable* table = nullptr;
  if (want == "avx2") table = avx2_kernels();
  else if (want == "neon") table = neon_kernels();
  else throw ConfigError(fmt::format("ACV_SIMD: unknown kernel set '{}'", want));
  if (table == nullptr) {
    throw ConfigError(fmt::format("ACV_SIMD={} is not supported on this host", want));
  }
  return table;
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{from_environment()};
  return current;
}

}  // namespace

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const auto* t = avx2_kernels()) out.push_back(t);
  if (const auto* t = neon_kernels()) out.push_back(t);
  return out;
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) { slot().store(&table, std::memory_order_release); }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

}  // namespace acv::simd
