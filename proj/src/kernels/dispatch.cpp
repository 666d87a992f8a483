#include <atomic>

#include "lsv/error.hpp"
#include "lsv/kernels.hpp"
#include "tables.hpp"

namespace lsv::kernels {
namespace {

#if defined(LSV_HAVE_AVX2)
bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* probe_vector_table() noexcept {
#if defined(LSV_HAVE_AVX2)
  if (cpu_has_avx2()) return &detail::kAvx2Table;
#endif
#if defined(LSV_HAVE_NEON)
  return &detail::kNeonTable;
#endif
  return nullptr;
}

const KernelTable* cached_vector_table() noexcept {
  static const KernelTable* table = probe_vector_table();
  return table;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{
      cached_vector_table() ? cached_vector_table() : &detail::kScalarTable};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return detail::kScalarTable; }

const KernelTable* vector_table() noexcept { return cached_vector_table(); }

Isa detected_isa() noexcept {
  const KernelTable* t = cached_vector_table();
  return t ? t->isa : Isa::scalar;
}

Isa active_isa() noexcept { return active().isa; }

void set_active_isa(Isa isa) {
  if (isa == Isa::scalar) {
    current().store(&detail::kScalarTable);
    return;
  }
  const KernelTable* t = cached_vector_table();
  if (!t || t->isa != isa) {
    throw InvalidArgument("kernel ISA '" + std::string(isa_name(isa)) +
                          "' is not available on this machine");
  }
  current().store(t);
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

}  // namespace lsv::kernels
