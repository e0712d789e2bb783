#include <cstdlib>
#include <string>

#include "fieldforge/simd/kernels.hpp"

namespace fieldforge::simd {

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#if FIELDFORGE_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("FIELDFORGE_ISA"); env != nullptr && std::string(env) == "scalar") {
      return Isa::scalar;
    }
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return chosen;
}

Vec3 field_sum(Isa isa, const FieldSegments& segs, const Vec3& p) {
#if FIELDFORGE_HAVE_AVX2
  if (isa == Isa::avx2) return avx2::field_sum(segs, p);
#endif
  (void)isa;
  return scalar::field_sum(segs, p);
}

double neumann_sum(Isa isa, const QuadratureNodes& nodes, const NeumannSegments& segs, double reg2) {
#if FIELDFORGE_HAVE_AVX2
  if (isa == Isa::avx2) return avx2::neumann_sum(nodes, segs, reg2);
#endif
  (void)isa;
  return scalar::neumann_sum(nodes, segs, reg2);
}

}  // namespace fieldforge::simd
