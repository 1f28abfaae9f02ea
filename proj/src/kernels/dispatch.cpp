#include <cstdlib>
#include <string_view>

#include "knotmoney/kernels.hpp"

namespace knotmoney::kernels {

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("KNOTMONEY_SIMD");
    if (env != nullptr && std::string_view(env) == "generic") return generic::table();
    if (const auto* t = avx2::table()) return *t;
    return generic::table();
  }();
  return chosen;
}

}  // namespace knotmoney::kernels
