#include "vma/parallel.hpp"

#include <cstdlib>

namespace vma {

std::size_t default_thread_count() {
  if (const char* env = std::getenv("VM_AUCTIONS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

}  // namespace vma
