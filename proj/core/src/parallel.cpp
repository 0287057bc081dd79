#include "frontlab/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace frontlab {

std::size_t thread_limit() {
  if (const char* env = std::getenv("FRONTLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace frontlab
