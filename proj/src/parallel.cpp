#include "shadow/parallel.hpp"

#include <cstdlib>
#include <string>

namespace shadow {

int default_threads() {
  if (const char* env = std::getenv("SHADOW_ORBITS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace shadow
