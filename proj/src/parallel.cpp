#include "stablecurv/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace stablecurv {

unsigned default_thread_count() noexcept {
  if (const char* env = std::getenv("STABLECURV_THREADS")) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec == std::errc{} && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace stablecurv
