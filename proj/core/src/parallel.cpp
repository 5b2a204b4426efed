#include "trustnet/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace trustnet {

std::size_t workers_from_environment() {
  const char* text = std::getenv("TRUSTNET_WORKERS");
  if (text == nullptr) {
    return 1;
  }
  std::size_t value = 0;
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    return 1;
  }
  return value;
}

}  // namespace trustnet
