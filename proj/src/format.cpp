#include "tsat/format.h"

#include <charconv>

namespace tsat {

std::string formatNumber(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

} // namespace tsat
