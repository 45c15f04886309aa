#pragma once

#include <string>

namespace tsat {

/// Shortest decimal text that reads back to the same double.
std::string formatNumber(double x);

} // namespace tsat
