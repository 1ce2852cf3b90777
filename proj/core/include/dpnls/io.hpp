#pragma once

#include <string>

namespace dpnls {

/// Shortest round-trippable decimal form (17 significant digits).
std::string fmt17(double x);

}  // namespace dpnls
