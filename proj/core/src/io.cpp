#include "dpnls/io.hpp"

#include <cstdio>

namespace dpnls {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace dpnls
