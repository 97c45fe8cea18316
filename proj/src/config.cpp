#include "relbound/config.hpp"

#include <cstdlib>
#include <string>

namespace relbound {

double tol::rank_tau() {
  static const double tau = [] {
    if (const char* env = std::getenv("RELBOUND_RANK_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0.0) return v;
    }
    return 1e-12;
  }();
  return tau;
}

double rank_threshold(std::size_t n, double norm) {
  return tol::rank_tau() * static_cast<double>(n) * norm;
}

}  // namespace relbound
