#include "llg/error.hpp"

#include <sstream>

namespace llg {

namespace {
std::string located(const std::string& what, int ix, int iy, double x, double y) {
  std::ostringstream os;
  os << what << " at grid point (" << ix << ", " << iy << "), x = " << x << ", y = " << y;
  return os.str();
}

std::string timed(const std::string& what, double t) {
  std::ostringstream os;
  os << what << " (t = " << t << ")";
  return os.str();
}
}  // namespace

DegenerateError::DegenerateError(const std::string& what, int ix, int iy, double x, double y)
    : Error(located(what, ix, iy, x, y)), ix_(ix), iy_(iy) {}

InstabilityError::InstabilityError(const std::string& what, double t) : Error(timed(what, t)), t_(t) {}

}  // namespace llg
