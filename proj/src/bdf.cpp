#include "llg/bdf.hpp"

#include <string>

#include "llg/error.hpp"

namespace llg {

const BdfTable& BdfTable::of(int k) {
  static const BdfTable tables[] = {
      {1, 1.0, {1.0}, {}, {1.0}},
      {2, 3.0 / 2.0, {2.0, -1.0 / 2.0}, {1.0}, {2.0, -1.0}},
      {3, 11.0 / 6.0, {3.0, -3.0 / 2.0, 1.0 / 3.0}, {2.0, -1.0}, {3.0, -3.0, 1.0}},
  };
  if (k < 1 || k > 3) throw InvalidArgument("BDF order must be 1, 2 or 3, got " + std::to_string(k));
  return tables[k - 1];
}

}  // namespace llg
