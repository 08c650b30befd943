#include "ot/error.hpp"

#include <sstream>

namespace ot {

void throw_dimension_mismatch(const char* where, long expected, long got) {
  std::ostringstream os;
  os << where << ": dimension mismatch (expected " << expected << ", got " << got << ")";
  throw InputError(os.str());
}

}  // namespace ot
