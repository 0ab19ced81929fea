#pragma once

#include <string>

namespace smoothsums {

// Shortest round-trip decimal form of a double (std::to_chars).  Used for
// every CSV/JSON number we emit so that identical runs produce identical
// bytes.
std::string format_double(double x);

} // namespace smoothsums
