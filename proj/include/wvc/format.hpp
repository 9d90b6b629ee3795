#pragma once

#include <string>

namespace wvc {

// Fixed %.17g rendering: 17 significant digits round-trip an IEEE double,
// and a single formatting path keeps reports byte-stable across runs.
std::string format_float(double v);

}  // namespace wvc
