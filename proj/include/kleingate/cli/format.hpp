#pragma once

#include <string>

namespace kleingate::cli {

/// Shortest representation that round-trips exactly, with '.' as the
/// decimal separator, independent of the global locale.
std::string format_double(double v);

}  // namespace kleingate::cli
