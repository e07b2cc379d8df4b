#pragma once

#include <iosfwd>

#include "triad/io.hpp"

namespace triad::cli {

/// Plain-text view of a report: scalars as aligned key/value rows, operators
/// collapsed to their shape, nested reports indented.
void render_text(const Json& report, std::ostream& out);

}  // namespace triad::cli
