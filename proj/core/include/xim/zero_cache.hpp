#pragma once

#include <string>

#include "xim/xi.hpp"

namespace xim::zero_cache {

constexpr int kFormatVersion = 1;

/// Read a cached zero list. Returns false when the file is missing or not a
/// readable cache of the current format; throws nothing for those cases so
/// callers can fall back to recomputing.
bool load(const std::string& path, xi::ZeroList& out, unsigned& precision_digits);

/// Persist a zero list atomically (write-temp-then-rename). Values are stored
/// as full-precision decimal strings.
void save(const std::string& path, const xi::ZeroList& zl, unsigned precision_digits);

}  // namespace xim::zero_cache
