#pragma once

#include <string_view>

namespace slmc {

/// Enumeration guards. Exceeding any of them is a ResourceError, never a
/// silent truncation.
struct Caps {
  int max_word_length = 12;
  int max_arity = 8;
  int max_poly_degree = 6;

  /// Parses "word=12,arity=8,poly=6" (any subset, any order).
  static Caps parse(std::string_view spec);
  /// Reads SLMC_CAPS; defaults when unset.
  static Caps from_env();
};

}  // namespace slmc
