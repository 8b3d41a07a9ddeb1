#pragma once

#include <string>

#include "fewocc/bigint.hpp"

namespace fewocc {

/// Formats an exact rational with 6 significant digits, rounding once
/// (half-to-even), in the style of printf's %.6g: fixed notation for
/// exponents in [-4, 6), scientific otherwise, trailing zeros dropped.
std::string format_sig6(const BigRational& value);
/// The double is converted exactly, then formatted as above.
std::string format_sig6(double value);

/// ⌊2^k / (e·k)⌋, exact. e is bracketed by rational partial sums of its
/// series, tightened until both ends give the same floor.
BigInt lll_lower_bound(unsigned k);

}  // namespace fewocc
