#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace moelab {

/// Arbitrary-precision integer. Group orders and copy counts routinely
/// exceed 64 bits (e.g. 10^84), so counts that can be symbolic use this
/// type; small enumerated quantities stay native.
using BigInt = mpz_class;

/// Parses a non-negative integer literal, accepting either a plain decimal
/// string or the power shorthand BASE^EXP (e.g. "10^84").
BigInt parse_bigint(std::string_view text);

/// Decimal rendering (shorthand is never reproduced; canonical form is plain
/// decimal).
std::string to_string(const BigInt& value);

/// True when the value fits in std::uint64_t.
bool fits_u64(const BigInt& value);

/// Narrowing accessor; caller must have checked fits_u64.
std::uint64_t to_u64(const BigInt& value);

}  // namespace moelab
