#include "moelab/bigint.hpp"

#include <cctype>

#include "moelab/errors.hpp"

namespace moelab {

namespace {

BigInt parse_plain(std::string_view digits, std::string_view whole) {
  if (digits.empty())
    throw ValidationError("integer literal expected in '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ValidationError("malformed integer literal '" + std::string(whole) + "'");
  return BigInt(std::string(digits), 10);
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return parse_plain(text, text);
  const BigInt base = parse_plain(text.substr(0, caret), text);
  const BigInt exp = parse_plain(text.substr(caret + 1), text);
  if (!fits_u64(exp) || to_u64(exp) > 1'000'000)
    throw ValidationError("exponent too large in '" + std::string(text) + "'");
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(to_u64(exp)));
  return out;
}

std::string to_string(const BigInt& value) { return value.get_str(); }

bool fits_u64(const BigInt& value) {
  return sgn(value) >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& value) {
  if (!fits_u64(value)) throw ValidationError("integer does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

}  // namespace moelab
