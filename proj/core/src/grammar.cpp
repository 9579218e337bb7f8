#include "moelab/grammar.hpp"

#include <cctype>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "moelab/errors.hpp"

namespace moelab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupSpecPtr parse() {
    auto spec = parse_product();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SpecParseError(message, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool try_consume(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  std::string_view read_digits() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return text_.substr(start, pos_ - start);
  }

  std::uint64_t read_u64() {
    const auto digits = read_digits();
    const BigInt v(std::string(digits), 10);
    if (!fits_u64(v)) fail("integer too large: " + std::string(digits));
    return to_u64(v);
  }

  BigInt read_bigint() {
    BigInt base(std::string(read_digits()), 10);
    if (!try_consume('^')) return base;
    const auto exp = read_u64();
    if (exp > 1'000'000) fail("exponent too large");
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return out;
  }

  GroupSpecPtr parse_product() {
    std::vector<GroupSpec::Factor> factors;
    factors.push_back({parse_power(), 1});
    while (try_consume('*')) factors.push_back({parse_power(), 1});
    if (factors.size() == 1 && cmp(factors[0].multiplicity, 1) == 0 &&
        !factors[0].spec->is<GroupSpec::FreeProduct>())
      return factors[0].spec;
    return GroupSpec::free_product(std::move(factors));
  }

  GroupSpecPtr parse_power() {
    auto spec = parse_atom();
    while (try_consume('^')) {
      const auto exp = read_u64();
      if (exp == 0) fail("direct-power exponent must be >= 1");
      if (exp > 64) fail("direct-power exponent too large");
      spec = GroupSpec::direct_power(std::move(spec), static_cast<std::uint32_t>(exp));
    }
    return spec;
  }

  GroupSpecPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_product();
      expect(')');
      return inner;
    }
    if (c == 'Z') {
      ++pos_;
      const auto n = read_u64();
      try {
        return GroupSpec::cyclic(n);
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }
    if (c == 'F') {
      ++pos_;
      const auto r = read_u64();
      try {
        return GroupSpec::free_group(r);
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }
    if (text_.substr(pos_).rfind("freepow(", 0) == 0) {
      pos_ += 8;
      auto inner = parse_product();
      expect(',');
      BigInt mult = read_bigint();
      expect(')');
      try {
        return GroupSpec::free_product({{std::move(inner), std::move(mult)}});
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }
    if (text_.substr(pos_).rfind("table:", 0) == 0) {
      pos_ += 6;
      const auto start = pos_;
      while (pos_ < text_.size()) {
        const char p = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(p)) || p == ',' || p == ')') break;
        ++pos_;
      }
      if (pos_ == start) fail("expected a file path after 'table:'");
      const std::string path(text_.substr(start, pos_ - start));
      try {
        return load_finite_table(path);
      } catch (const SpecParseError&) {
        throw;
      } catch (const Error& e) {
        fail(std::string("failed to load table '") + path + "': " + e.what());
      }
    }
    fail("expected a group expression (Z<n>, F<r>, table:<path>, freepow(...), or parentheses)");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupSpecPtr parse_group_spec(std::string_view text) { return Parser(text).parse(); }

GroupSpecPtr load_finite_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open table file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("table file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("elements") || !doc.contains("table") ||
      !doc.contains("generators"))
    throw ValidationError("table file " + path +
                          " must contain 'elements', 'table' and 'generators'");

  std::vector<std::string> labels;
  for (const auto& x : doc["elements"]) {
    if (!x.is_string()) throw ValidationError("table 'elements' must be strings");
    labels.push_back(x.get<std::string>());
  }
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;

  auto resolve = [&](const nlohmann::json& x, const char* where) -> std::uint32_t {
    if (x.is_string()) {
      const auto it = index.find(x.get<std::string>());
      if (it == index.end())
        throw ValidationError(std::string(where) + ": unknown element label '" +
                              x.get<std::string>() + "'");
      return it->second;
    }
    if (x.is_number_unsigned()) {
      const auto v = x.get<std::uint64_t>();
      if (v >= labels.size())
        throw ValidationError(std::string(where) + ": index out of range");
      return static_cast<std::uint32_t>(v);
    }
    throw ValidationError(std::string(where) + ": entries must be labels or indices");
  };

  std::vector<std::uint32_t> table;
  for (const auto& x : doc["table"]) table.push_back(resolve(x, "table"));
  std::vector<std::uint32_t> gens;
  for (const auto& x : doc["generators"]) gens.push_back(resolve(x, "generators"));

  return GroupSpec::finite_table(std::move(labels), std::move(table), std::move(gens), path);
}

}  // namespace moelab
