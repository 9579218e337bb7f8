#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "moelab/errors.hpp"
#include "moelab/grammar.hpp"
#include "moelab/groups.hpp"

using namespace moelab;

namespace {

std::string data_path(const char* name) {
  return std::string(MOELAB_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("grammar round-trips canonical forms") {
  for (const char* text :
       {"Z5", "F2", "F1", "Z5 * Z7", "Z3^4", "Z2^64", "freepow(Z5,10)",
        "Z2 * Z3 * Z2", "(Z2 * Z3)^2", "Z2 * F2", "freepow(Z3,7) * Z5"}) {
    const auto parsed = parse_group_spec(text);
    const auto reparsed = parse_group_spec(parsed->to_string());
    CHECK(reparsed->equals(*parsed));
    CHECK(reparsed->to_string() == parsed->to_string());
  }
  const auto huge = parse_group_spec("freepow(Z5,10^84)");
  CHECK(huge->to_string() == "freepow(Z5," + to_string(parse_bigint("10^84")) + ")");
  CHECK(parse_group_spec(huge->to_string())->equals(*huge));
}

TEST_CASE("grammar rejects malformed specs with positions") {
  for (const char* text : {"Z", "Z1", "F0", "Q5", "Z5 *", "Z5^", "Z5^65",
                           "freepow(Z5)", "freepow(Z5,0)", "(Z5", ""}) {
    CHECK_THROWS_AS(parse_group_spec(text), SpecParseError);
  }
  try {
    parse_group_spec("Z5 * 17");
    FAIL("expected a parse error");
  } catch (const SpecParseError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("cyclic arithmetic") {
  const auto z5 = GroupSpec::cyclic(5);
  const Element three = Element::scalar(3);
  const Element four = Element::scalar(4);
  CHECK(multiply(*z5, three, four) == Element::scalar(2));
  CHECK(inverse(*z5, three) == Element::scalar(2));
  CHECK(is_identity(*z5, multiply(*z5, three, inverse(*z5, three))));
  CHECK(identity(*z5) == Element::scalar(0));
  CHECK_THROWS_AS(validate(*z5, Element::scalar(7)), ValidationError);

  const auto wl = word_length(*z5, three);
  CHECK(wl.finite());
  CHECK(wl.value == 3);
  CHECK(element_order(*z5, Element::scalar(1)).value == 5);
  CHECK(all_elements(*z5).size() == 5);
}

TEST_CASE("free group words reduce") {
  const auto f2 = GroupSpec::free_group(2);
  const Element a = Element::word({1});
  const Element b = Element::word({2});
  const Element ab = multiply(*f2, a, b);
  CHECK(ab == Element::word({1, 2}));
  CHECK(is_identity(*f2, multiply(*f2, ab, inverse(*f2, ab))));
  CHECK(multiply(*f2, Element::word({1, 2}), Element::word({-2, 1})) ==
        Element::word({1, 1}));

  CHECK(word_length(*f2, ab).value == 2);
  CHECK(word_length(*f2, Element::word({-1})).kind == WordLength::Kind::Infinite);
  CHECK(word_length(*f2, Element::word({1, -2})).kind == WordLength::Kind::Infinite);

  CHECK(ball(*f2, 0).size() == 1);
  CHECK(ball(*f2, 1).size() == 3);
  CHECK(ball(*f2, 2).size() == 7);
  CHECK(symmetric_ball(*f2, 1).size() == 5);
  CHECK(symmetric_ball(*f2, 2).size() == 17);
}

TEST_CASE("free product normal forms") {
  const auto g = parse_group_spec("Z2 * Z3");
  const auto gens = generators(*g);
  REQUIRE(gens.size() == 2);
  const Element& a = gens[0];
  const Element& b = gens[1];

  CHECK(is_identity(*g, multiply(*g, a, a)));                        // a^2 = e
  const Element b2 = multiply(*g, b, b);
  CHECK(is_identity(*g, multiply(*g, b, b2)));                       // b^3 = e
  CHECK(element_order(*g, multiply(*g, a, b)).exceeded);             // ab has infinite order

  const Element ab = multiply(*g, a, b);
  const auto syllables = reduced_decomposition(*g, ab);
  REQUIRE(syllables.size() == 2);
  // Rebuild the element from its decomposition.
  Element rebuilt = identity(*g);
  for (const auto& syl : syllables)
    rebuilt = multiply(*g, rebuilt,
                       Element::syllables({Element::Syllable{syl.slot, syl.copy, syl.value}}));
  CHECK(rebuilt == ab);

  CHECK(word_length(*g, ab).value == 2);
  const Element b_inv = inverse(*g, b);  // = b^2, positive length 2
  CHECK(word_length(*g, b_inv).value == 2);
}

TEST_CASE("direct powers act coordinatewise") {
  const auto g = parse_group_spec("Z3^4");
  CHECK(g->size() == 81);
  const auto gens = generators(*g);
  REQUIRE(gens.size() == 4);
  CHECK(ball(*g, 1).size() == 5);
  CHECK(ball(*g, 2).size() == 15);

  const Element x = multiply(*g, gens[0], gens[2]);
  CHECK(nonidentity_coordinate_count(*g, x) == 2);
  CHECK(word_length(*g, x).value == 2);
  CHECK(is_identity(*g, multiply(*g, x, inverse(*g, x))));
  // Coordinates commute.
  CHECK(multiply(*g, gens[1], gens[3]) == multiply(*g, gens[3], gens[1]));
}

TEST_CASE("finite tables load and validate") {
  const auto s3 = load_finite_table(data_path("s3.json"));
  CHECK(s3->size() == 6);
  CHECK(s3->generator_count() == 2);
  const auto gens = generators(*s3);
  REQUIRE(gens.size() == 2);
  // S3 is noncommutative.
  CHECK(multiply(*s3, gens[0], gens[1]) != multiply(*s3, gens[1], gens[0]));
  CHECK(all_elements(*s3).size() == 6);

  const auto via_grammar = parse_group_spec("table:" + data_path("s3.json"));
  CHECK(via_grammar->equals(*s3));

  const auto z4 = GroupSpec::cyclic_with_generators(4, {1, 2, 3});
  CHECK(z4->size() == 4);
  CHECK(z4->generator_count() == 3);
  CHECK(is_identity(*z4, multiply(*z4, Element::scalar(2), Element::scalar(2))));
}

TEST_CASE("associativity holds exhaustively on small groups") {
  for (const char* text : {"Z6", "Z3^2", "Z2 * Z3"}) {
    const auto g = parse_group_spec(text);
    const auto elems = g->is_finite() ? all_elements(*g) : ball(*g, 3);
    for (const auto& a : elems)
      for (const auto& b : elems)
        for (const auto& c : elems) {
          const Element left = multiply(*g, multiply(*g, a, b), c);
          const Element right = multiply(*g, a, multiply(*g, b, c));
          if (left != right) {
            CAPTURE(text);
            REQUIRE(left == right);
          }
        }
  }
}

TEST_CASE("balls nest and respect the quadratic cap") {
  for (const char* text : {"Z7", "F2", "Z2 * Z3", "Z3^2", "F3"}) {
    const auto g = parse_group_spec(text);
    const auto b2 = ball(*g, 2);
    const auto b3 = ball(*g, 3);
    REQUIRE(b2.size() <= b3.size());
    // Layer order makes smaller balls prefixes of larger ones.
    CHECK(std::equal(b2.begin(), b2.end(), b3.begin()));

    const auto n = to_u64(g->generator_count());
    CHECK(b2.size() <= n * n + n + 1);

    const auto sym = symmetric_ball(*g, 2);
    const std::set<Element> sym_set(sym.begin(), sym.end());
    for (const auto& x : b2) CHECK(sym_set.count(x) == 1);
  }
}

TEST_CASE("enumeration budgets are enforced") {
  CHECK_THROWS_AS(ball(*GroupSpec::free_group(2), 30), BudgetError);
  CHECK_THROWS_AS(all_elements(*GroupSpec::cyclic(100), Budget{10}), BudgetError);
  CHECK_THROWS_AS(generators(*parse_group_spec("freepow(Z5,10^84)")), BudgetError);
  // Structural queries stay available on symbolic specs.
  const auto huge = parse_group_spec("freepow(Z5,10^84)");
  CHECK(to_string(huge->generator_count()) == to_string(parse_bigint("10^84")));
  CHECK_FALSE(huge->is_finite());
}

TEST_CASE("element printing distinguishes elements") {
  const auto g = parse_group_spec("Z2 * Z3");
  const auto b3 = ball(*g, 3);
  std::set<std::string> rendered;
  for (const auto& x : b3) rendered.insert(x.to_string(*g));
  CHECK(rendered.size() == b3.size());
}
