#include <doctest.h>

#include <set>

#include "allen/endpoint_model.hpp"

using namespace allen;
using enum BasicRelation;

namespace {
RatInterval iv(int a, int b) { return RatInterval(Rational(a), Rational(b)); }
} // namespace

TEST_SUITE("endpoint_model") {

TEST_CASE("rationals") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("+7/2") == Rational(7, 2));
  CHECK(parse_rational("4/8") == Rational(1, 2));
  CHECK(to_string(Rational(7, 2)) == "7/2");
  CHECK(to_string(Rational(-3)) == "-3");
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("intervals need positive length") {
  CHECK_THROWS_AS(iv(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(iv(3, 1), std::invalid_argument);
}

TEST_CASE("classify") {
  CHECK(classify(iv(0, 2), iv(2, 4)) == m);
  CHECK(classify(iv(0, 2), iv(0, 3)) == s);
  CHECK(classify(iv(1, 2), iv(0, 3)) == d);
  CHECK(classify(iv(0, 3), iv(0, 3)) == e);
  CHECK(classify(iv(0, 1), iv(2, 3)) == b);
  CHECK(classify(iv(0, 2), iv(1, 3)) == ov);
  CHECK(classify(RatInterval(Rational(1, 2), Rational(1)), iv(0, 1)) == f);
  for (const auto& p : integer_intervals(0, 4))
    for (const auto& q : integer_intervals(0, 4)) {
      CHECK(classify(q, p) == converse(classify(p, q)));
      CHECK(holds(classify(p, q), p, q));
    }
}

TEST_CASE("enumerate_configs counts") {
  CHECK(enumerate_configs(1).size() == 1);
  CHECK(enumerate_configs(2).size() == 13);
  // Frozen from an independent enumeration of normalized rank vectors.
  CHECK(enumerate_configs(3).size() == 409);
  CHECK(enumerate_configs(4).size() == 23917);
  CHECK_THROWS_AS(enumerate_configs(0), std::out_of_range);
  CHECK_THROWS_AS(enumerate_configs(5), std::out_of_range);
}

TEST_CASE("enumerated configs are normalized, valid, sorted and distinct") {
  auto configs = enumerate_configs(3);
  CHECK(std::is_sorted(configs.begin(), configs.end()));
  CHECK(std::set<EndpointConfig>(configs.begin(), configs.end()).size() == configs.size());
  for (const auto& c : configs) {
    std::set<int> used(c.ranks.begin(), c.ranks.end());
    CHECK(*used.begin() == 1);
    CHECK(*used.rbegin() == static_cast<int>(used.size()));
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.start_rank(i) < c.end_rank(i));
  }
  std::set<BasicRelation> seen;
  for (const auto& c : enumerate_configs(2)) seen.insert(c.relation(0, 1));
  CHECK(seen.size() == 13);
}

TEST_CASE("oracle compositions") {
  CHECK(oracle_compose(m, d) == RelationSet{ov, s, d});
  CHECK(oracle_compose(b, d) == RelationSet{b, m, ov, s, d});
  CHECK(oracle_compose(e, e) == RelationSet{e});
  CHECK(oracle_compose(s, m) == RelationSet{b});
}

TEST_CASE("oracle table equals the built-in table") {
  CHECK(oracle_table() == builtin_table());
}

TEST_CASE("jepd") {
  auto report = verify_jepd();
  CHECK(report.configs == 13);
  CHECK(report.distinct_relations == 13);
  CHECK(report.violations.empty());
  CHECK(report.ok());
}

TEST_CASE("holds definitions are mutually exclusive") {
  for (const auto& p : integer_intervals(0, 3))
    for (const auto& q : integer_intervals(0, 3)) {
      int count = 0;
      for (BasicRelation r : kAllRelations) count += holds(r, p, q) ? 1 : 0;
      CHECK(count == 1);
    }
}

TEST_CASE("axioms hold in the integer model") {
  auto sample = integer_intervals(0, 4);
  CHECK(sample.size() == 10);
  auto report = check_axioms_in_model(sample);
  CHECK(report.violations.empty());
  REQUIRE(report.checked.size() == 8);
  for (const auto& c : report.checked) {
    INFO(c.axiom);
    CHECK(c.tuples > 0);
  }
  CHECK_THROWS_AS(check_axioms_in_model({}), std::invalid_argument);
}

} // TEST_SUITE
