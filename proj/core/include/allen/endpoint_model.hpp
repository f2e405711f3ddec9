#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "allen/relation.hpp"

namespace allen {

using Rational = boost::rational<std::int64_t>;

/// Parses `3`, `-2` or `7/2`. Throws ParseError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

/// A closed interval with exact endpoints and positive duration.
class RatInterval {
public:
  /// Throws std::invalid_argument unless start < end.
  RatInterval(Rational start, Rational end);

  const Rational& start() const { return start_; }
  const Rational& end() const { return end_; }

  friend bool operator==(const RatInterval&, const RatInterval&) = default;

private:
  Rational start_;
  Rational end_;
};

/// True when p ends exactly where q starts.
inline bool meets(const RatInterval& p, const RatInterval& q) { return p.end() == q.start(); }

/// The unique basic relation holding between p and q.
BasicRelation classify(const RatInterval& p, const RatInterval& q);

/// Endpoint definition of a single relation, evaluated on its own (no
/// if-chain), so that JE and PD can be checked by counting.
bool holds(BasicRelation r, const RatInterval& p, const RatInterval& q);

/// Normalized order type of n intervals: ranks[2i] is the rank of the start of
/// interval i, ranks[2i+1] the rank of its end. Used ranks are exactly 1..k.
struct EndpointConfig {
  std::vector<int> ranks;

  std::size_t interval_count() const { return ranks.size() / 2; }
  int start_rank(std::size_t i) const { return ranks[2 * i]; }
  int end_rank(std::size_t i) const { return ranks[2 * i + 1]; }

  /// The interval with integer endpoints equal to the ranks.
  RatInterval interval(std::size_t i) const;
  BasicRelation relation(std::size_t i, std::size_t j) const;

  friend auto operator<=>(const EndpointConfig&, const EndpointConfig&) = default;
};

inline constexpr std::size_t kMaxConfigIntervals = 4;

/// Every valid normalized order type of n intervals, each exactly once, in
/// lexicographic order of the rank vector. Requires 1 <= n <= 4.
std::vector<EndpointConfig> enumerate_configs(std::size_t n);

/// Semantic composition: relations between p and q over all three-interval
/// order types with (p,z) in r1 and (z,q) in r2.
RelationSet oracle_compose(BasicRelation r1, BasicRelation r2);

/// All 169 entries computed by oracle_compose.
CompositionTable oracle_table();

struct JepdReport {
  std::size_t configs = 0;
  std::size_t distinct_relations = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty() && configs == 13 && distinct_relations == 13; }
};

/// Checks that the two-interval order types classify one-to-one onto the 13 relations.
JepdReport verify_jepd();

struct AxiomReport {
  struct Count {
    std::string axiom;
    std::size_t tuples = 0;
  };
  std::vector<Count> checked;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Model-checks the meets properties and M1-M5 on every applicable tuple of
/// the sample, constructing existential witnesses explicitly.
AxiomReport check_axioms_in_model(std::span<const RatInterval> sample);

/// All intervals with integer endpoints lo <= start < end <= hi.
std::vector<RatInterval> integer_intervals(int lo, int hi);

} // namespace allen
