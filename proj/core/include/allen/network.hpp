#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "allen/endpoint_model.hpp"
#include "allen/relation.hpp"

namespace allen {

/// A qualitative constraint network over named interval variables.
///
/// Edges are stored once as (i, j) with i < j; the (j, i) view is the
/// converse. Unconstrained pairs are not stored and read back as the full set.
/// The order in which pairs were first set is kept for serialization but does
/// not take part in equality.
class Network {
public:
  Network() = default;

  /// Index of `name`, adding it at the end if unknown.
  std::size_t add_variable(std::string_view name);
  std::optional<std::size_t> index_of_variable(std::string_view name) const;
  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t size() const { return variables_.size(); }

  /// Relation set from i to j. get(i, i) is {e}.
  RelationSet get(std::size_t i, std::size_t j) const;
  /// Replaces the constraint from i to j. Throws std::invalid_argument for i == j.
  void set(std::size_t i, std::size_t j, RelationSet rel);
  /// Intersects the constraint from i to j with rel.
  void constrain(std::size_t i, std::size_t j, RelationSet rel);

  /// Stored (non-universal) edges keyed by (i, j), i < j.
  const std::map<std::pair<std::size_t, std::size_t>, RelationSet>& edges() const { return edges_; }

  /// Pairs (i < j) in the order they were first set, including pairs later
  /// set back to the full relation.
  const std::vector<std::pair<std::size_t, std::size_t>>& pair_order() const { return pair_order_; }

  /// Every pair, including unstored ones, is a singleton.
  bool is_atomic() const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.variables_ == b.variables_ && a.edges_ == b.edges_;
  }

private:
  std::vector<std::string> variables_;
  std::map<std::pair<std::size_t, std::size_t>, RelationSet> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> pair_order_;
};

/// Parses the line-oriented network format. Throws ParseError with the line number.
Network parse_network(std::string_view text);
/// Reads and parses a network file. Throws ParseError if it cannot be read.
Network load_network(const std::filesystem::path& path);

/// One `A B : rel...` line per constrained pair, in the order pairs were first
/// set. An unconstrained pair is printed only when it is the first mention of
/// a variable, so that parsing the output gives back an equal network. With
/// include_universal every pair is printed; pairs never set come last.
std::string serialize(const Network& net, bool include_universal = false);

/// Algebraic closure. nullopt when some edge becomes empty.
std::optional<Network> path_consistency(const Network& net);

/// A closed network whose every pair holds exactly one relation.
class Scenario {
public:
  /// Throws std::invalid_argument unless net is atomic.
  explicit Scenario(Network net);

  const Network& network() const { return net_; }
  BasicRelation relation(std::size_t i, std::size_t j) const { return *net_.get(i, j).atom(); }

private:
  Network net_;
};

/// Backtracking search for a scenario refining net: closure first, then the
/// edge with the fewest (>1) relations is fixed to each member in display
/// order. Ties go to the lowest (i, j).
std::optional<Scenario> solve(const Network& net);

class RealizationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Integer endpoints reproducing every relation of the scenario, indexed by
/// variable. Throws RealizationError if the endpoint order has a cycle.
std::vector<RatInterval> realize(const Scenario& scenario);

/// `<var> = [<start>, <end>]` lines.
std::string format_realization(const Network& net, const std::vector<RatInterval>& intervals);

} // namespace allen
