#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace allen {

/// Raised when a rule precondition fails or a derivation cannot be completed.
/// Either one indicates an engine or template bug, never a user error.
class DerivationError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct VarId {
  std::uint32_t value = 0;
  friend auto operator<=>(VarId, VarId) = default;
};

/// Which rule introduced an interval variable.
enum class VarOrigin : std::uint8_t { given, schema, m3_fresh, m5_sum, m2_witness };

enum class Side : std::uint8_t { start, end };

/// The start or end point of an interval variable.
struct Point {
  VarId var;
  Side side;
};

inline Point start_of(VarId v) { return {v, Side::start}; }
inline Point end_of(VarId v) { return {v, Side::end}; }

enum class PointOrder : std::uint8_t { before, equal, after };

struct Literal {
  enum class Kind : std::uint8_t { meets, eq };

  Kind kind = Kind::meets;
  VarId lhs;
  VarId rhs;

  static Literal meets(VarId a, VarId b) { return {Kind::meets, a, b}; }
  static Literal eq(VarId a, VarId b) { return {Kind::eq, a, b}; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class Rule : std::uint8_t { schema, m1, m2, m3, m4, m5, refute };

/// One applied rule instance. `label` carries rule-specific text: the schema
/// name for Rule::schema, the violated property for Rule::refute, and the
/// branch tag ("=", "<", ">") for Rule::m2.
struct TraceStep {
  Rule rule;
  std::string label;
  std::vector<Literal> premises;
  std::vector<Literal> conclusions;
};

/// An order cycle among interval variables: end(cycle[i]) is the start of
/// cycle[i+1] (cyclically) as far as the point classes are concerned, so the
/// strict start<end order of every interval on it cannot be satisfied.
struct Contradiction {
  std::vector<VarId> cycle;
};

/// Literal store of the saturation prover.
///
/// Every interval variable owns a start point and an end point. `x||y`
/// merges end(x) with start(y) and `x = y` merges both pairs, so M1 closure is
/// the union-find itself. Explicitly asserted literals are kept alongside so
/// that each M1 consequence can still be replayed as a chain of rule
/// instances. Not safe for concurrent mutation; copies are independent.
class DerivationState {
public:
  VarId add_var(std::string_view name_hint, VarOrigin origin);

  std::size_t var_count() const { return vars_.size(); }
  const std::string& name(VarId v) const { return vars_.at(v.value).name; }
  VarOrigin origin(VarId v) const { return vars_.at(v.value).origin; }
  std::optional<VarId> find(std::string_view name) const;

  void assert_meets(VarId x, VarId y);
  void assert_eq(VarId x, VarId y);
  /// Merges start(x) with start(from) and end(x) with end(to) without a
  /// literal; used for M5 sums.
  void bind_span(VarId x, VarId from, VarId to);

  void record(TraceStep step) { trace_.push_back(std::move(step)); }
  const std::vector<TraceStep>& trace() const { return trace_; }

  /// Lowest-id member of the equality class of v.
  VarId representative(VarId v) const;
  bool same(VarId a, VarId b) const { return representative(a) == representative(b); }
  /// Distinct equality classes, by representative, in id order.
  std::vector<VarId> representatives() const;

  /// Opaque id of the point class, valid until the next mutation.
  std::size_t point_class(Point p) const;

  bool holds_meets(VarId x, VarId y) const;
  bool holds(const Literal& lit) const;
  /// Asserted directly (modulo equality), not only derivable.
  bool is_explicit_meets(VarId x, VarId y) const;
  /// Explicit literals x||y, in assertion order.
  const std::vector<Literal>& explicit_literals() const { return literals_; }

  /// Order of two points if the state determines it; nullopt when both
  /// orders remain possible.
  std::optional<PointOrder> compare(Point a, Point b) const;

  /// Shortest chain of intervals leading from point `from` to point `to`,
  /// each ending where the next starts. Empty optional when no chain exists.
  std::optional<std::vector<VarId>> interval_chain(Point from, Point to) const;

  /// Representatives whose start / end lies in the class of p.
  std::vector<VarId> starting_at(Point p) const;
  std::vector<VarId> ending_at(Point p) const;

  /// M1 instances deriving x||y from the explicit literals, shortest first.
  /// Empty vector when x||y is explicit; nullopt when it does not hold.
  std::optional<std::vector<TraceStep>> m1_derivation(VarId x, VarId y) const;

  /// Applies M4 to a fixpoint and checks the order of all points. M1 needs no
  /// work here. No variables are created.
  void saturate();

  bool contradictory() const { return contradiction_.has_value(); }
  const std::optional<Contradiction>& contradiction() const { return contradiction_; }

  std::string format(const Literal& lit) const;

private:
  struct VarInfo {
    std::string name;
    VarOrigin origin;
  };

  std::size_t point_index(Point p) const { return 2 * p.var.value + (p.side == Side::end ? 1 : 0); }
  std::size_t find_point(std::size_t i) const;
  void union_points(std::size_t a, std::size_t b);
  std::size_t find_var(std::size_t i) const;
  void union_vars(std::size_t a, std::size_t b);
  /// Adjacency over point classes: class -> (end class, var) for every representative.
  std::vector<std::vector<std::pair<std::size_t, VarId>>> order_graph() const;
  bool reachable(std::size_t from, std::size_t to) const;
  void detect_cycle();

  std::vector<VarInfo> vars_;
  std::vector<std::size_t> point_parent_;
  std::vector<std::size_t> var_parent_;
  std::vector<Literal> literals_;
  std::vector<TraceStep> trace_;
  std::optional<Contradiction> contradiction_;
};

/// M3: a fresh variable meeting x (side == start) or met by x (side == end).
VarId add_m3_neighbor(DerivationState& state, VarId x, Side side);

/// M5: the sum of x and y, which must satisfy x||y. The sum starts with x and
/// ends with y; it is linked by one literal to a left neighbour of x and one
/// to a right neighbour of y, each created if none is explicit yet.
VarId add_m5_sum(DerivationState& state, VarId x, VarId y);

} // namespace allen
