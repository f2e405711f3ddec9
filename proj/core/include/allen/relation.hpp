#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace allen {

/// Thrown for malformed user input: relation tokens, rationals, network files.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The thirteen basic Allen relations.
///
/// Enumerator order is the canonical display order (the lattice column order
/// b, m, ov, fi, di, s, e, si, d, f, ovi, mi, bi). With this order the
/// converse of relation i is relation 12 - i.
enum class BasicRelation : std::uint8_t { b, m, ov, fi, di, s, e, si, d, f, ovi, mi, bi };

inline constexpr std::size_t kRelationCount = 13;

inline constexpr std::array<BasicRelation, kRelationCount> kAllRelations = {
    BasicRelation::b,  BasicRelation::m, BasicRelation::ov, BasicRelation::fi, BasicRelation::di,
    BasicRelation::s,  BasicRelation::e, BasicRelation::si, BasicRelation::d,  BasicRelation::f,
    BasicRelation::ovi, BasicRelation::mi, BasicRelation::bi};

constexpr std::size_t index_of(BasicRelation r) { return static_cast<std::size_t>(r); }

constexpr BasicRelation relation_at(std::size_t index) { return static_cast<BasicRelation>(index); }

constexpr BasicRelation converse(BasicRelation r) {
  return relation_at(kRelationCount - 1 - index_of(r));
}

/// Canonical ASCII token ("b", "ovi", ...).
std::string_view name(BasicRelation r);

/// Accepts canonical tokens and the `^-1` spelling (`b^-1`), case-insensitive.
/// Throws ParseError naming the offending token otherwise.
BasicRelation parse_relation_token(std::string_view text);

/// A subset of the basic relations, stored as a 13-bit mask.
class RelationSet {
public:
  static constexpr std::uint16_t kFullMask = (1u << kRelationCount) - 1;

  constexpr RelationSet() = default;
  constexpr RelationSet(std::initializer_list<BasicRelation> members) {
    for (BasicRelation r : members) insert(r);
  }

  static constexpr RelationSet from_mask(std::uint16_t mask) {
    RelationSet set;
    set.bits_ = mask & kFullMask;
    return set;
  }
  static constexpr RelationSet full() { return from_mask(kFullMask); }
  static constexpr RelationSet single(BasicRelation r) { return RelationSet{r}; }

  constexpr std::uint16_t mask() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool is_full() const { return bits_ == kFullMask; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(BasicRelation r) const { return (bits_ >> index_of(r)) & 1u; }
  constexpr void insert(BasicRelation r) { bits_ |= static_cast<std::uint16_t>(1u << index_of(r)); }
  constexpr void erase(BasicRelation r) { bits_ &= static_cast<std::uint16_t>(~(1u << index_of(r))); }

  constexpr bool subset_of(RelationSet other) const { return (bits_ & ~other.bits_) == 0; }

  /// The sole member of a singleton set.
  constexpr std::optional<BasicRelation> atom() const {
    if (size() != 1) return std::nullopt;
    return relation_at(static_cast<std::size_t>(std::countr_zero(bits_)));
  }

  constexpr RelationSet converse() const {
    RelationSet out;
    for (BasicRelation r : *this) out.insert(allen::converse(r));
    return out;
  }

  friend constexpr RelationSet operator|(RelationSet a, RelationSet b) { return from_mask(a.bits_ | b.bits_); }
  friend constexpr RelationSet operator&(RelationSet a, RelationSet b) { return from_mask(a.bits_ & b.bits_); }
  constexpr RelationSet& operator|=(RelationSet o) { bits_ |= o.bits_; return *this; }
  constexpr RelationSet& operator&=(RelationSet o) { bits_ &= o.bits_; return *this; }
  friend constexpr bool operator==(RelationSet, RelationSet) = default;

  /// Iterates members in canonical display order.
  class iterator {
  public:
    using value_type = BasicRelation;
    using difference_type = std::ptrdiff_t;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint16_t rest) : rest_(rest) {}
    constexpr BasicRelation operator*() const {
      return relation_at(static_cast<std::size_t>(std::countr_zero(rest_)));
    }
    constexpr iterator& operator++() {
      rest_ &= static_cast<std::uint16_t>(rest_ - 1);
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

  private:
    std::uint16_t rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

private:
  std::uint16_t bits_ = 0;
};

/// Space-separated canonical tokens, e.g. "ov s d". Empty set prints as "".
std::string to_string(RelationSet set);

/// Parses a space-separated list of relation tokens.
RelationSet parse_relation_set(std::string_view text);

// Named unions that appear as composition-table entries.
enum class UnionName : std::uint8_t { alpha1, alpha2, alpha3, alpha4, alpha5, beta1, beta2, gamma, delta };

inline constexpr std::array<UnionName, 9> kAllUnionNames = {
    UnionName::alpha1, UnionName::alpha2, UnionName::alpha3, UnionName::alpha4, UnionName::alpha5,
    UnionName::beta1,  UnionName::beta2,  UnionName::gamma,  UnionName::delta};

struct NamedUnion {
  UnionName name;
  bool inverse = false;
  RelationSet value;

  /// Display label such as "α₁" or "β₂⁻¹".
  std::string label() const;
  /// ASCII identifier such as "alpha1" or "beta2^-1".
  std::string ascii_label() const;
};

constexpr RelationSet named_union(UnionName n) {
  using enum BasicRelation;
  switch (n) {
    case UnionName::alpha1: return {ov, s, d};
    case UnionName::alpha2: return {ov, fi, di};
    case UnionName::alpha3: return {b, m, ov};
    case UnionName::alpha4: return {fi, e, f};
    case UnionName::alpha5: return {s, e, si};
    case UnionName::beta1: return {b, m, ov, s, d};
    case UnionName::beta2: return {b, m, ov, fi, di};
    case UnionName::gamma: return {ov, s, d, f, e, fi, di, si, ovi};
    case UnionName::delta: return RelationSet::full();
  }
  return {};
}

constexpr RelationSet named_union(UnionName n, bool inverse) {
  return inverse ? named_union(n).converse() : named_union(n);
}

/// Finds the named union (possibly inverted) whose members equal `set`.
/// Self-converse unions are reported without the inverse flag.
std::optional<NamedUnion> identify_union(RelationSet set);

/// A 13x13 table of relation sets indexed by (r1, r2).
class CompositionTable {
public:
  constexpr CompositionTable() = default;

  constexpr RelationSet at(BasicRelation r1, BasicRelation r2) const {
    return entries_[index_of(r1) * kRelationCount + index_of(r2)];
  }
  constexpr void set(BasicRelation r1, BasicRelation r2, RelationSet value) {
    entries_[index_of(r1) * kRelationCount + index_of(r2)] = value;
  }

  friend constexpr bool operator==(const CompositionTable&, const CompositionTable&) = default;

private:
  std::array<RelationSet, kRelationCount * kRelationCount> entries_{};
};

/// The built-in composition table (authoritative at runtime).
const CompositionTable& builtin_table();

inline RelationSet compose(BasicRelation r1, BasicRelation r2) { return builtin_table().at(r1, r2); }

/// Union of all pairwise basic compositions; empty if either side is empty.
RelationSet compose_sets(RelationSet lhs, RelationSet rhs);

} // namespace allen
