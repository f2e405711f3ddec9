#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "allen/derivation_state.hpp"
#include "allen/relation.hpp"
#include "allen/schema.hpp"

namespace allen {

/// Which endpoint comparison between p and q an M2 split decides.
enum class SplitKind : std::uint8_t { start_start, end_end, end_start, start_end };

std::string_view describe(SplitKind kind);

/// M2 on a||b and c||d: the three children add a||d, (a||t, t||d) and
/// (c||t, t||b) respectively, each saturated. Both literals must hold and
/// must not be the same pair modulo equality.
std::array<DerivationState, 3> split_m2(const DerivationState& state, Literal first, Literal second);

/// Closing step of a contradictory branch.
struct Refutation {
  std::string property;  // meets_irrefl, meets_asym or meets_atrans
  std::vector<Literal> premises;
};

/// Replays the order cycle of a contradictory state as rule steps: M5 sums
/// shorten it, M1 justifies the final literals, and a refutation step closes
/// it. Steps are appended to the state's trace.
Refutation explain_contradiction(DerivationState& state);

struct DerivationNode {
  /// State when the node was finished; leaves include their conclusion steps.
  DerivationState state;
  /// Index into state.trace() of the first step belonging to this node. For
  /// split children that step is the M2 case literal.
  std::size_t first_step = 0;
  std::optional<SplitKind> split;
  std::optional<std::pair<Literal, Literal>> split_literals;
  std::vector<DerivationNode> children;
  std::optional<SchemaMatch> conclusion;
  std::optional<Refutation> refutation;

  bool is_leaf() const { return children.empty(); }
  std::span<const TraceStep> steps() const {
    return std::span<const TraceStep>(state.trace()).subspan(first_step);
  }
};

struct DerivationTree {
  std::string premise;
  VarId p;
  VarId q;
  DerivationNode root;

  /// Union of the relations concluded at consistent leaves.
  RelationSet conclusions() const;
  /// Largest number of splits on a root-to-leaf path.
  std::size_t depth() const;
  std::vector<const DerivationNode*> leaves() const;
};

struct RuleCounts {
  std::size_t m1 = 0, m2 = 0, m3 = 0, m4 = 0, m5 = 0;
};

RuleCounts count_rules(std::span<const TraceStep> steps);

/// Proves which relations can hold between p and q given (p,z) in r1 and
/// (z,q) in r2, by splitting on undetermined endpoint comparisons until every
/// branch is contradictory or pins down a single relation.
DerivationTree derive_composition(BasicRelation r1, BasicRelation r2);

/// Splits two unconstrained intervals until every branch matches a relation.
DerivationTree derive_je();

struct PdProof {
  BasicRelation r1;
  BasicRelation r2;
  DerivationState state;
  Refutation refutation;
};

/// Refutes (p,q) in r1 together with (p,q) in r2. Requires r1 != r2.
PdProof verify_pd(BasicRelation r1, BasicRelation r2);

struct DerivationReport {
  std::size_t entries = 0;
  std::size_t matches = 0;
  std::size_t leaves = 0;
  std::size_t refuted_leaves = 0;
  std::size_t max_depth = 0;
  std::vector<std::string> mismatches;

  bool ok() const { return entries == kRelationCount * kRelationCount && matches == entries; }
};

/// Derives all 169 compositions and compares them with `expected`.
DerivationReport verify_table_by_derivation(const CompositionTable& expected = builtin_table());

std::string format_step(const DerivationState& state, const TraceStep& step);
std::string format_tree(const DerivationTree& tree);

} // namespace allen
