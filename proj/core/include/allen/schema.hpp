#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "allen/derivation_state.hpp"
#include "allen/relation.hpp"

namespace allen {

/// Slot of a schema variable: kSlotP, kSlotQ, or an index into `bound`.
inline constexpr int kSlotP = -1;
inline constexpr int kSlotQ = -2;

struct SchemaLiteral {
  Literal::Kind kind;
  int lhs;
  int rhs;
};

/// Definition of a basic relation between p and q as a conjunction of meets
/// (or equality) literals over p, q and existentially bound variables.
struct RelationSchema {
  BasicRelation relation;
  std::vector<std::string> bound;
  std::vector<SchemaLiteral> literals;
};

const RelationSchema& schema_for(BasicRelation r);

/// "L_d(z,q) = {k||l, l||z, ...}" for display.
std::string format_schema(BasicRelation r, std::string_view p, std::string_view q);

/// Adds fresh variables for the bound slots, asserts every literal and
/// records one schema step. Returns the bound variables in slot order.
std::vector<VarId> instantiate_schema(DerivationState& state, BasicRelation r, VarId p, VarId q);

struct SchemaMatch {
  BasicRelation relation;
  std::vector<std::pair<std::string, VarId>> bindings;
  std::vector<TraceStep> m1_steps;
};

/// Finds existing variables satisfying every literal of the schema for r at
/// (p,q), minimizing the number of M1 steps needed to justify them. Ties go
/// to the most recently introduced variables.
std::optional<SchemaMatch> match_schema(const DerivationState& state, BasicRelation r, VarId p, VarId q);

/// Adds the variables a match of r at (p,q) needs, using M5 sums for
/// intervals spanning between endpoints of p and q and M3 for free-ended
/// neighbours. Returns false when the point order of the state rules r out.
/// The caller saturates afterwards.
bool construct_witnesses(DerivationState& state, BasicRelation r, VarId p, VarId q);

} // namespace allen
