#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "allen/relation.hpp"

namespace allen {

using LatticeEdge = std::pair<BasicRelation, BasicRelation>;

/// The 16 undirected edges of the conceptual-neighbourhood lattice: two
/// relations are adjacent when one turns into the other by continuously
/// shortening or prolonging one interval.
inline constexpr std::array<LatticeEdge, 16> kLatticeEdges = {{
    {BasicRelation::b, BasicRelation::m},
    {BasicRelation::m, BasicRelation::ov},
    {BasicRelation::ov, BasicRelation::fi},
    {BasicRelation::fi, BasicRelation::di},
    {BasicRelation::di, BasicRelation::si},
    {BasicRelation::si, BasicRelation::ovi},
    {BasicRelation::ov, BasicRelation::s},
    {BasicRelation::s, BasicRelation::d},
    {BasicRelation::d, BasicRelation::f},
    {BasicRelation::f, BasicRelation::ovi},
    {BasicRelation::ovi, BasicRelation::mi},
    {BasicRelation::mi, BasicRelation::bi},
    {BasicRelation::s, BasicRelation::e},
    {BasicRelation::e, BasicRelation::si},
    {BasicRelation::fi, BasicRelation::e},
    {BasicRelation::e, BasicRelation::f},
}};

RelationSet neighbors(BasicRelation r);

/// True iff the lattice restricted to `set` is connected. The empty set and
/// singletons count as connected.
bool is_connected(RelationSet set);

/// Number of edges on a shortest lattice path between r1 and r2.
std::size_t conceptual_distance(BasicRelation r1, BasicRelation r2);

} // namespace allen
