#pragma once

#include <string>
#include <string_view>

#include "allen/relation.hpp"

namespace allen {

/// CSV export: a header row and header column of relation names, each cell the
/// `|`-joined members of the entry in display order.
std::string table_to_csv(const CompositionTable& table);

/// Markdown export laid out like the published table: basic relation names for
/// singleton entries, α/β/γ/δ labels for named unions.
std::string table_to_markdown(const CompositionTable& table);

/// Inverse of table_to_csv. Throws ParseError on malformed input or empty cells.
CompositionTable table_from_csv(std::string_view csv);

} // namespace allen
