#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "ordertop/convergence.hpp"
#include "ordertop/poset.hpp"

namespace ordertop {

/// Parses the line-based poset format:
///
///     # comment
///     elem a
///     elem b
///     cover a b        # a is covered by b
///
/// Label order fixes index order; covers may name elements declared later.
/// Throws ParseError naming the offending line.
FinitePoset parse_poset(std::string_view text);
FinitePoset read_poset_file(const std::string& path);

/// Writes `elem` lines in index order followed by the Hasse diagram.
std::string format_poset(const FinitePoset& p);

/// Graphviz digraph of the Hasse diagram, drawn bottom-up.
std::string to_dot(const FinitePoset& p, std::string_view graph_name = "poset");

/// Parses `prefix: l1 l2 ... ; cycle: m1 m2 ...` against the labels of `p`.
/// The prefix part may be empty or omitted; the cycle must be nonempty.
LassoSequence parse_lasso(const FinitePoset& p, std::string_view text);
std::string format_lasso(const FinitePoset& p, const LassoSequence& s);

std::string read_text_file(const std::string& path);

}  // namespace ordertop
