#pragma once

#include <iosfwd>
#include <string>

#include "tfh/symbol.hpp"

namespace tfh {

/// Line-oriented symbol description. Lines:
///   n <int>
///   V <k> <re> <im>
///   W <k> <re> <im>
///   sing <theta> <alpha_re> <alpha_im> <beta_re> <beta_im>
/// '#' starts a comment. Angles in radians, exact decimal text.
SymbolSpec parse_symbol_spec(std::istream& in);
SymbolSpec load_symbol_spec(const std::string& path);
void write_symbol_spec(const SymbolSpec& spec, std::ostream& out);

}  // namespace tfh
