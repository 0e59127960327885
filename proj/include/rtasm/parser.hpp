#pragma once

#include "rtasm/rule.hpp"

#include <map>
#include <string>
#include <string_view>

namespace rtasm {

/// Named guard abbreviations (e.g. SafeToOpen) expanded in place while parsing.
using GuardAbbreviations = std::map<std::string, Guard>;

/// Parses the keyword rule syntax:
///
///   rule  := 'if' guard 'then' rules ['else' rules] 'endif'
///          | 'block' rule* 'endblock'
///          | 'var' id 'ranges' 'over' id rules 'endvar'
///          | id ['(' term {',' term} ')'] ':=' term
///   guard := conj {'or' conj};  conj := unary {'and' unary}
///   unary := 'not' unary | 'forall' id 'in' id '(' guard ')' | '(' guard ')' | term [('='|'<') term]
///   term  := primary {'+' primary};  primary := number | 'infinity' | 'true' | 'false'
///          | id ['(' term {',' term} ')'] | '(' term ')'
///
/// A sequence of several rules where one is expected becomes a Block. Errors are
/// Error(SyntaxError) with "line:column" in the message.
Rule parse_rule(std::string_view text, const GuardAbbreviations& abbreviations = {});
Guard parse_guard(std::string_view text, const GuardAbbreviations& abbreviations = {});

} // namespace rtasm
