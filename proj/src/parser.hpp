#ifndef ACTLANG_PARSER_HPP
#define ACTLANG_PARSER_HPP

#include <string>

#include "ast.hpp"

namespace actlang::parse {

// Parses program text, appends main's implicit final `return __unit` when the
// text leaves it out, and validates. Throws SyntaxError on malformed text and
// ValidationError when diagnostics remain.
ast::Program parse_program(const std::string& text);

// Same parse without the validation pass; used to inspect diagnostics of
// deliberately broken programs.
ast::Program parse_unvalidated(const std::string& text);

}  // namespace actlang::parse

#endif
