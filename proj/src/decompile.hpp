#ifndef ACTLANG_DECOMPILE_HPP
#define ACTLANG_DECOMPILE_HPP

#include "ast.hpp"
#include "ir.hpp"

// Translation from compiled statements back to source statements. It is a
// left inverse of the compiler on fully instantiated trees: attribute indices
// map back through the table's layout, builders become branch statements, and
// the spine becomes a right-nested sequence.

namespace actlang::decompile {

ast::VExprP tv_to_source(const ir::TVP& v, const ir::MethodTable& table);
ast::BExprP tb_to_source(const ir::TBP& b, const ir::MethodTable& table);

// One node without its continuation; builders are decompiled in full. Used
// for trace labels.
ast::StmtP head_to_source(const ir::Stm& s, const ir::MethodTable& table);

// Whole continuation spine of a process statement; the spine must end in an
// exit marker. Raises IllFormedIR on parameter slots, slot write-backs, and
// stray holes.
ast::StmtP stm_to_source(const ir::StmP& s, const ir::MethodTable& table);

}  // namespace actlang::decompile

#endif
