#pragma once

#include "hypermon/ast.hpp"

#include <string_view>

namespace hypermon::lang {

/// Parses and statically checks a program.
///
/// Grammar (one class per file):
///
///     program  := 'class' ID '{' method* '}'
///     method   := annot* 'int' ID '(' [param (',' param)*] ')' block
///     param    := 'int' ID
///     stmt     := block | 'int' ID ['=' expr] ';' | ID assignop expr ';'
///               | ('++'|'--') ID ';' | ID ('++'|'--') ';'
///               | 'if' '(' expr ')' stmt ['else' stmt]
///               | annot* 'while' '(' expr ')' stmt
///               | annot* 'for' '(' [init] ';' [expr] ';' [update] ')' stmt
///               | 'return' expr ';'
///     expr     := usual C precedence over || && == != < <= > >= + - * / % ! -
///                 with integer literals, variables, true/false and calls
///     annot    := '//@' ('requires' | 'ensures' | 'maintaining' | 'decreasing') expr [';']
///               | '//@' 'domain' ID 'in' '[' int ',' int ']' [';']
///
/// Checks: declaration before use, no shadowing of enclosing locals, call
/// targets exist with matching arity, acyclic call graph, int/boolean typing,
/// a return on every path, and loop annotations referring only to variables
/// in scope at the loop head.
Program parseProgram(std::string_view source);

/// Reads and parses a program file.
Program loadProgram(const std::string& path);

}  // namespace hypermon::lang
