#pragma once

#include <optional>
#include <string>

#include "ocs/redex_algebra.hpp"

namespace ocs {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& what, int line, int col);
};

// One TPDB-style problem file: VAR, RULES, optional STRATEGY, optional SIG
// for symbols that occur in no rule, optional COMMENT. Unknown sections
// are rejected with their location.
struct ProblemFile {
    Trs trs;
    std::string strategy;              // tag as written, empty when absent
    std::optional<ReplacementMap> mu;  // present for CONTEXTSENSITIVE
    std::string comment;
};

ProblemFile parse_problem(const std::string& text);

// Convenience wrapper returning just the rewrite system.
Trs parse_trs(const std::string& text);

// Serializes a context-sensitive system in TPDB style. Replacement-map
// entries are listed for symbols with a non-full argument set; labeled
// names are rewritten to plain identifiers, with every renaming recorded
// in a trailing COMMENT section. Deterministic, and a fixpoint of
// parse-then-write.
std::string write_cstrs(const CsTrs& cs);

// Sidecar format for handwritten algebras:
//   (ELEMENTS bot a)
//   (INTERP (f bot bot -> bot) (a -> bot) ...)
//   (REDEX (f a a) ...)
// INTERP must cover every symbol of sig totally; REDEX lists the argument
// tuples the redex predicate holds on.
RedexAlgebra parse_algebra(const std::string& text, const Signature& sig);
std::string format_algebra(const RedexAlgebra& ra);

std::string read_file(const std::string& path);

}  // namespace ocs
