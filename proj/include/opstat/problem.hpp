#pragma once

#include <map>
#include <string>
#include <vector>

#include "opstat/surface.hpp"

namespace opstat {

/// Parsed problem file: declarations, rewrite rules, assumption and claim
/// sentences, hint blocks and options.
struct ProblemFile {
  Signature sig;
  std::vector<Formula> assumptions;
  Formula claim;  // null when the file declares none
  std::vector<RewriteRule> rules;
  std::vector<HintBlock> hints;
  std::vector<std::pair<std::string, std::string>> options;
};

/// Grammar (statements end with ';', comments run from '#' to end of line):
///
///   problem   := statement*
///   statement := "obj" ident+ | "const" ident ":" ident "->" ident
///              | "fun" ident ":" sort ("x" sort)* "->" sort
///              | "rule" term "=>" term
///              | "assume" formula | "claim" formula
///              | "hint" ident "->" term ("," ident "->" term)*
///              | "option" ident value
///   sort      := "(" ident "," ident ")"
///   formula   := quantified | implication
///   quantified:= ("forall"|"exists") binder ("," binder)* "." formula
///   binder    := ident ":" sort
///   formula precedence:  =,!=  >  !  >  &  >  |  >  ->
///   term precedence:     *  >  unary -  >  +,-
///   zero      := "0" | "0[" ident "," ident "]"
ProblemFile parse_problem(const std::string& text);

std::string render_problem(const ProblemFile& p);

/// Resolves a surface term against a signature and an environment of named
/// terms (for variables in scope or their Herbrand replacements). `expect`
/// disambiguates bare zero constants; an unresolvable zero raises SortError.
Term resolve_surface(const Signature& sig, const std::map<std::string, Term>& env,
                     const SurfaceTerm& st, std::optional<Sort> expect = std::nullopt);

}  // namespace opstat
